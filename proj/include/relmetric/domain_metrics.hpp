#pragma once

#include "relmetric/domain.hpp"
#include "relmetric/extended_real.hpp"
#include "relmetric/means.hpp"
#include "relmetric/point.hpp"

namespace relmetric {

/// d(x, dG). Exact for the half-plane, the ball and punctured space; minimum over the
/// samples (or the supplied oracle) for sampled domains. Throws DomainError off G.
double boundary_distance(const DomainSpec& g, const Point& x);

/// sup over finite boundary points a of |x - y| / M(|x - a|, |y - a|).
///
/// Discrete boundaries are enumerated exactly. For the half-plane and the ball the
/// boundary is parameterized by an angle, sampled on 512 points and the best sample
/// refined by golden section to 1e-10 in the parameter. For balls of dimension >= 3
/// the objective depends on a only through its projection onto span{x, y}, so the
/// search runs over the closed unit disc of that plane.
double rho_sup(const WeightFunction& m, const DomainSpec& g, const Point& x, const Point& y);

/// j_G(x, y) = log(1 + |x - y| / min{d(x), d(y)}).
double j_metric(const DomainSpec& g, const Point& x, const Point& y);

struct CrossRatioArgs {
  Point a, b, c, d;
};

/// |a,b,c,d| = q(a,c) q(b,d) / (q(a,b) q(c,d)) with q the chordal distance; infinity
/// allowed. Each point occurs once above and once below the bar, so the chordal
/// normalizers cancel and the value is computed from plain distances (a factor with
/// one infinite point becomes 1). Requires a != b and c != d.
double cross_ratio(const CrossRatioArgs& args);

/// sup over boundary pairs (a, b) of log{1 + (|x,a,y,b|^p + |x,b,y,a|^p)^(1/p)};
/// p = +inf takes the larger of the two cross-ratios. Needs card dG >= 2.
///
/// Analytic boundaries use a 64 x 64 parameter grid (infinity included for the
/// half-plane) followed by coordinate-wise golden-section refinement.
double delta_p(const DomainSpec& g, ExtendedReal p, const Point& x, const Point& y);

/// sup over boundary pairs of 1 / M(|x,y,a,b|, |x,y,b,a|), same search as delta_p.
double rho_prime(const WeightFunction& m, const DomainSpec& g, const Point& x, const Point& y);

/// |x - y| / M(d(x), d(y)).
double rho_double_prime(const WeightFunction& m, const DomainSpec& g, const Point& x, const Point& y);

/// Half-plane distances |x - y| / (|x - y|^2 + 4h^2)^((1 - 1/s)/2) for s > 1 and
/// 2|x - y| / sqrt(|x - y|^2 + 4h^2) for s = inf, h the height of the midpoint.
double iota(ExtendedReal s, const Point& x, const Point& y);

/// (integral over the real axis of rho_{A_2}(x - a, y - a)^s da)^(1/s) on the upper
/// half-plane, s > 1, by adaptive quadrature. `rel_tol` is relative to the natural
/// scale |x - y|^s L^(1-s) of the integral, L the spread of the pair.
double rho_tilde_halfplane(double s, const Point& x, const Point& y, double rel_tol = 1e-9);

/// (integral of (1 + z^2)^(-s/2) dz)^(1/s) = (sqrt(pi) Gamma((s-1)/2) / Gamma(s/2))^(1/s), s > 1.
double c_constant(double s);

}  // namespace relmetric
