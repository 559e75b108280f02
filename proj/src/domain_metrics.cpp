#include "relmetric/domain_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "optimize.hpp"
#include "relmetric/error.hpp"
#include "relmetric/quadrature.hpp"
#include "relmetric/relative_metrics.hpp"

namespace relmetric {

namespace {

constexpr int kBoundaryGrid = 512;
constexpr int kPairGrid = 64;
constexpr int kDiscRadial = 33;
constexpr double kResolution = 1e-10;
constexpr double kPi = std::numbers::pi;

void require_inside(const DomainSpec& g, const Point& x, const char* what) {
  if (!g.contains(x)) {
    throw DomainError(std::string(what) + ": point " + x.to_string() + " is not in the " + g.kind_name() + " domain");
  }
}

double quotient(const WeightFunction& m, double dist, double dx, double dy) {
  if (dist == 0.0) return 0.0;
  const double w = weight_eval(m, dx, dy);
  if (std::isnan(w)) throw EvaluationError("weight evaluated to NaN");
  if (w == 0.0) throw DegenerateWeight("weight vanished for distinct points (" + m.describe() + ")");
  return dist / w;
}

// Orthonormal pair spanning a plane through the origin that contains x and y.
std::pair<Eigen::VectorXd, Eigen::VectorXd> plane_basis(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  const Eigen::Index n = x.size();
  Eigen::VectorXd e1, e2;
  const Eigen::VectorXd& lead = x.norm() >= y.norm() ? x : y;
  const Eigen::VectorXd& other = x.norm() >= y.norm() ? y : x;
  if (lead.norm() > 0.0) {
    e1 = lead.normalized();
  } else {
    e1 = Eigen::VectorXd::Unit(n, 0);
  }
  Eigen::VectorXd r = other - other.dot(e1) * e1;
  if (r.norm() <= 1e-14 * std::max(1.0, other.norm())) {
    // x, y and 0 are collinear: any direction orthogonal to e1 spans a valid plane
    Eigen::Index k = 0;
    e1.cwiseAbs().minCoeff(&k);
    r = Eigen::VectorXd::Unit(n, k);
    r -= r.dot(e1) * e1;
  }
  e2 = r.normalized();
  return {e1, e2};
}

// Parameterization of an analytic boundary by one angle (half-plane, circle) used by
// both supremum searches. Points are returned in the plane coordinates of the search.
struct CurveParam {
  bool periodic = false;
  double lo = 0.0, hi = 0.0;
  std::function<Point(double)> at;
};

CurveParam half_plane_curve(const Point& x, const Point& y) {
  const double m1 = 0.5 * (x.coords()[0] + y.coords()[0]);
  const double scale = std::max({euclidean(x, y), x.coords()[1], y.coords()[1]});
  CurveParam c;
  c.lo = -kPi / 2.0;
  c.hi = kPi / 2.0;
  c.at = [m1, scale](double t) {
    if (std::abs(t) >= kPi / 2.0) return Point::infinity();
    const double u = m1 + scale * std::tan(t);
    if (!std::isfinite(u)) return Point::infinity();
    return Point{u, 0.0};
  };
  return c;
}

// Circle boundary of the ball through the plane of x and y; returns points in R^n.
CurveParam ball_curve(const Point& x, const Point& y) {
  auto [e1, e2] = plane_basis(x.coords(), y.coords());
  CurveParam c;
  c.periodic = true;
  c.lo = 0.0;
  c.hi = 2.0 * kPi;
  c.at = [e1, e2](double t) { return Point(Eigen::VectorXd(std::cos(t) * e1 + std::sin(t) * e2)); };
  return c;
}

double sup_on_curve(const CurveParam& c, const std::function<double(const Point&)>& objective, int grid) {
  auto f = [&](double t) { return objective(c.at(t)); };
  const double span = c.hi - c.lo;
  const double step = span / grid;
  double best_t = c.lo, best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid; ++i) {
    const double t = c.periodic ? c.lo + i * step : c.lo + (i + 0.5) * step;
    const double v = f(t);
    if (v > best) {
      best = v;
      best_t = t;
    }
  }
  double a = best_t - step, b = best_t + step;
  if (!c.periodic) {
    a = std::max(a, c.lo);
    b = std::min(b, c.hi);
  }
  const detail::Best1D r = detail::golden_max(f, a, b, kResolution);
  return std::max(best, r.value);
}

// Plain-distance factor of a cross-ratio after the chordal normalizers cancel.
double cr_factor(const Point& u, const Point& v) {
  if (u.is_infinite() && v.is_infinite()) return 0.0;
  if (u.is_infinite() || v.is_infinite()) return 1.0;
  return euclidean(u, v);
}

// sup over boundary pairs of objective(a, b) for any domain kind.
double pair_sup(const DomainSpec& g, const Point& x, const Point& y,
                const std::function<double(const Point&, const Point&)>& objective) {
  if (!g.has_analytic_boundary()) {
    const std::vector<Point> bd = g.discrete_boundary();
    if (bd.size() < 2) throw InvalidParameter("cross-ratio metrics need at least two boundary points");
    double best = 0.0;
    for (std::size_t i = 0; i < bd.size(); ++i) {
      for (std::size_t j = 0; j < bd.size(); ++j) {
        if (i != j) best = std::max(best, objective(bd[i], bd[j]));
      }
    }
    return best;
  }
  const CurveParam c = std::holds_alternative<domains::HalfPlane>(g.variant()) ? half_plane_curve(x, y)
                                                                                : ball_curve(x, y);
  if (std::holds_alternative<domains::UnitBall>(g.variant()) && g.dim() == 1) {
    return std::max(objective(Point{-1.0}, Point{1.0}), objective(Point{1.0}, Point{-1.0}));
  }
  auto f = [&](const std::vector<double>& t) {
    const double v = objective(c.at(t[0]), c.at(t[1]));
    return std::isfinite(v) ? v : -std::numeric_limits<double>::infinity();
  };
  const double span = c.hi - c.lo;
  const double step = c.periodic ? span / kPairGrid : span / (kPairGrid - 1);
  std::vector<double> best_t{c.lo, c.lo};
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < kPairGrid; ++i) {
    for (int j = 0; j < kPairGrid; ++j) {
      std::vector<double> t{c.lo + i * step, c.lo + j * step};
      const double v = f(t);
      if (v > best) {
        best = v;
        best_t = t;
      }
    }
  }
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> lo(2, c.periodic ? -inf : c.lo), hi(2, c.periodic ? inf : c.hi);
  const double refined = detail::refine_coordinatewise(f, best_t, {step, step}, lo, hi, kResolution);
  return std::max({best, refined, 0.0});
}

double cross_ratio_unchecked(const Point& a, const Point& b, const Point& c, const Point& d) {
  const double num = cr_factor(a, c) * cr_factor(b, d);
  if (num == 0.0) return 0.0;
  return num / (cr_factor(a, b) * cr_factor(c, d));
}

double lp_combine(ExtendedReal p, double u, double v) {
  const double hi = std::max(u, v), lo = std::min(u, v);
  if (p.is_pos_inf() || hi == 0.0 || std::isinf(hi)) return hi;
  const double pv = p.value();
  return hi * std::pow(1.0 + std::pow(lo / hi, pv), 1.0 / pv);
}

}  // namespace

double boundary_distance(const DomainSpec& g, const Point& x) {
  require_inside(g, x, "boundary_distance");
  return std::visit(
      [&x](const auto& dom) -> double {
        using T = std::decay_t<decltype(dom)>;
        if constexpr (std::is_same_v<T, domains::HalfPlane>) {
          return x.coords()[1];
        } else if constexpr (std::is_same_v<T, domains::UnitBall>) {
          return 1.0 - x.norm();
        } else if constexpr (std::is_same_v<T, domains::PuncturedSpace>) {
          double d = std::numeric_limits<double>::infinity();
          for (const auto& a : dom.punctures) d = std::min(d, euclidean(x, a));
          return d;
        } else {
          if (dom.distance) return dom.distance(x);
          double d = std::numeric_limits<double>::infinity();
          for (const auto& a : dom.boundary) {
            if (a.is_finite()) d = std::min(d, euclidean(x, a));
          }
          return d;
        }
      },
      g.variant());
}

double rho_sup(const WeightFunction& m, const DomainSpec& g, const Point& x, const Point& y) {
  require_inside(g, x, "rho_sup");
  require_inside(g, y, "rho_sup");
  const double dist = euclidean(x, y);
  if (dist == 0.0) return 0.0;
  if (!g.has_analytic_boundary()) {
    double best = 0.0;
    for (const auto& a : g.finite_boundary()) {
      best = std::max(best, quotient(m, dist, euclidean(x, a), euclidean(y, a)));
    }
    return best;
  }
  auto objective = [&](const Point& a) {
    if (a.is_infinite()) return 0.0;
    return quotient(m, dist, euclidean(x, a), euclidean(y, a));
  };
  if (std::holds_alternative<domains::HalfPlane>(g.variant())) {
    return sup_on_curve(half_plane_curve(x, y), objective, kBoundaryGrid);
  }
  if (g.dim() == 1) return std::max(objective(Point{-1.0}), objective(Point{1.0}));
  if (g.dim() == 2) return sup_on_curve(ball_curve(x, y), objective, kBoundaryGrid);

  // n >= 3: |x - a|^2 = |x|^2 + 1 - 2 <x, w>, w the projection of a onto span{x, y},
  // and every w in the closed unit disc of that plane is attained.
  auto [e1, e2] = plane_basis(x.coords(), y.coords());
  const double x1 = x.coords().dot(e1), x2 = x.coords().dot(e2);
  const double y1 = y.coords().dot(e1), y2 = y.coords().dot(e2);
  const double nx2 = x.coords().squaredNorm(), ny2 = y.coords().squaredNorm();
  auto disc = [&](const std::vector<double>& rt) {
    const double w1 = rt[0] * std::cos(rt[1]), w2 = rt[0] * std::sin(rt[1]);
    const double dx = std::sqrt(std::max(0.0, nx2 + 1.0 - 2.0 * (x1 * w1 + x2 * w2)));
    const double dy = std::sqrt(std::max(0.0, ny2 + 1.0 - 2.0 * (y1 * w1 + y2 * w2)));
    return quotient(m, dist, dx, dy);
  };
  std::vector<double> best_rt{1.0, 0.0};
  double best = -std::numeric_limits<double>::infinity();
  const double dt = 2.0 * kPi / kBoundaryGrid;
  for (int k = 0; k < kDiscRadial; ++k) {
    const double r = static_cast<double>(k) / (kDiscRadial - 1);
    for (int j = 0; j < (k == 0 ? 1 : kBoundaryGrid); ++j) {
      std::vector<double> rt{r, j * dt};
      const double v = disc(rt);
      if (v > best) {
        best = v;
        best_rt = rt;
      }
    }
  }
  const double inf = std::numeric_limits<double>::infinity();
  const double refined = detail::refine_coordinatewise(disc, best_rt, {1.0 / (kDiscRadial - 1), dt}, {0.0, -inf},
                                                       {1.0, inf}, kResolution);
  return std::max(best, refined);
}

double j_metric(const DomainSpec& g, const Point& x, const Point& y) {
  const double dx = boundary_distance(g, x);
  const double dy = boundary_distance(g, y);
  const double dist = euclidean(x, y);
  if (dist == 0.0) return 0.0;
  return std::log1p(dist / std::min(dx, dy));
}

double cross_ratio(const CrossRatioArgs& args) {
  if (args.a == args.b) throw InvalidParameter("cross_ratio: a and b must differ");
  if (args.c == args.d) throw InvalidParameter("cross_ratio: c and d must differ");
  for (const Point* p : {&args.a, &args.b, &args.c, &args.d}) {
    if (!p->is_infinite() && p->dim() == 0) throw InvalidParameter("cross_ratio: empty point");
  }
  return cross_ratio_unchecked(args.a, args.b, args.c, args.d);
}

double delta_p(const DomainSpec& g, ExtendedReal p, const Point& x, const Point& y) {
  if (!(p.value() > 0.0)) throw InvalidParameter("delta_p: p must be positive or inf");
  require_inside(g, x, "delta_p");
  require_inside(g, y, "delta_p");
  if (x == y) return 0.0;
  const double s = pair_sup(g, x, y, [&](const Point& a, const Point& b) {
    if (a == b) return 0.0;
    return lp_combine(p, cross_ratio_unchecked(x, a, y, b), cross_ratio_unchecked(x, b, y, a));
  });
  return std::log1p(s);
}

double rho_prime(const WeightFunction& m, const DomainSpec& g, const Point& x, const Point& y) {
  require_inside(g, x, "rho_prime");
  require_inside(g, y, "rho_prime");
  if (x == y) return 0.0;
  return pair_sup(g, x, y, [&](const Point& a, const Point& b) {
    if (a == b) return 0.0;
    // |x,y,a,b| = 1 / |x,a,y,b|
    const double u = cross_ratio_unchecked(x, a, y, b), v = cross_ratio_unchecked(x, b, y, a);
    if (u == 0.0 || v == 0.0) return 0.0;
    const double w = weight_eval(m, 1.0 / u, 1.0 / v);
    return w > 0.0 ? 1.0 / w : std::numeric_limits<double>::infinity();
  });
}

double rho_double_prime(const WeightFunction& m, const DomainSpec& g, const Point& x, const Point& y) {
  const double dx = boundary_distance(g, x);
  const double dy = boundary_distance(g, y);
  return quotient(m, euclidean(x, y), dx, dy);
}

namespace {

void require_half_plane(const Point& x, const char* what) {
  if (!x.is_finite() || x.dim() != 2 || !(x.coords()[1] > 0.0)) {
    throw DomainError(std::string(what) + ": point " + x.to_string() + " is not in the upper half-plane");
  }
}

}  // namespace

double iota(ExtendedReal s, const Point& x, const Point& y) {
  require_half_plane(x, "iota");
  require_half_plane(y, "iota");
  if (!(s.value() > 1.0)) throw InvalidParameter("iota: s must exceed 1");
  const double d = euclidean(x, y);
  if (d == 0.0) return 0.0;
  const double h = 0.5 * (x.coords()[1] + y.coords()[1]);
  const double base = d * d + 4.0 * h * h;
  if (s.is_pos_inf()) return 2.0 * d / std::sqrt(base);
  return d / std::pow(base, (1.0 - 1.0 / s.value()) / 2.0);
}

double rho_tilde_halfplane(double s, const Point& x, const Point& y, double rel_tol) {
  require_half_plane(x, "rho_tilde_halfplane");
  require_half_plane(y, "rho_tilde_halfplane");
  if (!(s > 1.0) || !std::isfinite(s)) throw InvalidParameter("rho_tilde_halfplane: s must be finite and exceed 1");
  const double d = euclidean(x, y);
  if (d == 0.0) return 0.0;
  const double center = 0.5 * (x.coords()[0] + y.coords()[0]);
  const double scale = std::max({d, x.coords()[1], y.coords()[1]});
  const WeightFunction a2 = WeightFunction::power(2.0);
  auto integrand = [&](double z) {
    const Point a{center + scale * z, 0.0};
    const Point xa(Eigen::VectorXd(x.coords() - a.coords()));
    const Point ya(Eigen::VectorXd(y.coords() - a.coords()));
    return std::pow(rho(a2, xa, ya), s) * scale;
  };
  const double natural = std::pow(d, s) * std::pow(scale, 1.0 - s);
  const QuadratureResult r = integrate_real_line(integrand, s, natural, rel_tol * natural);
  return std::pow(r.value, 1.0 / s);
}

double c_constant(double s) {
  if (!(s > 1.0) || !std::isfinite(s)) throw InvalidParameter("c_constant: s must be finite and exceed 1");
  const double log_integral = 0.5 * std::log(kPi) + std::lgamma((s - 1.0) / 2.0) - std::lgamma(s / 2.0);
  return std::exp(log_integral / s);
}

}  // namespace relmetric
