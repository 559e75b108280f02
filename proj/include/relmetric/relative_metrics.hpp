#pragma once

#include <string>

#include "relmetric/extended_real.hpp"
#include "relmetric/means.hpp"
#include "relmetric/point.hpp"

namespace relmetric {

/// Monotone transforms that carry a distance d to log(1+d), arcsinh d or arccosh(1+d).
enum class MetricKind { Raw, Log1p, Arcsinh, Arccosh1p };

std::string to_string(MetricKind kind);
MetricKind metric_kind_from_string(const std::string& name);

/// M-relative distance |x - y| / M(|x|, |y|).
///
/// Equal points give 0 (including 0/0 at the origin). Throws DegenerateWeight when
/// M(|x|,|y|) = 0 for distinct points and DomainError for the point at infinity.
double rho(const WeightFunction& m, const Point& x, const Point& y);

/// Same distance on the real line: |a - b| / M(|a|, |b|).
double rho(const WeightFunction& m, double a, double b);

/// rho with M = A_p^q.
double rho_pq(ExtendedReal p, double q, const Point& x, const Point& y);

double transform(double d, MetricKind kind);

/// log(1 + c |x - y| / A_p(|x|, |y|)), i.e. log(1 + rho_M) with M = A_p / c.
double lambda_apc(ExtendedReal p, double c, const Point& x, const Point& y);

/// Chordal distance on the compactified space, in [0, 1].
double chordal(const Point& x, const Point& y);

/// |x - y| / ((1 + |x|^p)^(1/p) (1 + |y|^p)^(1/p)), p > 0. Equals the chordal
/// distance at p = 2; the point at infinity is handled as a limit.
double example_metric(double p, const Point& x, const Point& y);

}  // namespace relmetric
