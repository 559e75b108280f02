#pragma once

#include <functional>

namespace relmetric {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
};

/// Adaptive Simpson on [a, b] with Richardson acceptance |S2 - S1| <= 15 tol.
/// Throws QuadratureFailure if the tolerance is not met within `max_depth`
/// bisections or the integrand is not finite.
QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double a, double b, double abs_tol,
                                  int max_depth = 48);

/// Integral over the real line of f(center + scale z) dz' (with dz' = scale dz),
/// for integrands with |f| ~ tail |z|^-decay, decay > 1.
///
/// Uses z = sign(t) |tan t|^g on (-pi/2, pi/2) with g = max(1, 1/(decay-1)), which
/// is the plain tangent map for decay >= 2 and keeps the mapped integrand bounded
/// for slower decay; `tail` gives the endpoint limit.
QuadratureResult integrate_real_line(const std::function<double(double)>& f, double decay, double tail,
                                     double abs_tol);

}  // namespace relmetric
