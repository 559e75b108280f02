#include "relmetric/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "relmetric/error.hpp"

namespace relmetric {

namespace {

struct SimpsonState {
  const std::function<double(double)>& f;
  long evaluations = 0;
  bool failed = false;
  double error = 0.0;

  double eval(double x) {
    ++evaluations;
    const double v = f(x);
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os << "integrand is not finite at " << x;
      throw QuadratureFailure(os.str());
    }
    return v;
  }

  double recurse(double a, double b, double fa, double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = eval(lm), frm = eval(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol) {
      error += std::abs(delta) / 15.0;
      return left + right + delta / 15.0;
    }
    if (depth <= 0) {
      failed = true;
      error += std::abs(delta) / 15.0;
      return left + right + delta / 15.0;
    }
    return recurse(a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           recurse(m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
  }
};

}  // namespace

QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double a, double b, double abs_tol,
                                  int max_depth) {
  if (!(abs_tol > 0.0)) throw InvalidParameter("adaptive_simpson: tolerance must be positive");
  SimpsonState st{f};
  const double m = 0.5 * (a + b);
  const double fa = st.eval(a), fm = st.eval(m), fb = st.eval(b);
  // Start from two halves so a symmetric integrand cannot fool the first estimate.
  const double flm = st.eval(0.5 * (a + m)), frm = st.eval(0.5 * (m + b));
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double value = st.recurse(a, m, fa, flm, fm, left, abs_tol / 2.0, max_depth) +
                       st.recurse(m, b, fm, frm, fb, right, abs_tol / 2.0, max_depth);
  if (st.failed) {
    std::ostringstream os;
    os << "adaptive Simpson did not reach tolerance " << abs_tol << " (error estimate " << st.error << ")";
    throw QuadratureFailure(os.str());
  }
  return {value, st.error, st.evaluations};
}

QuadratureResult integrate_real_line(const std::function<double(double)>& f, double decay, double tail,
                                     double abs_tol) {
  if (!(decay > 1.0)) throw InvalidParameter("integrate_real_line: decay exponent must exceed 1");
  const double g = std::max(1.0, 1.0 / (decay - 1.0));
  // limit of the mapped integrand at t -> +-pi/2
  const double edge = (g * (decay - 1.0) <= 1.0 + 1e-12) ? tail * g : 0.0;
  const double half_pi = std::numbers::pi / 2.0;
  auto mapped = [&](double t) -> double {
    const double at = std::abs(t);
    if (at >= half_pi) return edge;
    const double tn = std::tan(at);
    const double z = std::pow(tn, g);
    const double jac = g * std::pow(tn, g - 1.0) * (1.0 + tn * tn);
    if (!std::isfinite(z) || !std::isfinite(jac)) return edge;
    const double v = f(t < 0 ? -z : z) * jac;
    return std::isfinite(v) ? v : edge;
  };
  const QuadratureResult lo = adaptive_simpson(mapped, -half_pi, 0.0, abs_tol / 2.0);
  const QuadratureResult hi = adaptive_simpson(mapped, 0.0, half_pi, abs_tol / 2.0);
  return {lo.value + hi.value, lo.error_estimate + hi.error_estimate, lo.evaluations + hi.evaluations};
}

}  // namespace relmetric
