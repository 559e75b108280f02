#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>

#include "relmetric/extended_real.hpp"

namespace relmetric {

using ScalarFunction = std::function<double(double)>;
using BivariateFunction = std::function<double(double, double)>;

/// Power mean of order p on [0, inf)^2.
///
/// p = -inf, 0, +inf give min, geometric mean and max. For p <= 0 the mean vanishes
/// as soon as one argument is zero. The finite case is evaluated as
/// b * exp(log1p(expm1(p log r) / 2) / p), where b is max(x,y) for p > 0 and
/// min(x,y) for p < 0 and r = other / b, so r^p never exceeds one.
double power_mean(ExtendedReal p, double x, double y);

/// Logarithmic mean (x - y) / (log x - log y), with L(x,x) = x and L(x,0) = 0.
double logarithmic_mean(double x, double y);

/// alpha-quasimean S_alpha(x,y) = (1-alpha)(x-y) / (x^(1-alpha) - y^(1-alpha)),
/// 0 < alpha <= 1, S_1 = L. S_alpha(x,x) = x^alpha.
///
/// Within relative distance 1e-8 of the diagonal the midpoint power ((x+y)/2)^alpha
/// is returned instead (error O(eps^2)).
double stolarsky_quasimean(double alpha, double x, double y);

/// Stolarsky mean St_q = S_(1-q)^(1/(1-q)) for 0 <= q < 1, x, y > 0. St_0 = L.
double stolarsky_mean(double q, double x, double y);

namespace weights {

// A_p^q.
struct PowerMeanPower {
  ExtendedReal p;
  double q = 1.0;
};

// f(x) f(y); f must be positive and finite on [0, inf).
struct Product {
  ScalarFunction f;
  std::string name = "f";
};

// c * A_p.
struct ScaledPowerMean {
  ExtendedReal p;
  double scale = 1.0;
};

struct MinMean {};
struct MaxMean {};

struct Constant {
  double c = 1.0;
};

// S_alpha as a weight (S_1 = L).
struct StolarskyQuasimean {
  double alpha = 1.0;
};

// Any symmetric g; symmetry is the caller's responsibility.
struct Custom {
  BivariateFunction g;
  std::string name = "custom";
};

}  // namespace weights

/// A symmetric weight M: [0,inf)^2 -> [0,inf) from a closed family of shapes.
/// Immutable once built; safe to share between threads as long as the wrapped
/// callables are.
class WeightFunction {
 public:
  using Variant = std::variant<weights::PowerMeanPower, weights::Product, weights::ScaledPowerMean,
                               weights::MinMean, weights::MaxMean, weights::Constant,
                               weights::StolarskyQuasimean, weights::Custom>;

  static WeightFunction power(ExtendedReal p, double q = 1.0);
  static WeightFunction product(ScalarFunction f, std::string name = "f");
  static WeightFunction scaled(ExtendedReal p, double scale);
  static WeightFunction min();
  static WeightFunction max();
  static WeightFunction constant(double c);
  static WeightFunction stolarsky(double alpha);
  static WeightFunction custom(BivariateFunction g, std::string name = "custom");

  const Variant& variant() const { return v_; }

  double operator()(double x, double y) const;

  // alpha when the shape is known to be alpha-homogeneous with alpha > 0.
  std::optional<double> homogeneity_degree() const;

  std::string describe() const;

 private:
  explicit WeightFunction(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

/// M(x, y) for x, y >= 0.
double weight_eval(const WeightFunction& m, double x, double y);

/// t_M(x) = M(x, 1), x >= 1.
double trace(const WeightFunction& m, double x);

}  // namespace relmetric
