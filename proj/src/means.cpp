#include "relmetric/means.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

namespace relmetric {

namespace {

constexpr double kDiagonalBand = 1e-8;

void require_nonnegative(double x, double y, const char* what) {
  if (!(x >= 0.0) || !(y >= 0.0) || std::isinf(x) || std::isinf(y)) {
    std::ostringstream os;
    os << what << ": arguments must be finite and non-negative (got " << x << ", " << y << ")";
    throw InvalidParameter(os.str());
  }
}

std::string format_extended(ExtendedReal p) {
  if (p.is_pos_inf()) return "inf";
  if (p.is_neg_inf()) return "-inf";
  std::ostringstream os;
  os.precision(17);
  os << p.value();
  return os.str();
}

std::string format_real(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

double checked_scalar(const weights::Product& w, double t) {
  const double v = w.f(t);
  if (!std::isfinite(v) || !(v > 0.0)) {
    std::ostringstream os;
    os << "product weight: " << w.name << "(" << t << ") = " << v << " is not positive and finite";
    throw EvaluationError(os.str());
  }
  return v;
}

}  // namespace

double power_mean(ExtendedReal p, double x, double y) {
  require_nonnegative(x, y, "power_mean");
  const double lo = std::min(x, y);
  const double hi = std::max(x, y);
  if (p.is_neg_inf()) return lo;
  if (p.is_pos_inf()) return hi;
  const double pv = p.value();
  if (pv == 0.0) return std::sqrt(x) * std::sqrt(y);
  if (hi == 0.0) return 0.0;
  if (pv < 0.0) {
    if (lo == 0.0) return 0.0;
    // factor out the minimum: (hi/lo)^p <= 1
    const double lr = std::log(hi / lo);
    return lo * std::exp(std::log1p(std::expm1(pv * lr) / 2.0) / pv);
  }
  if (lo == 0.0) return hi * std::exp(-std::log(2.0) / pv);
  const double lr = std::log(lo / hi);
  return hi * std::exp(std::log1p(std::expm1(pv * lr) / 2.0) / pv);
}

double logarithmic_mean(double x, double y) { return stolarsky_quasimean(1.0, x, y); }

double stolarsky_quasimean(double alpha, double x, double y) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw InvalidParameter("stolarsky_quasimean: alpha must lie in (0, 1], got " + format_real(alpha));
  }
  require_nonnegative(x, y, "stolarsky_quasimean");
  if (x < y) std::swap(x, y);
  if (x == y) return std::pow(x, alpha);
  if (x - y <= kDiagonalBand * x) return std::pow((x + y) / 2.0, alpha);
  if (y == 0.0) return alpha == 1.0 ? 0.0 : (1.0 - alpha) * std::pow(x, alpha);
  const double lr = std::log1p((x - y) / y);
  if (alpha == 1.0) return (x - y) / lr;
  const double beta = 1.0 - alpha;
  return beta * (x - y) / (std::pow(y, beta) * std::expm1(beta * lr));
}

double stolarsky_mean(double q, double x, double y) {
  if (!(q >= 0.0 && q < 1.0)) {
    throw InvalidParameter("stolarsky_mean: q must lie in [0, 1), got " + format_real(q));
  }
  if (!(x > 0.0) || !(y > 0.0)) {
    throw InvalidParameter("stolarsky_mean: arguments must be positive");
  }
  const double s = stolarsky_quasimean(1.0 - q, x, y);
  return q == 0.0 ? s : std::pow(s, 1.0 / (1.0 - q));
}

WeightFunction WeightFunction::power(ExtendedReal p, double q) {
  if (!(q > 0.0) || !std::isfinite(q)) throw InvalidParameter("power weight: q must be positive and finite");
  return WeightFunction(weights::PowerMeanPower{p, q});
}

WeightFunction WeightFunction::product(ScalarFunction f, std::string name) {
  if (!f) throw InvalidParameter("product weight: empty function");
  return WeightFunction(weights::Product{std::move(f), std::move(name)});
}

WeightFunction WeightFunction::scaled(ExtendedReal p, double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw InvalidParameter("scaled weight: scale must be positive and finite");
  }
  return WeightFunction(weights::ScaledPowerMean{p, scale});
}

WeightFunction WeightFunction::min() { return WeightFunction(weights::MinMean{}); }
WeightFunction WeightFunction::max() { return WeightFunction(weights::MaxMean{}); }

WeightFunction WeightFunction::constant(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw InvalidParameter("constant weight: c must be positive");
  return WeightFunction(weights::Constant{c});
}

WeightFunction WeightFunction::stolarsky(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw InvalidParameter("stolarsky weight: alpha must lie in (0, 1]");
  }
  return WeightFunction(weights::StolarskyQuasimean{alpha});
}

WeightFunction WeightFunction::custom(BivariateFunction g, std::string name) {
  if (!g) throw InvalidParameter("custom weight: empty function");
  return WeightFunction(weights::Custom{std::move(g), std::move(name)});
}

double WeightFunction::operator()(double x, double y) const { return weight_eval(*this, x, y); }

std::optional<double> WeightFunction::homogeneity_degree() const {
  return std::visit(
      [](const auto& w) -> std::optional<double> {
        using T = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<T, weights::PowerMeanPower>) {
          if (w.q > 0.0) return w.q;
          return std::nullopt;
        } else if constexpr (std::is_same_v<T, weights::ScaledPowerMean> ||
                             std::is_same_v<T, weights::MinMean> ||
                             std::is_same_v<T, weights::MaxMean>) {
          return 1.0;
        } else if constexpr (std::is_same_v<T, weights::StolarskyQuasimean>) {
          return w.alpha;
        } else {
          return std::nullopt;
        }
      },
      v_);
}

std::string WeightFunction::describe() const {
  return std::visit(
      [](const auto& w) -> std::string {
        using T = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<T, weights::PowerMeanPower>) {
          return "power:p=" + format_extended(w.p) + ",q=" + format_real(w.q);
        } else if constexpr (std::is_same_v<T, weights::Product>) {
          return "product:f=" + w.name;
        } else if constexpr (std::is_same_v<T, weights::ScaledPowerMean>) {
          return "scaled:p=" + format_extended(w.p) + ",c=" + format_real(w.scale);
        } else if constexpr (std::is_same_v<T, weights::MinMean>) {
          return "min";
        } else if constexpr (std::is_same_v<T, weights::MaxMean>) {
          return "max";
        } else if constexpr (std::is_same_v<T, weights::Constant>) {
          return "const:c=" + format_real(w.c);
        } else if constexpr (std::is_same_v<T, weights::StolarskyQuasimean>) {
          return "stolarsky:alpha=" + format_real(w.alpha);
        } else {
          return "custom:" + w.name;
        }
      },
      v_);
}

double weight_eval(const WeightFunction& m, double x, double y) {
  require_nonnegative(x, y, "weight_eval");
  return std::visit(
      [x, y](const auto& w) -> double {
        using T = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<T, weights::PowerMeanPower>) {
          const double a = power_mean(w.p, x, y);
          return w.q == 1.0 ? a : std::pow(a, w.q);
        } else if constexpr (std::is_same_v<T, weights::Product>) {
          return checked_scalar(w, x) * checked_scalar(w, y);
        } else if constexpr (std::is_same_v<T, weights::ScaledPowerMean>) {
          return w.scale * power_mean(w.p, x, y);
        } else if constexpr (std::is_same_v<T, weights::MinMean>) {
          return std::min(x, y);
        } else if constexpr (std::is_same_v<T, weights::MaxMean>) {
          return std::max(x, y);
        } else if constexpr (std::is_same_v<T, weights::Constant>) {
          return w.c;
        } else if constexpr (std::is_same_v<T, weights::StolarskyQuasimean>) {
          return stolarsky_quasimean(w.alpha, x, y);
        } else {
          const double v = w.g(x, y);
          if (std::isnan(v) || v < 0.0) {
            throw EvaluationError("custom weight " + w.name + " returned an invalid value");
          }
          return v;
        }
      },
      m.variant());
}

double trace(const WeightFunction& m, double x) {
  if (!(x >= 1.0)) throw InvalidParameter("trace: x must be >= 1, got " + format_real(x));
  return weight_eval(m, x, 1.0);
}

}  // namespace relmetric
