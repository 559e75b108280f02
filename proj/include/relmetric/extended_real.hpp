#pragma once

#include <cmath>
#include <compare>
#include <limits>

#include "relmetric/error.hpp"

namespace relmetric {

// A real number or one of +/-infinity. NaN is rejected at construction so that the
// three special branches of the power mean (p = -inf, 0, +inf) are always explicit.
class ExtendedReal {
 public:
  constexpr ExtendedReal() = default;
  ExtendedReal(double v) : value_(v) {  // NOLINT(google-explicit-constructor)
    if (std::isnan(v)) throw InvalidParameter("extended real cannot be NaN");
  }

  static ExtendedReal pos_inf() { return {std::numeric_limits<double>::infinity()}; }
  static ExtendedReal neg_inf() { return {-std::numeric_limits<double>::infinity()}; }

  double value() const { return value_; }
  bool is_finite() const { return std::isfinite(value_); }
  bool is_pos_inf() const { return value_ == std::numeric_limits<double>::infinity(); }
  bool is_neg_inf() const { return value_ == -std::numeric_limits<double>::infinity(); }

  friend auto operator<=>(const ExtendedReal&, const ExtendedReal&) = default;

 private:
  double value_ = 0.0;
};

}  // namespace relmetric
