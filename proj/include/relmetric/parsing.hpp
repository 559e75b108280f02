#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "relmetric/extended_real.hpp"
#include "relmetric/means.hpp"
#include "relmetric/point.hpp"

namespace relmetric {

/// "inf", "+inf", "-inf" or a decimal literal.
ExtendedReal parse_extended_real(std::string_view text);

double parse_real(std::string_view text);

/// Comma- or whitespace-separated coordinates, or "inf" for the point at infinity.
Point parse_point(std::string_view text);

/// Named scalar functions on [0, inf), written "name:key=value,...":
///
///     powone:p=2       (1 + x^p)^(1/p)
///     exp              e^x
///     quad:a=1,b=0,c=1 a + b x + c x^2
///     sqrt1p           sqrt(x) + 1
///     affine:a=1,b=2   a + b x
///     const:c=3        c
///     maxone           max(1, x)
///     maxaffine:a=,b=  max(1, a + b x)
///     recip1p          1 / (1 + x)
struct NamedScalarFunction {
  std::string spec;
  ScalarFunction f;
};
NamedScalarFunction parse_scalar_function(std::string_view text);

/// Weight-function grammar "family:key=value,...":
///
///     power:p=1,q=1     A_p^q (q defaults to 1; p accepts inf / -inf)
///     scaled:p=-1,c=2   c A_p
///     min | max
///     const:c=1
///     stolarsky:alpha=1 S_alpha (alpha = 1 is the logarithmic mean)
///     product:f=powone,p=2   f(x) f(y), remaining keys parameterize f
WeightFunction parse_weight(std::string_view text);

/// "lo:hi:step" (inclusive) or a single value.
std::vector<double> parse_range(std::string_view text);

}  // namespace relmetric
