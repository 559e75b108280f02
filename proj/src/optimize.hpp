#pragma once

// One-dimensional and coordinate-wise maximizers shared by the boundary searches.

#include <cmath>
#include <functional>
#include <vector>

namespace relmetric::detail {

struct Best1D {
  double arg = 0.0;
  double value = -INFINITY;
};

// Golden-section search for a maximum of f on [a, b]; stops when the bracket is
// narrower than `resolution`. Returns the best probe seen.
inline Best1D golden_max(const std::function<double(double)>& f, double a, double b, double resolution) {
  constexpr double kInvPhi = 0.6180339887498949;
  Best1D best;
  double c = b - kInvPhi * (b - a), d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  auto track = [&best](double x, double v) {
    if (v > best.value) best = {x, v};
  };
  track(c, fc);
  track(d, fd);
  for (int it = 0; it < 200 && (b - a) > resolution; ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
      track(c, fc);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
      track(d, fd);
    }
  }
  return best;
}

// Coordinate-wise golden refinement of a maximum located near `x`. Coordinate i
// is searched in [x_i - h_i, x_i + h_i] clipped to [lo_i, hi_i]; brackets halve
// every sweep until all are below `resolution`. Only improvements are accepted.
inline double refine_coordinatewise(const std::function<double(const std::vector<double>&)>& f,
                                    std::vector<double>& x, std::vector<double> h, const std::vector<double>& lo,
                                    const std::vector<double>& hi, double resolution) {
  double best = f(x);
  for (int sweep = 0; sweep < 80; ++sweep) {
    bool open = false;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double a = std::max(lo[i], x[i] - h[i]);
      const double b = std::min(hi[i], x[i] + h[i]);
      if (b - a > resolution) {
        open = true;
        std::vector<double> probe = x;
        const Best1D r = golden_max(
            [&](double t) {
              probe[i] = t;
              return f(probe);
            },
            a, b, resolution);
        if (r.value > best) {
          best = r.value;
          x[i] = r.arg;
        }
      }
      h[i] *= 0.5;
    }
    if (!open) break;
  }
  return best;
}

}  // namespace relmetric::detail
