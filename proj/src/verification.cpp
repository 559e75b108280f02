#include "relmetric/verification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "parallel.hpp"
#include "relmetric/error.hpp"

namespace relmetric {

namespace {

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g;
  g.reserve(static_cast<std::size_t>(n));
  const double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < n; ++i) g.push_back(std::exp(a + (b - a) * i / std::max(1, n - 1)));
  return g;
}

// f(t, y) evaluated safely; NaN on any failure.
template <class F>
double safe(F&& f) {
  try {
    const double v = f();
    return std::isfinite(v) ? v : std::numeric_limits<double>::quiet_NaN();
  } catch (const Error&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

bool exceeds(double lhs, double rhs, double tol) {
  return lhs - rhs > tol * std::max({std::abs(lhs), std::abs(rhs), 1e-300});
}

PredicateResult mi_on_grid(const std::function<double(double, double)>& h, const std::vector<double>& ys,
                           const SearchConfig& cfg) {
  const std::vector<double> ts = log_grid(cfg.lo, cfg.hi, cfg.coarse_grid_points);
  for (double y : ys) {
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
      const double t0 = ts[i], t1 = ts[i + 1];
      const double a = safe([&] { return h(t0, y); });
      const double b = safe([&] { return h(t1, y); });
      if (std::isnan(a) || std::isnan(b)) continue;
      if (exceeds(a, b, cfg.violation_tolerance)) {
        return {PredicateWitness{"increasing", {t0, t1, y}, a, b}};
      }
      if (exceeds(b / t1, a / t0, cfg.violation_tolerance)) {
        return {PredicateWitness{"ratio-decreasing", {t0, t1, y}, b / t1, a / t0}};
      }
    }
  }
  return {};
}

double point_segment_distance(double px, double py, double ax, double ay, double bx, double by) {
  const double dx = bx - ax, dy = by - ay;
  const double len2 = dx * dx + dy * dy;
  const double t = len2 > 0.0 ? std::clamp(((px - ax) * dx + (py - ay) * dy) / len2, 0.0, 1.0) : 0.0;
  return std::hypot(px - (ax + t * dx), py - (ay + t * dy));
}

constexpr double kBandSlack = 1e-9;
constexpr double kOnCurve = 1e-12;

}  // namespace

void SearchConfig::validate() const {
  auto fail = [](const std::string& what) { throw ConfigError("search config: " + what); };
  if (!(lo > 0.0) || !std::isfinite(lo)) fail("lo must be positive and finite");
  if (!(hi > lo) || !std::isfinite(hi)) fail("hi must be finite and exceed lo");
  if (coarse_grid_points < 2) fail("coarse_grid_points must be >= 2");
  if (refine_iterations < 0) fail("refine_iterations must be >= 0");
  if (!(violation_tolerance > std::numeric_limits<double>::epsilon()) || !std::isfinite(violation_tolerance)) {
    fail("violation_tolerance must exceed machine epsilon");
  }
  if (random_triples < 0) fail("random_triples must be >= 0");
  if (top_k < 1) fail("top_k must be >= 1");
  if (order_samples < 2) fail("order_samples must be >= 2");
  if (!(order_hi > 1.0) || !std::isfinite(order_hi)) fail("order_hi must be finite and exceed 1");
  if (!(order_tolerance >= 0.0) || !std::isfinite(order_tolerance)) fail("order_tolerance must be >= 0");
}

PredicateResult mi_check(const WeightFunction& m, const SearchConfig& cfg) {
  cfg.validate();
  std::vector<double> ys = log_grid(cfg.lo, cfg.hi, cfg.coarse_grid_points);
  ys.insert(ys.begin(), 0.0);
  return mi_on_grid([&m](double t, double y) { return weight_eval(m, t, y); }, ys, cfg);
}

PredicateResult mi_check(const ScalarFunction& f, const SearchConfig& cfg) {
  cfg.validate();
  return mi_on_grid([&f](double t, double) { return f(t); }, {0.0}, cfg);
}

PredicateResult convexity_check(const ScalarFunction& f, const SearchConfig& cfg) {
  cfg.validate();
  std::vector<double> xs = log_grid(cfg.lo, cfg.hi, cfg.coarse_grid_points);
  xs.insert(xs.begin(), 0.0);
  std::vector<double> fs;
  fs.reserve(xs.size());
  for (double x : xs) fs.push_back(safe([&] { return f(x); }));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t k = 0; k < i; ++k) {
      for (std::size_t j = 0; j < k; ++j) {
        const double x = xs[i], z = xs[k], y = xs[j];
        const double lhs = (x - y) * fs[k];
        const double rhs = (x - z) * fs[j] + (z - y) * fs[i];
        if (std::isnan(lhs) || std::isnan(rhs)) continue;
        if (lhs - rhs > cfg.violation_tolerance * std::max({std::abs(lhs), std::abs(rhs), 1.0})) {
          return {PredicateWitness{"convex", {y, z, x}, lhs, rhs}};
        }
      }
    }
  }
  return {};
}

std::string to_string(OrderReport::Verdict v) {
  return v == OrderReport::Verdict::Increasing ? "increasing" : "decreasing-somewhere";
}

OrderReport::Verdict verdict_from_string(const std::string& s) {
  if (s == "increasing") return OrderReport::Verdict::Increasing;
  if (s == "decreasing-somewhere") return OrderReport::Verdict::DecreasingSomewhere;
  throw ParseError("unknown order verdict '" + s + "'");
}

OrderReport strong_order_check(const WeightFunction& m, const WeightFunction& n, const SearchConfig& cfg) {
  cfg.validate();
  OrderReport r;
  const std::vector<double> xs = log_grid(1.0, cfg.order_hi, cfg.order_samples);
  std::optional<std::pair<double, double>> prev;
  for (double x : xs) {
    const double tn = trace(n, x);
    if (!(tn > 0.0) || !std::isfinite(tn)) {
      throw InvalidParameter("strong_order_check: trace of " + n.describe() + " is not positive at " +
                             std::to_string(x));
    }
    const double g = trace(m, x) / tn;
    if (!std::isfinite(g)) continue;
    r.ratio_samples.emplace_back(x, g);
    if (g < 1.0 - cfg.order_tolerance) r.dips_below_one = true;
    if (prev && g < prev->second * (1.0 - cfg.order_tolerance) && !r.witness) {
      r.verdict = OrderReport::Verdict::DecreasingSomewhere;
      r.witness = std::make_pair(prev->first, x);
    }
    prev = std::make_pair(x, g);
  }
  return r;
}

PlemReport plem_conditions(const WeightFunction& m, double alpha, const SearchConfig& cfg) {
  cfg.validate();
  if (!(alpha > 0.0 && alpha <= 1.0)) throw InvalidParameter("plem_conditions: alpha must lie in (0, 1]");
  const std::vector<double> probe = log_grid(1e-3, 1e3, 13);
  for (double x : probe) {
    for (double y : probe) {
      const double base = weight_eval(m, x, y);
      for (double t : {0.5, 3.0}) {
        const double scaled = weight_eval(m, t * x, t * y);
        if (std::abs(scaled - std::pow(t, alpha) * base) > 1e-8 * std::max(scaled, 1e-300)) {
          throw InvalidParameter("plem_conditions: " + m.describe() + " is not " + std::to_string(alpha) +
                                 "-homogeneous on the grid");
        }
      }
    }
    for (std::size_t k = 0; k + 1 < probe.size(); ++k) {
      if (weight_eval(m, probe[k + 1], x) < weight_eval(m, probe[k], x) * (1.0 - 1e-12)) {
        throw InvalidParameter("plem_conditions: " + m.describe() + " is not increasing on the grid");
      }
    }
  }
  const WeightFunction s = WeightFunction::stolarsky(alpha);
  PlemReport r;
  r.sufficient = strong_order_check(m, s, cfg).verdict == OrderReport::Verdict::Increasing;
  r.necessary1 = true;
  r.necessary2 = true;
  const double tol = cfg.order_tolerance;
  for (double x : log_grid(1.0, cfg.order_hi, cfg.order_samples)) {
    const double g1 = trace(m, x) / trace(s, x);
    if (g1 < 1.0 - tol) r.necessary1 = false;
    const double g2 = trace(m, x * x) / trace(s, x * x);
    if (std::isfinite(g2) && g1 > g2 * (1.0 + tol)) r.necessary2 = false;
  }
  return r;
}

std::optional<ViolationReport> lambda_sharpness(double p, double c, const SearchConfig& cfg) {
  if (!(p < 0.0)) throw InvalidParameter("lambda_sharpness: p must be negative");
  if (!(c > 0.0) || !std::isfinite(c)) throw InvalidParameter("lambda_sharpness: c must be positive");
  return triangle_search_1d(WeightFunction::scaled(p, 1.0 / c), cfg, MetricKind::Log1p);
}

std::string to_string(RegionCell::Label l) {
  switch (l) {
    case RegionCell::Label::Metric:
      return "metric";
    case RegionCell::Label::NonMetric:
      return "non-metric";
    case RegionCell::Label::BoundaryBand:
      return "boundary-band";
  }
  return "?";
}

RegionCell::Label label_from_string(const std::string& s) {
  if (s == "metric") return RegionCell::Label::Metric;
  if (s == "non-metric") return RegionCell::Label::NonMetric;
  if (s == "boundary-band") return RegionCell::Label::BoundaryBand;
  throw ParseError("unknown region label '" + s + "'");
}

int RegionTable::disagreements() const {
  int n = 0;
  for (const auto& c : cells) {
    if (c.in_band) continue;
    if ((c.label == RegionCell::Label::Metric) != c.analytic_metric) ++n;
  }
  return n;
}

bool pq_metric_region(double p, double q) {
  return q > 0.0 && q <= 1.0 + kOnCurve && p >= std::max(1.0 - q, (2.0 - q) / 3.0) - kOnCurve;
}

double pq_boundary_distance(double p, double q) {
  const double ray_end = std::max(p, 1.0 / 3.0) + 1.0;
  return std::min({point_segment_distance(p, q, 1.0, 0.0, 0.5, 0.5),
                   point_segment_distance(p, q, 0.5, 0.5, 1.0 / 3.0, 1.0),
                   point_segment_distance(p, q, 1.0 / 3.0, 1.0, ray_end, 1.0)});
}

RegionTable classify_pq_region(const std::vector<double>& p_values, const std::vector<double>& q_values, double step,
                               const SearchConfig& cfg) {
  cfg.validate();
  if (!(step > 0.0) || !std::isfinite(step)) throw ConfigError("classify: step must be positive");
  if (p_values.empty() || q_values.empty()) throw ConfigError("classify: empty parameter range");
  RegionTable table;
  table.step = step;
  table.cells.resize(p_values.size() * q_values.size());
  detail::parallel_for(table.cells.size(), [&](std::size_t idx) {
    RegionCell& cell = table.cells[idx];
    cell.p = p_values[idx / q_values.size()];
    cell.q = q_values[idx % q_values.size()];
    cell.analytic_metric = pq_metric_region(cell.p, cell.q);
    if (!(cell.q > 0.0)) throw ConfigError("classify: q must be positive");
    cell.witness = triangle_search_1d(WeightFunction::power(cell.p, cell.q), cfg);
    cell.in_band = pq_boundary_distance(cell.p, cell.q) <= step + kBandSlack;
    cell.label = cell.witness ? RegionCell::Label::NonMetric : RegionCell::Label::Metric;
    if (cell.in_band && (cell.label == RegionCell::Label::Metric) != cell.analytic_metric) {
      cell.label = RegionCell::Label::BoundaryBand;
    }
  });
  return table;
}

OrderReport power_stolarsky_order(double p, double q, const SearchConfig& cfg) {
  cfg.validate();
  if (!(q >= 0.0 && q < 1.0)) throw InvalidParameter("power_stolarsky_order: q must lie in [0, 1)");
  const double ln2 = std::numbers::ln2;
  // log A_p(e^u, 1) - u
  auto a_part = [p, ln2](double u) {
    if (std::isinf(p)) return p > 0 ? 0.0 : -u;
    if (p > 0.0) return (std::log1p(std::exp(-p * u)) - ln2) / p;
    if (p == 0.0) return -u / 2.0;
    return (std::log1p(std::exp(p * u)) - ln2) / p - u;
  };
  // log St_q(e^u, 1) - u
  auto st_part = [q](double u) {
    if (q == 0.0) return std::log(-std::expm1(-u)) - std::log(u);
    return (std::log(q) + std::log(std::expm1(-u) / std::expm1(-q * u))) / (1.0 - q);
  };
  constexpr double kLogTolerance = 1e-13;
  OrderReport r;
  double run_max = -std::numeric_limits<double>::infinity();
  double run_arg = 1.0;
  for (double u : log_grid(1e-3, 700.0, cfg.order_samples)) {
    const double lg = a_part(u) - st_part(u);
    const double x = std::exp(u);
    r.ratio_samples.emplace_back(x, std::exp(lg));
    if (lg < -kLogTolerance) r.dips_below_one = true;
    if (lg < run_max - kLogTolerance && !r.witness) {
      r.verdict = OrderReport::Verdict::DecreasingSomewhere;
      r.witness = std::make_pair(run_arg, x);
    }
    if (lg > run_max) {
      run_max = lg;
      run_arg = x;
    }
  }
  return r;
}

double stolarsky_boundary_distance(double p, double q) {
  return std::min(point_segment_distance(p, q, 1.0 / 3.0, 0.0, 0.5, 0.5),
                  point_segment_distance(p, q, 0.5, 0.5, 1.0, 1.0));
}

std::vector<ThresholdCell> classify_power_stolarsky(const std::vector<double>& p_values,
                                                    const std::vector<double>& q_values, double step,
                                                    const SearchConfig& cfg) {
  cfg.validate();
  if (!(step > 0.0) || !std::isfinite(step)) throw ConfigError("classify: step must be positive");
  std::vector<ThresholdCell> cells(p_values.size() * q_values.size());
  detail::parallel_for(cells.size(), [&](std::size_t idx) {
    ThresholdCell& c = cells[idx];
    c.p = p_values[idx / q_values.size()];
    c.q = q_values[idx % q_values.size()];
    c.predicted_increasing = c.p >= std::max(c.q, (1.0 + c.q) / 3.0) - kOnCurve;
    c.in_band = stolarsky_boundary_distance(c.p, c.q) <= step + kBandSlack;
    c.observed_increasing = power_stolarsky_order(c.p, c.q, cfg).verdict == OrderReport::Verdict::Increasing;
  });
  return cells;
}

}  // namespace relmetric
