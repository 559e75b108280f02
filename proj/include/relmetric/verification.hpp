#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "relmetric/domain.hpp"
#include "relmetric/means.hpp"
#include "relmetric/point.hpp"
#include "relmetric/relative_metrics.hpp"

namespace relmetric {

/// Budgets and tolerances of the numerical checks. "No violation found" is only
/// evidence under this budget, never a proof that a distance is a metric.
struct SearchConfig {
  double lo = 1e-6;  // log-scaled search interval for |x|, |y|, |z|
  double hi = 1e6;
  int coarse_grid_points = 64;
  int refine_iterations = 60;
  double violation_tolerance = 1e-9;  // relative to max(lhs, rhs, 1)
  std::uint64_t seed = 20240917;
  long random_triples = 100000;  // n-dimensional search
  int top_k = 16;                // candidates handed to local refinement
  int order_samples = 2048;      // trace-ratio samples on [1, order_hi]
  double order_hi = 1e6;
  double order_tolerance = 1e-10;  // relative decrease that counts in order checks

  // Throws ConfigError when a field is out of range.
  void validate() const;

  friend bool operator==(const SearchConfig&, const SearchConfig&) = default;
};

/// A triple with d(x, y) > d(x, z) + d(z, y).
struct ViolationReport {
  Point x, z, y;
  double lhs = 0.0;  // d(x, y)
  double rhs = 0.0;  // d(x, z) + d(z, y)
  double margin = 0.0;

  double relative_margin() const;

  friend bool operator==(const ViolationReport&, const ViolationReport&) = default;
};

using DistanceFunction = std::function<double(const Point&, const Point&)>;

/// Recomputes lhs, rhs and margin of (x, z, y) under `d` from scratch.
ViolationReport evaluate_triple(const DistanceFunction& d, const Point& x, const Point& z, const Point& y);

/// Triangle-inequality counterexample search for rho_M on the real line (transformed
/// by `kind`), which decides the metric property in every Euclidean space when M is MI.
///
/// MI weights are searched on {0} and a log grid over [lo, hi]; other weights on the
/// signed grid {0, +-g}. Deterministic probes add the sign triples (-s, 0, s),
/// (eps, 1/2, 1) for eps = 1e-3 .. 1e-9 and the squares (s^2, s, 1). The best
/// `top_k` triples are refined by compass search in log coordinates and the winner
/// is re-evaluated before it is returned.
std::optional<ViolationReport> triangle_search_1d(const WeightFunction& m, const SearchConfig& cfg,
                                                  MetricKind kind = MetricKind::Raw);

/// Where the n-dimensional search draws points from.
struct SearchSpace {
  int dim = 2;
  std::function<Point(std::mt19937_64&)> sample;
  std::function<bool(const Point&)> contains;
  // Triples (x, z, y) always examined before the random ones.
  std::vector<std::array<Point, 3>> probes;
};

/// Points of R^n with coordinates spread over several decades around the origin.
SearchSpace euclidean_space(int dim);

/// Points of G, biased towards the boundary.
SearchSpace domain_space(const DomainSpec& g);

/// Seeded random triples (a third of them close to a segment x..y) plus the probes,
/// followed by compass refinement of the best `top_k` in R^(3n) inside the space.
std::optional<ViolationReport> triangle_search_nd(const DistanceFunction& d, const SearchSpace& space,
                                                  const SearchConfig& cfg);

/// Same search in R^n.
std::optional<ViolationReport> triangle_search_nd(const DistanceFunction& d, int dim, const SearchConfig& cfg);

/// A failed pointwise inequality lhs <= rhs found by a predicate check.
struct PredicateWitness {
  std::string condition;
  std::vector<double> at;
  double lhs = 0.0;
  double rhs = 0.0;

  friend bool operator==(const PredicateWitness&, const PredicateWitness&) = default;
};

struct PredicateResult {
  std::optional<PredicateWitness> witness;

  bool pass() const { return !witness.has_value(); }
};

/// For each y of the grid: t -> M(t, y) increasing and t -> M(t, y) / t decreasing
/// between adjacent grid values t > 0. Reports the first failure.
PredicateResult mi_check(const WeightFunction& m, const SearchConfig& cfg);

/// Same predicate for a univariate f.
PredicateResult mi_check(const ScalarFunction& f, const SearchConfig& cfg);

/// (x - y) f(z) <= (x - z) f(y) + (z - y) f(x) over grid triples 0 <= y < z < x.
PredicateResult convexity_check(const ScalarFunction& f, const SearchConfig& cfg);

struct OrderReport {
  enum class Verdict { Increasing, DecreasingSomewhere };

  Verdict verdict = Verdict::Increasing;
  std::optional<std::pair<double, double>> witness;  // x1 < x2 with g(x2) < g(x1)
  std::vector<std::pair<double, double>> ratio_samples;
  bool dips_below_one = false;

  friend bool operator==(const OrderReport&, const OrderReport&) = default;
};

std::string to_string(OrderReport::Verdict v);
OrderReport::Verdict verdict_from_string(const std::string& s);

/// Samples g = t_M / t_N on a log grid over [1, order_hi]; "increasing" unless some
/// adjacent pair decreases by more than order_tolerance relative.
OrderReport strong_order_check(const WeightFunction& m, const WeightFunction& n, const SearchConfig& cfg);

struct PlemReport {
  bool sufficient = false;  // M strongly above S_alpha
  bool necessary1 = false;  // M >= S_alpha
  bool necessary2 = false;  // g(x) <= g(x^2), g = t_M / t_{S_alpha}

  friend bool operator==(const PlemReport&, const PlemReport&) = default;
};

/// Throws InvalidParameter unless 0 < alpha <= 1 and M looks alpha-homogeneous and
/// increasing on the grid.
PlemReport plem_conditions(const WeightFunction& m, double alpha, const SearchConfig& cfg);

/// Triangle search for log(1 + rho_{A_p / c}), p < 0.
std::optional<ViolationReport> lambda_sharpness(double p, double c, const SearchConfig& cfg);

struct RegionCell {
  enum class Label { Metric, NonMetric, BoundaryBand };

  double p = 0.0;
  double q = 0.0;
  Label label = Label::Metric;
  bool analytic_metric = false;  // 0 < q <= 1 and p >= max{1 - q, (2 - q)/3}
  bool in_band = false;          // within one step of the region boundary
  std::optional<ViolationReport> witness;

  friend bool operator==(const RegionCell&, const RegionCell&) = default;
};

std::string to_string(RegionCell::Label l);
RegionCell::Label label_from_string(const std::string& s);

struct RegionTable {
  std::vector<RegionCell> cells;
  double step = 0.0;

  // Off-band cells whose label contradicts the analytic region.
  int disagreements() const;

  friend bool operator==(const RegionTable&, const RegionTable&) = default;
};

bool pq_metric_region(double p, double q);

/// Euclidean distance from (p, q) to the boundary of the metric region.
double pq_boundary_distance(double p, double q);

/// Runs triangle_search_1d on A_p^q for every (p, q). A cell is labelled by the search
/// outcome, except that a cell within `step` of the region boundary whose outcome
/// contradicts the analytic region is labelled boundary-band. Cells run in parallel,
/// results are placed by index so the table does not depend on scheduling.
RegionTable classify_pq_region(const std::vector<double>& p_values, const std::vector<double>& q_values, double step,
                               const SearchConfig& cfg);

/// Monotonicity of A_p(x, 1) / St_q(x, 1) on x >= 1, 0 <= q < 1.
///
/// Evaluated as log g(e^u) in a cancellation-free form on a log grid of u over
/// [1e-3, 700]; "decreasing-somewhere" when a sample falls below the running maximum
/// by more than 1e-13 in log.
OrderReport power_stolarsky_order(double p, double q, const SearchConfig& cfg);

struct ThresholdCell {
  double p = 0.0;
  double q = 0.0;
  bool observed_increasing = false;
  bool predicted_increasing = false;  // p >= max{q, (1 + q)/3}
  bool in_band = false;

  friend bool operator==(const ThresholdCell&, const ThresholdCell&) = default;
};

double stolarsky_boundary_distance(double p, double q);

std::vector<ThresholdCell> classify_power_stolarsky(const std::vector<double>& p_values,
                                                    const std::vector<double>& q_values, double step,
                                                    const SearchConfig& cfg);

}  // namespace relmetric
