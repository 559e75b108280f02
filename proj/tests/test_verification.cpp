#include <gtest/gtest.h>

#include <cmath>

#include "relmetric/domain_metrics.hpp"
#include "relmetric/error.hpp"
#include "relmetric/parsing.hpp"
#include "relmetric/relative_metrics.hpp"
#include "relmetric/verification.hpp"

using namespace relmetric;

namespace {

// rho_{p,q} on the line from the closed form, in long double.
long double oracle_rho(double p, double q, double a, double b) {
  const long double x = std::fabs(a), y = std::fabs(b);
  const long double mean = std::pow((std::pow(x, (long double)p) + std::pow(y, (long double)p)) / 2, 1.0L / p);
  return std::fabs((long double)a - b) / std::pow(mean, (long double)q);
}

SearchConfig small_nd() {
  SearchConfig cfg;
  cfg.random_triples = 20000;
  return cfg;
}

}  // namespace

TEST(SearchConfigTest, Validation) {
  SearchConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  auto expect_bad = [](auto mutate) {
    SearchConfig c;
    mutate(c);
    EXPECT_THROW(c.validate(), ConfigError);
  };
  expect_bad([](SearchConfig& c) { c.lo = 0.0; });
  expect_bad([](SearchConfig& c) { c.hi = c.lo; });
  expect_bad([](SearchConfig& c) { c.coarse_grid_points = 1; });
  expect_bad([](SearchConfig& c) { c.refine_iterations = -1; });
  expect_bad([](SearchConfig& c) { c.violation_tolerance = -1e-9; });
  expect_bad([](SearchConfig& c) { c.top_k = 0; });
  expect_bad([](SearchConfig& c) { c.order_hi = 1.0; });
}

TEST(EvaluateTriple, RecomputesFromScratch) {
  const DistanceFunction d = [](const Point& x, const Point& y) { return std::pow(euclidean(x, y), 2); };
  const auto r = evaluate_triple(d, Point{0.0}, Point{1.0}, Point{2.0});
  EXPECT_EQ(r.lhs, 4.0);
  EXPECT_EQ(r.rhs, 2.0);
  EXPECT_EQ(r.margin, 2.0);
  EXPECT_DOUBLE_EQ(r.relative_margin(), 0.5);
}

TEST(TriangleSearch1d, ArithmeticMeanIsMetric) {
  const SearchConfig cfg;
  EXPECT_FALSE(triangle_search_1d(WeightFunction::power(1.0), cfg));
  EXPECT_FALSE(triangle_search_1d(WeightFunction::power(2.0, 0.5), cfg));
  EXPECT_FALSE(triangle_search_1d(WeightFunction::max(), cfg));
}

TEST(TriangleSearch1d, FindsAndCertifiesViolation) {
  const SearchConfig cfg;
  for (auto [p, q] : {std::pair{0.2, 1.0}, std::pair{0.5, 0.4}, std::pair{-1.0, 1.0}}) {
    const auto m = WeightFunction::power(p, q);
    const auto r = triangle_search_1d(m, cfg);
    ASSERT_TRUE(r) << p << "," << q;
    const double x = r->x.coords()[0], z = r->z.coords()[0], y = r->y.coords()[0];
    const long double lhs = oracle_rho(p, q, x, y), rhs = oracle_rho(p, q, x, z) + oracle_rho(p, q, z, y);
    EXPECT_GT((lhs - rhs) / std::max({lhs, rhs, 1.0L}), cfg.violation_tolerance);
  }
}

TEST(TriangleSearch1d, Deterministic) {
  const SearchConfig cfg;
  const auto m = WeightFunction::power(0.3, 0.8);
  const auto a = triangle_search_1d(m, cfg), b = triangle_search_1d(m, cfg);
  ASSERT_TRUE(a);
  EXPECT_EQ(*a, *b);
}

TEST(TriangleSearch1d, TransformedKinds) {
  const SearchConfig cfg;
  // increasing subadditive transforms of a metric stay metrics
  EXPECT_FALSE(triangle_search_1d(WeightFunction::power(1.0), cfg, MetricKind::Log1p));
  EXPECT_FALSE(triangle_search_1d(WeightFunction::max(), cfg, MetricKind::Arcsinh));
}

TEST(TriangleSearch1d, NonMonotoneWeightUsesSignedGrid) {
  const SearchConfig cfg;
  const auto hump = WeightFunction::product(parse_scalar_function("recip1p").f, "recip1p");
  EXPECT_FALSE(mi_check(hump, cfg).pass());
  const auto r = triangle_search_1d(hump, cfg);
  if (r) {
    const auto again = evaluate_triple([&](const Point& a, const Point& b) { return rho(hump, a, b); }, r->x, r->z,
                                       r->y);
    EXPECT_GT(again.relative_margin(), cfg.violation_tolerance);
  }
}

TEST(TriangleSearchNd, EuclideanSpace) {
  const auto cfg = small_nd();
  const auto a1 = WeightFunction::power(1.0), bad = WeightFunction::power(0.2);
  EXPECT_FALSE(triangle_search_nd([&](const Point& x, const Point& y) { return rho(a1, x, y); }, 2, cfg));
  const auto r = triangle_search_nd([&](const Point& x, const Point& y) { return rho(bad, x, y); }, 2, cfg);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->x.dim(), 2);
  EXPECT_GT(r->relative_margin(), cfg.violation_tolerance);
}

TEST(TriangleSearchNd, StaysInsideDomainAndIsSeeded) {
  auto cfg = small_nd();
  const auto g = DomainSpec::unit_ball(2);
  const auto a1 = WeightFunction::power(1.0);
  const DistanceFunction d = [&](const Point& x, const Point& y) { return rho_double_prime(a1, g, x, y); };
  const auto r = triangle_search_nd(d, domain_space(g), cfg);
  ASSERT_TRUE(r);
  EXPECT_TRUE(g.contains(r->x) && g.contains(r->z) && g.contains(r->y));
  EXPECT_EQ(*r, *triangle_search_nd(d, domain_space(g), cfg));
  cfg.seed = 1;
  EXPECT_TRUE(triangle_search_nd(d, domain_space(g), cfg));
}

TEST(Predicates, MiForWeightsAndFunctions) {
  const SearchConfig cfg;
  EXPECT_TRUE(mi_check(WeightFunction::power(1.0), cfg).pass());
  EXPECT_TRUE(mi_check(WeightFunction::power(-2.0), cfg).pass());
  EXPECT_TRUE(mi_check(WeightFunction::constant(2.0), cfg).pass());
  EXPECT_TRUE(mi_check(parse_scalar_function("powone:p=2").f, cfg).pass());
  const auto e = mi_check(parse_scalar_function("exp").f, cfg);
  ASSERT_FALSE(e.pass());
  EXPECT_GT(e.witness->lhs, e.witness->rhs);
  EXPECT_FALSE(mi_check(parse_scalar_function("recip1p").f, cfg).pass());
}

TEST(Predicates, Convexity) {
  const SearchConfig cfg;
  EXPECT_TRUE(convexity_check(parse_scalar_function("quad:a=1,b=0,c=1").f, cfg).pass());
  EXPECT_TRUE(convexity_check(parse_scalar_function("maxone").f, cfg).pass());
  const auto r = convexity_check(parse_scalar_function("sqrt1p").f, cfg);
  ASSERT_FALSE(r.pass());
  EXPECT_EQ(r.witness->at.size(), 3u);
}

TEST(StrongOrder, ArithmeticOverGeometric) {
  const SearchConfig cfg;
  const auto up = strong_order_check(WeightFunction::power(1.0), WeightFunction::power(0.0), cfg);
  EXPECT_EQ(up.verdict, OrderReport::Verdict::Increasing);
  EXPECT_FALSE(up.witness);
  EXPECT_FALSE(up.dips_below_one);
  EXPECT_FALSE(up.ratio_samples.empty());
  const auto down = strong_order_check(WeightFunction::power(0.0), WeightFunction::power(1.0), cfg);
  EXPECT_EQ(down.verdict, OrderReport::Verdict::DecreasingSomewhere);
  ASSERT_TRUE(down.witness);
  EXPECT_LT(down.witness->first, down.witness->second);
  EXPECT_TRUE(down.dips_below_one);
}

TEST(StrongOrder, LogarithmicMeanThreshold) {
  const SearchConfig cfg;
  const auto l = WeightFunction::stolarsky(1.0);
  EXPECT_EQ(strong_order_check(WeightFunction::power(1.0 / 3.0), l, cfg).verdict, OrderReport::Verdict::Increasing);
  EXPECT_EQ(strong_order_check(WeightFunction::power(0.3), l, cfg).verdict,
            OrderReport::Verdict::DecreasingSomewhere);
}

TEST(Plem, Conditions) {
  const SearchConfig cfg;
  const auto a1 = plem_conditions(WeightFunction::power(1.0), 1.0, cfg);
  EXPECT_TRUE(a1.sufficient && a1.necessary1 && a1.necessary2);
  const auto low = plem_conditions(WeightFunction::power(0.0), 1.0, cfg);
  EXPECT_FALSE(low.sufficient);
  EXPECT_FALSE(low.necessary1);
  EXPECT_THROW(plem_conditions(WeightFunction::constant(1.0), 1.0, cfg), InvalidParameter);
  EXPECT_THROW(plem_conditions(WeightFunction::power(1.0), 0.0, cfg), InvalidParameter);
  EXPECT_THROW(plem_conditions(WeightFunction::power(1.0), 0.5, cfg), InvalidParameter);
}

TEST(LambdaSharpness, SharpConstant) {
  const SearchConfig cfg;
  EXPECT_FALSE(lambda_sharpness(-2.0, std::sqrt(2.0), cfg));
  const auto r = lambda_sharpness(-2.0, 1.34, cfg);
  ASSERT_TRUE(r);
  const DistanceFunction d = [](const Point& x, const Point& y) { return lambda_apc(-2.0, 1.34, x, y); };
  EXPECT_GT(evaluate_triple(d, r->x, r->z, r->y).relative_margin(), cfg.violation_tolerance);
  EXPECT_THROW(lambda_sharpness(1.0, 1.0, cfg), InvalidParameter);
}

TEST(Region, AnalyticRegionAndBoundary) {
  EXPECT_TRUE(pq_metric_region(1.0, 1.0));
  EXPECT_TRUE(pq_metric_region(0.5, 0.5));
  EXPECT_TRUE(pq_metric_region(0.6, 0.5));
  EXPECT_FALSE(pq_metric_region(0.4, 0.5));
  EXPECT_FALSE(pq_metric_region(0.3, 1.0));
  EXPECT_FALSE(pq_metric_region(1.0, 0.0));
  EXPECT_FALSE(pq_metric_region(1.0, 1.1));
  EXPECT_NEAR(pq_boundary_distance(0.5, 0.5), 0.0, 1e-15);
  EXPECT_NEAR(pq_boundary_distance(1.0 / 3.0, 1.0), 0.0, 1e-15);
  EXPECT_NEAR(pq_boundary_distance(3.0, 1.0), 0.0, 1e-15);
  EXPECT_NEAR(pq_boundary_distance(1.0, 0.5), 0.5 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(stolarsky_boundary_distance(1.0, 1.0), 0.0, 1e-15);
}

TEST(Region, SmallTable) {
  const SearchConfig cfg;
  const auto t = classify_pq_region({0.2, 1.0, 2.0}, {0.5, 1.0}, 0.1, cfg);
  ASSERT_EQ(t.cells.size(), 6u);
  EXPECT_EQ(t.disagreements(), 0);
  for (const auto& c : t.cells) {
    EXPECT_EQ(c.analytic_metric, pq_metric_region(c.p, c.q));
    if (!c.in_band) {
      EXPECT_EQ(c.label == RegionCell::Label::Metric, c.analytic_metric) << c.p << "," << c.q;
    }
    EXPECT_EQ(c.witness.has_value(), c.label == RegionCell::Label::NonMetric);
  }
  EXPECT_EQ(t, classify_pq_region({0.2, 1.0, 2.0}, {0.5, 1.0}, 0.1, cfg));
}

TEST(Region, LabelStrings) {
  for (auto l : {RegionCell::Label::Metric, RegionCell::Label::NonMetric, RegionCell::Label::BoundaryBand}) {
    EXPECT_EQ(label_from_string(to_string(l)), l);
  }
  for (auto v : {OrderReport::Verdict::Increasing, OrderReport::Verdict::DecreasingSomewhere}) {
    EXPECT_EQ(verdict_from_string(to_string(v)), v);
  }
  EXPECT_THROW(label_from_string("maybe"), ParseError);
}

TEST(PowerStolarsky, Threshold) {
  const SearchConfig cfg;
  EXPECT_EQ(power_stolarsky_order(1.0, 0.0, cfg).verdict, OrderReport::Verdict::Increasing);
  EXPECT_EQ(power_stolarsky_order(0.2, 0.0, cfg).verdict, OrderReport::Verdict::DecreasingSomewhere);
  EXPECT_EQ(power_stolarsky_order(0.9, 0.8, cfg).verdict, OrderReport::Verdict::Increasing);
  EXPECT_EQ(power_stolarsky_order(0.7, 0.8, cfg).verdict, OrderReport::Verdict::DecreasingSomewhere);
  const auto cells = classify_power_stolarsky({0.1, 1.2}, {0.0, 0.5}, 0.05, cfg);
  ASSERT_EQ(cells.size(), 4u);
  for (const auto& c : cells) EXPECT_EQ(c.observed_increasing, c.predicted_increasing);
}
