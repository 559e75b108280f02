// Acceptance checks, one line per criterion. Values that the library computes are
// compared against independent closed forms or quadrature written here.

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "relmetric/domain_metrics.hpp"
#include "relmetric/error.hpp"
#include "relmetric/means.hpp"
#include "relmetric/parsing.hpp"
#include "relmetric/relative_metrics.hpp"
#include "relmetric/verification.hpp"

using namespace relmetric;

namespace {

struct Verdict {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << " [failed: " << what << "]";
    }
  }
};

// Closed forms used as oracles.
long double oracle_power_mean(long double p, long double x, long double y) {
  if (p == 0) return std::sqrt(x * y);
  return std::pow((std::pow(x, p) + std::pow(y, p)) / 2.0L, 1.0L / p);
}

long double oracle_log_mean(long double x, long double y) {
  if (x == y) return x;
  return (x - y) / (std::log(x) - std::log(y));
}

double rel_diff(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

double oracle_rho_pq(double p, double q, double a, double b) {
  if (a == b) return 0.0;
  return static_cast<double>(std::abs(static_cast<long double>(a) - b) /
                             std::pow(oracle_power_mean(p, std::abs(a), std::abs(b)), static_cast<long double>(q)));
}

double scalar(const Point& p) { return p.coords()[0]; }

double oracle_margin(const std::function<double(double, double)>& d, const ViolationReport& r) {
  const double x = scalar(r.x), z = scalar(r.z), y = scalar(r.y);
  const double lhs = d(x, y), rhs = d(x, z) + d(z, y);
  return (lhs - rhs) / std::max({lhs, rhs, 1.0});
}

Verdict criterion1() {
  Verdict v;
  const auto ps = parse_range("0.1:2:0.1"), qs = parse_range("0.1:1.2:0.1");
  const auto t0 = std::chrono::steady_clock::now();
  const RegionTable t = classify_pq_region(ps, qs, 0.1, SearchConfig{});
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  int off_band = 0, mismatched = 0, bad_witness = 0, non_metric = 0;
  for (const auto& c : t.cells) {
    const bool analytic = c.q > 0 && c.q <= 1 + 1e-12 && c.p >= std::max(1 - c.q, (2 - c.q) / 3) - 1e-12;
    if (!c.in_band) {
      ++off_band;
      if ((c.label == RegionCell::Label::Metric) != analytic) ++mismatched;
    }
    if (c.label == RegionCell::Label::NonMetric) {
      ++non_metric;
      const double m = c.witness ? oracle_margin([&](double a, double b) { return oracle_rho_pq(c.p, c.q, a, b); },
                                                 *c.witness)
                                 : 0.0;
      if (!(m > 1e-9)) ++bad_witness;
    }
  }
  v.detail << t.cells.size() << " cells, " << off_band << " off the band, " << mismatched << " mismatched, "
           << non_metric << " non-metric with " << bad_witness << " unverifiable witnesses, " << secs << " s";
  v.require(t.cells.size() == 240, "grid size");
  v.require(mismatched == 0, "off-band agreement");
  v.require(bad_witness == 0, "witnesses");
  v.require(secs <= 300.0, "runtime");
  return v;
}

Verdict criterion2() {
  Verdict v;
  const SearchConfig cfg;
  const OrderReport lin = strong_order_check(WeightFunction::power(1.0 / 3.0), WeightFunction::stolarsky(1.0), cfg);
  const OrderReport low = strong_order_check(WeightFunction::power(0.3), WeightFunction::stolarsky(1.0), cfg);
  v.require(lin.verdict == OrderReport::Verdict::Increasing, "A_1/3 above L");
  v.require(low.verdict == OrderReport::Verdict::DecreasingSomewhere && low.witness.has_value(), "A_0.3 witness");
  if (low.witness) {
    auto g = [](double x) { return static_cast<double>(oracle_power_mean(0.3L, x, 1) / oracle_log_mean(x, 1)); };
    const auto [x1, x2] = *low.witness;
    v.require(x1 < x2 && g(x2) < g(x1) * (1 - 1e-10), "witness re-check");
    v.detail << "A_0.3 / L drops between x = " << x1 << " and " << x2 << " (" << g(x1) << " -> " << g(x2) << ")";
  }
  v.detail << "; A_1/3 / L increasing over " << lin.ratio_samples.size() << " samples";
  return v;
}

Verdict criterion3() {
  Verdict v;
  const SearchConfig cfg;
  struct Case {
    double p, c;
    bool violation;
  };
  for (const Case& k : {Case{-1, 2.0, false}, Case{-1, 1.9, true}, Case{-2, std::sqrt(2.0), false},
                        Case{-2, 1.34, true}}) {
    const auto r = lambda_sharpness(k.p, k.c, cfg);
    v.detail << "(" << k.p << ", " << k.c << "): ";
    if (!r) {
      v.detail << "none; ";
      v.require(!k.violation, "expected a violation");
      continue;
    }
    const double m = oracle_margin(
        [&](double a, double b) {
          return a == b ? 0.0
                        : static_cast<double>(std::log1p(k.c * std::abs(static_cast<long double>(a) - b) /
                                                         oracle_power_mean(k.p, std::abs(a), std::abs(b))));
        },
        *r);
    v.detail << "margin " << r->margin << "; ";
    v.require(k.violation, "unexpected violation");
    v.require(r->margin > 1e-6 && m > 1e-6, "margin above 1e-6");
  }
  return v;
}

Verdict criterion4() {
  Verdict v;
  const SearchConfig cfg;
  struct Named {
    std::string spec;
    bool mi_and_convex;  // by calculus
  };
  const std::vector<Named> suite{{"powone:p=1", true},      {"powone:p=2", true},    {"powone:p=4", true},
                                 {"exp", false},            {"quad:a=1,b=0,c=1", false}, {"maxone", true},
                                 {"sqrt1p", false},         {"affine:a=1,b=2", true}, {"const:c=3", true},
                                 {"maxaffine:a=0.5,b=0.5", true}, {"maxaffine:a=-1,b=2", false},
                                 {"recip1p", false}};
  int disagreements = 0;
  for (const auto& n : suite) {
    const NamedScalarFunction f = parse_scalar_function(n.spec);
    const bool predicted = mi_check(f.f, cfg).pass() && convexity_check(f.f, cfg).pass();
    const bool metric = !triangle_search_1d(WeightFunction::product(f.f, n.spec), cfg).has_value();
    if (predicted != metric) ++disagreements;
    v.require(predicted == n.mi_and_convex, n.spec + " predicate");
    v.detail << n.spec << (metric ? ":metric " : ":violation ");
  }
  v.require(disagreements == 0, "search vs MI and convexity");
  v.detail << "; " << disagreements << " disagreements over " << suite.size() << " functions";
  return v;
}

Verdict criterion5() {
  Verdict v;
  std::mt19937_64 rng(20240917);
  std::uniform_real_distribution<double> ux(-5.0, 5.0), lh(-2.0, 1.0);
  std::vector<std::pair<Point, Point>> pairs;
  for (int i = 0; i < 20; ++i) {
    pairs.push_back({Point{ux(rng), std::pow(10.0, lh(rng))}, Point{ux(rng), std::pow(10.0, lh(rng))}});
  }
  for (double s : {2.0, 3.0, 5.0}) {
    double lo = INFINITY, hi = -INFINITY;
    for (const auto& [x, y] : pairs) {
      const double d = euclidean(x, y), h = 0.5 * (x.coords()[1] + y.coords()[1]);
      const double ratio = rho_tilde_halfplane(s, x, y) / (d * std::pow(d * d + 4 * h * h, (1 / s - 1) / 2));
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
    const double spread = (hi - lo) / lo;
    v.detail << "s=" << s << " ratio " << lo << " spread " << spread << "; ";
    v.require(spread <= 1e-5, "ratio constant for s=" + std::to_string(s));
  }
  boost::math::quadrature::exp_sinh<double> half_line;
  for (double s : {2.0, 3.0}) {
    const double integral = 2 * half_line.integrate([s](double z) { return std::pow(1 + z * z, -s / 2); });
    const double quad = std::pow(integral, 1 / s);
    const double closed = s == 2.0 ? std::sqrt(std::numbers::pi) : std::cbrt(2.0);
    v.require(rel_diff(c_constant(s), quad) <= 1e-9 && rel_diff(c_constant(s), closed) <= 1e-9,
              "c_" + std::to_string(s));
    v.detail << "c_" << s << "=" << c_constant(s) << " (quadrature " << quad << "); ";
  }
  return v;
}

Verdict criterion6() {
  Verdict v;
  const SearchConfig cfg;
  const SearchSpace h2 = domain_space(DomainSpec::half_plane());
  for (ExtendedReal s : {ExtendedReal(1.5), ExtendedReal(2.0), ExtendedReal(5.0), ExtendedReal::pos_inf()}) {
    const auto r = triangle_search_nd([s](const Point& x, const Point& y) { return iota(s, x, y); }, h2, cfg);
    v.detail << "s=" << s.value() << (r ? ": violation; " : ": none; ");
    v.require(!r, "iota metric");
  }
  v.detail << cfg.random_triples << " triples each";
  return v;
}

Verdict criterion7() {
  Verdict v;
  const SearchConfig cfg;
  const WeightFunction a1 = WeightFunction::power(1.0), one = WeightFunction::constant(1.0);
  const std::vector<std::pair<std::string, DomainSpec>> domains{
      {"punctured(-e1,e1)", DomainSpec::punctured({Point{-1.0, 0.0}, Point{1.0, 0.0}})},
      {"ball", DomainSpec::unit_ball(2)}};
  for (const auto& [name, g] : domains) {
    const SearchSpace space = domain_space(g);
    auto dist = [&g = g](const WeightFunction& m) {
      return [&g, m](const Point& x, const Point& y) { return rho_double_prime(m, g, x, y); };
    };
    const auto bad = triangle_search_nd(dist(a1), space, cfg);
    const auto good = triangle_search_nd(dist(one), space, cfg);
    if (bad) {
      // Direct recomputation: |x-y| / ((d(x) + d(y)) / 2).
      auto d = [&g = g](const Point& x, const Point& y) {
        return euclidean(x, y) / (0.5 * (boundary_distance(g, x) + boundary_distance(g, y)));
      };
      const double lhs = d(bad->x, bad->y), rhs = d(bad->x, bad->z) + d(bad->z, bad->y);
      v.require((lhs - rhs) / std::max({lhs, rhs, 1.0}) > 1e-9, name + " witness re-check");
      v.detail << name << ": A_1 margin " << bad->margin;
    }
    v.require(bad.has_value(), name + " A_1 violation");
    v.require(!good.has_value(), name + " constant weight");
    v.detail << (good ? ", constant: violation; " : ", constant: none; ");
  }
  return v;
}

Verdict criterion8() {
  Verdict v;
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> scale(-3.0, 3.0);
  auto random_point = [&](int n) {
    Eigen::VectorXd c(n);
    for (int i = 0; i < n; ++i) c[i] = g(rng);
    return Point(Eigen::VectorXd(c * std::pow(10.0, scale(rng))));
  };
  double worst_delta = 0, worst_chordal = 0, worst_sup = 0;
  const DomainSpec origin2 = DomainSpec::punctured({Point{0.0, 0.0}});
  const std::vector<WeightFunction> weights{WeightFunction::power(1.0), WeightFunction::power(0.5, 0.7),
                                            WeightFunction::min(), WeightFunction::stolarsky(1.0)};
  for (int i = 0; i < 100; ++i) {
    const Point x = random_point(2), y = random_point(2);
    const double j = std::log1p(euclidean(x, y) / std::min(x.norm(), y.norm()));
    worst_delta = std::max(worst_delta, rel_diff(delta_p(origin2, ExtendedReal::pos_inf(), x, y), j));
    const Point a = i % 10 == 0 ? Point::infinity() : random_point(3), b = random_point(3);
    worst_chordal = std::max(worst_chordal, rel_diff(example_metric(2.0, a, b), chordal(a, b)));
    for (const auto& m : weights) worst_sup = std::max(worst_sup, rel_diff(rho_sup(m, origin2, x, y), rho(m, x, y)));
  }
  v.detail << "delta_inf vs j " << worst_delta << ", example_metric(2) vs chordal " << worst_chordal
           << ", rho_sup vs rho " << worst_sup;
  v.require(worst_delta <= 1e-10, "delta_inf = j");
  v.require(worst_chordal <= 1e-12, "example_metric = chordal");
  v.require(worst_sup <= 1e-12, "rho_sup = rho");
  return v;
}

Verdict criterion9() {
  Verdict v;
  const auto ps = parse_range("0.05:1.5:0.05"), qs = parse_range("0:0.95:0.05");
  const auto cells = classify_power_stolarsky(ps, qs, 0.05, SearchConfig{});
  int off = 0, bad = 0;
  for (const auto& c : cells) {
    if (c.in_band) continue;
    ++off;
    if (c.observed_increasing != (c.p >= std::max(c.q, (1 + c.q) / 3) - 1e-12)) {
      ++bad;
      v.detail << "(" << c.p << "," << c.q << ") ";
    }
  }
  v.detail << cells.size() << " cells, " << off << " off the band, " << bad << " disagreements";
  v.require(bad == 0, "threshold agreement");
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Verdict (*)()>> criteria{
      {"region reproduction for rho_{p,q}", criterion1},
      {"L versus A_p threshold at p = 1/3", criterion2},
      {"sharp constant for log(1 + rho_{A_p/c})", criterion3},
      {"product weights: metric iff f is MI and convex", criterion4},
      {"half-plane integral distance closed form", criterion5},
      {"iota_s triangle inequality", criterion6},
      {"rho'' needs a constant weight", criterion7},
      {"identities: delta_inf, chordal, rho_sup", criterion8},
      {"A_p / St_q monotonicity threshold", criterion9}};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.ok = false;
      v.detail << "exception: " << e.what();
    }
    if (!v.ok) ++failures;
    std::printf("%s criterion %zu (%s): %s\n", v.ok ? "PASS" : "FAIL", i + 1, criteria[i].first, v.detail.str().c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
