#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "relmetric/error.hpp"
#include "relmetric/verification.hpp"

namespace relmetric {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double relative(double lhs, double rhs) { return (lhs - rhs) / std::max({lhs, rhs, 1.0}); }

template <class T>
struct Candidate {
  double rel = -std::numeric_limits<double>::infinity();
  T t;
};

// Keeps the k best candidates; ties broken on the triple itself.
template <class T>
class TopK {
 public:
  explicit TopK(std::size_t k) : k_(std::max<std::size_t>(k, 1)) {}

  void offer(double rel, const T& t) {
    if (!(rel > floor_)) return;
    items_.push_back({rel, t});
    if (items_.size() >= 4 * k_) compact();
  }

  std::vector<Candidate<T>> take() {
    compact();
    return std::move(items_);
  }

 private:
  void compact() {
    std::sort(items_.begin(), items_.end(), [](const auto& a, const auto& b) {
      if (a.rel != b.rel) return a.rel > b.rel;
      return a.t < b.t;
    });
    if (items_.size() > k_) items_.resize(k_);
    if (items_.size() == k_) floor_ = items_.back().rel;
  }

  std::size_t k_;
  double floor_ = -std::numeric_limits<double>::infinity();
  std::vector<Candidate<T>> items_;
};

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g;
  g.reserve(static_cast<std::size_t>(n));
  const double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < n; ++i) g.push_back(std::exp(a + (b - a) * i / std::max(1, n - 1)));
  return g;
}

void sort_unique(std::vector<double>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

using Triple1 = std::array<double, 3>;  // x, z, y

struct LineObjective {
  const WeightFunction& m;
  MetricKind kind;

  double dist(double a, double b) const {
    try {
      const double v = transform(rho(m, a, b), kind);
      return std::isfinite(v) ? v : kNaN;
    } catch (const Error&) {
      return kNaN;
    }
  }

  double rel(const Triple1& t) const {
    const double lhs = dist(t[0], t[2]);
    const double rhs = dist(t[0], t[1]) + dist(t[1], t[2]);
    return relative(lhs, rhs);
  }
};

// Compass search on sign(v) log|v| per coordinate; zero coordinates stay put.
Triple1 refine_line(const LineObjective& obj, Triple1 t, double h, const SearchConfig& cfg) {
  std::array<double, 3> lo{}, hi{};
  for (int i = 0; i < 3; ++i) {
    const double a = std::abs(t[i]);
    lo[i] = std::log(std::min(cfg.lo, a > 0 ? a : cfg.lo));
    hi[i] = std::log(std::max(cfg.hi, a));
  }
  auto moved = [&](const Triple1& base, int coord, double delta) {
    Triple1 r = base;
    auto shift = [&](int i) {
      if (r[i] == 0.0) return;
      const double u = std::clamp(std::log(std::abs(r[i])) + delta, lo[i], hi[i]);
      r[i] = std::copysign(std::exp(u), r[i]);
    };
    if (coord < 3) {
      shift(coord);
    } else {
      for (int i = 0; i < 3; ++i) shift(i);
    }
    return r;
  };
  double best = obj.rel(t);
  int halvings = 0;
  for (int steps = 0; halvings < cfg.refine_iterations && steps < 40 * cfg.refine_iterations; ++steps) {
    Triple1 step_best = t;
    double step_val = best;
    for (int coord = 0; coord < 4; ++coord) {
      for (double sgn : {1.0, -1.0}) {
        const Triple1 c = moved(t, coord, sgn * h);
        const double v = obj.rel(c);
        if (v > step_val) {
          step_val = v;
          step_best = c;
        }
      }
    }
    if (step_val > best) {
      best = step_val;
      t = step_best;
    } else {
      h *= 0.5;
      ++halvings;
    }
  }
  return t;
}

Point p1(double v) { return Point{v}; }

std::optional<ViolationReport> pick_best(std::vector<ViolationReport>& found, double tol) {
  std::optional<ViolationReport> best;
  for (auto& r : found) {
    if (!(r.relative_margin() > tol)) continue;
    if (!best || r.relative_margin() > best->relative_margin()) best = r;
  }
  return best;
}

}  // namespace

double ViolationReport::relative_margin() const { return margin / std::max({lhs, rhs, 1.0}); }

ViolationReport evaluate_triple(const DistanceFunction& d, const Point& x, const Point& z, const Point& y) {
  ViolationReport r{x, z, y};
  r.lhs = d(x, y);
  r.rhs = d(x, z) + d(z, y);
  r.margin = r.lhs - r.rhs;
  return r;
}

std::optional<ViolationReport> triangle_search_1d(const WeightFunction& m, const SearchConfig& cfg,
                                                  MetricKind kind) {
  cfg.validate();
  const LineObjective obj{m, kind};
  const bool mi = mi_check(m, cfg).pass();

  std::vector<double> pos = log_grid(cfg.lo, cfg.hi, cfg.coarse_grid_points);
  pos.push_back(1.0);
  pos.push_back(0.0);
  sort_unique(pos);
  std::vector<double> grid = pos;
  if (!mi) {
    for (double v : pos) {
      if (v > 0.0) grid.push_back(-v);
    }
    sort_unique(grid);
  }

  const std::size_t n = grid.size();
  std::vector<double> table(n * n, kNaN);
  for (std::size_t i = 0; i < n; ++i) {
    table[i * n + i] = 0.0;
    for (std::size_t j = i + 1; j < n; ++j) table[i * n + j] = table[j * n + i] = obj.dist(grid[i], grid[j]);
  }
  auto d = [&](std::size_t i, std::size_t j) { return table[i * n + j]; };

  TopK<Triple1> top(static_cast<std::size_t>(cfg.top_k));
  if (mi) {
    // 0 <= y < z < x suffices for MI weights
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < i; ++k) {
        for (std::size_t j = 0; j < k; ++j) {
          top.offer(relative(d(i, j), d(i, k) + d(k, j)), {grid[i], grid[k], grid[j]});
        }
      }
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        const double lhs = d(i, j);
        for (std::size_t k = 0; k < n; ++k) {
          if (k != i && k != j) top.offer(relative(lhs, d(i, k) + d(k, j)), {grid[i], grid[k], grid[j]});
        }
      }
    }
  }

  std::vector<Triple1> probes;
  for (double s : pos) {
    if (s > 0.0) probes.push_back({s, 0.0, -s});
    if (s > 1.0 && s * s <= cfg.hi) probes.push_back({s * s, s, 1.0});
  }
  for (double eps = 1e-3; eps > 5e-10; eps /= 10.0) probes.push_back({1.0, 0.5, eps});
  std::vector<Candidate<Triple1>> seeds = top.take();
  for (const auto& t : probes) seeds.push_back({obj.rel(t), t});

  const double h0 = std::log(cfg.hi / cfg.lo) / std::max(1, cfg.coarse_grid_points - 1);
  const DistanceFunction point_dist = [&](const Point& a, const Point& b) {
    return transform(rho(m, a, b), kind);
  };
  std::vector<ViolationReport> found;
  for (const auto& c : seeds) {
    if (!std::isfinite(c.rel)) continue;
    Triple1 t = refine_line(obj, c.t, h0, cfg);
    if (!(obj.rel(t) >= c.rel)) t = c.t;
    try {
      found.push_back(evaluate_triple(point_dist, p1(t[0]), p1(t[1]), p1(t[2])));
    } catch (const Error&) {
    }
  }
  return pick_best(found, cfg.violation_tolerance);
}

namespace {

Eigen::VectorXd random_direction(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> gauss;
  Eigen::VectorXd v(dim);
  do {
    for (int i = 0; i < dim; ++i) v[i] = gauss(rng);
  } while (v.norm() == 0.0);
  return v.normalized();
}

double log_uniform(std::mt19937_64& rng, double lo_exp, double hi_exp) {
  return std::pow(10.0, std::uniform_real_distribution<double>(lo_exp, hi_exp)(rng));
}

// (-r e1, 0, r e1) for a few radii, kept when all three points are admissible.
std::vector<std::array<Point, 3>> sign_probes(int dim, const std::function<bool(const Point&)>& contains) {
  std::vector<std::array<Point, 3>> out;
  for (double r : {0.1, 0.3, 0.5, 0.7, 0.9, 0.99}) {
    const Eigen::VectorXd e = Eigen::VectorXd::Unit(dim, 0) * r;
    std::array<Point, 3> t{Point(Eigen::VectorXd(-e)), Point(Eigen::VectorXd::Zero(dim)), Point(e)};
    if (contains(t[0]) && contains(t[1]) && contains(t[2])) out.push_back(t);
  }
  return out;
}

std::vector<double> flatten(const std::array<Point, 3>& t) {
  std::vector<double> v;
  for (const auto& p : t) {
    for (Eigen::Index i = 0; i < p.dim(); ++i) v.push_back(p.coords()[i]);
  }
  return v;
}

std::array<Point, 3> unflatten(const std::vector<double>& v, int dim) {
  std::array<Point, 3> t;
  for (int k = 0; k < 3; ++k) {
    Eigen::VectorXd c(dim);
    for (int i = 0; i < dim; ++i) c[i] = v[static_cast<std::size_t>(k * dim + i)];
    t[static_cast<std::size_t>(k)] = Point(c);
  }
  return t;
}

}  // namespace

SearchSpace euclidean_space(int dim) {
  if (dim < 1) throw InvalidParameter("euclidean_space: dimension must be >= 1");
  SearchSpace s;
  s.dim = dim;
  s.sample = [dim](std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    Eigen::VectorXd v(dim);
    for (int i = 0; i < dim; ++i) v[i] = unit(rng) * log_uniform(rng, -2.0, 2.0);
    return Point(v);
  };
  s.contains = [](const Point& p) { return p.is_finite(); };
  s.probes = sign_probes(dim, s.contains);
  return s;
}

SearchSpace domain_space(const DomainSpec& g) {
  SearchSpace s;
  s.dim = g.dim();
  const int dim = s.dim;
  s.contains = [g](const Point& p) { return p.is_finite() && p.dim() == g.dim() && g.contains(p); };
  std::visit(
      [&](const auto& dom) {
        using T = std::decay_t<decltype(dom)>;
        if constexpr (std::is_same_v<T, domains::HalfPlane>) {
          s.sample = [](std::mt19937_64& rng) {
            std::uniform_real_distribution<double> unit(-1.0, 1.0);
            return Point{unit(rng) * log_uniform(rng, -1.0, 2.0), log_uniform(rng, -3.0, 2.0)};
          };
        } else if constexpr (std::is_same_v<T, domains::UnitBall>) {
          s.sample = [dim](std::mt19937_64& rng) {
            std::uniform_real_distribution<double> unit(0.0, 1.0);
            const double r = unit(rng) < 0.5 ? std::pow(unit(rng), 1.0 / dim) : 1.0 - log_uniform(rng, -4.0, 0.0);
            return Point(Eigen::VectorXd(random_direction(rng, dim) * std::min(r, 1.0 - 1e-12)));
          };
        } else {
          std::vector<Point> anchors = g.finite_boundary();
          Eigen::VectorXd mean = Eigen::VectorXd::Zero(dim);
          for (const auto& a : anchors) mean += a.coords();
          mean /= static_cast<double>(anchors.size());
          s.sample = [anchors, mean, dim](std::mt19937_64& rng) {
            std::uniform_int_distribution<std::size_t> pick(0, anchors.size());
            const std::size_t k = pick(rng);
            const Eigen::VectorXd& base = k < anchors.size() ? anchors[k].coords() : mean;
            return Point(Eigen::VectorXd(base + random_direction(rng, dim) * log_uniform(rng, -3.0, 1.0)));
          };
        }
      },
      g.variant());
  s.probes = sign_probes(dim, s.contains);
  return s;
}

std::optional<ViolationReport> triangle_search_nd(const DistanceFunction& d, const SearchSpace& space,
                                                  const SearchConfig& cfg) {
  cfg.validate();
  using Flat = std::vector<double>;
  auto rel = [&](const std::array<Point, 3>& t) {
    try {
      const ViolationReport r = evaluate_triple(d, t[0], t[1], t[2]);
      return std::isfinite(r.lhs) && std::isfinite(r.rhs) ? r.relative_margin() : kNaN;
    } catch (const Error&) {
      return kNaN;
    }
  };
  auto draw = [&](std::mt19937_64& rng) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
      Point p = space.sample(rng);
      if (space.contains(p)) return p;
    }
    throw InvalidParameter("triangle_search_nd: sampler produced no admissible point");
  };

  TopK<Flat> top(static_cast<std::size_t>(cfg.top_k));
  for (const auto& t : space.probes) top.offer(rel(t), flatten(t));

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss;
  for (long i = 0; i < cfg.random_triples; ++i) {
    const Point x = draw(rng), y = draw(rng);
    Point z;
    if (i % 3 == 0) {
      const double t = unit(rng);
      const double spread = 0.05 * euclidean(x, y);
      Eigen::VectorXd c = x.coords() + t * (y.coords() - x.coords());
      for (int k = 0; k < space.dim; ++k) c[k] += spread * gauss(rng);
      z = Point(c);
      if (!space.contains(z)) z = draw(rng);
    } else {
      z = draw(rng);
    }
    const std::array<Point, 3> t{x, z, y};
    top.offer(rel(t), flatten(t));
  }

  std::vector<ViolationReport> found;
  for (const auto& c : top.take()) {
    Flat v = c.t;
    double best = c.rel;
    const auto start = unflatten(v, space.dim);
    double h = 0.1 * std::max({euclidean(start[0], start[1]), euclidean(start[1], start[2]),
                               euclidean(start[0], start[2]), 1e-12});
    int halvings = 0;
    for (int steps = 0; halvings < cfg.refine_iterations && steps < 40 * cfg.refine_iterations; ++steps) {
      Flat step_best = v;
      double step_val = best;
      for (std::size_t k = 0; k < v.size(); ++k) {
        for (double sgn : {1.0, -1.0}) {
          Flat w = v;
          w[k] += sgn * h;
          const auto t = unflatten(w, space.dim);
          if (!space.contains(t[0]) || !space.contains(t[1]) || !space.contains(t[2])) continue;
          const double r = rel(t);
          if (r > step_val) {
            step_val = r;
            step_best = std::move(w);
          }
        }
      }
      if (step_val > best) {
        best = step_val;
        v = std::move(step_best);
      } else {
        h *= 0.5;
        ++halvings;
      }
    }
    const auto t = unflatten(v, space.dim);
    try {
      found.push_back(evaluate_triple(d, t[0], t[1], t[2]));
    } catch (const Error&) {
    }
  }
  return pick_best(found, cfg.violation_tolerance);
}

std::optional<ViolationReport> triangle_search_nd(const DistanceFunction& d, int dim, const SearchConfig& cfg) {
  return triangle_search_nd(d, euclidean_space(dim), cfg);
}

}  // namespace relmetric
