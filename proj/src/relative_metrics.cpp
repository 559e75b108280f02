#include "relmetric/relative_metrics.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "relmetric/error.hpp"

namespace relmetric {

Point::Point(Eigen::VectorXd coords) : coords_(std::move(coords)) {
  if (coords_.size() == 0) throw InvalidParameter("point must have dimension >= 1");
  if (!coords_.allFinite()) throw InvalidParameter("point coordinates must be finite");
}

Point::Point(std::initializer_list<double> coords)
    : Point(Eigen::Map<const Eigen::VectorXd>(coords.begin(), static_cast<Eigen::Index>(coords.size()))) {}

Point Point::infinity() {
  Point p;
  p.infinite_ = true;
  return p;
}

const Eigen::VectorXd& Point::coords() const {
  if (infinite_) throw DomainError("the point at infinity has no coordinates");
  return coords_;
}

double Point::norm() const {
  return infinite_ ? std::numeric_limits<double>::infinity() : coords_.norm();
}

std::string Point::to_string() const {
  if (infinite_) return "inf";
  std::ostringstream os;
  os.precision(17);
  for (Eigen::Index i = 0; i < coords_.size(); ++i) {
    if (i) os << ",";
    os << coords_[i];
  }
  return os.str();
}

bool operator==(const Point& a, const Point& b) {
  if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
  return a.coords_.size() == b.coords_.size() && a.coords_ == b.coords_;
}

double euclidean(const Point& x, const Point& y) {
  if (x.is_infinite() || y.is_infinite()) throw DomainError("euclidean: finite points required");
  if (x.dim() != y.dim()) throw InvalidParameter("euclidean: dimension mismatch");
  return (x.coords() - y.coords()).norm();
}

std::string to_string(MetricKind kind) {
  switch (kind) {
    case MetricKind::Raw: return "raw";
    case MetricKind::Log1p: return "log1p";
    case MetricKind::Arcsinh: return "arcsinh";
    case MetricKind::Arccosh1p: return "arccosh1p";
  }
  return "raw";
}

MetricKind metric_kind_from_string(const std::string& name) {
  if (name == "raw") return MetricKind::Raw;
  if (name == "log1p") return MetricKind::Log1p;
  if (name == "arcsinh") return MetricKind::Arcsinh;
  if (name == "arccosh1p") return MetricKind::Arccosh1p;
  throw ParseError("unknown metric kind '" + name + "' (expected raw, log1p, arcsinh, arccosh1p)");
}

namespace {

double relative_quotient(const WeightFunction& m, double dist, double nx, double ny) {
  if (dist == 0.0) return 0.0;
  const double w = weight_eval(m, nx, ny);
  if (std::isnan(w)) throw EvaluationError("weight evaluated to NaN");
  if (w == 0.0) {
    std::ostringstream os;
    os << "rho: M(" << nx << ", " << ny << ") = 0 for distinct points (" << m.describe() << ")";
    throw DegenerateWeight(os.str());
  }
  return dist / w;
}

}  // namespace

double rho(const WeightFunction& m, const Point& x, const Point& y) {
  if (x.is_infinite() || y.is_infinite()) throw DomainError("rho: the point at infinity is not allowed");
  return relative_quotient(m, euclidean(x, y), x.norm(), y.norm());
}

double rho(const WeightFunction& m, double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b)) throw DomainError("rho: finite arguments required");
  return relative_quotient(m, std::abs(a - b), std::abs(a), std::abs(b));
}

double rho_pq(ExtendedReal p, double q, const Point& x, const Point& y) {
  return rho(WeightFunction::power(p, q), x, y);
}

double transform(double d, MetricKind kind) {
  if (!(d >= 0.0)) throw InvalidParameter("transform: distance must be non-negative");
  switch (kind) {
    case MetricKind::Raw: return d;
    case MetricKind::Log1p: return std::log1p(d);
    case MetricKind::Arcsinh: return std::asinh(d);
    case MetricKind::Arccosh1p:
      // arccosh(1+d) = log(1 + d + sqrt(d(d+2))), written to keep precision for small d
      return std::isinf(d) ? d : std::log1p(d + std::sqrt(d * (d + 2.0)));
  }
  return d;
}

double lambda_apc(ExtendedReal p, double c, const Point& x, const Point& y) {
  if (!(c > 0.0)) throw InvalidParameter("lambda_apc: c must be positive");
  return std::log1p(rho(WeightFunction::scaled(p, 1.0 / c), x, y));
}

double chordal(const Point& x, const Point& y) {
  if (x.is_infinite() && y.is_infinite()) return 0.0;
  if (x.is_infinite()) return 1.0 / std::hypot(1.0, y.norm());
  if (y.is_infinite()) return 1.0 / std::hypot(1.0, x.norm());
  return euclidean(x, y) / (std::hypot(1.0, x.norm()) * std::hypot(1.0, y.norm()));
}

namespace {

// (1 + t^p)^(1/p) without overflow.
double one_plus_power_root(double p, double t) {
  if (t <= 1.0) return std::pow(1.0 + std::pow(t, p), 1.0 / p);
  return t * std::pow(std::pow(t, -p) + 1.0, 1.0 / p);
}

}  // namespace

double example_metric(double p, const Point& x, const Point& y) {
  if (!(p > 0.0) || !std::isfinite(p)) throw InvalidParameter("example_metric: p must be positive and finite");
  if (x.is_infinite() && y.is_infinite()) return 0.0;
  if (x.is_infinite()) return 1.0 / one_plus_power_root(p, y.norm());
  if (y.is_infinite()) return 1.0 / one_plus_power_root(p, x.norm());
  const double d = euclidean(x, y);
  if (d == 0.0) return 0.0;
  return d / (one_plus_power_root(p, x.norm()) * one_plus_power_root(p, y.norm()));
}

}  // namespace relmetric
