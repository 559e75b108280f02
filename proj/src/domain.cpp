#include "relmetric/domain.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "relmetric/error.hpp"
#include "relmetric/parsing.hpp"

namespace relmetric {

namespace {

void require_dims(const std::vector<Point>& pts, int dim, const char* what) {
  for (const auto& p : pts) {
    if (p.is_finite() && p.dim() != dim) {
      throw InvalidParameter(std::string(what) + ": boundary point dimension mismatch");
    }
  }
}

}  // namespace

DomainSpec DomainSpec::half_plane() { return DomainSpec(domains::HalfPlane{}); }

DomainSpec DomainSpec::unit_ball(int dim) {
  if (dim < 1) throw InvalidParameter("unit ball: dimension must be >= 1");
  return DomainSpec(domains::UnitBall{dim});
}

DomainSpec DomainSpec::punctured(std::vector<Point> punctures) {
  if (punctures.empty()) throw InvalidParameter("punctured space: at least one puncture required");
  for (const auto& p : punctures) {
    if (p.is_infinite()) throw InvalidParameter("punctured space: punctures must be finite");
  }
  const int dim = static_cast<int>(punctures.front().dim());
  require_dims(punctures, dim, "punctured space");
  return DomainSpec(domains::PuncturedSpace{std::move(punctures), dim});
}

DomainSpec DomainSpec::sampled(std::vector<Point> boundary, std::function<double(const Point&)> distance) {
  if (boundary.empty()) throw InvalidParameter("sampled domain: boundary must be nonempty");
  int dim = 0;
  for (const auto& p : boundary) {
    if (p.is_finite()) {
      dim = static_cast<int>(p.dim());
      break;
    }
  }
  if (dim == 0) throw InvalidParameter("sampled domain: at least one finite boundary point required");
  require_dims(boundary, dim, "sampled domain");
  return DomainSpec(domains::Sampled{std::move(boundary), dim, std::move(distance)});
}

int DomainSpec::dim() const {
  return std::visit(
      [](const auto& g) -> int {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, domains::HalfPlane>) {
          return 2;
        } else {
          return g.dim;
        }
      },
      v_);
}

std::string DomainSpec::kind_name() const {
  return std::visit(
      [](const auto& g) -> std::string {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, domains::HalfPlane>) return "halfplane";
        else if constexpr (std::is_same_v<T, domains::UnitBall>) return "ball";
        else if constexpr (std::is_same_v<T, domains::PuncturedSpace>) return "punctured";
        else return "sampled";
      },
      v_);
}

bool DomainSpec::contains(const Point& x) const {
  if (!x.is_finite() || x.dim() != dim()) return false;
  return std::visit(
      [&x](const auto& g) -> bool {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, domains::HalfPlane>) {
          return x.coords()[1] > 0.0;
        } else if constexpr (std::is_same_v<T, domains::UnitBall>) {
          return x.norm() < 1.0;
        } else if constexpr (std::is_same_v<T, domains::PuncturedSpace>) {
          for (const auto& a : g.punctures) {
            if (a == x) return false;
          }
          return true;
        } else {
          if (g.distance) return g.distance(x) > 0.0;
          for (const auto& a : g.boundary) {
            if (a == x) return false;
          }
          return true;
        }
      },
      v_);
}

std::vector<Point> DomainSpec::finite_boundary() const {
  std::vector<Point> out;
  for (auto& p : discrete_boundary()) {
    if (p.is_finite()) out.push_back(std::move(p));
  }
  return out;
}

bool DomainSpec::boundary_has_infinity() const {
  return std::visit(
      [](const auto& g) -> bool {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, domains::UnitBall>) {
          return false;
        } else if constexpr (std::is_same_v<T, domains::Sampled>) {
          for (const auto& a : g.boundary) {
            if (a.is_infinite()) return true;
          }
          return false;
        } else {
          return true;
        }
      },
      v_);
}

std::vector<Point> DomainSpec::discrete_boundary() const {
  if (const auto* g = std::get_if<domains::PuncturedSpace>(&v_)) {
    std::vector<Point> out = g->punctures;
    out.push_back(Point::infinity());
    return out;
  }
  if (const auto* g = std::get_if<domains::Sampled>(&v_)) return g->boundary;
  return {};
}

bool DomainSpec::has_analytic_boundary() const {
  return std::holds_alternative<domains::HalfPlane>(v_) || std::holds_alternative<domains::UnitBall>(v_);
}

DomainSpec parse_domain_spec(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::string kind;
  int dim = -1;
  std::vector<Point> points;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    line = line.substr(first);
    const auto colon = line.find(':');
    try {
      if (colon != std::string::npos) {
        std::string key = line.substr(0, colon);
        while (!key.empty() && std::isspace(static_cast<unsigned char>(key.back()))) key.pop_back();
        std::string value = line.substr(colon + 1);
        const auto vstart = value.find_first_not_of(" \t");
        value = vstart == std::string::npos ? "" : value.substr(vstart);
        while (!value.empty() && std::isspace(static_cast<unsigned char>(value.back()))) value.pop_back();
        if (key == "kind") {
          kind = value;
        } else if (key == "dimension") {
          const double d = parse_real(value);
          if (d < 1 || d != std::floor(d)) throw ParseError("dimension must be a positive integer");
          dim = static_cast<int>(d);
        } else {
          throw ParseError("unknown key '" + key + "'");
        }
      } else {
        points.push_back(parse_point(line));
      }
    } catch (const ParseError& e) {
      throw ParseError("domain spec line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  auto check_dim = [&](int actual) {
    if (dim != -1 && dim != actual) throw ParseError("domain spec: dimension does not match the points");
  };
  try {
    if (kind == "halfplane") {
      if (!points.empty()) throw ParseError("domain spec: halfplane takes no boundary points");
      check_dim(2);
      return DomainSpec::half_plane();
    }
    if (kind == "ball") {
      if (!points.empty()) throw ParseError("domain spec: ball takes no boundary points");
      return DomainSpec::unit_ball(dim == -1 ? 2 : dim);
    }
    if (kind == "punctured") {
      DomainSpec g = DomainSpec::punctured(std::move(points));
      check_dim(g.dim());
      return g;
    }
    if (kind == "sampled") {
      DomainSpec g = DomainSpec::sampled(std::move(points));
      check_dim(g.dim());
      return g;
    }
  } catch (const InvalidParameter& e) {
    throw ParseError(e.what());
  }
  if (kind.empty()) throw ParseError("domain spec: missing 'kind:' line");
  throw ParseError("domain spec: unknown kind '" + kind + "'");
}

DomainSpec load_domain_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open domain spec '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_domain_spec(buf.str());
}

std::string format_domain_spec(const DomainSpec& g) {
  std::ostringstream os;
  os << "kind: " << g.kind_name() << "\n";
  os << "dimension: " << g.dim() << "\n";
  if (std::holds_alternative<domains::PuncturedSpace>(g.variant())) {
    for (const auto& p : g.finite_boundary()) os << p.to_string() << "\n";
  } else if (std::holds_alternative<domains::Sampled>(g.variant())) {
    for (const auto& p : g.discrete_boundary()) os << p.to_string() << "\n";
  }
  return os.str();
}

}  // namespace relmetric
