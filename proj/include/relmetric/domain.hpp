#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "relmetric/point.hpp"

namespace relmetric {

namespace domains {

// Upper half-plane {x in R^2 : x_2 > 0}; boundary is the horizontal axis plus infinity.
struct HalfPlane {};

// Open unit ball of R^n.
struct UnitBall {
  int dim = 2;
};

// R^n minus finitely many points; boundary is the punctures plus infinity.
struct PuncturedSpace {
  std::vector<Point> punctures;
  int dim = 2;
};

// A domain known only through boundary samples (which may include infinity).
// `distance`, when set, is the exact distance to the boundary.
struct Sampled {
  std::vector<Point> boundary;
  int dim = 2;
  std::function<double(const Point&)> distance;
};

}  // namespace domains

/// A proper subdomain G of R^n described by its boundary.
class DomainSpec {
 public:
  using Variant = std::variant<domains::HalfPlane, domains::UnitBall, domains::PuncturedSpace, domains::Sampled>;

  static DomainSpec half_plane();
  static DomainSpec unit_ball(int dim);
  static DomainSpec punctured(std::vector<Point> punctures);
  static DomainSpec sampled(std::vector<Point> boundary, std::function<double(const Point&)> distance = {});

  const Variant& variant() const { return v_; }
  int dim() const;
  std::string kind_name() const;

  bool contains(const Point& x) const;

  // Finite boundary points of a discrete boundary (punctures or samples).
  std::vector<Point> finite_boundary() const;

  // Whether infinity belongs to the boundary.
  bool boundary_has_infinity() const;

  // Boundary points of a discrete boundary, infinity included where it belongs.
  std::vector<Point> discrete_boundary() const;

  bool has_analytic_boundary() const;

 private:
  explicit DomainSpec(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

/// Parse the text format:
///
///     # comments start with '#'
///     kind: punctured          (halfplane | ball | punctured | sampled)
///     dimension: 2
///     -1, 0                    one boundary point per line ("inf" allowed for sampled)
///     1, 0
///
/// Half-plane files need only the kind line (the dimension is always 2).
DomainSpec parse_domain_spec(std::string_view text);
DomainSpec load_domain_spec(const std::string& path);
std::string format_domain_spec(const DomainSpec& g);

}  // namespace relmetric
