#pragma once

#include <Eigen/Core>
#include <initializer_list>
#include <string>

namespace relmetric {

/// A point of R^n (n >= 1, chosen at runtime) or the point at infinity of the
/// one-point compactification. Finite points always carry finite coordinates.
class Point {
 public:
  Point() = default;
  explicit Point(Eigen::VectorXd coords);
  Point(std::initializer_list<double> coords);

  static Point infinity();

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_ && coords_.size() > 0; }

  // 0 for the point at infinity.
  Eigen::Index dim() const { return coords_.size(); }

  // Coordinates of a finite point; throws DomainError for the point at infinity.
  const Eigen::VectorXd& coords() const;

  // Euclidean norm; +inf for the point at infinity.
  double norm() const;

  std::string to_string() const;

  friend bool operator==(const Point& a, const Point& b);

 private:
  Eigen::VectorXd coords_;
  bool infinite_ = false;
};

/// |x - y| for finite points of equal dimension.
double euclidean(const Point& x, const Point& y);

}  // namespace relmetric
