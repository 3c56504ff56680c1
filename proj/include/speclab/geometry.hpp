#pragma once

#include <Eigen/Core>
#include <vector>

#include "speclab/boundary_function.hpp"

namespace speclab {

using Point = Eigen::Vector2d;

struct Ball {
  Point center = Point::Zero();
  double radius = 1.0;
};

/// Bounded planar open set, star-shaped about `center()`:
///   boundary = { center + rho(theta) (cos theta, sin theta) },
/// optionally together with finitely many disjoint auxiliary disks.
class StarDomain {
 public:
  StarDomain(Point center, BoundaryFunction radial, std::vector<Ball> balls = {});

  static StarDomain disk(double radius = 1.0, const Point& center = Point::Zero());
  /// Axis-aligned ellipse with semi-axes a (x) and b (y), radial function
  /// projected onto `order` Fourier modes.
  static StarDomain ellipse(double a, double b, const Point& center = Point::Zero(),
                            int order = 48);
  /// Area-pi ellipse with semi-axes 1/(1+eps) and 1+eps.
  static StarDomain unit_ellipse(double eps);
  /// rho = 1 + amplitude cos(k theta), scaled to area pi.
  static StarDomain perturbed_disk(int k, double amplitude);
  /// Core disk of radius sqrt(1 - 2 r^2) plus disks of radius r at +-2 e1
  /// (total area pi).
  static StarDomain satellites(double r);

  const Point& center() const { return center_; }
  const BoundaryFunction& radial() const { return radial_; }
  const std::vector<Ball>& balls() const { return balls_; }

  double radius_at(double theta) const { return radial_(theta); }
  Point boundary_point(double theta) const;
  /// Outward unit normal of the star-shaped core at angle theta.
  Point outward_normal(double theta) const;
  /// |gamma'(theta)| = sqrt(rho^2 + rho'^2).
  double speed(double theta) const;

  double min_radius() const;
  double max_radius() const;
  /// Bounding box of the whole set, as (lower-left, upper-right).
  std::pair<Point, Point> bounding_box() const;
  double diameter_bound() const;

  bool contains(const Point& x) const;

  StarDomain translated(const Point& shift) const;
  /// Homothety about the star center (balls scale about the same point).
  StarDomain scaled(double factor) const;
  StarDomain with_radial(BoundaryFunction radial) const;

  /// Angular quadrature size that integrates rho^3 exactly.
  int angular_samples() const;

 private:
  Point center_;
  BoundaryFunction radial_;
  std::vector<Ball> balls_;
};

double volume(const StarDomain& domain);
StarDomain volume_normalize(const StarDomain& domain);
Point classical_barycenter(const StarDomain& domain);

/// The convex profile q with q(t) = t^2 on [0, 100] and
/// q'' = 1 / (t^2 - 100^2 + 1/2) beyond, tabulated on [100, 1e4].
class TruncationProfile {
 public:
  static const TruncationProfile& instance();

  double value(double t) const;
  double first(double t) const;
  double second(double t) const;

  static constexpr double kQuadraticLimit = 100.0;
  static constexpr double kTableEnd = 1.0e4;

 private:
  TruncationProfile();
  double step_ = 0.5;
  std::vector<double> q_, dq_;
};

Point truncated_barycenter(const StarDomain& domain);

/// inf_x |Omega symmetric-difference B_1(x)| for a unit-area-normalized domain.
struct AsymmetryResult {
  double value = 0.0;
  Point best_center = Point::Zero();
};
AsymmetryResult fraenkel_asymmetry_search(const StarDomain& domain, int angular_samples = 8192);
double fraenkel_asymmetry(const StarDomain& domain);
/// |Omega symmetric-difference B_1(x)| for a fixed center.
double symmetric_difference_with_unit_disk(const StarDomain& domain, const Point& x,
                                           int angular_samples = 8192);

}  // namespace speclab
