#pragma once

#include <Eigen/Core>
#include <utility>

#include "speclab/geometry.hpp"

namespace speclab::closed_forms {

/// |B_1| in R^n.
double unit_ball_volume(int dim);

struct BallSpec {
  int dim = 2;
  double radius = 1.0;
  Eigen::VectorXd center = Eigen::VectorXd::Zero(2);
};

/// Torsion function (r^2 - |x - x0|^2) / (2n) of a ball, zero outside.
double ball_torsion_value(const BallSpec& ball, const Eigen::VectorXd& x);
/// tor(B_r) = -r^{n+2} omega_n / (2n(n+2)).
double ball_torsional_rigidity(int dim, double radius);

/// Area-pi ellipse with semi-axes a = 1/(1+eps) (x) and b = 1+eps (y).
struct EllipseTorsion {
  double torsion = 0.0;
  double deficit = 0.0;
};
EllipseTorsion ellipse_torsion(double eps);
/// Amplitude C of the torsion function C (1 - x^2/a^2 - y^2/b^2).
double ellipse_torsion_amplitude(double eps);
double ellipse_torsion_value(double eps, const Point& x);

struct SatelliteResult {
  double deficit = 0.0;
  double beta_sq = 0.0;
  double core_radius = 0.0;  // 1 - rho
  double amplitude = 0.0;    // M
};
/// Core ball of radius 1 - rho plus two satellites of radius r at +-2 e1,
/// forcing f = M chi_{satellites}.
SatelliteResult satellite_example(int dim, double r, double p);

/// int_{R^2} |grad w_E - grad w_B|^2 with both torsion functions
/// zero-extended.
double h1_distance_ellipse(double eps);

/// Dirichlet eigenpair of the unit disk, J_m(j r) {cos, sin}(m theta).
struct DiskMode {
  int index = 1;        // 1-based position in the spectrum, counting multiplicity
  int angular = 0;      // m
  int radial = 1;       // l: j is the l-th positive zero of J_m
  bool sine = false;    // sin(m theta) partner of a degenerate pair
  int multiplicity = 1;
  double zero = 0.0;
  double eigenvalue = 0.0;
  double normalization = 1.0;  // so that int_{B_1} u^2 = 1
};

/// l-th positive zero of J_m, by bracketing and bisection to 1e-12.
double bessel_zero(int m, int l);
DiskMode disk_eigenpair(int k);
/// L^2-normalized mode on the ball of given radius and center, zero outside.
double disk_mode_value(const DiskMode& mode, const Point& x, double radius = 1.0,
                       const Point& center = Point::Zero());

}  // namespace speclab::closed_forms
