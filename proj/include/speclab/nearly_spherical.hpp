#pragma once

#include <vector>

#include "speclab/functionals.hpp"

namespace speclab {

/// Radial graph {(1 + phi(x)) x : |x| = 1} over the unit circle.
struct NearlySpherical {
  BoundaryFunction phi;
  bool normalized = false;

  StarDomain domain() const;
};

/// Adjusts the a0, a1, b1 modes of phi by Newton iteration so that the set
/// has volume pi and barycenter 0 (to 1e-12).
NearlySpherical normalize_nearly_spherical(const BoundaryFunction& phi);
bool is_normalized(const BoundaryFunction& phi, double tol = 1e-8);

/// Harmonic extension sum r^k (a_k cos k theta + b_k sin k theta) + a0 at the
/// vertices of a mesh of the unit disk.
FemField harmonic_extension(const BoundaryFunction& phi, const SpacePtr& disk_space);
double harmonic_extension_value(const BoundaryFunction& phi, const Point& x);

/// int_B |grad h|^2 + int_B h^2 of the harmonic extension.
double h_half_norm_sq(const BoundaryFunction& phi);

struct GapCheck {
  double deficit = 0.0;
  double bound = 0.0;  // ||phi||^2 / 128
  double ratio = 0.0;  // deficit / ||phi||^2
  double slack = 0.0;
  bool holds = false;
};

/// Torsion deficit of a normalized nearly spherical set against
/// ||phi||^2_{H^{1/2}} / 128, with slack 2 |tor_h(B) - tor(B)| at the same
/// mesh size.
GapCheck check_spectral_gap(const BoundaryFunction& phi, double mesh_h);

struct FugledeCheck {
  double deficit = 0.0;
  double beta_sq = 0.0;
  double ratio = 0.0;
};
FugledeCheck check_fuglede(const BoundaryFunction& phi, const ScalarFunction& f, double mesh_h);

struct TaylorFit {
  std::vector<double> t;
  std::vector<double> energy;    // tor of the set with radial 1 + t phi
  std::vector<double> model;     // e(0) + t e'(0) + t^2/2 e''(0)
  std::vector<double> residual;  // |energy - model|
  double e0 = 0.0;
  double first = 0.0;   // e'(0) from the boundary integral
  double second = 0.0;  // e''(0)
  double slope = 0.0;   // least-squares log-log slope of the residual
};

/// Second-order expansion of t -> tor((1 + t phi) B) at the ball. e(0) is
/// taken from the same discretization so that the residual is not swamped
/// by mesh bias.
TaylorFit taylor_check(const BoundaryFunction& phi, const std::vector<double>& t_values,
                       double mesh_h);

/// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace speclab
