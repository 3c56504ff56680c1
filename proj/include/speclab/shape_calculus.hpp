#pragma once

#include <string>
#include <vector>

#include "speclab/functionals.hpp"

namespace speclab {

/// How outward normal derivatives of a Dirichlet solution are read off on
/// the boundary.
enum class GradientRule {
  normal_difference,  // one-sided differences at 1, 2, 3 offsets along the inward normal
  element_average,    // area-weighted P1 gradients of the boundary elements
  flux,               // variational flux K u - F against the boundary mass
};

struct ShapeOptions {
  ResolventOptions resolvent;
  GradientRule rule = GradientRule::flux;
  /// Offset of the normal-difference stencil as a multiple of the local
  /// radial mesh spacing.
  double offset_factor = 1.0;
};

/// Dirichlet solution together with its discrete load, as needed by the
/// flux rule.
struct PoissonSolution {
  FemField field;
  Vector load;
};

/// Outward normal derivative of u at the vertices of mesh loop `loop`
/// (0 = core) of the given domain.
std::vector<double> normal_derivative(const StarDomain& domain, const PoissonSolution& u, int loop,
                                      GradientRule rule, double offset_factor = 1.0);

/// Boundary samples of the star-shaped core at the mesh boundary vertices.
/// Boundary integrals of g against a radial velocity drho are
///   int g T.nu ds = sum_i weight_i g_i drho(theta_i).
struct BoundaryDensity {
  std::vector<double> angles;
  std::vector<Point> points;
  std::vector<double> weights;
  std::vector<double> grad_w_sq;  // |grad w|^2
  std::vector<double> dn_u;       // outward normal derivative of u_Omega^f
  std::vector<double> dn_p1;      // outward normal derivative of p1
  std::vector<double> v_dot_a;    // V . A_Omega(x_i)
};

PoissonSolution adjoint_p(const SpacePtr& space, const FemField& u_f);
/// -Delta p1 = u_f - u_ball_f on the domain of u_f (ball field interpolated).
PoissonSolution adjoint_p1(const SpacePtr& space, const FemField& u_f, const FemField& u_ball_f);
/// V = int_{boundary of the ball} dn p2 dn u_B nu, with -Delta p2 = u_Omega^f - u_B^f in the ball.
Point vector_V(const ResolventPair& pair, GradientRule rule = GradientRule::flux,
               double offset_factor = 1.0);

/// All boundary data of a domain for a fixed forcing.
struct ShapeState {
  StarDomain domain;
  double volume = 0.0;
  ResolventPair pair{};
  PoissonSolution torsion{};
  PoissonSolution u{};
  PoissonSolution p1{};
  Point V = Point::Zero();
  double tor = 0.0;
  BoundaryDensity density{};
};

ShapeState shape_state(const StarDomain& domain, const ScalarFunction& f, const ShapeOptions& opts = {});

/// A velocity is a radial speed drho: the flow is rho_t = rho + t drho, whose
/// normal speed satisfies T.nu ds = drho rho dtheta.
double d_volume(const StarDomain& domain, const BoundaryFunction& velocity);
Point d_barycenter(const StarDomain& domain, const BoundaryFunction& velocity);
double d_torsion(const ShapeState& state, const BoundaryFunction& velocity);
double d_beta_sq(const ShapeState& state, const BoundaryFunction& velocity);

/// 2 (beta^2 - a) / h(beta^2, a).
double penalty_slope(double beta_sq, double a);

/// Samples of -1/2 |grad w|^2 + tau C (dn p1 dn u - V.A), the density of
/// the first variation of the penalized energy.
std::vector<double> shape_gradient(const ShapeState& state, const PenaltyParams& params);

/// (max - min) / mean of 1/2 |grad w|^2 - tau C dn p1 dn u + tau C V.A on
/// the boundary samples.
double el_residual(const ShapeState& state, const PenaltyParams& params);
double el_residual(const StarDomain& domain, const ScalarFunction& f, const PenaltyParams& params,
                   const ShapeOptions& opts = {});

struct OptimizeOptions {
  ShapeOptions shape;
  int max_iters = 60;
  int fourier_order = 12;
  double initial_step = 4.0;
  double min_step = 1e-8;
  double energy_tol = 1e-10;
  // Stationary once the filtered non-constant part of the gradient is this
  // small relative to its mean (L2 over the circle).
  double gradient_tol = 1e-3;
  double tau_cap = 0.05;
};

struct TraceRow {
  int iter = 0;
  double energy = 0.0;
  double residual = 0.0;
  double barycenter_norm = 0.0;
  double hausdorff = 0.0;
  double step = 0.0;
};

struct OptimizeResult {
  StarDomain domain;
  std::vector<TraceRow> trace{};
  std::vector<BoundaryFunction> history{};  // radial function per accepted iterate
  int moves = 0;
  std::string stop_reason{};
};

/// Projected gradient descent of tor + tau h(beta^2) over the Fourier
/// coefficients of the radial function, with the volume restored by scaling.
OptimizeResult minimize_energy(const StarDomain& initial, const ScalarFunction& f,
                               const PenaltyParams& params, const OptimizeOptions& opts = {});

/// Hausdorff distance between the core boundary and the unit circle centered
/// at the best center found by a local search from the barycenter.
double hausdorff_to_unit_ball(const StarDomain& domain);

}  // namespace speclab
