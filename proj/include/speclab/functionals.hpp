#pragma once

#include <string>
#include <vector>

#include "speclab/fem.hpp"

namespace speclab {

struct PenaltyParams {
  double a = 0.5;     // target of the regularizer, in (0, 1]
  double tau = 1e-3;  // weight of the regularizer
  double eta = 0.05;  // volume penalty slope
  void validate() const;
};

/// sqrt(a^2 + (a - t)^2).
double h_penalty(double t, double a);
/// eta (t - pi) below pi, (t - pi) / eta above.
double volume_penalty(double t, double eta);

struct Forcing {
  std::string name;
  ScalarFunction f;
};

/// Constants 1 and 1/2 and smooth bumps exp(1 - 1/(1 - |x-c|^2/s^2)) at the
/// nodes of a 3x3 grid with spacing 0.5 around the origin, widths 0.3 and 0.6.
std::vector<Forcing> default_dictionary();

enum class CrossRule { grid, overlay };

struct ResolventOptions {
  double mesh_h = 0.02;
  /// Fixed connectivity for the domain mesh (finite differences, descent).
  std::optional<MeshTopology> topology;
  CrossRule rule = CrossRule::grid;
  GridOptions grid;
};

/// u_Omega^f on the domain and u_B^f on the unit disk centered at the
/// truncated barycenter.
struct ResolventPair {
  SpacePtr domain_space;
  SpacePtr ball_space;
  Point center = Point::Zero();
  FemField u_domain;
  FemField u_ball;
  Vector domain_load;  // discrete loads of the two solves
  Vector ball_load;
  double beta_sq = 0.0;
};

/// Throws FNormViolation when sup |f| > 1 on the sample points.
void check_forcing_bound(const ScalarFunction& f, const std::vector<Point>& samples);

SpacePtr domain_space(const StarDomain& domain, const ResolventOptions& opts);
SpacePtr ball_space(const Point& center, double mesh_h);

ResolventPair solve_resolvent_pair(const StarDomain& domain, const ScalarFunction& f,
                                   const ResolventOptions& opts = {});
ResolventPair solve_resolvent_pair(const SpacePtr& domain_space, const SpacePtr& ball_space,
                                   const Point& center, const ScalarFunction& f,
                                   const ResolventOptions& opts = {});

double beta_sq(const StarDomain& domain, const ScalarFunction& f, double mesh_h);
double beta_sq(const StarDomain& domain, const ScalarFunction& f, const ResolventOptions& opts);

struct ResolventBound {
  double value = 0.0;  // max over the dictionary of sqrt(beta_sq)
  std::vector<double> beta_sq;  // per dictionary member
  int argmax = 0;
};
/// Lower bound on the L^inf -> L^2 distance of the two resolvents; the
/// supremum over the unit ball of L^inf is only sampled.
ResolventBound resolvent_distance_lb(const StarDomain& domain, const std::vector<Forcing>& dictionary,
                                     const ResolventOptions& opts = {});

double energy(const StarDomain& domain, const ScalarFunction& f, const PenaltyParams& params,
              const ResolventOptions& opts = {});

struct StabilityReport {
  double fk_deficit = 0.0;
  double sv_deficit = 0.0;
  double beta_sq = 0.0;
  double asymmetry = 0.0;
  Point barycenter = Point::Zero();
  double resolvent_lb = 0.0;
  double lambda1 = 0.0;
  double torsion = 0.0;
  double volume = 0.0;
};

StabilityReport stability_report(const StarDomain& domain, const ScalarFunction& f,
                                 const ResolventOptions& opts = {});

}  // namespace speclab
