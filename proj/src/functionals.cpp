#include "speclab/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>

#include "speclab/closed_forms.hpp"
#include "speclab/eigensolver.hpp"
#include "speclab/errors.hpp"

namespace speclab {

namespace {
constexpr double kPi = std::numbers::pi;
}

void PenaltyParams::validate() const {
  if (!(a > 0.0 && a <= 1.0)) throw InvalidConfig("penalty parameter a must lie in (0, 1]");
  if (!(tau > 0.0)) throw InvalidConfig("penalty parameter tau must be positive");
  if (!(eta > 0.0)) throw InvalidConfig("penalty parameter eta must be positive");
}

double h_penalty(double t, double a) { return std::sqrt(a * a + (a - t) * (a - t)); }

double volume_penalty(double t, double eta) {
  return t <= kPi ? eta * (t - kPi) : (t - kPi) / eta;
}

std::vector<Forcing> default_dictionary() {
  std::vector<Forcing> out;
  out.push_back({"const_1", [](const Point&) { return 1.0; }});
  out.push_back({"const_0.5", [](const Point&) { return 0.5; }});
  for (double s : {0.3, 0.6}) {
    for (int j = -1; j <= 1; ++j) {
      for (int i = -1; i <= 1; ++i) {
        const Point c(0.5 * i, 0.5 * j);
        std::string name = "bump_" + std::to_string(i) + "_" + std::to_string(j) + "_" +
                           (s < 0.45 ? "0.3" : "0.6");
        out.push_back({std::move(name), [c, s](const Point& x) {
                         const double q = (x - c).squaredNorm() / (s * s);
                         if (q >= 1.0) return 0.0;
                         return std::clamp(std::exp(1.0 - 1.0 / (1.0 - q)), 0.0, 1.0);
                       }});
      }
    }
  }
  return out;
}

void check_forcing_bound(const ScalarFunction& f, const std::vector<Point>& samples) {
  for (const Point& x : samples) {
    if (std::abs(f(x)) > 1.0 + 1e-9) throw FNormViolation("forcing exceeds 1 in sup norm");
  }
}

SpacePtr domain_space(const StarDomain& domain, const ResolventOptions& opts) {
  return opts.topology ? make_space(domain, *opts.topology) : make_space(domain, opts.mesh_h);
}

SpacePtr ball_space(const Point& center, double mesh_h) {
  return make_space(StarDomain::disk(1.0, center), mesh_h);
}

ResolventPair solve_resolvent_pair(const SpacePtr& dspace, const SpacePtr& bspace,
                                   const Point& center, const ScalarFunction& f,
                                   const ResolventOptions& opts) {
  check_forcing_bound(f, dspace->mesh().vertices);
  check_forcing_bound(f, bspace->mesh().vertices);
  ResolventPair out;
  out.domain_space = dspace;
  out.ball_space = bspace;
  out.center = center;
  out.domain_load = dspace->load(f);
  out.ball_load = bspace->load(f);
  out.u_domain = {dspace, dspace->solve(out.domain_load)};
  out.u_ball = {bspace, bspace->solve(out.ball_load)};
  out.beta_sq = opts.rule == CrossRule::overlay ? cross_l2_overlay(out.u_domain, out.u_ball)
                                                : cross_l2(out.u_domain, out.u_ball, opts.grid);
  return out;
}

ResolventPair solve_resolvent_pair(const StarDomain& domain, const ScalarFunction& f,
                                   const ResolventOptions& opts) {
  const Point center = truncated_barycenter(domain);
  return solve_resolvent_pair(domain_space(domain, opts), ball_space(center, opts.mesh_h), center,
                              f, opts);
}

double beta_sq(const StarDomain& domain, const ScalarFunction& f, double mesh_h) {
  ResolventOptions opts;
  opts.mesh_h = mesh_h;
  return beta_sq(domain, f, opts);
}

double beta_sq(const StarDomain& domain, const ScalarFunction& f, const ResolventOptions& opts) {
  return solve_resolvent_pair(domain, f, opts).beta_sq;
}

ResolventBound resolvent_distance_lb(const StarDomain& domain, const std::vector<Forcing>& dictionary,
                                     const ResolventOptions& opts) {
  if (dictionary.empty()) throw EmptyDictionary("resolvent_distance_lb: empty dictionary");
  const Point center = truncated_barycenter(domain);
  const SpacePtr dspace = domain_space(domain, opts);
  const SpacePtr bspace = ball_space(center, opts.mesh_h);
  ResolventBound out;
  for (std::size_t i = 0; i < dictionary.size(); ++i) {
    const double b = solve_resolvent_pair(dspace, bspace, center, dictionary[i].f, opts).beta_sq;
    out.beta_sq.push_back(b);
    if (b > out.beta_sq[out.argmax]) out.argmax = static_cast<int>(i);
  }
  out.value = std::sqrt(out.beta_sq[out.argmax]);
  return out;
}

double energy(const StarDomain& domain, const ScalarFunction& f, const PenaltyParams& params,
              const ResolventOptions& opts) {
  params.validate();
  const ResolventPair pair = solve_resolvent_pair(domain, f, opts);
  const double tor = torsional_rigidity(torsion_function(pair.domain_space));
  return tor + volume_penalty(volume(domain), params.eta) +
         params.tau * h_penalty(pair.beta_sq, params.a);
}

StabilityReport stability_report(const StarDomain& domain, const ScalarFunction& f,
                                 const ResolventOptions& opts) {
  StabilityReport r;
  r.volume = volume(domain);
  if (std::abs(r.volume - kPi) > 1e-3)
    throw NotNormalized("stability_report: domain volume differs from pi");
  const SpacePtr dspace = domain_space(domain, opts);
  // The eigensolve dominates; run it beside the resolvent and dictionary solves.
  auto eig = std::async(std::launch::async, [&] { return solve_eigen(dspace, 1); });
  r.barycenter = truncated_barycenter(domain);
  const SpacePtr bspace = ball_space(r.barycenter, opts.mesh_h);
  r.torsion = torsional_rigidity(torsion_function(dspace));
  r.sv_deficit = r.torsion - closed_forms::ball_torsional_rigidity(2, 1.0);
  r.beta_sq = solve_resolvent_pair(dspace, bspace, r.barycenter, f, opts).beta_sq;
  double best = 0.0;
  for (const Forcing& g : default_dictionary())
    best = std::max(best, solve_resolvent_pair(dspace, bspace, r.barycenter, g.f, opts).beta_sq);
  r.resolvent_lb = std::sqrt(best);
  r.asymmetry = fraenkel_asymmetry(domain);
  r.lambda1 = eig.get().eigenvalues.front();
  r.fk_deficit = r.lambda1 - closed_forms::disk_eigenpair(1).eigenvalue;
  return r;
}

}  // namespace speclab
