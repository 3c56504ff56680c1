#include "speclab/shape_calculus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "nelder_mead.hpp"
#include "speclab/errors.hpp"

namespace speclab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

Point outward_normal_at(const StarDomain& domain, const BoundaryLoop& loop, double theta) {
  if (loop.component == 0) return domain.outward_normal(theta);
  return {std::cos(theta), std::sin(theta)};
}

double loop_radius(const StarDomain& domain, const BoundaryLoop& loop, double theta) {
  if (loop.component == 0) return domain.radius_at(theta);
  return domain.balls()[loop.component - 1].radius;
}

std::vector<double> by_normal_difference(const StarDomain& domain, const FemField& u,
                                         const BoundaryLoop& loop, double offset_factor) {
  const TriangleMesh& mesh = u.space->mesh();
  const int n = static_cast<int>(loop.vertices.size());
  const double rings = n / 6.0;
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) {
    const double t = loop.angles[i];
    const Point p = mesh.vertices[loop.vertices[i]];
    const Point nu = outward_normal_at(domain, loop, t);
    const double delta = offset_factor * loop_radius(domain, loop, t) / rings;
    const double u1 = u(p - delta * nu), u2 = u(p - 2 * delta * nu), u3 = u(p - 3 * delta * nu);
    // Third-order one-sided difference with u(p) = 0, along the inward normal.
    out[i] = -(18.0 * u1 - 9.0 * u2 + 2.0 * u3) / (6.0 * delta);
  }
  return out;
}

std::vector<double> by_element_average(const StarDomain& domain, const FemField& u,
                                       const BoundaryLoop& loop) {
  const TriangleMesh& mesh = u.space->mesh();
  std::vector<int> slot(mesh.num_vertices(), -1);
  for (std::size_t i = 0; i < loop.vertices.size(); ++i) slot[loop.vertices[i]] = static_cast<int>(i);
  std::vector<Point> grad(loop.vertices.size(), Point::Zero());
  std::vector<double> weight(loop.vertices.size(), 0.0);
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangles[t];
    if (slot[tri[0]] < 0 && slot[tri[1]] < 0 && slot[tri[2]] < 0) continue;
    const double area2 = 2.0 * mesh.element_area[t];
    Point g = Point::Zero();
    for (int i = 0; i < 3; ++i) {
      const Point& pj = mesh.vertices[tri[(i + 1) % 3]];
      const Point& pk = mesh.vertices[tri[(i + 2) % 3]];
      g += u.values[tri[i]] * Point(pj.y() - pk.y(), pk.x() - pj.x()) / area2;
    }
    for (int v : tri) {
      if (slot[v] >= 0) {
        grad[slot[v]] += mesh.element_area[t] * g;
        weight[slot[v]] += mesh.element_area[t];
      }
    }
  }
  std::vector<double> out(loop.vertices.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = grad[i].dot(outward_normal_at(domain, loop, loop.angles[i])) / weight[i];
  return out;
}

std::vector<double> by_flux(const PoissonSolution& sol, const BoundaryLoop& loop) {
  const FemSpace& space = *sol.field.space;
  const TriangleMesh& mesh = space.mesh();
  // Boundary rows of the Galerkin residual are int dn u phi_i ds.
  const Vector residual = space.stiffness() * sol.field.values - sol.load;
  const int n = static_cast<int>(loop.vertices.size());
  std::vector<Eigen::Triplet<double>> trips;
  Vector rhs(n);
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    const double len = (mesh.vertices[loop.vertices[j]] - mesh.vertices[loop.vertices[i]]).norm();
    trips.emplace_back(i, i, len / 3.0);
    trips.emplace_back(j, j, len / 3.0);
    trips.emplace_back(i, j, len / 6.0);
    trips.emplace_back(j, i, len / 6.0);
    rhs[i] = residual[loop.vertices[i]];
  }
  SparseMatrix mass(n, n);
  mass.setFromTriplets(trips.begin(), trips.end());
  Eigen::SimplicialLDLT<SparseMatrix> ldlt(mass);
  const Vector g = ldlt.solve(rhs);
  return std::vector<double>(g.data(), g.data() + n);
}

}  // namespace

std::vector<double> normal_derivative(const StarDomain& domain, const PoissonSolution& u, int loop,
                                      GradientRule rule, double offset_factor) {
  const BoundaryLoop& l = u.field.space->mesh().loops.at(loop);
  switch (rule) {
    case GradientRule::normal_difference:
      return by_normal_difference(domain, u.field, l, offset_factor);
    case GradientRule::element_average:
      return by_element_average(domain, u.field, l);
    case GradientRule::flux:
      return by_flux(u, l);
  }
  return {};
}

PoissonSolution adjoint_p(const SpacePtr& space, const FemField& u_f) {
  const FemField g = transfer_field(space, u_f);
  Vector load = space->mass() * g.values;
  FemField p{space, space->solve(load)};
  return {std::move(p), std::move(load)};
}

PoissonSolution adjoint_p1(const SpacePtr& space, const FemField& u_f, const FemField& u_ball_f) {
  const FemField diff = transfer_field(space, u_f) - transfer_field(space, u_ball_f);
  return adjoint_p(space, diff);
}

Point vector_V(const ResolventPair& pair, GradientRule rule, double offset_factor) {
  const SpacePtr& bspace = pair.ball_space;
  const PoissonSolution p2 = adjoint_p1(bspace, pair.u_domain, pair.u_ball);
  const PoissonSolution ub{pair.u_ball, pair.ball_load};
  const StarDomain ball = StarDomain::disk(1.0, pair.center);
  const std::vector<double> dp2 = normal_derivative(ball, p2, 0, rule, offset_factor);
  const std::vector<double> dub = normal_derivative(ball, ub, 0, rule, offset_factor);
  const BoundaryLoop& loop = bspace->mesh().loops.front();
  const int n = static_cast<int>(loop.vertices.size());
  Point v = Point::Zero();
  for (int i = 0; i < n; ++i) {
    const double t = loop.angles[i];
    v += (kTwoPi / n) * dp2[i] * dub[i] * Point(std::cos(t), std::sin(t));
  }
  return v;
}

ShapeState shape_state(const StarDomain& domain, const ScalarFunction& f, const ShapeOptions& opts) {
  ShapeState st{.domain = domain};
  st.volume = volume(domain);
  st.pair = solve_resolvent_pair(domain, f, opts.resolvent);
  const SpacePtr& space = st.pair.domain_space;
  st.torsion.load = space->load([](const Point&) { return 1.0; });
  st.torsion.field = {space, space->solve(st.torsion.load)};
  st.tor = torsional_rigidity(st.torsion.field);
  st.u = {st.pair.u_domain, st.pair.domain_load};
  st.p1 = adjoint_p1(space, st.pair.u_domain, st.pair.u_ball);
  st.V = vector_V(st.pair, opts.rule, opts.offset_factor);

  const std::vector<double> dw = normal_derivative(domain, st.torsion, 0, opts.rule, opts.offset_factor);
  BoundaryDensity& d = st.density;
  d.dn_u = normal_derivative(domain, st.u, 0, opts.rule, opts.offset_factor);
  d.dn_p1 = normal_derivative(domain, st.p1, 0, opts.rule, opts.offset_factor);
  const BoundaryLoop& loop = space->mesh().loops.front();
  const int n = static_cast<int>(loop.vertices.size());
  for (int i = 0; i < n; ++i) {
    const double t = loop.angles[i];
    const Point x = domain.boundary_point(t);
    d.angles.push_back(t);
    d.points.push_back(x);
    d.weights.push_back(kTwoPi / n * domain.radius_at(t));
    d.grad_w_sq.push_back(dw[i] * dw[i]);
    d.v_dot_a.push_back(st.V.dot(x - st.pair.center) / st.volume);
  }
  return st;
}

double d_volume(const StarDomain& domain, const BoundaryFunction& velocity) {
  const int n = 4 * std::max(domain.radial().order(), velocity.order()) + 64;
  const auto rho = domain.radial().sample(n);
  const auto v = velocity.sample(n);
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += rho[i] * v[i];
  return s * kTwoPi / n;
}

Point d_barycenter(const StarDomain& domain, const BoundaryFunction& velocity) {
  const int n = 4 * std::max(domain.radial().order(), velocity.order()) + 64;
  const Point xc = truncated_barycenter(domain);
  const double vol = volume(domain);
  const auto rho = domain.radial().sample(n);
  const auto v = velocity.sample(n);
  Point s = Point::Zero();
  for (int i = 0; i < n; ++i) {
    const double t = kTwoPi * i / n;
    const Point x = domain.center() + rho[i] * Point(std::cos(t), std::sin(t));
    s += (x - xc) * v[i] * rho[i];
  }
  return s * (kTwoPi / n) / vol;
}

namespace {

double boundary_integral(const BoundaryDensity& d, const std::vector<double>& g,
                         const BoundaryFunction& velocity) {
  double s = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) s += d.weights[i] * g[i] * velocity(d.angles[i]);
  return s;
}

}  // namespace

double d_torsion(const ShapeState& state, const BoundaryFunction& velocity) {
  const auto& gw = state.density.grad_w_sq;
  if (*std::min_element(gw.begin(), gw.end()) < 1e-12)
    throw DegenerateGradient("d_torsion: vanishing torsion gradient on the boundary");
  std::vector<double> g(gw.size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = -0.5 * gw[i];
  return boundary_integral(state.density, g, velocity);
}

double d_beta_sq(const ShapeState& state, const BoundaryFunction& velocity) {
  const BoundaryDensity& d = state.density;
  std::vector<double> g(d.angles.size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = 2.0 * (d.dn_p1[i] * d.dn_u[i] - d.v_dot_a[i]);
  return boundary_integral(d, g, velocity);
}

double penalty_slope(double beta_sq, double a) { return 2.0 * (beta_sq - a) / h_penalty(beta_sq, a); }

std::vector<double> shape_gradient(const ShapeState& state, const PenaltyParams& params) {
  const BoundaryDensity& d = state.density;
  const double c = penalty_slope(state.pair.beta_sq, params.a);
  std::vector<double> g(d.angles.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    g[i] = -0.5 * d.grad_w_sq[i] + params.tau * c * (d.dn_p1[i] * d.dn_u[i] - d.v_dot_a[i]);
  return g;
}

double el_residual(const ShapeState& state, const PenaltyParams& params) {
  const std::vector<double> g = shape_gradient(state, params);
  double lo = -g.front(), hi = lo, mean = 0.0;
  for (double v : g) {
    lo = std::min(lo, -v);
    hi = std::max(hi, -v);
    mean -= v;
  }
  mean /= static_cast<double>(g.size());
  return (hi - lo) / std::abs(mean);
}

double el_residual(const StarDomain& domain, const ScalarFunction& f, const PenaltyParams& params,
                   const ShapeOptions& opts) {
  return el_residual(shape_state(domain, f, opts), params);
}

// ---------------------------------------------------------------------------

double hausdorff_to_unit_ball(const StarDomain& domain) {
  constexpr int kSamples = 2048;
  std::vector<Point> curve(kSamples);
  for (int i = 0; i < kSamples; ++i) curve[i] = domain.boundary_point(kTwoPi * i / kSamples);
  auto distance = [&](const Point& c) {
    double d = 0.0;
    for (const Point& x : curve) d = std::max(d, std::abs((x - c).norm() - 1.0));
    // Circle-to-curve direction: for star-shaped curves about c the radial
    // ray hits the curve, so the one-sided distances agree to first order;
    // sample it anyway on a coarser set.
    for (int i = 0; i < kSamples; i += 8) {
      const double t = kTwoPi * i / kSamples;
      const Point y = c + Point(std::cos(t), std::sin(t));
      double best = std::numeric_limits<double>::infinity();
      for (const Point& x : curve) best = std::min(best, (x - y).squaredNorm());
      d = std::max(d, std::sqrt(best));
    }
    return d;
  };
  const auto best = detail::nelder_mead_2d(distance, classical_barycenter(domain), 0.01, 1e-7, 200);
  return best.value;
}

namespace {

double penalized_energy(const StarDomain& domain, const ScalarFunction& f, const PenaltyParams& params,
                        const ResolventOptions& opts) {
  const ResolventPair pair = solve_resolvent_pair(domain, f, opts);
  return torsional_rigidity(torsion_function(pair.domain_space)) +
         params.tau * h_penalty(pair.beta_sq, params.a);
}

TraceRow trace_row(int iter, const ShapeState& st, const PenaltyParams& params, double step) {
  TraceRow r;
  r.iter = iter;
  r.energy = st.tor + params.tau * h_penalty(st.pair.beta_sq, params.a);
  r.residual = el_residual(st, params);
  r.barycenter_norm = st.pair.center.norm();
  r.hausdorff = hausdorff_to_unit_ball(st.domain);
  r.step = step;
  return r;
}

}  // namespace

OptimizeResult minimize_energy(const StarDomain& initial, const ScalarFunction& f,
                               const PenaltyParams& params, const OptimizeOptions& opts) {
  params.validate();
  if (params.tau > opts.tau_cap)
    throw InvalidConfig("tau exceeds the cap tau_cap = " + std::to_string(opts.tau_cap));
  if (opts.fourier_order < 2 || opts.fourier_order > 12)
    throw InvalidConfig("fourier_order must lie in 2..12");
  if (std::abs(volume(initial) - kPi) > 1e-3)
    throw NotNormalized("minimize_energy: initial domain must have volume pi");

  StarDomain domain = volume_normalize(initial);
  ShapeOptions shape = opts.shape;
  shape.resolvent.topology = topology_for(domain, shape.resolvent.mesh_h);

  OptimizeResult out{.domain = domain};
  ShapeState st = shape_state(domain, f, shape);
  out.trace.push_back(trace_row(0, st, params, 0.0));
  out.history.push_back(domain.radial());
  double step = opts.initial_step;

  for (int iter = 1; iter <= opts.max_iters; ++iter) {
    // Steepest descent for dF = int g drho rho dtheta, filtered to order K
    // with weights 1/(k-1) (an H^{1/2}-like metric that keeps high modes
    // from limiting the step), mode 0 dropped since rescaling undoes it.
    const std::vector<double> g = shape_gradient(st, params);
    std::vector<double> grho(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) grho[i] = g[i] * st.domain.radius_at(st.density.angles[i]);
    const BoundaryFunction raw = BoundaryFunction::from_samples(grho, opts.fourier_order);
    BoundaryFunction dir;
    for (int k = 1; k <= opts.fourier_order; ++k) {
      const double w = 1.0 / std::max(1, k - 1);
      dir.set_cos(k, -w * raw.cos_coeff(k));
      dir.set_sin(k, -w * raw.sin_coeff(k));
    }
    const double slope = boundary_integral(st.density, g, dir);
    const double energy0 = out.trace.back().energy;
    const BoundaryFunction gf = BoundaryFunction::from_samples(g, opts.fourier_order);
    double osc = 0.0;
    for (int k = 1; k <= opts.fourier_order; ++k)
      osc += gf.cos_coeff(k) * gf.cos_coeff(k) + gf.sin_coeff(k) * gf.sin_coeff(k);
    const double rel_grad = std::sqrt(0.5 * osc) / std::max(std::abs(gf.a0()), 1e-300);
    if (std::abs(slope) <= opts.energy_tol || rel_grad <= opts.gradient_tol) {
      out.stop_reason = "stationary";
      break;
    }

    bool accepted = false;
    double s = step;
    for (; s >= opts.min_step; s *= 0.5) {
      StarDomain cand = domain;
      try {
        cand = volume_normalize(domain.with_radial(domain.radial() + s * dir));
      } catch (const NonPositiveRadius&) {
        continue;
      }
      const double e = penalized_energy(cand, f, params, shape.resolvent);
      if (e < energy0 + 1e-4 * s * slope) {
        domain = cand;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      // Noise-level slopes mean the start is already stationary.
      if (out.moves == 0 && std::abs(slope) > opts.energy_tol)
        throw LineSearchFailure("minimize_energy: no step decreases the energy");
      out.stop_reason = out.moves == 0 ? "stationary" : "stalled";
      break;
    }
    st = shape_state(domain, f, shape);
    out.trace.push_back(trace_row(iter, st, params, s));
    out.history.push_back(domain.radial());
    ++out.moves;
    step = std::min(opts.initial_step, 2.0 * s);
    const double decrease = energy0 - out.trace.back().energy;
    if (decrease < opts.energy_tol) {
      out.stop_reason = "converged";
      break;
    }
  }
  if (out.stop_reason.empty()) out.stop_reason = "max_iters";
  out.domain = domain;
  return out;
}

}  // namespace speclab
