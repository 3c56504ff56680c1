#include "speclab/nearly_spherical.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "speclab/closed_forms.hpp"
#include "speclab/errors.hpp"

namespace speclab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

// Volume and first moment of the radial graph 1 + phi about the origin.
struct Moments {
  double volume;
  Point moment;
};

Moments moments(const BoundaryFunction& phi) {
  const int n = 4 * phi.order() + 64;
  const auto v = phi.sample(n);
  Moments m{0.0, Point::Zero()};
  for (int i = 0; i < n; ++i) {
    const double r = 1.0 + v[i], t = kTwoPi * i / n;
    m.volume += 0.5 * r * r;
    m.moment += (r * r * r / 3.0) * Point(std::cos(t), std::sin(t));
  }
  m.volume *= kTwoPi / n;
  m.moment *= kTwoPi / n;
  return m;
}

}  // namespace

StarDomain NearlySpherical::domain() const {
  return StarDomain(Point::Zero(), BoundaryFunction::constant(1.0) + phi);
}

bool is_normalized(const BoundaryFunction& phi, double tol) {
  const Moments m = moments(phi);
  return std::abs(m.volume - kPi) <= tol && m.moment.norm() / m.volume <= tol;
}

NearlySpherical normalize_nearly_spherical(const BoundaryFunction& phi) {
  if (phi.c0_norm() >= 1.0) throw InvalidConfig("nearly spherical: sup |phi| must be below 1");
  BoundaryFunction p = phi;
  for (int iter = 0; iter < 50; ++iter) {
    const Moments m = moments(p);
    const Eigen::Vector3d r(m.volume - kPi, m.moment.x(), m.moment.y());
    if (r.cwiseAbs().maxCoeff() <= 1e-13) return {p, true};
    // Jacobian of (volume, moment) in (a0, a1, b1).
    const int n = 4 * p.order() + 64;
    const auto v = p.sample(n);
    Eigen::Matrix3d jac = Eigen::Matrix3d::Zero();
    for (int i = 0; i < n; ++i) {
      const double rho = 1.0 + v[i], t = kTwoPi * i / n;
      const double c = std::cos(t), s = std::sin(t);
      const Eigen::Vector3d dphi(1.0, c, s);
      const Eigen::Vector3d row(rho, rho * rho * c, rho * rho * s);
      jac += row * dphi.transpose();
    }
    jac *= kTwoPi / n;
    const Eigen::Vector3d step = jac.partialPivLu().solve(r);
    p.set_a0(p.a0() - step[0]);
    p.set_cos(1, p.cos_coeff(1) - step[1]);
    p.set_sin(1, p.sin_coeff(1) - step[2]);
  }
  throw NoConvergence("normalize_nearly_spherical: Newton iteration did not converge");
}

double harmonic_extension_value(const BoundaryFunction& phi, const Point& x) {
  const double r = x.norm(), t = std::atan2(x.y(), x.x());
  double v = phi.a0(), rk = 1.0;
  for (int k = 1; k <= phi.order(); ++k) {
    rk *= r;
    v += rk * (phi.cos_coeff(k) * std::cos(k * t) + phi.sin_coeff(k) * std::sin(k * t));
  }
  return v;
}

FemField harmonic_extension(const BoundaryFunction& phi, const SpacePtr& disk_space) {
  return interpolate(disk_space, [&phi](const Point& x) { return harmonic_extension_value(phi, x); });
}

double h_half_norm_sq(const BoundaryFunction& phi) {
  double s = kPi * phi.a0() * phi.a0();
  for (int k = 1; k <= phi.order(); ++k) {
    const double c2 = phi.cos_coeff(k) * phi.cos_coeff(k) + phi.sin_coeff(k) * phi.sin_coeff(k);
    // int_B |grad(r^k cos k t)|^2 = pi k, int_B (r^k cos k t)^2 = pi / (2k + 2).
    s += c2 * (kPi * k + kPi / (2.0 * k + 2.0));
  }
  return s;
}

GapCheck check_spectral_gap(const BoundaryFunction& phi, double mesh_h) {
  if (!is_normalized(phi)) throw NotNormalized("check_spectral_gap: phi is not normalized");
  const double tor_ball = closed_forms::ball_torsional_rigidity(2, 1.0);
  const NearlySpherical set{phi, true};
  const double tor = torsional_rigidity(torsion_function(make_space(set.domain(), mesh_h)));
  const double tor_disk =
      torsional_rigidity(torsion_function(make_space(StarDomain::disk(), mesh_h)));
  GapCheck g;
  g.deficit = tor - tor_ball;
  const double norm = h_half_norm_sq(phi);
  g.bound = norm / 128.0;
  g.ratio = norm > 0.0 ? g.deficit / norm : 0.0;
  g.slack = 2.0 * std::abs(tor_disk - tor_ball);
  g.holds = g.deficit >= g.bound - g.slack;
  return g;
}

FugledeCheck check_fuglede(const BoundaryFunction& phi, const ScalarFunction& f, double mesh_h) {
  if (!is_normalized(phi)) throw NotNormalized("check_fuglede: phi is not normalized");
  const StarDomain domain = NearlySpherical{phi, true}.domain();
  FugledeCheck out;
  ResolventOptions opts;
  opts.mesh_h = mesh_h;
  const ResolventPair pair = solve_resolvent_pair(domain, f, opts);
  out.beta_sq = pair.beta_sq;
  out.deficit = torsional_rigidity(torsion_function(pair.domain_space)) -
                closed_forms::ball_torsional_rigidity(2, 1.0);
  out.ratio = out.beta_sq > 0.0 ? out.deficit / out.beta_sq : 0.0;
  return out;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

TaylorFit taylor_check(const BoundaryFunction& phi, const std::vector<double>& t_values,
                       double mesh_h) {
  for (double t : t_values)
    if (!(t > 0.0 && t <= 0.05)) throw InvalidConfig("taylor_check: t must lie in (0, 0.05]");
  constexpr double n = 2.0;
  const StarDomain ball = StarDomain::disk();
  const MeshTopology topo = topology_for(ball, mesh_h);
  auto tor_at = [&](double t) {
    const StarDomain d(Point::Zero(), BoundaryFunction::constant(1.0) + t * phi);
    return torsional_rigidity(torsion_function(make_space(d, topo)));
  };
  TaylorFit fit;
  fit.e0 = tor_at(0.0);
  // e'(0) = -1/(2n^2) int phi, e''(0) = 1/n^2 int_B |grad H phi|^2
  //   + (-1/n + (n-1)/(2n^2)) int phi^2 on the circle.
  double grad_sq = 0.0, boundary_sq = kTwoPi * phi.a0() * phi.a0();
  for (int k = 1; k <= phi.order(); ++k) {
    const double c2 = phi.cos_coeff(k) * phi.cos_coeff(k) + phi.sin_coeff(k) * phi.sin_coeff(k);
    grad_sq += kPi * k * c2;
    boundary_sq += kPi * c2;
  }
  fit.first = -kTwoPi * phi.a0() / (2.0 * n * n);
  fit.second = grad_sq / (n * n) + (-1.0 / n + (n - 1.0) / (2.0 * n * n)) * boundary_sq;
  for (double t : t_values) {
    const double e = tor_at(t);
    const double m = fit.e0 + t * fit.first + 0.5 * t * t * fit.second;
    fit.t.push_back(t);
    fit.energy.push_back(e);
    fit.model.push_back(m);
    fit.residual.push_back(std::abs(e - m));
  }
  fit.slope = loglog_slope(fit.t, fit.residual);
  return fit;
}

}  // namespace speclab
