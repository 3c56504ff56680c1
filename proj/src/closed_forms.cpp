#include "speclab/closed_forms.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <mutex>
#include <numbers>
#include <vector>

#include "speclab/errors.hpp"

namespace speclab::closed_forms {

namespace {
constexpr double kPi = std::numbers::pi;
}

double unit_ball_volume(int dim) {
  return std::pow(kPi, 0.5 * dim) / std::tgamma(0.5 * dim + 1.0);
}

double ball_torsion_value(const BallSpec& ball, const Eigen::VectorXd& x) {
  const double d2 = (x - ball.center).squaredNorm();
  const double r2 = ball.radius * ball.radius;
  return d2 >= r2 ? 0.0 : (r2 - d2) / (2.0 * ball.dim);
}

double ball_torsional_rigidity(int dim, double radius) {
  const double n = dim;
  return -std::pow(radius, n + 2.0) * unit_ball_volume(dim) / (2.0 * n * (n + 2.0));
}

double ellipse_torsion_amplitude(double eps) {
  const double a = 1.0 / (1.0 + eps), b = 1.0 + eps;
  return a * a * b * b / (2.0 * (a * a + b * b));
}

double ellipse_torsion_value(double eps, const Point& x) {
  const double a = 1.0 / (1.0 + eps), b = 1.0 + eps;
  const double s = 1.0 - x.x() * x.x() / (a * a) - x.y() * x.y() / (b * b);
  return s <= 0.0 ? 0.0 : ellipse_torsion_amplitude(eps) * s;
}

EllipseTorsion ellipse_torsion(double eps) {
  // -1/2 int_E C (1 - x^2/a^2 - y^2/b^2) = -1/2 C pi a b / 2, and
  // C = a^2 b^2 / (2(a^2 + b^2)) from -Delta w = 1.
  const double a = 1.0 / (1.0 + eps), b = 1.0 + eps;
  EllipseTorsion out;
  out.torsion = -kPi * a * a * a * b * b * b / (8.0 * (a * a + b * b));
  out.deficit = out.torsion - ball_torsional_rigidity(2, 1.0);
  return out;
}

SatelliteResult satellite_example(int dim, double r, double p) {
  if (dim < 2 || !(r > 0.0) || !(p >= 1.0)) throw InvalidConfig("satellite_example: bad parameters");
  const double n = dim;
  SatelliteResult out;
  const double rest = 1.0 - 2.0 * std::pow(r, n);
  if (!(rest > 0.0)) throw InvalidConfig("satellite_example: satellites exceed the unit volume");
  out.core_radius = std::pow(rest, 1.0 / n);
  if (out.core_radius + r >= 2.0 - r)
    throw InvalidConfig("satellite_example: satellites intersect the core");
  const double omega = unit_ball_volume(dim);
  out.deficit = ball_torsional_rigidity(dim, out.core_radius) +
                2.0 * ball_torsional_rigidity(dim, r) - ball_torsional_rigidity(dim, 1.0);
  out.amplitude = 2.0 * std::pow(omega * std::pow(r, n), -1.0 / p);
  // int_{B_r} ((r^2 - |y|^2)/(2n))^2 = n omega / (4 n^2) r^{n+4} int_0^1 (1-t^2)^2 t^{n-1} dt
  // and the last integral is 8 / (n (n+2) (n+4)).
  const double w_sq = 2.0 * omega * std::pow(r, n + 4.0) / (n * n * (n + 2.0) * (n + 4.0));
  out.beta_sq = 2.0 * out.amplitude * out.amplitude * w_sq;
  return out;
}

double h1_distance_ellipse(double eps) {
  if (eps == 0.0) return 0.0;
  const double a = 1.0 / (1.0 + eps), b = 1.0 + eps;
  const double c = ellipse_torsion_amplitude(eps);
  // Every integrand is r^2 q(theta); the radial integral from r0 to r1 is
  // q (r1^4 - r0^4) / 4.
  auto integrand = [&](double t) {
    const double ct = std::cos(t), st = std::sin(t);
    const double rho = 1.0 / std::sqrt(ct * ct / (a * a) + st * st / (b * b));
    const Point ge(-2.0 * c * ct / (a * a), -2.0 * c * st / (b * b));
    const Point gb(-0.5 * ct, -0.5 * st);
    const double q_both = (ge - gb).squaredNorm();
    const double inner = std::min(rho, 1.0);
    double v = q_both * std::pow(inner, 4) / 4.0;
    if (rho > 1.0) v += ge.squaredNorm() * (std::pow(rho, 4) - 1.0) / 4.0;
    if (rho < 1.0) v += gb.squaredNorm() * (1.0 - std::pow(rho, 4)) / 4.0;
    return v;
  };
  // Crossing angle where rho = 1 splits the quarter period into smooth pieces.
  const double cos2 = (1.0 - 1.0 / (b * b)) / (1.0 / (a * a) - 1.0 / (b * b));
  const double tc = std::acos(std::sqrt(std::clamp(cos2, 0.0, 1.0)));
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  const double quarter = GK::integrate(integrand, 0.0, tc, 15, 1e-13) +
                         GK::integrate(integrand, tc, 0.5 * kPi, 15, 1e-13);
  return 4.0 * quarter;
}

// ---------------------------------------------------------------------------
// Bessel modes

double bessel_zero(int m, int l) {
  if (m < 0 || l < 1) throw InvalidConfig("bessel_zero: bad index");
  auto j = [m](double x) { return std::cyl_bessel_j(static_cast<double>(m), x); };
  // Zeros of J_m are at least pi apart asymptotically and > 2 apart always;
  // a 0.05 scan cannot skip one.
  double x = (m == 0) ? 0.5 : static_cast<double>(m);
  double fx = j(x);
  int found = 0;
  while (true) {
    const double y = x + 0.05;
    const double fy = j(y);
    if ((fx < 0.0) != (fy < 0.0)) {
      if (++found == l) {
        double lo = x, hi = y, flo = fx;
        while (hi - lo > 1e-12 * std::max(1.0, lo)) {
          const double mid = 0.5 * (lo + hi);
          const double fm = j(mid);
          if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
          } else {
            hi = mid;
          }
        }
        return 0.5 * (lo + hi);
      }
    }
    x = y;
    fx = fy;
  }
}

namespace {

std::vector<DiskMode> build_spectrum() {
  constexpr int kMaxAngular = 24, kMaxRadial = 8;
  std::vector<DiskMode> base;
  for (int m = 0; m <= kMaxAngular; ++m) {
    for (int l = 1; l <= kMaxRadial; ++l) {
      DiskMode d;
      d.angular = m;
      d.radial = l;
      d.zero = bessel_zero(m, l);
      d.eigenvalue = d.zero * d.zero;
      d.multiplicity = m == 0 ? 1 : 2;
      // int_0^1 J_m(j r)^2 r dr by adaptive quadrature; angular factor is
      // 2 pi for m = 0 and pi otherwise.
      using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
      const double radial = GK::integrate(
          [&](double r) {
            const double v = std::cyl_bessel_j(static_cast<double>(m), d.zero * r);
            return v * v * r;
          },
          0.0, 1.0, 15, 1e-13);
      const double angular = m == 0 ? 2.0 * kPi : kPi;
      d.normalization = 1.0 / std::sqrt(radial * angular);
      base.push_back(d);
    }
  }
  std::sort(base.begin(), base.end(),
            [](const DiskMode& x, const DiskMode& y) { return x.zero < y.zero; });
  std::vector<DiskMode> out;
  for (const DiskMode& d : base) {
    DiskMode c = d;
    c.index = static_cast<int>(out.size()) + 1;
    out.push_back(c);
    if (d.angular > 0) {
      c.sine = true;
      c.index = static_cast<int>(out.size()) + 1;
      out.push_back(c);
    }
    if (out.size() >= 40) break;
  }
  return out;
}

}  // namespace

DiskMode disk_eigenpair(int k) {
  static const std::vector<DiskMode> spectrum = build_spectrum();
  if (k < 1 || k > 20) throw InvalidConfig("disk_eigenpair: index must be in 1..20");
  return spectrum[k - 1];
}

double disk_mode_value(const DiskMode& mode, const Point& x, double radius, const Point& center) {
  const Point d = (x - center) / radius;
  const double r = d.norm();
  if (r >= 1.0) return 0.0;
  const double radial = std::cyl_bessel_j(static_cast<double>(mode.angular), mode.zero * r);
  double angular = 1.0;
  if (mode.angular > 0) {
    const double t = std::atan2(d.y(), d.x());
    angular = mode.sine ? std::sin(mode.angular * t) : std::cos(mode.angular * t);
  }
  return mode.normalization * radial * angular / radius;
}

}  // namespace speclab::closed_forms
