#include <doctest.h>

#include <cmath>
#include <numbers>

#include "speclab/closed_forms.hpp"
#include "speclab/errors.hpp"

using namespace speclab;
using namespace speclab::closed_forms;
constexpr double kPi = std::numbers::pi;

TEST_CASE("unit ball volumes and torsion") {
  CHECK(unit_ball_volume(2) == doctest::Approx(kPi).epsilon(1e-14));
  CHECK(unit_ball_volume(3) == doctest::Approx(4 * kPi / 3).epsilon(1e-14));
  CHECK(ball_torsional_rigidity(2, 1.0) == doctest::Approx(-kPi / 16).epsilon(1e-14));
  // tor(r B) = r^{n+2} tor(B)
  CHECK(ball_torsional_rigidity(3, 0.5) == doctest::Approx(std::pow(0.5, 5) * ball_torsional_rigidity(3, 1.0)));
  BallSpec ball;
  CHECK(ball_torsion_value(ball, Eigen::Vector2d(0.0, 0.0)) == doctest::Approx(0.25));
  CHECK(ball_torsion_value(ball, Eigen::Vector2d(2.0, 0.0)) == 0.0);
}

TEST_CASE("ellipse torsion against the direct formula") {
  for (double eps : {0.0, 0.05, 0.2}) {
    const double a = 1 / (1 + eps), b = 1 + eps;
    // w = C (1 - x^2/a^2 - y^2/b^2), -Laplace w = 1 gives C = 1 / (2/a^2 + 2/b^2);
    // int w = C pi a b / 2.
    const double c = 1.0 / (2.0 / (a * a) + 2.0 / (b * b));
    CHECK(ellipse_torsion_amplitude(eps) == doctest::Approx(c).epsilon(1e-13));
    const EllipseTorsion t = ellipse_torsion(eps);
    CHECK(t.torsion == doctest::Approx(-0.5 * c * kPi * a * b / 2).epsilon(1e-13));
    CHECK(t.deficit == doctest::Approx(t.torsion + kPi / 16).epsilon(1e-12));
  }
  CHECK(ellipse_torsion(0.0).deficit == doctest::Approx(0.0));
  // Leading coefficient pi / 8.
  CHECK(ellipse_torsion(1e-3).deficit / 1e-6 == doctest::Approx(kPi / 8).epsilon(1e-3));
}

TEST_CASE("Bessel zeros and disk modes") {
  CHECK(bessel_zero(0, 1) == doctest::Approx(2.404825557695773).epsilon(1e-11));
  CHECK(bessel_zero(1, 1) == doctest::Approx(3.831705970207512).epsilon(1e-11));
  CHECK(bessel_zero(0, 2) == doctest::Approx(5.520078110286311).epsilon(1e-11));
  const DiskMode m1 = disk_eigenpair(1), m2 = disk_eigenpair(2), m3 = disk_eigenpair(3);
  CHECK(m1.eigenvalue == doctest::Approx(5.783185962946784).epsilon(1e-10));
  CHECK(m2.eigenvalue == doctest::Approx(m3.eigenvalue));
  CHECK(m2.multiplicity == 2);
  CHECK(!m2.sine);
  CHECK(m3.sine);
  for (int k = 1; k < 15; ++k) CHECK(disk_eigenpair(k).eigenvalue <= disk_eigenpair(k + 1).eigenvalue);

  // Polar midpoint rule for int u^2.
  for (int k : {1, 2, 4, 6}) {
    const DiskMode m = disk_eigenpair(k);
    const int nr = 600, nt = 256;
    double s = 0.0;
    for (int i = 0; i < nr; ++i)
      for (int j = 0; j < nt; ++j) {
        const double r = (i + 0.5) / nr, t = 2 * kPi * (j + 0.5) / nt;
        const double u = disk_mode_value(m, Point(r * std::cos(t), r * std::sin(t)));
        s += u * u * r;
      }
    CHECK(s * (1.0 / nr) * (2 * kPi / nt) == doctest::Approx(1.0).epsilon(1e-5));
  }
}

TEST_CASE("satellite example") {
  // n = 2: u_B^f = 0 and u_Omega^f = M (r^2 - |y|^2)/4 on each satellite.
  const double r = 0.1, p = 1.0;
  const SatelliteResult s = satellite_example(2, r, p);
  const double m = 2.0 / (kPi * r * r);
  CHECK(s.amplitude == doctest::Approx(m));
  CHECK(s.beta_sq == doctest::Approx(2 * m * m * kPi * std::pow(r, 6) / 48).epsilon(1e-12));
  CHECK(s.core_radius == doctest::Approx(std::sqrt(1 - 2 * r * r)));
  CHECK(s.deficit > 0.0);
  CHECK_THROWS_AS(satellite_example(2, 0.75, 1.0), InvalidConfig);
}

TEST_CASE("H1 distance of the ellipse is first order") {
  CHECK(h1_distance_ellipse(0.0) == 0.0);
  const double a = h1_distance_ellipse(0.01), b = h1_distance_ellipse(0.02);
  CHECK(std::log2(b / a) == doctest::Approx(1.0).epsilon(0.1));
}
