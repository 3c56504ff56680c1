#include <doctest.h>

#include <cmath>
#include <numbers>

#include "speclab/closed_forms.hpp"
#include "speclab/errors.hpp"
#include "speclab/functionals.hpp"
#include "speclab/nearly_spherical.hpp"

using namespace speclab;
constexpr double kPi = std::numbers::pi;

namespace {
const ScalarFunction one = [](const Point&) { return 1.0; };
}

TEST_CASE("regularizer and volume penalty") {
  const double a = 0.3;
  CHECK(h_penalty(a, a) == doctest::Approx(a));
  CHECK(h_penalty(0.0, a) == doctest::Approx(a * std::sqrt(2.0)));
  CHECK(h_penalty(2 * a, a) == doctest::Approx(a * std::sqrt(2.0)));
  for (double t : {0.0, 0.1, 0.29, 0.31, 1.0}) CHECK(h_penalty(t, a) - a > 0.0);
  CHECK(volume_penalty(kPi, 0.05) == 0.0);
  CHECK(volume_penalty(kPi - 0.1, 0.05) == doctest::Approx(-0.005));
  CHECK(volume_penalty(kPi + 0.1, 0.05) == doctest::Approx(2.0));
  PenaltyParams bad;
  bad.a = 1.5;
  CHECK_THROWS_AS(bad.validate(), InvalidConfig);
}

TEST_CASE("default dictionary is bounded by one") {
  const auto dict = default_dictionary();
  CHECK(dict.size() == 20);
  CHECK(dict.front().name == "const_1");
  for (const Forcing& f : dict)
    for (double x = -1.2; x <= 1.2; x += 0.05)
      for (double y = -1.2; y <= 1.2; y += 0.05) CHECK(std::abs(f.f(Point(x, y))) <= 1.0);
}

TEST_CASE("beta_sq vanishes on the ball and is positive on an ellipse") {
  CHECK(beta_sq(StarDomain::disk(), one, 0.04) < 1e-10);
  CHECK(beta_sq(StarDomain::disk(), default_dictionary()[5].f, 0.04) < 1e-10);
  CHECK(beta_sq(StarDomain::unit_ellipse(0.1), one, 0.04) > 1e-4);
  CHECK_THROWS_AS(beta_sq(StarDomain::disk(), [](const Point&) { return 2.0; }, 0.04), FNormViolation);
}

TEST_CASE("sv_deficit / beta_sq is stable under refinement on the ellipse") {
  const StarDomain e = StarDomain::unit_ellipse(0.1);
  std::vector<double> ratio;
  for (double h : {0.04, 0.02, 0.01}) {
    const double def = torsional_rigidity(torsion_function(make_space(e, h))) + kPi / 16;
    ratio.push_back(def / beta_sq(e, one, h));
  }
  CHECK(std::abs(ratio[1] / ratio[0] - 1) < 0.2);
  CHECK(std::abs(ratio[2] / ratio[1] - 1) < 0.2);
}

TEST_CASE("satellite configuration against the closed form") {
  // f = indicator of the satellites: u_B^f = 0 and u_Omega^f is the torsion
  // function of each satellite, so beta_sq is the closed form with M = 1.
  const double r = 0.2;
  const StarDomain sat = StarDomain::satellites(r);
  const ScalarFunction chi = [r](const Point& x) {
    return ((x - Point(2, 0)).norm() < r + 1e-9 || (x + Point(2, 0)).norm() < r + 1e-9) ? 1.0 : 0.0;
  };
  const auto closed = closed_forms::satellite_example(2, r, 1.0);
  const double expect = closed.beta_sq / (closed.amplitude * closed.amplitude);
  CHECK(beta_sq(sat, chi, 0.02) == doctest::Approx(expect).epsilon(0.1));
}

TEST_CASE("resolvent lower bound") {
  const auto dict = default_dictionary();
  CHECK_THROWS_AS(resolvent_distance_lb(StarDomain::disk(), {}), EmptyDictionary);
  ResolventOptions opts;
  opts.mesh_h = 0.04;
  CHECK(resolvent_distance_lb(StarDomain::disk(), dict, opts).value < 1e-5);
  const StarDomain e = StarDomain::unit_ellipse(0.1);
  const ResolventBound lb = resolvent_distance_lb(e, dict, opts);
  CHECK(lb.value * lb.value >= beta_sq(e, one, opts) - 1e-15);

  std::vector<double> eps{0.05, 0.1, 0.15, 0.2}, sq;
  for (double x : eps) {
    const double v = resolvent_distance_lb(StarDomain::unit_ellipse(x), dict, opts).value;
    sq.push_back(v * v);
  }
  CHECK(loglog_slope(eps, sq) == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("penalized energy") {
  PenaltyParams p;
  p.a = 0.2;
  p.tau = 1e-3;
  ResolventOptions opts;
  opts.mesh_h = 0.04;
  const double tor_h = torsional_rigidity(torsion_function(make_space(StarDomain::disk(), 0.04)));
  CHECK(energy(StarDomain::disk(), one, p, opts) == doctest::Approx(tor_h + p.tau * p.a * std::sqrt(2.0)).epsilon(1e-9));
  const StarDomain e = StarDomain::unit_ellipse(0.1);
  p.a = beta_sq(e, one, opts);
  CHECK(energy(e, one, p, opts) > energy(StarDomain::disk(), one, p, opts));
}

TEST_CASE("stability report") {
  ResolventOptions opts;
  opts.mesh_h = 0.03;
  const StabilityReport ball = stability_report(StarDomain::disk(), one, opts);
  CHECK(std::abs(ball.sv_deficit) < 1e-3 * kPi / 16);
  CHECK(std::abs(ball.fk_deficit) < 5e-3 * 5.7832);
  CHECK(ball.asymmetry <= 2e-3);
  CHECK(ball.beta_sq < 1e-10);

  const StabilityReport ell = stability_report(StarDomain::unit_ellipse(0.1), one, opts);
  CHECK(ell.fk_deficit > 0.0);
  CHECK(ell.sv_deficit > 0.0);
  // Kohler-Jobin ordering: C (lambda deficit) >= torsion deficit with a moderate C.
  const double c = ell.sv_deficit / ell.fk_deficit;
  MESSAGE("empirical Kohler-Jobin constant " << c);
  CHECK(c < 1.0);

  const StabilityReport mode3 = stability_report(StarDomain::perturbed_disk(3, 0.05), one, opts);
  CHECK(mode3.fk_deficit > 0.0);
  CHECK(mode3.sv_deficit > 0.0);
  CHECK(mode3.beta_sq > 0.0);
  CHECK(mode3.asymmetry > 0.0);
  CHECK_THROWS_AS(stability_report(StarDomain::disk(1.1), one, opts), NotNormalized);
}
