#include <doctest.h>

#include <cmath>
#include <numbers>

#include "speclab/errors.hpp"
#include "speclab/nearly_spherical.hpp"

using namespace speclab;
constexpr double kPi = std::numbers::pi;

TEST_CASE("normalization fixes volume and barycenter") {
  const BoundaryFunction phi(0.01, {0.02, 0.03, -0.01}, {0.0, 0.02, 0.01});
  CHECK(!is_normalized(phi));
  const NearlySpherical ns = normalize_nearly_spherical(phi);
  CHECK(is_normalized(ns.phi));
  const StarDomain d = ns.domain();
  CHECK(volume(d) == doctest::Approx(kPi).epsilon(1e-10));
  CHECK(classical_barycenter(d).norm() < 1e-10);
  CHECK(ns.phi.cos_coeff(2) == phi.cos_coeff(2));
  CHECK(is_normalized(BoundaryFunction{}));
}

TEST_CASE("H^1/2 norm is additive over modes") {
  const BoundaryFunction a = BoundaryFunction::cosine(2, 0.3), b = BoundaryFunction::sine(4, 0.2);
  CHECK(h_half_norm_sq(a + b) == doctest::Approx(h_half_norm_sq(a) + h_half_norm_sq(b)).epsilon(1e-14));
  CHECK(h_half_norm_sq(a) > 0.0);
  CHECK(h_half_norm_sq(BoundaryFunction::constant(0.5)) == doctest::Approx(kPi * 0.25));
  CHECK(h_half_norm_sq(2.0 * a) == doctest::Approx(4.0 * h_half_norm_sq(a)));
}

TEST_CASE("harmonic extension against the FEM energy") {
  // int_B |grad r^k cos k theta|^2 = pi k, int_B (r^k cos k theta)^2 = pi / (2k+2).
  const SpacePtr disk = make_space(StarDomain::disk(), 0.02);
  for (int k : {2, 3}) {
    const FemField h = harmonic_extension(BoundaryFunction::cosine(k), disk);
    const double grad = h.values.dot(disk->stiffness() * h.values);
    CHECK(grad == doctest::Approx(kPi * k).epsilon(5e-3));
    CHECK(h.l2_norm_sq() == doctest::Approx(kPi / (2 * k + 2)).epsilon(5e-3));
  }
  CHECK(harmonic_extension_value(BoundaryFunction::cosine(2), Point(0.5, 0.0)) == doctest::Approx(0.25));
}

TEST_CASE("spectral gap on a few modes") {
  CHECK_THROWS_AS(check_spectral_gap(BoundaryFunction(0.1, {}, {}), 0.04), NotNormalized);
  const GapCheck zero = check_spectral_gap(BoundaryFunction{}, 0.04);
  CHECK(zero.holds);
  for (int k = 2; k <= 5; ++k) {
    const NearlySpherical ns = normalize_nearly_spherical(BoundaryFunction::cosine(k, 0.03));
    const GapCheck g = check_spectral_gap(ns.phi, 0.04);
    CHECK(g.holds);
    CHECK(g.deficit > g.bound);
  }
}

TEST_CASE("Fuglede-type ratio") {
  const ScalarFunction one = [](const Point&) { return 1.0; };
  const FugledeCheck zero = check_fuglede(BoundaryFunction{}, one, 0.04);
  CHECK(zero.beta_sq < 1e-12);
  const BoundaryFunction phi = normalize_nearly_spherical(BoundaryFunction::cosine(2, 0.03)).phi;
  const FugledeCheck a = check_fuglede(phi, one, 0.02), b = check_fuglede(phi, one, 0.01);
  CHECK(a.ratio > 0.0);
  CHECK(b.ratio == doctest::Approx(a.ratio).epsilon(0.2));
}

TEST_CASE("Taylor expansion at the ball") {
  for (int k : {2, 3}) {
    const TaylorFit fit = taylor_check(BoundaryFunction::cosine(k), {0.01, 0.02, 0.04}, 0.02);
    CHECK(std::abs(fit.first) < 1e-8);
    // e''(0) = pi k / 4 - 3 pi / 8 for n = 2.
    CHECK(fit.second == doctest::Approx(kPi * k / 4 - 3 * kPi / 8).epsilon(1e-12));
    CHECK(fit.slope >= 2.5);
  }
  // Dilation: tor((1+t) B) = -pi (1+t)^4 / 16, so e'(0) = -pi/4, e''(0) = -3 pi/4.
  const TaylorFit dil = taylor_check(BoundaryFunction::constant(1.0), {0.01}, 0.04);
  CHECK(dil.first == doctest::Approx(-kPi / 4).epsilon(1e-12));
  CHECK(dil.second == doctest::Approx(-3 * kPi / 4).epsilon(1e-12));
  CHECK_THROWS_AS(taylor_check(BoundaryFunction::cosine(2), {0.1}, 0.04), InvalidConfig);
}
