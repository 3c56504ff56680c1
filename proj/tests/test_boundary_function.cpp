#include <doctest.h>

#include <cmath>
#include <numbers>

#include "speclab/boundary_function.hpp"

using speclab::BoundaryFunction;
constexpr double kPi = std::numbers::pi;

TEST_CASE("evaluation reproduces the trigonometric sum") {
  const BoundaryFunction g(0.5, {0.1, -0.2, 0.0, 0.05}, {0.0, 0.3, -0.1});
  for (double t : {0.0, 0.3, 1.7, 4.0, 6.2}) {
    double expect = 0.5;
    const double a[] = {0.1, -0.2, 0.0, 0.05}, b[] = {0.0, 0.3, -0.1, 0.0};
    for (int k = 1; k <= 4; ++k) expect += a[k - 1] * std::cos(k * t) + b[k - 1] * std::sin(k * t);
    CHECK(g(t) == doctest::Approx(expect).epsilon(1e-14));
  }
}

TEST_CASE("derivatives agree with central differences") {
  const BoundaryFunction g(1.0, {0.1, 0.02, 0.01}, {-0.05, 0.0, 0.03});
  const double h = 1e-5;
  for (double t : {0.2, 2.5, 5.1}) {
    CHECK(g.derivative(t) == doctest::Approx((g(t + h) - g(t - h)) / (2 * h)).epsilon(1e-8));
    CHECK(g.second_derivative(t) ==
          doctest::Approx((g.derivative(t + h) - g.derivative(t - h)) / (2 * h)).epsilon(1e-7));
  }
}

TEST_CASE("projection recovers a band-limited function") {
  const auto f = [](double t) { return 1.0 + 0.3 * std::cos(2 * t) - 0.1 * std::sin(5 * t); };
  const BoundaryFunction g = BoundaryFunction::project(f, 8);
  CHECK(g.a0() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(g.cos_coeff(2) == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(g.sin_coeff(5) == doctest::Approx(-0.1).epsilon(1e-14));
  CHECK(std::abs(g.cos_coeff(3)) < 1e-14);
}

TEST_CASE("C0 and C1 norms of a pure mode") {
  const BoundaryFunction g = BoundaryFunction::cosine(3, 0.2);
  CHECK(g.c0_norm() == doctest::Approx(0.2).epsilon(1e-9));
  CHECK(g.c1_norm() == doctest::Approx(0.2 + 0.6).epsilon(1e-6));
}

TEST_CASE("arithmetic is coefficientwise") {
  const BoundaryFunction a = BoundaryFunction::cosine(2, 1.0), b = BoundaryFunction::sine(4, 2.0);
  const BoundaryFunction c = 2.0 * a - b;
  CHECK(c.cos_coeff(2) == 2.0);
  CHECK(c.sin_coeff(4) == -2.0);
  CHECK(c(kPi / 3) == doctest::Approx(2.0 * a(kPi / 3) - b(kPi / 3)));
  CHECK(c.truncated(2).order() == 2);
}
