#include <doctest.h>

#include <cmath>

#include "speclab/closed_forms.hpp"
#include "speclab/errors.hpp"
#include "speclab/transfer.hpp"

using namespace speclab;

TEST_CASE("transfer on the ball is the identity") {
  const DomainSpectrum s = domain_spectrum(StarDomain::disk(), 10, 0.02);
  const TransferData t = compute_transfer(s, 1, 10);
  for (int k = 0; k < 10; ++k) {
    CHECK(std::abs(t.a_coeffs[k] - (k == 0 ? 1.0 : 0.0)) < 5e-3);
    CHECK(std::abs(t.b_coeffs[k] - (k == 0 ? 1.0 : 0.0)) < 5e-3);
  }
  CHECK(match_simple(s, 1).distance <= 1e-4);
  const MultiplicityMatch m = match_multiplicity(s, {2, 3});
  CHECK((m.d * m.d.transpose() - Eigen::Matrix2d::Identity()).norm() < 1e-12);
  CHECK((m.raw * m.raw.transpose() - Eigen::Matrix2d::Identity()).norm() < 1e-3);
  CHECK(m.residual <= 1e-3);
  CHECK_THROWS_AS(compute_transfer(s, 1, 3), InvalidConfig);
  CHECK_THROWS_AS(match_simple(s, 2), InvalidConfig);
}

TEST_CASE("transfer identity on an ellipse") {
  const DomainSpectrum s = domain_spectrum(StarDomain::unit_ellipse(0.05), 20, 0.02);
  const double deficit = closed_forms::ellipse_torsion(0.05).deficit;
  for (int j : {1, 2}) {
    const TransferData t = compute_transfer(s, j, 20);
    CHECK(t.residual <= 5e-3 * t.lambda_ball);
    double bessel = 0.0;
    for (double b : t.b_coeffs) bessel += b * b;
    CHECK(bessel <= 1.0 + 1e-6);
    CHECK(t.tail < 0.01);
    // Within the split pair {2,3} the ball mode may land on either index.
    const double own = j == 1 ? t.b_coeffs[0] * t.b_coeffs[0]
                              : t.b_coeffs[1] * t.b_coeffs[1] + t.b_coeffs[2] * t.b_coeffs[2];
    CHECK(own >= 1.0 - 10.0 * deficit);
  }
  const TransferData t1 = compute_transfer(s, 1, 20);
  double rest = 0.0;
  for (int k = 1; k < 20; ++k) rest += t1.b_coeffs[k] * t1.b_coeffs[k];
  MESSAGE("sum_{k>=2} b_k^2 / deficit = " << rest / deficit);
  CHECK(rest <= 10.0 * deficit);

  const MultiplicityMatch m = match_multiplicity(s, {2, 3});
  MESSAGE("cluster residual / deficit = " << m.residual / deficit);
  CHECK(m.residual <= 10.0 * deficit);
  CHECK(m.gram_offdiag <= 3.0 * 10.0 * deficit);
}

TEST_CASE("simple match is rotation invariant") {
  const DomainSpectrum a = domain_spectrum(StarDomain::unit_ellipse(0.08), 6, 0.02);
  const DomainSpectrum b = domain_spectrum(StarDomain::ellipse(1.08, 1 / 1.08), 6, 0.02);
  const double da = match_simple(a, 1).distance, db = match_simple(b, 1).distance;
  CHECK(std::abs(da - db) <= 1e-3 * da + 1e-7);
}

TEST_CASE("quadratic behaviour of the eigenfunction distance") {
  std::vector<double> q;
  for (double eps : {0.02, 0.05, 0.1}) {
    const SimpleMatch m = match_simple(domain_spectrum(StarDomain::unit_ellipse(eps), 6, 0.02), 1);
    q.push_back(m.distance / (eps * eps));
  }
  for (double v : q) CHECK(v == doctest::Approx(q[0]).epsilon(0.2));
}

TEST_CASE("a split cluster that is no longer isolated") {
  const DomainSpectrum s = domain_spectrum(StarDomain::unit_ellipse(0.2), 8, 0.03);
  CHECK_THROWS_AS(match_multiplicity(s, {2, 3}), ClusterMismatch);
}
