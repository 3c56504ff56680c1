#include <doctest.h>

#include <cmath>
#include <numbers>
#include <map>

#include "speclab/errors.hpp"
#include "speclab/mesh.hpp"

using namespace speclab;
constexpr double kPi = std::numbers::pi;

TEST_CASE("volume of disks and ellipses") {
  CHECK(volume(StarDomain::disk()) == doctest::Approx(kPi).epsilon(1e-12));
  CHECK(volume(StarDomain::disk(0.7)) == doctest::Approx(kPi * 0.49).epsilon(1e-12));
  // pi a b with a b = 1
  CHECK(std::abs(volume(StarDomain::unit_ellipse(0.1)) - kPi) < 1e-8);
  CHECK(std::abs(volume(StarDomain::ellipse(0.8, 1.2)) - kPi * 0.96) < 1e-8);
}

TEST_CASE("scaling law and normalization") {
  const StarDomain e = StarDomain::ellipse(0.5, 1.5);
  CHECK(volume(e.scaled(1.7)) == doctest::Approx(1.7 * 1.7 * volume(e)).epsilon(1e-10));
  const StarDomain d = volume_normalize(StarDomain::disk(2.0));
  CHECK(d.radial().a0() == doctest::Approx(1.0).epsilon(1e-12));
  const StarDomain en = volume_normalize(e);
  const double r = std::sqrt(kPi / volume(e));
  CHECK(r == doctest::Approx(std::sqrt(4.0 / 3.0)).epsilon(1e-6));
  CHECK(en.radial().cos_coeff(2) == doctest::Approx(r * e.radial().cos_coeff(2)).epsilon(1e-12));
  const StarDomain again = volume_normalize(en);
  CHECK(std::abs(again.radial().a0() - en.radial().a0()) < 1e-12);
  CHECK(volume(en) == doctest::Approx(kPi).epsilon(1e-10));
}

TEST_CASE("classical barycenter") {
  CHECK((classical_barycenter(StarDomain::disk(1.0, Point(0.3, -2.0))) - Point(0.3, -2.0)).norm() < 1e-12);
  CHECK(classical_barycenter(StarDomain::unit_ellipse(0.2)).norm() < 1e-10);
  // B_0.8(0) and B_0.2(2 e1): (0.04 pi * 2) / (0.68 pi)
  const StarDomain two(Point::Zero(), BoundaryFunction::constant(0.8), {Ball{Point(2.0, 0.0), 0.2}});
  CHECK(classical_barycenter(two).x() == doctest::Approx(0.08 / 0.68).epsilon(1e-12));
}

TEST_CASE("truncated barycenter matches the classical one below diameter 100") {
  const StarDomain doms[] = {StarDomain::disk(1.0, Point(0.4, 0.1)), StarDomain::unit_ellipse(0.15),
                             StarDomain::perturbed_disk(3, 0.05).translated(Point(-1.0, 2.0)),
                             StarDomain::satellites(0.1)};
  for (const StarDomain& d : doms) {
    CHECK((truncated_barycenter(d) - classical_barycenter(d)).norm() < 1e-8);
    const Point z(5.0, -3.0);
    CHECK((truncated_barycenter(d.translated(z)) - truncated_barycenter(d) - z).norm() < 1e-8);
  }
}

TEST_CASE("truncation profile is quadratic up to 100 and convex") {
  const TruncationProfile& q = TruncationProfile::instance();
  CHECK(q.value(50.0) == doctest::Approx(2500.0).epsilon(1e-12));
  CHECK(q.value(150.0) > q.value(120.0));
  CHECK(q.value(150.0) < 150.0 * 150.0);
}

TEST_CASE("Fraenkel asymmetry") {
  CHECK(fraenkel_asymmetry(StarDomain::disk()) < 2e-3);
  CHECK(fraenkel_asymmetry(StarDomain::disk(1.0, Point(2.0, 1.0))) < 2e-3);
  // Grid oracle for the ellipse at the symmetric center.
  const StarDomain e = StarDomain::unit_ellipse(0.1);
  const int n = 3000;
  const double lo = -1.2, step = 2.4 / n;
  long count = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Point x(lo + (i + 0.5) * step, lo + (j + 0.5) * step);
      if (e.contains(x) != (x.squaredNorm() < 1.0)) ++count;
    }
  const double oracle = count * step * step;
  const double alpha = fraenkel_asymmetry(e);
  CHECK(alpha > 0.0);
  CHECK(std::abs(alpha - oracle) < 5e-3);
  CHECK(std::abs(fraenkel_asymmetry(e.translated(Point(0.7, 0.2))) - alpha) < 2e-3);
  // Best ball sits on the core: pi (1 - (1 - 2 r^2)) + 2 pi r^2.
  CHECK(fraenkel_asymmetry(StarDomain::satellites(0.1)) == doctest::Approx(4 * kPi * 0.01).epsilon(2e-3 / 0.1257));
}

TEST_CASE("invalid domains are rejected") {
  CHECK_THROWS_AS(StarDomain(Point::Zero(), BoundaryFunction(0.5, {0.8}, {})), NonPositiveRadius);
  CHECK_THROWS_AS(StarDomain(Point::Zero(), BoundaryFunction::constant(1.0), {Ball{Point(1.5, 0.0), 0.6}}),
                  InvalidConfig);
}

namespace {
double edge_check(const TriangleMesh& m) {
  // Every interior edge is shared by exactly two triangles, boundary edges by one.
  std::map<std::pair<int, int>, int> count;
  for (const auto& t : m.triangles)
    for (int e = 0; e < 3; ++e) {
      int a = t[e], b = t[(e + 1) % 3];
      if (a > b) std::swap(a, b);
      ++count[{a, b}];
    }
  int bad = 0;
  for (const auto& [edge, c] : count) {
    const bool boundary = m.boundary_vertex[edge.first] && m.boundary_vertex[edge.second];
    if (c > 2 || (c == 1 && !boundary)) ++bad;
  }
  return bad;
}
}  // namespace

TEST_CASE("meshes of the test domains") {
  const double h = 0.05;
  const TriangleMesh disk = mesh_star_domain(StarDomain::disk(), h);
  CHECK(std::abs(disk.total_area() - kPi) < 1e-3);
  CHECK(disk.max_element_diameter() <= 2 * h);
  CHECK(edge_check(disk) == 0);
  for (double a : disk.element_area) CHECK(a > 0.0);

  const StarDomain ell = StarDomain::unit_ellipse(0.1);
  const TriangleMesh em = mesh_star_domain(ell, h);
  CHECK(std::abs(em.total_area() - kPi) < 1e-3);
  for (int i = 0; i < static_cast<int>(em.vertices.size()); ++i) {
    if (!em.boundary_vertex[i]) continue;
    const Point x = em.vertices[i];
    const double theta = std::atan2(x.y(), x.x());
    CHECK(std::abs(x.norm() - ell.radius_at(theta)) <= h * h);
  }

  // Satellites of radius 0.1 need a finer mesh for the same area tolerance.
  const TriangleMesh sat = mesh_star_domain(StarDomain::satellites(0.1), 0.02);
  CHECK(std::abs(sat.total_area() - kPi) < 1e-3);
  CHECK(edge_check(sat) == 0);
}

TEST_CASE("mesh area converges at second order") {
  std::vector<double> err;
  for (double h : {0.1, 0.05, 0.025}) err.push_back(std::abs(mesh_star_domain(StarDomain::unit_ellipse(0.1), h).total_area() - kPi));
  CHECK(std::log2(err[0] / err[1]) >= 1.8);
  CHECK(std::log2(err[1] / err[2]) >= 1.8);
}
