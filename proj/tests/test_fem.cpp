#include <doctest.h>

#include <cmath>
#include <numbers>

#include "speclab/closed_forms.hpp"
#include "speclab/eigensolver.hpp"

using namespace speclab;
constexpr double kPi = std::numbers::pi;

TEST_CASE("torsion of the disk") {
  const SpacePtr space = make_space(StarDomain::disk(), 0.04);
  const FemField w = torsion_function(space);
  CHECK(std::abs(torsional_rigidity(w) + kPi / 16) / (kPi / 16) < 1e-3);
  double err = 0.0, wmax = 0.0;
  for (int i = 0; i < space->num_vertices(); ++i) {
    const Point x = space->mesh().vertices[i];
    err = std::max(err, std::abs(w.values[i] - (1 - x.squaredNorm()) / 4));
    wmax = std::max(wmax, w.values[i]);
  }
  CHECK(err < 2e-3);
  // |w|_inf <= 2 / n
  CHECK(wmax <= 1.0);
  CHECK(cross_l2(w, w) == 0.0);
  CHECK(cross_l2(w, [](const Point& x) { return std::max(0.0, (1 - x.squaredNorm()) / 4); },
                 {Point(-1, -1), Point(1, 1)}) < 1e-6);
}

TEST_CASE("torsion scales like r^4 on a scaled mesh") {
  const StarDomain e = StarDomain::unit_ellipse(0.1);
  const MeshTopology topo = topology_for(e, 0.04);
  const double t1 = torsional_rigidity(torsion_function(make_space(e, topo)));
  const double t2 = torsional_rigidity(torsion_function(make_space(e.scaled(1.3), topo)));
  CHECK(t2 == doctest::Approx(std::pow(1.3, 4) * t1).epsilon(1e-10));
}

TEST_CASE("Poisson solve reproduces a quadratic") {
  // -Laplace(1 - x^2 - y^2) = 4 on the unit disk.
  const SpacePtr space = make_space(StarDomain::disk(), 0.04);
  const FemField u = solve_poisson(space, [](const Point&) { return 4.0; });
  CHECK(std::abs(u.integral() - kPi / 2) < 2e-3);
}

TEST_CASE("disk spectrum") {
  const SpacePtr space = make_space(StarDomain::disk(), 0.04);
  const SpectralBundle b = solve_eigen(space, 6);
  for (int i = 0; i < 6; ++i) {
    const double exact = closed_forms::disk_eigenpair(i + 1).eigenvalue;
    CHECK(std::abs(b.eigenvalues[i] - exact) / exact < 5e-3);
    CHECK(relative_residual(*space, b.eigenvalues[i], b.eigenfunctions[i].values) < 1e-8);
    for (int j = 0; j <= i; ++j)
      CHECK(b.eigenfunctions[i].dot(b.eigenfunctions[j]) == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-9));
  }
  CHECK(b.cluster_of(1).size() == 2);
  CHECK(b.cluster_of(3).size() == 2);
  CHECK(b.cluster_of(0).size() == 1);
  CHECK(b.eigenfunctions[0].integral() > 0.0);
}

TEST_CASE("Kohler-Jobin consequence: lambda1 and tor deficits are ordered with the ball") {
  const StarDomain e = StarDomain::unit_ellipse(0.15);
  const SpacePtr space = make_space(e, 0.03);
  const double lam = solve_eigen(space, 1).eigenvalues[0];
  const double tor = torsional_rigidity(torsion_function(space));
  CHECK(lam > closed_forms::disk_eigenpair(1).eigenvalue);
  CHECK(tor > closed_forms::ball_torsional_rigidity(2, 1.0));
}

TEST_CASE("too many eigenpairs for the mesh") {
  const SpacePtr space = make_space(StarDomain::disk(), 0.2);
  CHECK_THROWS(solve_eigen(space, space->num_free()));
}
