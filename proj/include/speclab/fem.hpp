#pragma once

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <vector>

#include "speclab/mesh.hpp"

namespace speclab {

using SparseMatrix = Eigen::SparseMatrix<double>;
using Vector = Eigen::VectorXd;
using ScalarFunction = std::function<double(const Point&)>;

/// P1 Lagrange space on a triangle mesh with homogeneous Dirichlet conditions
/// on every boundary vertex. Owns the mesh, the assembled stiffness and
/// consistent mass matrices and the factorization of the interior stiffness
/// block. Not copyable; share through `SpacePtr`.
class FemSpace {
 public:
  explicit FemSpace(TriangleMesh mesh);
  FemSpace(const FemSpace&) = delete;
  FemSpace& operator=(const FemSpace&) = delete;

  const TriangleMesh& mesh() const { return mesh_; }
  const MeshLocator& locator() const { return locator_; }
  int num_vertices() const { return mesh_.num_vertices(); }
  int num_free() const { return static_cast<int>(free_vertices_.size()); }

  const SparseMatrix& stiffness() const { return stiffness_; }
  const SparseMatrix& mass() const { return mass_; }
  const SparseMatrix& free_stiffness() const { return free_stiffness_; }
  const SparseMatrix& free_mass() const { return free_mass_; }

  /// Free (interior) index of each vertex, -1 on the boundary.
  const std::vector<int>& free_index() const { return free_index_; }
  const std::vector<int>& free_vertices() const { return free_vertices_; }

  /// Load vector (int f phi_i)_i by the edge-midpoint rule, exact for
  /// quadratic integrands on each element.
  Vector load(const ScalarFunction& f) const;
  /// Dirichlet solve K u = load with u = 0 on the boundary.
  Vector solve(const Vector& load) const;
  /// K_II^{-1} x on interior coordinates.
  Vector solve_free(const Vector& x) const;

  Vector restrict_free(const Vector& full) const;
  Vector extend_free(const Vector& free) const;

 private:
  TriangleMesh mesh_;
  MeshLocator locator_;
  SparseMatrix stiffness_, mass_, free_stiffness_, free_mass_;
  std::vector<int> free_index_, free_vertices_;
  Eigen::SimplicialLDLT<SparseMatrix> factor_;
};

using SpacePtr = std::shared_ptr<const FemSpace>;

SpacePtr make_space(TriangleMesh mesh);
SpacePtr make_space(const StarDomain& domain, double target_h);
SpacePtr make_space(const StarDomain& domain, const MeshTopology& topology);

/// Nodal P1 field, extended by zero outside its mesh.
struct FemField {
  SpacePtr space;
  Vector values;

  double operator()(const Point& x) const;
  /// Element gradient at x (zero outside the mesh).
  Point gradient(const Point& x) const;
  double integral() const;
  double l2_norm_sq() const;
  /// M-inner product on the shared mesh.
  double dot(const FemField& other) const;

  FemField& operator*=(double s);
  FemField& operator+=(const FemField& other);
  FemField& operator-=(const FemField& other);
  friend FemField operator*(double s, FemField f) { return f *= s; }
  friend FemField operator+(FemField a, const FemField& b) { return a += b; }
  friend FemField operator-(FemField a, const FemField& b) { return a -= b; }
};

FemField zero_field(const SpacePtr& space);
/// Nodal interpolant of an analytic function (boundary values kept as given).
FemField interpolate(const SpacePtr& space, const ScalarFunction& f);
/// Nodal interpolant of a field from another mesh (zero-extended).
FemField transfer_field(const SpacePtr& space, const FemField& field);

FemField solve_poisson(const SpacePtr& space, const ScalarFunction& rhs);
/// Right-hand side given as a field (possibly on another mesh): load = M I(rhs).
FemField solve_poisson(const SpacePtr& space, const FemField& rhs);
FemField torsion_function(const SpacePtr& space);
/// tor = -1/2 int w for the discrete torsion function.
double torsional_rigidity(const FemField& torsion);

/// Background-grid midpoint rule for integrals over R^2 of zero-extended
/// fields. `resolution` cells per side of the joint bounding box, or of a
/// caller-fixed box.
struct GridOptions {
  int resolution = 512;
  std::optional<std::pair<Point, Point>> box;
};

double cross_l2(const FemField& a, const FemField& b, const GridOptions& opts = {});
double cross_l2(const FemField& a, const ScalarFunction& b, const std::pair<Point, Point>& b_box,
                const GridOptions& opts = {});

/// int (a - b)^2 by expanding the square: both norms exactly on their own
/// meshes and the cross term by 7-point element quadrature on `a`'s mesh
/// with `b` evaluated pointwise. Smooth under continuous motion of either
/// mesh, unlike the grid rule.
double cross_l2_overlay(const FemField& a, const FemField& b);
/// int_{mesh of a} a * b by 7-point element quadrature.
double cross_inner(const FemField& a, const ScalarFunction& b);

void write_field_csv(std::ostream& os, const FemField& field);

}  // namespace speclab
