#include "speclab/fem.hpp"

#include <algorithm>
#include <array>
#include <ostream>

#include "speclab/errors.hpp"

namespace speclab {

namespace {

using Triplet = Eigen::Triplet<double>;

struct QuadPoint {
  std::array<double, 3> bary;
  double weight;
};

// Degree-5 seven-point rule on the reference triangle (weights sum to 1).
const std::array<QuadPoint, 7>& seven_point_rule() {
  static const std::array<QuadPoint, 7> rule = [] {
    const double a1 = 0.059715871789770, b1 = 0.470142064105115, w1 = 0.132394152788506;
    const double a2 = 0.797426985353087, b2 = 0.101286507323456, w2 = 0.125939180544827;
    return std::array<QuadPoint, 7>{{
        {{1.0 / 3, 1.0 / 3, 1.0 / 3}, 0.225},
        {{a1, b1, b1}, w1},
        {{b1, a1, b1}, w1},
        {{b1, b1, a1}, w1},
        {{a2, b2, b2}, w2},
        {{b2, a2, b2}, w2},
        {{b2, b2, a2}, w2},
    }};
  }();
  return rule;
}

}  // namespace

FemSpace::FemSpace(TriangleMesh mesh) : mesh_(std::move(mesh)), locator_(mesh_) {
  const int n = mesh_.num_vertices();
  std::vector<Triplet> kt, mt;
  kt.reserve(9 * mesh_.num_triangles());
  mt.reserve(9 * mesh_.num_triangles());
  for (int t = 0; t < mesh_.num_triangles(); ++t) {
    const auto& tri = mesh_.triangles[t];
    const double area = mesh_.element_area[t];
    std::array<double, 3> b, c;
    for (int i = 0; i < 3; ++i) {
      const Point& pj = mesh_.vertices[tri[(i + 1) % 3]];
      const Point& pk = mesh_.vertices[tri[(i + 2) % 3]];
      b[i] = pj.y() - pk.y();
      c[i] = pk.x() - pj.x();
    }
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        kt.emplace_back(tri[i], tri[j], (b[i] * b[j] + c[i] * c[j]) / (4.0 * area));
        mt.emplace_back(tri[i], tri[j], area / 12.0 * (i == j ? 2.0 : 1.0));
      }
    }
  }
  stiffness_.resize(n, n);
  mass_.resize(n, n);
  stiffness_.setFromTriplets(kt.begin(), kt.end());
  mass_.setFromTriplets(mt.begin(), mt.end());

  free_index_.assign(n, -1);
  for (int v = 0; v < n; ++v) {
    if (!mesh_.boundary_vertex[v]) {
      free_index_[v] = static_cast<int>(free_vertices_.size());
      free_vertices_.push_back(v);
    }
  }
  auto restrict = [&](const SparseMatrix& a) {
    std::vector<Triplet> out;
    for (int k = 0; k < a.outerSize(); ++k) {
      for (SparseMatrix::InnerIterator it(a, k); it; ++it) {
        const int i = free_index_[it.row()], j = free_index_[it.col()];
        if (i >= 0 && j >= 0) out.emplace_back(i, j, it.value());
      }
    }
    SparseMatrix r(num_free(), num_free());
    r.setFromTriplets(out.begin(), out.end());
    return r;
  };
  free_stiffness_ = restrict(stiffness_);
  free_mass_ = restrict(mass_);
  if (num_free() > 0) {
    factor_.compute(free_stiffness_);
    if (factor_.info() != Eigen::Success)
      throw SingularSystem("stiffness factorization failed");
    if ((factor_.vectorD().array() <= 0.0).any())
      throw SingularSystem("stiffness matrix is not positive definite");
  }
}

Vector FemSpace::load(const ScalarFunction& f) const {
  Vector out = Vector::Zero(num_vertices());
  for (int t = 0; t < mesh_.num_triangles(); ++t) {
    const auto& tri = mesh_.triangles[t];
    std::array<double, 3> fm;  // f at the midpoint of the edge opposite vertex i
    for (int i = 0; i < 3; ++i)
      fm[i] = f(0.5 * (mesh_.vertices[tri[(i + 1) % 3]] + mesh_.vertices[tri[(i + 2) % 3]]));
    const double w = mesh_.element_area[t] / 3.0;
    // phi_i is 1/2 at the two midpoints on edges touching vertex i, 0 at the third.
    for (int i = 0; i < 3; ++i) out[tri[i]] += w * 0.5 * (fm[(i + 1) % 3] + fm[(i + 2) % 3]);
  }
  return out;
}

Vector FemSpace::restrict_free(const Vector& full) const {
  Vector r(num_free());
  for (int i = 0; i < num_free(); ++i) r[i] = full[free_vertices_[i]];
  return r;
}

Vector FemSpace::extend_free(const Vector& free) const {
  Vector u = Vector::Zero(num_vertices());
  for (int i = 0; i < num_free(); ++i) u[free_vertices_[i]] = free[i];
  return u;
}

Vector FemSpace::solve_free(const Vector& x) const {
  if (num_free() == 0) return Vector();
  Vector y = factor_.solve(x);
  if (factor_.info() != Eigen::Success) throw SingularSystem("stiffness solve failed");
  return y;
}

Vector FemSpace::solve(const Vector& load) const { return extend_free(solve_free(restrict_free(load))); }

SpacePtr make_space(TriangleMesh mesh) { return std::make_shared<const FemSpace>(std::move(mesh)); }

SpacePtr make_space(const StarDomain& domain, double target_h) {
  return make_space(mesh_star_domain(domain, target_h));
}

SpacePtr make_space(const StarDomain& domain, const MeshTopology& topology) {
  return make_space(mesh_star_domain(domain, topology));
}

// ---------------------------------------------------------------------------
// FemField

double FemField::operator()(const Point& x) const {
  const auto hit = space->locator().locate(x);
  if (!hit) return 0.0;
  const auto& tri = space->mesh().triangles[hit->triangle];
  return hit->bary[0] * values[tri[0]] + hit->bary[1] * values[tri[1]] +
         hit->bary[2] * values[tri[2]];
}

Point FemField::gradient(const Point& x) const {
  const auto hit = space->locator().locate(x);
  if (!hit) return Point::Zero();
  const TriangleMesh& m = space->mesh();
  const auto& tri = m.triangles[hit->triangle];
  const double area2 = 2.0 * m.element_area[hit->triangle];
  Point g = Point::Zero();
  for (int i = 0; i < 3; ++i) {
    const Point& pj = m.vertices[tri[(i + 1) % 3]];
    const Point& pk = m.vertices[tri[(i + 2) % 3]];
    g += values[tri[i]] * Point(pj.y() - pk.y(), pk.x() - pj.x()) / area2;
  }
  return g;
}

double FemField::integral() const {
  double s = 0.0;
  const TriangleMesh& m = space->mesh();
  for (int t = 0; t < m.num_triangles(); ++t) {
    const auto& tri = m.triangles[t];
    s += m.element_area[t] / 3.0 * (values[tri[0]] + values[tri[1]] + values[tri[2]]);
  }
  return s;
}

double FemField::l2_norm_sq() const { return values.dot(space->mass() * values); }

double FemField::dot(const FemField& other) const {
  if (other.space != space) throw InvalidConfig("FemField::dot: fields live on different meshes");
  return values.dot(space->mass() * other.values);
}

FemField& FemField::operator*=(double s) {
  values *= s;
  return *this;
}

FemField& FemField::operator+=(const FemField& other) {
  if (other.space != space) throw InvalidConfig("FemField: adding fields on different meshes");
  values += other.values;
  return *this;
}

FemField& FemField::operator-=(const FemField& other) {
  if (other.space != space) throw InvalidConfig("FemField: subtracting fields on different meshes");
  values -= other.values;
  return *this;
}

FemField zero_field(const SpacePtr& space) { return {space, Vector::Zero(space->num_vertices())}; }

FemField interpolate(const SpacePtr& space, const ScalarFunction& f) {
  Vector v(space->num_vertices());
  for (int i = 0; i < space->num_vertices(); ++i) v[i] = f(space->mesh().vertices[i]);
  return {space, std::move(v)};
}

FemField transfer_field(const SpacePtr& space, const FemField& field) {
  if (field.space == space) return field;
  return interpolate(space, [&field](const Point& x) { return field(x); });
}

FemField solve_poisson(const SpacePtr& space, const ScalarFunction& rhs) {
  return {space, space->solve(space->load(rhs))};
}

FemField solve_poisson(const SpacePtr& space, const FemField& rhs) {
  const FemField g = transfer_field(space, rhs);
  return {space, space->solve(space->mass() * g.values)};
}

FemField torsion_function(const SpacePtr& space) {
  // f = 1: each vertex receives a third of every adjacent element area.
  const TriangleMesh& m = space->mesh();
  Vector load = Vector::Zero(space->num_vertices());
  for (int t = 0; t < m.num_triangles(); ++t)
    for (int v : m.triangles[t]) load[v] += m.element_area[t] / 3.0;
  return {space, space->solve(load)};
}

double torsional_rigidity(const FemField& torsion) { return -0.5 * torsion.integral(); }

// ---------------------------------------------------------------------------
// Cross-mesh integrals

namespace {

std::pair<Point, Point> vertex_box(const TriangleMesh& m) {
  Point lo = m.vertices.front(), hi = lo;
  for (const Point& p : m.vertices) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return {lo, hi};
}

double grid_integral(const std::pair<Point, Point>& box, int n,
                     const std::function<double(const Point&)>& integrand) {
  const Point size = box.second - box.first;
  const double dx = size.x() / n, dy = size.y() / n;
  double s = 0.0;
  for (int j = 0; j < n; ++j) {
    const double y = box.first.y() + (j + 0.5) * dy;
    for (int i = 0; i < n; ++i) s += integrand(Point(box.first.x() + (i + 0.5) * dx, y));
  }
  return s * dx * dy;
}

}  // namespace

double cross_l2(const FemField& a, const FemField& b, const GridOptions& opts) {
  if (a.space == b.space) {
    const Vector d = a.values - b.values;
    if (d.isZero(0.0)) return 0.0;
  }
  std::pair<Point, Point> box;
  if (opts.box) {
    box = *opts.box;
  } else {
    const auto ba = vertex_box(a.space->mesh()), bb = vertex_box(b.space->mesh());
    box = {ba.first.cwiseMin(bb.first), ba.second.cwiseMax(bb.second)};
  }
  return grid_integral(box, opts.resolution, [&](const Point& x) {
    const double d = a(x) - b(x);
    return d * d;
  });
}

double cross_l2(const FemField& a, const ScalarFunction& b, const std::pair<Point, Point>& b_box,
                const GridOptions& opts) {
  std::pair<Point, Point> box;
  if (opts.box) {
    box = *opts.box;
  } else {
    const auto ba = vertex_box(a.space->mesh());
    box = {ba.first.cwiseMin(b_box.first), ba.second.cwiseMax(b_box.second)};
  }
  return grid_integral(box, opts.resolution, [&](const Point& x) {
    const double d = a(x) - b(x);
    return d * d;
  });
}

double cross_inner(const FemField& a, const ScalarFunction& b) {
  const TriangleMesh& m = a.space->mesh();
  double s = 0.0;
  for (int t = 0; t < m.num_triangles(); ++t) {
    const auto& tri = m.triangles[t];
    const Point& p0 = m.vertices[tri[0]];
    const Point& p1 = m.vertices[tri[1]];
    const Point& p2 = m.vertices[tri[2]];
    double e = 0.0;
    for (const QuadPoint& q : seven_point_rule()) {
      const Point x = q.bary[0] * p0 + q.bary[1] * p1 + q.bary[2] * p2;
      const double av = q.bary[0] * a.values[tri[0]] + q.bary[1] * a.values[tri[1]] +
                        q.bary[2] * a.values[tri[2]];
      e += q.weight * av * b(x);
    }
    s += e * m.element_area[t];
  }
  return s;
}

double cross_l2_overlay(const FemField& a, const FemField& b) {
  if (a.space == b.space) {
    const Vector d = a.values - b.values;
    return d.dot(a.space->mass() * d);
  }
  const double cross = cross_inner(a, [&b](const Point& x) { return b(x); });
  return std::max(0.0, a.l2_norm_sq() + b.l2_norm_sq() - 2.0 * cross);
}

void write_field_csv(std::ostream& os, const FemField& field) {
  os.precision(17);
  os << "x,y,value\n";
  const TriangleMesh& m = field.space->mesh();
  for (int v = 0; v < m.num_vertices(); ++v)
    os << m.vertices[v].x() << ',' << m.vertices[v].y() << ',' << field.values[v] << '\n';
}

}  // namespace speclab
