#include "speclab/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include "speclab/errors.hpp"

namespace speclab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Empirically 1.25 rings per max-radius/h keeps the unit-disk area error
// below 1e-3 at h = 0.05.
constexpr double kRingFactor = 1.25;

int rings_for(double radius, double h) {
  return std::max(4, static_cast<int>(std::ceil(kRingFactor * radius / h)));
}

struct ReferenceDisk {
  // Polar coordinates (r in [0,1], theta) of each vertex.
  std::vector<double> r, theta;
  std::vector<std::array<int, 3>> triangles;
  std::vector<int> boundary;  // outermost ring, increasing angle
};

// Concentric rings: ring i holds 6i vertices at angles 2 pi a / 6i. Adjacent
// rings are stitched by advancing along whichever ring has the smaller next
// segment midpoint angle; ties cannot occur, so the triangulation is invariant
// under rotation by pi/3 and reflection in the x-axis.
ReferenceDisk reference_disk(int rings) {
  ReferenceDisk d;
  d.r.push_back(0.0);
  d.theta.push_back(0.0);
  std::vector<int> ring_start(rings + 1, 0);
  for (int i = 1; i <= rings; ++i) {
    ring_start[i] = static_cast<int>(d.r.size());
    const int n = 6 * i;
    for (int a = 0; a < n; ++a) {
      d.r.push_back(static_cast<double>(i) / rings);
      d.theta.push_back(kTwoPi * a / n);
    }
  }
  for (int a = 0; a < 6; ++a) d.triangles.push_back({0, ring_start[1] + a, ring_start[1] + (a + 1) % 6});
  for (int i = 2; i <= rings; ++i) {
    const int n_in = 6 * (i - 1), n_out = 6 * i;
    const int in0 = ring_start[i - 1], out0 = ring_start[i];
    int a = 0, b = 0;  // a: outer index, b: inner index
    while (a < n_out || b < n_in) {
      const bool advance_outer =
          b == n_in || (a < n_out && (2 * a + 1) * n_in < (2 * b + 1) * n_out);
      if (advance_outer) {
        d.triangles.push_back({in0 + b % n_in, out0 + a, out0 + (a + 1) % n_out});
        ++a;
      } else {
        d.triangles.push_back({in0 + b, out0 + a % n_out, in0 + (b + 1) % n_in});
        ++b;
      }
    }
  }
  for (int a = 0; a < 6 * rings; ++a) d.boundary.push_back(ring_start[rings] + a);
  return d;
}

double signed_area(const Point& a, const Point& b, const Point& c) {
  return 0.5 * ((b.x() - a.x()) * (c.y() - a.y()) - (c.x() - a.x()) * (b.y() - a.y()));
}

void append_component(TriangleMesh& mesh, int component, const Point& center, int rings,
                      const auto& radius_at) {
  const ReferenceDisk ref = reference_disk(rings);
  const int offset = mesh.num_vertices();
  for (std::size_t v = 0; v < ref.r.size(); ++v) {
    const double t = ref.theta[v];
    const double s = ref.r[v] * radius_at(t);
    mesh.vertices.push_back(center + s * Point(std::cos(t), std::sin(t)));
    mesh.boundary_vertex.push_back(false);
  }
  for (const auto& tri : ref.triangles) {
    const std::array<int, 3> g = {tri[0] + offset, tri[1] + offset, tri[2] + offset};
    const double area = signed_area(mesh.vertices[g[0]], mesh.vertices[g[1]], mesh.vertices[g[2]]);
    if (!(area > 0.0)) throw DegenerateMesh("mesh_star_domain: non-positive element area");
    mesh.triangles.push_back(g);
    mesh.element_area.push_back(area);
  }
  BoundaryLoop loop;
  loop.component = component;
  loop.center = center;
  for (int v : ref.boundary) {
    mesh.boundary_vertex[v + offset] = true;
    loop.vertices.push_back(v + offset);
    loop.angles.push_back(ref.theta[v]);
  }
  mesh.loops.push_back(std::move(loop));
}

}  // namespace

double TriangleMesh::total_area() const {
  double s = 0.0;
  for (double a : element_area) s += a;
  return s;
}

double TriangleMesh::max_element_diameter() const {
  double d = 0.0;
  for (const auto& t : triangles) {
    for (int e = 0; e < 3; ++e)
      d = std::max(d, (vertices[t[e]] - vertices[t[(e + 1) % 3]]).norm());
  }
  return d;
}

MeshTopology topology_for(const StarDomain& domain, double target_h) {
  if (!(target_h > 0.0)) throw InvalidConfig("mesh size must be positive");
  MeshTopology t;
  t.core_rings = rings_for(domain.max_radius(), target_h);
  for (const Ball& b : domain.balls()) t.ball_rings.push_back(rings_for(b.radius, target_h));
  return t;
}

TriangleMesh mesh_star_domain(const StarDomain& domain, double target_h) {
  return mesh_star_domain(domain, topology_for(domain, target_h));
}

TriangleMesh mesh_star_domain(const StarDomain& domain, const MeshTopology& topology) {
  if (topology.ball_rings.size() != domain.balls().size())
    throw InvalidConfig("mesh topology does not match the number of components");
  TriangleMesh mesh;
  const BoundaryFunction& rho = domain.radial();
  append_component(mesh, 0, domain.center(), topology.core_rings,
                   [&rho](double t) { return rho(t); });
  for (std::size_t i = 0; i < domain.balls().size(); ++i) {
    const Ball& b = domain.balls()[i];
    append_component(mesh, static_cast<int>(i) + 1, b.center, topology.ball_rings[i],
                     [r = b.radius](double) { return r; });
  }
  return mesh;
}

void write_mesh(std::ostream& os, const TriangleMesh& mesh) {
  os.precision(17);
  os << "vertices " << mesh.num_vertices() << '\n';
  for (int v = 0; v < mesh.num_vertices(); ++v)
    os << mesh.vertices[v].x() << ' ' << mesh.vertices[v].y() << ' '
       << (mesh.boundary_vertex[v] ? 1 : 0) << '\n';
  os << "triangles " << mesh.num_triangles() << '\n';
  for (const auto& t : mesh.triangles) os << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

// ---------------------------------------------------------------------------

MeshLocator::MeshLocator(const TriangleMesh& mesh) : mesh_(&mesh) {
  Point lo = mesh.vertices.front(), hi = lo;
  for (const Point& p : mesh.vertices) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  const double span = std::max(hi.x() - lo.x(), hi.y() - lo.y());
  const int target = std::max(1, static_cast<int>(std::sqrt(mesh.num_triangles() / 2.0)));
  cell_ = std::max(span / target, 1e-12);
  lo_ = lo;
  nx_ = static_cast<int>((hi.x() - lo.x()) / cell_) + 1;
  ny_ = static_cast<int>((hi.y() - lo.y()) / cell_) + 1;

  auto cells_of = [&](int t, auto&& visit) {
    Point a = mesh.vertices[mesh.triangles[t][0]], b = a;
    for (int k = 1; k < 3; ++k) {
      a = a.cwiseMin(mesh.vertices[mesh.triangles[t][k]]);
      b = b.cwiseMax(mesh.vertices[mesh.triangles[t][k]]);
    }
    const int i0 = std::clamp(static_cast<int>((a.x() - lo_.x()) / cell_), 0, nx_ - 1);
    const int i1 = std::clamp(static_cast<int>((b.x() - lo_.x()) / cell_), 0, nx_ - 1);
    const int j0 = std::clamp(static_cast<int>((a.y() - lo_.y()) / cell_), 0, ny_ - 1);
    const int j1 = std::clamp(static_cast<int>((b.y() - lo_.y()) / cell_), 0, ny_ - 1);
    for (int j = j0; j <= j1; ++j)
      for (int i = i0; i <= i1; ++i) visit(j * nx_ + i);
  };
  std::vector<int> count(nx_ * ny_ + 1, 0);
  for (int t = 0; t < mesh.num_triangles(); ++t) cells_of(t, [&](int c) { ++count[c + 1]; });
  for (std::size_t c = 1; c < count.size(); ++c) count[c] += count[c - 1];
  start_ = count;
  items_.resize(count.back());
  for (int t = 0; t < mesh.num_triangles(); ++t) cells_of(t, [&](int c) { items_[count[c]++] = t; });
}

std::optional<MeshLocator::Hit> MeshLocator::locate(const Point& x) const {
  const double fx = (x.x() - lo_.x()) / cell_, fy = (x.y() - lo_.y()) / cell_;
  if (fx < 0 || fy < 0) return std::nullopt;
  const int i = static_cast<int>(fx), j = static_cast<int>(fy);
  if (i >= nx_ || j >= ny_) return std::nullopt;
  const int c = j * nx_ + i;
  constexpr double kTol = -1e-12;
  for (int k = start_[c]; k < start_[c + 1]; ++k) {
    const int t = items_[k];
    const auto& tri = mesh_->triangles[t];
    const Point& a = mesh_->vertices[tri[0]];
    const Point& b = mesh_->vertices[tri[1]];
    const Point& p = mesh_->vertices[tri[2]];
    const double area2 = 2.0 * mesh_->element_area[t];
    const double l1 = ((b.x() - x.x()) * (p.y() - x.y()) - (p.x() - x.x()) * (b.y() - x.y())) / area2;
    const double l2 = ((p.x() - x.x()) * (a.y() - x.y()) - (a.x() - x.x()) * (p.y() - x.y())) / area2;
    const double l3 = 1.0 - l1 - l2;
    if (l1 >= kTol && l2 >= kTol && l3 >= kTol) return Hit{t, {l1, l2, l3}};
  }
  return std::nullopt;
}

}  // namespace speclab
