#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <vector>

#include "speclab/geometry.hpp"

namespace speclab {

/// Closed boundary polygon of one mesh component, ordered counter-clockwise.
/// `angles` are the polar angles of the vertices about the component center.
struct BoundaryLoop {
  int component = 0;  // 0 = star-shaped core, i >= 1 = auxiliary ball i-1
  Point center = Point::Zero();
  std::vector<int> vertices;
  std::vector<double> angles;
};

struct TriangleMesh {
  std::vector<Point> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<bool> boundary_vertex;
  std::vector<double> element_area;
  std::vector<BoundaryLoop> loops;

  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int num_triangles() const { return static_cast<int>(triangles.size()); }
  double total_area() const;
  double max_element_diameter() const;
};

/// Ring counts per component. Two domains meshed with the same topology have
/// identical connectivity, which keeps finite differences and descent steps
/// free of remeshing noise.
struct MeshTopology {
  int core_rings = 4;
  std::vector<int> ball_rings;
};

MeshTopology topology_for(const StarDomain& domain, double target_h);

TriangleMesh mesh_star_domain(const StarDomain& domain, double target_h);
TriangleMesh mesh_star_domain(const StarDomain& domain, const MeshTopology& topology);

void write_mesh(std::ostream& os, const TriangleMesh& mesh);

/// Bucket grid for point location in a triangle mesh.
class MeshLocator {
 public:
  explicit MeshLocator(const TriangleMesh& mesh);

  struct Hit {
    int triangle;
    std::array<double, 3> bary;
  };
  std::optional<Hit> locate(const Point& x) const;

 private:
  const TriangleMesh* mesh_;
  Point lo_;
  double cell_ = 1.0;
  int nx_ = 1, ny_ = 1;
  std::vector<int> start_;
  std::vector<int> items_;
};

}  // namespace speclab
