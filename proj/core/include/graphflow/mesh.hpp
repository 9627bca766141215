#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace graphflow {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

enum class BoundaryTag { Outer, LeftRight, TopBottom };

std::string_view to_string(BoundaryTag tag);
BoundaryTag parse_boundary_tag(std::string_view name);

enum class DomainKind { Disk, Rectangle };

struct BoundaryEdge {
  std::array<int, 2> vertices;  // oriented so that the domain lies on the left
  BoundaryTag tag;
};

/// Conforming triangulation with counterclockwise triangles and tagged boundary.
struct Mesh {
  DomainKind domain = DomainKind::Rectangle;
  std::vector<Vec2> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<BoundaryEdge> boundary_edges;
  double h_max = 0.0;

  std::size_t num_vertices() const { return vertices.size(); }
  std::size_t num_triangles() const { return triangles.size(); }

  double signed_area(std::size_t t) const;
  double diameter(std::size_t t) const;
  double inradius(std::size_t t) const;

  /// Sorted, unique vertex indices lying on edges carrying `tag`.
  std::vector<int> boundary_vertices(BoundaryTag tag) const;
  /// Sorted, unique vertex indices lying on any boundary edge.
  std::vector<int> boundary_vertices() const;
  bool has_tag(BoundaryTag tag) const;
};

/// Largest triangle diameter.
double mesh_size(const Mesh& mesh);

/// Levels above this are rejected by generate_disk_mesh.
inline constexpr int kMaxDiskLevel = 8;

/// Quasiuniform triangulation of the unit disk.
///
/// Level 0 is a regular hexagon fan whose six sectors are each split into a
/// 6x6 triangular lattice, with lattice row i mapped radially onto the circle
/// of radius i/6. Each further level is one red refinement.
Mesh generate_disk_mesh(int level);

/// Criss-cross triangulation of [x0,x1] x [y0,y1].
///
/// Cell diagonals alternate with (i + j) parity, so the mesh is mirror
/// symmetric about the mid-lines whenever the cell counts are even. Cell
/// counts above one are rounded up to even.
Mesh generate_rect_mesh(std::pair<double, double> x_bounds, std::pair<double, double> y_bounds,
                        double target_h);

/// Red refinement: every triangle is split into four through edge midpoints.
/// Boundary midpoints of disk meshes are projected onto the unit circle.
Mesh refine_uniform(const Mesh& mesh);

struct EdgeCensus {
  std::size_t boundary = 0;
  std::size_t interior = 0;
  std::size_t nonmanifold = 0;  // shared by more than two triangles
  bool boundary_list_consistent = false;
};

/// Edge classification from triangle adjacency, compared against boundary_edges.
EdgeCensus census_edges(const Mesh& mesh);

/// max diameter / min inradius over all triangles.
double quasiuniformity_ratio(const Mesh& mesh);

/// Plain-text dump: `NV NT NE`, then vertices, triangles, tagged boundary edges.
void write_mesh_text(const Mesh& mesh, std::ostream& out);
Mesh read_mesh_text(std::istream& in);

}  // namespace graphflow
