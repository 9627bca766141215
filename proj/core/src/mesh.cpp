#include "graphflow/mesh.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include "graphflow/errors.hpp"
#include "text_format.hpp"

namespace graphflow {

namespace {

constexpr int kDiskBaseDivisions = 6;

std::pair<int, int> edge_key(int a, int b) { return a < b ? std::pair{a, b} : std::pair{b, a}; }

double max_edge_length(const Vec2& a, const Vec2& b, const Vec2& c) {
  return std::max({(a - b).norm(), (b - c).norm(), (c - a).norm()});
}

}  // namespace

std::string_view to_string(BoundaryTag tag) {
  switch (tag) {
    case BoundaryTag::Outer:
      return "OUTER";
    case BoundaryTag::LeftRight:
      return "LEFT_RIGHT";
    case BoundaryTag::TopBottom:
      return "TOP_BOTTOM";
  }
  return "UNKNOWN";
}

BoundaryTag parse_boundary_tag(std::string_view name) {
  if (name == "OUTER") return BoundaryTag::Outer;
  if (name == "LEFT_RIGHT") return BoundaryTag::LeftRight;
  if (name == "TOP_BOTTOM") return BoundaryTag::TopBottom;
  throw ArgumentError("unknown boundary tag '" + std::string(name) + "'");
}

double Mesh::signed_area(std::size_t t) const {
  const auto& tri = triangles[t];
  const Vec2 e1 = vertices[tri[1]] - vertices[tri[0]];
  const Vec2 e2 = vertices[tri[2]] - vertices[tri[0]];
  return 0.5 * (e1.x() * e2.y() - e1.y() * e2.x());
}

double Mesh::diameter(std::size_t t) const {
  const auto& tri = triangles[t];
  return max_edge_length(vertices[tri[0]], vertices[tri[1]], vertices[tri[2]]);
}

double Mesh::inradius(std::size_t t) const {
  const auto& tri = triangles[t];
  const Vec2& a = vertices[tri[0]];
  const Vec2& b = vertices[tri[1]];
  const Vec2& c = vertices[tri[2]];
  const double perimeter = (a - b).norm() + (b - c).norm() + (c - a).norm();
  return 2.0 * std::abs(signed_area(t)) / perimeter;
}

std::vector<int> Mesh::boundary_vertices(BoundaryTag tag) const {
  std::vector<int> out;
  for (const auto& e : boundary_edges) {
    if (e.tag != tag) continue;
    out.push_back(e.vertices[0]);
    out.push_back(e.vertices[1]);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<int> Mesh::boundary_vertices() const {
  std::vector<int> out;
  for (const auto& e : boundary_edges) {
    out.push_back(e.vertices[0]);
    out.push_back(e.vertices[1]);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool Mesh::has_tag(BoundaryTag tag) const {
  return std::any_of(boundary_edges.begin(), boundary_edges.end(),
                     [tag](const BoundaryEdge& e) { return e.tag == tag; });
}

double mesh_size(const Mesh& mesh) {
  double h = 0.0;
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) h = std::max(h, mesh.diameter(t));
  return h;
}

Mesh generate_disk_mesh(int level) {
  if (level < 0) throw ArgumentError("disk mesh level must be nonnegative");
  if (level > kMaxDiskLevel) {
    throw ResourceError("disk mesh level " + std::to_string(level) + " exceeds guard " +
                        std::to_string(kMaxDiskLevel));
  }

  constexpr int n = kDiskBaseDivisions;
  constexpr double pi = 3.14159265358979323846;

  Mesh mesh;
  mesh.domain = DomainKind::Disk;

  std::array<Vec2, 6> corners;
  for (int k = 0; k < 6; ++k) corners[k] = Vec2(std::cos(k * pi / 3.0), std::sin(k * pi / 3.0));

  // Lattice point (sector k, row i, column j), 0 <= j <= i <= n. Column i of
  // sector k coincides with column 0 of sector k+1; row 0 is the centre.
  std::map<std::array<int, 3>, int> index;
  auto vertex = [&](int k, int i, int j) -> int {
    if (i == 0) {
      k = 0;
      j = 0;
    } else if (j == i) {
      k = (k + 1) % 6;
      j = 0;
    }
    const std::array<int, 3> key{k, i, j};
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    Vec2 p = Vec2::Zero();
    if (i > 0) {
      const Vec2 hex = (static_cast<double>(i) / n) * corners[k] +
                       (static_cast<double>(j) / n) * (corners[(k + 1) % 6] - corners[k]);
      p = (static_cast<double>(i) / n) * hex.normalized();
    }
    const int id = static_cast<int>(mesh.vertices.size());
    mesh.vertices.push_back(p);
    index.emplace(key, id);
    return id;
  };

  for (int k = 0; k < 6; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j <= i; ++j) {
        mesh.triangles.push_back({vertex(k, i, j), vertex(k, i + 1, j), vertex(k, i + 1, j + 1)});
        if (j < i) {
          mesh.triangles.push_back({vertex(k, i, j), vertex(k, i + 1, j + 1), vertex(k, i, j + 1)});
        }
      }
    }
    for (int j = 0; j < n; ++j) {
      mesh.boundary_edges.push_back({{vertex(k, n, j), vertex(k, n, j + 1)}, BoundaryTag::Outer});
    }
  }
  mesh.h_max = mesh_size(mesh);

  for (int l = 0; l < level; ++l) mesh = refine_uniform(mesh);
  return mesh;
}

Mesh generate_rect_mesh(std::pair<double, double> x_bounds, std::pair<double, double> y_bounds,
                        double target_h) {
  if (!(target_h > 0.0)) throw ArgumentError("target_h must be positive");
  const auto [x0, x1] = x_bounds;
  const auto [y0, y1] = y_bounds;
  if (!(x1 > x0) || !(y1 > y0)) throw ArgumentError("degenerate rectangle bounds");

  auto cells = [target_h](double length) {
    int c = static_cast<int>(std::ceil(length / target_h - 1e-12));
    c = std::max(c, 1);
    if (c > 1 && c % 2 == 1) ++c;
    return c;
  };
  const int nx = cells(x1 - x0);
  const int ny = cells(y1 - y0);

  Mesh mesh;
  mesh.domain = DomainKind::Rectangle;
  mesh.vertices.reserve(static_cast<std::size_t>(nx + 1) * (ny + 1));
  for (int j = 0; j <= ny; ++j) {
    // Mirror-exact coordinates: compute from the nearer edge.
    const double y = (2 * j <= ny) ? y0 + (y1 - y0) * j / ny : y1 - (y1 - y0) * (ny - j) / ny;
    for (int i = 0; i <= nx; ++i) {
      const double x = (2 * i <= nx) ? x0 + (x1 - x0) * i / nx : x1 - (x1 - x0) * (nx - i) / nx;
      mesh.vertices.emplace_back(x, y);
    }
  }
  auto v = [nx](int i, int j) { return i + j * (nx + 1); };

  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      if ((i + j) % 2 == 0) {
        mesh.triangles.push_back({v(i, j), v(i + 1, j), v(i + 1, j + 1)});
        mesh.triangles.push_back({v(i, j), v(i + 1, j + 1), v(i, j + 1)});
      } else {
        mesh.triangles.push_back({v(i, j), v(i + 1, j), v(i, j + 1)});
        mesh.triangles.push_back({v(i + 1, j), v(i + 1, j + 1), v(i, j + 1)});
      }
    }
  }

  for (int i = 0; i < nx; ++i) mesh.boundary_edges.push_back({{v(i, 0), v(i + 1, 0)}, BoundaryTag::TopBottom});
  for (int j = 0; j < ny; ++j) mesh.boundary_edges.push_back({{v(nx, j), v(nx, j + 1)}, BoundaryTag::LeftRight});
  for (int i = nx; i > 0; --i) mesh.boundary_edges.push_back({{v(i, ny), v(i - 1, ny)}, BoundaryTag::TopBottom});
  for (int j = ny; j > 0; --j) mesh.boundary_edges.push_back({{v(0, j), v(0, j - 1)}, BoundaryTag::LeftRight});

  mesh.h_max = mesh_size(mesh);
  return mesh;
}

Mesh refine_uniform(const Mesh& mesh) {
  Mesh out;
  out.domain = mesh.domain;
  out.vertices = mesh.vertices;
  out.triangles.reserve(4 * mesh.num_triangles());

  std::map<std::pair<int, int>, int> midpoints;
  auto midpoint = [&](int a, int b) {
    const auto key = edge_key(a, b);
    auto it = midpoints.find(key);
    if (it != midpoints.end()) return it->second;
    const int id = static_cast<int>(out.vertices.size());
    out.vertices.push_back(0.5 * (mesh.vertices[a] + mesh.vertices[b]));
    midpoints.emplace(key, id);
    return id;
  };

  for (const auto& tri : mesh.triangles) {
    const int a = tri[0], b = tri[1], c = tri[2];
    const int ab = midpoint(a, b);
    const int bc = midpoint(b, c);
    const int ca = midpoint(c, a);
    out.triangles.push_back({a, ab, ca});
    out.triangles.push_back({ab, b, bc});
    out.triangles.push_back({ca, bc, c});
    out.triangles.push_back({ab, bc, ca});
  }

  out.boundary_edges.reserve(2 * mesh.boundary_edges.size());
  for (const auto& e : mesh.boundary_edges) {
    const int m = midpoints.at(edge_key(e.vertices[0], e.vertices[1]));
    if (mesh.domain == DomainKind::Disk) out.vertices[m].normalize();
    out.boundary_edges.push_back({{e.vertices[0], m}, e.tag});
    out.boundary_edges.push_back({{m, e.vertices[1]}, e.tag});
  }

  out.h_max = mesh_size(out);
  return out;
}

EdgeCensus census_edges(const Mesh& mesh) {
  std::map<std::pair<int, int>, int> count;
  for (const auto& tri : mesh.triangles) {
    for (int k = 0; k < 3; ++k) ++count[edge_key(tri[k], tri[(k + 1) % 3])];
  }
  EdgeCensus census;
  std::vector<std::pair<int, int>> boundary_from_adjacency;
  for (const auto& [edge, c] : count) {
    if (c == 1) {
      ++census.boundary;
      boundary_from_adjacency.push_back(edge);
    } else if (c == 2) {
      ++census.interior;
    } else {
      ++census.nonmanifold;
    }
  }
  std::vector<std::pair<int, int>> listed;
  listed.reserve(mesh.boundary_edges.size());
  for (const auto& e : mesh.boundary_edges) listed.push_back(edge_key(e.vertices[0], e.vertices[1]));
  std::sort(listed.begin(), listed.end());
  census.boundary_list_consistent = (listed == boundary_from_adjacency);
  return census;
}

double quasiuniformity_ratio(const Mesh& mesh) {
  double min_inradius = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) min_inradius = std::min(min_inradius, mesh.inradius(t));
  return mesh_size(mesh) / min_inradius;
}

void write_mesh_text(const Mesh& mesh, std::ostream& out) {
  out << mesh.num_vertices() << ' ' << mesh.num_triangles() << ' ' << mesh.boundary_edges.size() << '\n';
  for (const auto& p : mesh.vertices) out << format_double(p.x()) << ' ' << format_double(p.y()) << '\n';
  for (const auto& t : mesh.triangles) out << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  for (const auto& e : mesh.boundary_edges) {
    out << e.vertices[0] << ' ' << e.vertices[1] << ' ' << to_string(e.tag) << '\n';
  }
  if (!out) throw IoError("failed to write mesh");
}

Mesh read_mesh_text(std::istream& in) {
  std::size_t nv = 0, nt = 0, ne = 0;
  if (!(in >> nv >> nt >> ne)) throw IoError("malformed mesh header");
  Mesh mesh;
  mesh.vertices.resize(nv);
  mesh.triangles.resize(nt);
  mesh.boundary_edges.resize(ne);
  for (auto& p : mesh.vertices) {
    std::string xs, ys;
    if (!(in >> xs >> ys)) throw IoError("malformed mesh vertex");
    p = Vec2(parse_double(xs), parse_double(ys));
  }
  for (auto& t : mesh.triangles) {
    if (!(in >> t[0] >> t[1] >> t[2])) throw IoError("malformed mesh triangle");
  }
  bool any_outer = false;
  for (auto& e : mesh.boundary_edges) {
    std::string tag;
    if (!(in >> e.vertices[0] >> e.vertices[1] >> tag)) throw IoError("malformed mesh edge");
    e.tag = parse_boundary_tag(tag);
    any_outer = any_outer || e.tag == BoundaryTag::Outer;
  }
  mesh.domain = any_outer ? DomainKind::Disk : DomainKind::Rectangle;
  mesh.h_max = mesh_size(mesh);
  return mesh;
}

}  // namespace graphflow
