#include "graphflow/assembly.hpp"

#include <string>

#include "graphflow/errors.hpp"

namespace graphflow {

namespace {

void scatter(const FeSpace& space, int e, const double (&local)[3][3], double* values) {
  const auto& off = space.value_offsets(e);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) values[off[a * 3 + b]] += local[a][b];
}

}  // namespace

SparseMatrix assemble_weighted_mass(const FeSpace& space, const ScalarField& weight) {
  SparseMatrix m = space.pattern();
  double* values = m.valuePtr();
  for (int e = 0; e < space.num_elements(); ++e) {
    double local[3][3] = {};
    for (int q = 0; q < space.points_per_element(); ++q) {
      const QuadraturePoint qp = space.quadrature_point(e, q);
      const double c = qp.jxw * weight(qp);
      for (int a = 0; a < 3; ++a)
        for (int b = a; b < 3; ++b) local[a][b] += c * qp.shape[a] * qp.shape[b];
    }
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < a; ++b) local[a][b] = local[b][a];
    scatter(space, e, local, values);
  }
  return m;
}

SparseMatrix assemble_weighted_stiffness(const FeSpace& space, const TensorField& coefficient) {
  SparseMatrix m = space.pattern();
  double* values = m.valuePtr();
  for (int e = 0; e < space.num_elements(); ++e) {
    const auto& grad = space.shape_gradients(e);
    double local[3][3] = {};
    for (int q = 0; q < space.points_per_element(); ++q) {
      const QuadraturePoint qp = space.quadrature_point(e, q);
      const Mat2 c = coefficient(qp);
      for (int b = 0; b < 3; ++b) {
        const Vec2 flux = qp.jxw * (c * grad[b]);
        for (int a = 0; a <= b; ++a) local[a][b] += flux.dot(grad[a]);
      }
    }
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < a; ++b) local[a][b] = local[b][a];
    scatter(space, e, local, values);
  }
  return m;
}

Vector assemble_load(const FeSpace& space, const ScalarField& density) {
  Vector b = Vector::Zero(space.num_dofs());
  for (int e = 0; e < space.num_elements(); ++e) {
    const auto& tri = space.element(e);
    for (int q = 0; q < space.points_per_element(); ++q) {
      const QuadraturePoint qp = space.quadrature_point(e, q);
      const double c = qp.jxw * density(qp);
      for (int a = 0; a < 3; ++a) b[tri[a]] += c * qp.shape[a];
    }
  }
  return b;
}

Vector assemble_boundary_load(const FeSpace& space, BoundaryTag tag, const EdgeField& density) {
  const Mesh& mesh = space.mesh();
  if (!mesh.has_tag(tag)) {
    throw ArgumentError("mesh has no boundary edges tagged " + std::string(to_string(tag)));
  }
  const LineRule& rule = gauss_line_rule(3);
  Vector b = Vector::Zero(space.num_dofs());
  for (std::size_t k = 0; k < mesh.boundary_edges.size(); ++k) {
    const BoundaryEdge& edge = mesh.boundary_edges[k];
    if (edge.tag != tag) continue;
    const Vec2& p0 = mesh.vertices[edge.vertices[0]];
    const Vec2& p1 = mesh.vertices[edge.vertices[1]];
    const double length = (p1 - p0).norm();
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const double s = rule.points[q];
      EdgeQuadraturePoint ep{static_cast<int>(k), edge.vertices, (1.0 - s) * p0 + s * p1, {1.0 - s, s},
                             rule.weights[q] * length};
      const double c = ep.jxw * density(ep);
      b[edge.vertices[0]] += c * ep.shape[0];
      b[edge.vertices[1]] += c * ep.shape[1];
    }
  }
  return b;
}

Vector assemble_gradient_load(const FeSpace& space,
                              const std::function<Vec2(const QuadraturePoint&)>& flux) {
  Vector b = Vector::Zero(space.num_dofs());
  for (int e = 0; e < space.num_elements(); ++e) {
    const auto& tri = space.element(e);
    const auto& grad = space.shape_gradients(e);
    for (int q = 0; q < space.points_per_element(); ++q) {
      const QuadraturePoint qp = space.quadrature_point(e, q);
      const Vec2 f = qp.jxw * flux(qp);
      for (int a = 0; a < 3; ++a) b[tri[a]] += f.dot(grad[a]);
    }
  }
  return b;
}

}  // namespace graphflow
