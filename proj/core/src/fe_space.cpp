#include "graphflow/fe_space.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "graphflow/errors.hpp"

namespace graphflow {

FeSpace::FeSpace(std::shared_ptr<const Mesh> mesh, int quadrature_degree)
    : mesh_(std::move(mesh)), rule_(&quadrature(quadrature_degree)) {
  if (!mesh_ || mesh_->num_triangles() == 0) throw ArgumentError("FeSpace requires a nonempty mesh");

  const int ne = num_elements();
  areas_.resize(ne);
  gradients_.resize(ne);
  for (int e = 0; e < ne; ++e) {
    const auto& tri = mesh_->triangles[e];
    const Vec2& p0 = mesh_->vertices[tri[0]];
    const Vec2& p1 = mesh_->vertices[tri[1]];
    const Vec2& p2 = mesh_->vertices[tri[2]];
    const double twice_area = (p1 - p0).x() * (p2 - p0).y() - (p1 - p0).y() * (p2 - p0).x();
    if (!(twice_area > 0.0)) throw ArgumentError("mesh has a non-positively oriented triangle");
    areas_[e] = 0.5 * twice_area;
    // grad lambda_i = rot(opposite edge) / (2|T|)
    gradients_[e][0] = Vec2(p1.y() - p2.y(), p2.x() - p1.x()) / twice_area;
    gradients_[e][1] = Vec2(p2.y() - p0.y(), p0.x() - p2.x()) / twice_area;
    gradients_[e][2] = Vec2(p0.y() - p1.y(), p1.x() - p0.x()) / twice_area;
  }

  std::vector<Eigen::Triplet<double, int>> triplets;
  triplets.reserve(static_cast<std::size_t>(ne) * 9);
  for (int e = 0; e < ne; ++e) {
    const auto& tri = mesh_->triangles[e];
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) triplets.emplace_back(tri[a], tri[b], 0.0);
  }
  pattern_.resize(num_dofs(), num_dofs());
  pattern_.setFromTriplets(triplets.begin(), triplets.end());
  pattern_.makeCompressed();

  const int* outer = pattern_.outerIndexPtr();
  const int* inner = pattern_.innerIndexPtr();
  offsets_.resize(ne);
  for (int e = 0; e < ne; ++e) {
    const auto& tri = mesh_->triangles[e];
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        const int* first = inner + outer[tri[a]];
        const int* last = inner + outer[tri[a] + 1];
        const int* pos = std::lower_bound(first, last, tri[b]);
        offsets_[e][a * 3 + b] = static_cast<int>(pos - inner);
      }
    }
  }
}

QuadraturePoint FeSpace::quadrature_point(int e, int q) const {
  const auto& tri = mesh_->triangles[e];
  const auto& lam = rule_->points[q];
  const Vec2 x = lam[0] * mesh_->vertices[tri[0]] + lam[1] * mesh_->vertices[tri[1]] +
                 lam[2] * mesh_->vertices[tri[2]];
  return {e, q, x, lam, rule_->weights[q] * 2.0 * areas_[e]};
}

FeFunction::FeFunction(std::shared_ptr<const FeSpace> space)
    : space_(std::move(space)), values_(Vector::Zero(space_->num_dofs())) {}

FeFunction::FeFunction(std::shared_ptr<const FeSpace> space, Vector values)
    : space_(std::move(space)), values_(std::move(values)) {
  if (values_.size() != space_->num_dofs()) throw ArgumentError("FeFunction size does not match its space");
}

FeFunction FeFunction::interpolate(std::shared_ptr<const FeSpace> space,
                                   const std::function<double(const Vec2&)>& f) {
  Vector v(space->num_dofs());
  const auto& verts = space->mesh().vertices;
  for (int i = 0; i < v.size(); ++i) v[i] = f(verts[i]);
  return FeFunction(std::move(space), std::move(v));
}

FeFunction FeFunction::constant(std::shared_ptr<const FeSpace> space, double c) {
  const int n = space->num_dofs();
  return FeFunction(std::move(space), Vector::Constant(n, c));
}

double FeFunction::value(int e, const std::array<double, 3>& shape) const {
  const auto& tri = space_->element(e);
  return shape[0] * values_[tri[0]] + shape[1] * values_[tri[1]] + shape[2] * values_[tri[2]];
}

Vec2 FeFunction::gradient(int e) const {
  const auto& tri = space_->element(e);
  const auto& g = space_->shape_gradients(e);
  return values_[tri[0]] * g[0] + values_[tri[1]] * g[1] + values_[tri[2]] * g[2];
}

SquaredErrors squared_errors(const FeFunction& fh, const std::function<double(const Vec2&)>& exact,
                             const std::function<Vec2(const Vec2&)>& exact_gradient) {
  const FeSpace& space = fh.space();
  SquaredErrors err;
  for (int e = 0; e < space.num_elements(); ++e) {
    const Vec2 gh = fh.gradient(e);
    for (int q = 0; q < space.points_per_element(); ++q) {
      const QuadraturePoint qp = space.quadrature_point(e, q);
      const double d = fh.value(qp) - exact(qp.x);
      err.l2 += qp.jxw * d * d;
      if (exact_gradient) err.h1 += qp.jxw * (gh - exact_gradient(qp.x)).squaredNorm();
    }
  }
  return err;
}

double l2_norm_squared(const FeFunction& fh) {
  const FeSpace& space = fh.space();
  double s = 0.0;
  for (int e = 0; e < space.num_elements(); ++e) {
    for (int q = 0; q < space.points_per_element(); ++q) {
      const QuadraturePoint qp = space.quadrature_point(e, q);
      const double v = fh.value(qp);
      s += qp.jxw * v * v;
    }
  }
  return s;
}

}  // namespace graphflow
