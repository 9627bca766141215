#pragma once

#include <array>
#include <functional>
#include <memory>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "graphflow/mesh.hpp"
#include "graphflow/quadrature.hpp"

namespace graphflow {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor, int>;
using Vector = Eigen::VectorXd;

/// One volume quadrature point of one triangle.
struct QuadraturePoint {
  int element;
  int index;
  Vec2 x;
  std::array<double, 3> shape;  // hat-function values (barycentrics)
  double jxw;                   // weight times |T| / |reference|
};

/// One quadrature point on a tagged boundary edge.
struct EdgeQuadraturePoint {
  int edge;
  std::array<int, 2> vertices;
  Vec2 x;
  std::array<double, 2> shape;
  double jxw;
};

using ScalarField = std::function<double(const QuadraturePoint&)>;
using TensorField = std::function<Mat2(const QuadraturePoint&)>;
using EdgeField = std::function<double(const EdgeQuadraturePoint&)>;

/// Continuous piecewise-linear space on a mesh, with cached element
/// geometry and the shared sparsity pattern of every assembled matrix.
class FeSpace {
 public:
  explicit FeSpace(std::shared_ptr<const Mesh> mesh, int quadrature_degree = 4);

  const Mesh& mesh() const { return *mesh_; }
  const std::shared_ptr<const Mesh>& mesh_ptr() const { return mesh_; }
  int num_dofs() const { return static_cast<int>(mesh_->num_vertices()); }
  int num_elements() const { return static_cast<int>(mesh_->num_triangles()); }
  const QuadratureRule& rule() const { return *rule_; }
  int points_per_element() const { return static_cast<int>(rule_->size()); }

  const std::array<int, 3>& element(int e) const { return mesh_->triangles[e]; }
  double area(int e) const { return areas_[e]; }
  /// Constant gradients of the three hat functions on element e.
  const std::array<Vec2, 3>& shape_gradients(int e) const { return gradients_[e]; }

  QuadraturePoint quadrature_point(int e, int q) const;

  /// Zero-valued matrix carrying the vertex-adjacency sparsity pattern.
  const SparseMatrix& pattern() const { return pattern_; }
  /// Offsets into the pattern's value array for local entry (a, b) at a*3+b.
  const std::array<int, 9>& value_offsets(int e) const { return offsets_[e]; }

 private:
  std::shared_ptr<const Mesh> mesh_;
  const QuadratureRule* rule_;
  std::vector<double> areas_;
  std::vector<std::array<Vec2, 3>> gradients_;
  SparseMatrix pattern_;
  std::vector<std::array<int, 9>> offsets_;
};

/// Nodal vector of a continuous piecewise-linear function.
class FeFunction {
 public:
  explicit FeFunction(std::shared_ptr<const FeSpace> space);
  FeFunction(std::shared_ptr<const FeSpace> space, Vector values);

  static FeFunction interpolate(std::shared_ptr<const FeSpace> space,
                                const std::function<double(const Vec2&)>& f);
  static FeFunction constant(std::shared_ptr<const FeSpace> space, double c);

  const FeSpace& space() const { return *space_; }
  const std::shared_ptr<const FeSpace>& space_ptr() const { return space_; }
  const Vector& values() const { return values_; }
  Vector& values() { return values_; }

  double value(int e, const std::array<double, 3>& shape) const;
  double value(const QuadraturePoint& qp) const { return value(qp.element, qp.shape); }
  Vec2 gradient(int e) const;

 private:
  std::shared_ptr<const FeSpace> space_;
  Vector values_;
};

/// Values stored at every (element, quadrature point) pair.
class QuadratureValues {
 public:
  QuadratureValues(int num_elements, int points_per_element)
      : stride_(points_per_element),
        data_(static_cast<std::size_t>(num_elements) * points_per_element, 0.0) {}

  double& at(int e, int q) { return data_[static_cast<std::size_t>(e) * stride_ + q]; }
  double at(int e, int q) const { return data_[static_cast<std::size_t>(e) * stride_ + q]; }
  double operator()(const QuadraturePoint& qp) const { return at(qp.element, qp.index); }
  const std::vector<double>& data() const { return data_; }

 private:
  int stride_;
  std::vector<double> data_;
};

/// Squared L2 error and squared H1-seminorm error against an exact function.
struct SquaredErrors {
  double l2 = 0.0;
  double h1 = 0.0;
};

SquaredErrors squared_errors(const FeFunction& fh, const std::function<double(const Vec2&)>& exact,
                             const std::function<Vec2(const Vec2&)>& exact_gradient);

double l2_norm_squared(const FeFunction& fh);

}  // namespace graphflow
