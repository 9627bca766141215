#pragma once

#include "graphflow/fe_space.hpp"

namespace graphflow {

// Element contributions are accumulated in triangle order with mirrored
// local matrices, so every assembled matrix is bitwise symmetric.

/// M_ij = sum_T sum_q jxw c(x_q) phi_i(x_q) phi_j(x_q)
SparseMatrix assemble_weighted_mass(const FeSpace& space, const ScalarField& weight);

/// A_ij = sum_T sum_q jxw (C(x_q) grad phi_j) . grad phi_i, C symmetric.
SparseMatrix assemble_weighted_stiffness(const FeSpace& space, const TensorField& coefficient);

/// b_i = sum_T sum_q jxw d(x_q) phi_i(x_q)
Vector assemble_load(const FeSpace& space, const ScalarField& density);

/// Load along edges tagged `tag`, three-point Gauss on each edge.
/// Throws ArgumentError if the mesh carries no edge with that tag.
Vector assemble_boundary_load(const FeSpace& space, BoundaryTag tag, const EdgeField& density);

/// Load of a vector flux against test gradients: b_i = sum jxw F(x_q) . grad phi_i.
Vector assemble_gradient_load(const FeSpace& space,
                              const std::function<Vec2(const QuadraturePoint&)>& flux);

}  // namespace graphflow
