#pragma once

#include <array>

#include "graphflow/fe_space.hpp"

namespace graphflow {

/// Area element sqrt(1 + |p|^2) of a graph with slope p.
double q_of(const Vec2& p);

/// Upward unit normal (-p, 1) / Q(p).
std::array<double, 3> nu_of(const Vec2& p);

/// Anisotropy matrix Q(p) (I - p p^T / Q(p)^2), i.e. Q times the inverse
/// metric of the graph parametrisation. Eigenvalues are 1/Q along p and Q
/// across p.
Mat2 e_matrix(const Vec2& p);

/// Normal velocity of the discrete graph at every volume quadrature point:
/// (u_new - u_old) / (tau Q(grad u_new |_T)).
QuadratureValues discrete_velocity(const FeFunction& u_new, const FeFunction& u_old, double tau);

/// Per-element Q(grad u_h), indexed by element.
std::vector<double> element_q(const FeFunction& u);

}  // namespace graphflow
