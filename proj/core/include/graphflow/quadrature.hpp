#pragma once

#include <array>
#include <vector>

namespace graphflow {

/// Rule on the reference triangle {(0,0),(1,0),(0,1)}.
///
/// Points are barycentric (l0, l1, l2) with reference coordinates
/// (x, y) = (l1, l2); weights sum to the reference area 1/2.
struct QuadratureRule {
  int degree = 0;
  std::vector<std::array<double, 3>> points;
  std::vector<double> weights;

  std::size_t size() const { return weights.size(); }
};

/// Symmetric positive-weight rule exact for polynomials up to `degree`.
/// Supported degrees are 1..4; degrees 3 and 4 share the six-point rule.
const QuadratureRule& quadrature(int degree);

/// Gauss-Legendre rule on [0,1] for boundary edges (weights sum to 1).
struct LineRule {
  std::vector<double> points;
  std::vector<double> weights;
};
const LineRule& gauss_line_rule(int num_points);

}  // namespace graphflow
