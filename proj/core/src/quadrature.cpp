#include "graphflow/quadrature.hpp"

#include <cmath>
#include <string>

#include "graphflow/errors.hpp"

namespace graphflow {

namespace {

QuadratureRule make_centroid_rule() {
  return {1, {{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}}, {0.5}};
}

QuadratureRule make_three_point_rule() {
  QuadratureRule r;
  r.degree = 2;
  const double a = 1.0 / 6.0, b = 2.0 / 3.0;
  r.points = {{b, a, a}, {a, b, a}, {a, a, b}};
  r.weights = {1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0};
  return r;
}

// Dunavant (1985), degree 4, six points.
QuadratureRule make_six_point_rule(int degree) {
  QuadratureRule r;
  r.degree = degree;
  const double a1 = 0.445948490915964886318329253883, w1 = 0.223381589678011465944725286609;
  const double a2 = 0.091576213509770743459571463402, w2 = 0.109951743655321867388608046725;
  const double b1 = 1.0 - 2.0 * a1, b2 = 1.0 - 2.0 * a2;
  r.points = {{b1, a1, a1}, {a1, b1, a1}, {a1, a1, b1}, {b2, a2, a2}, {a2, b2, a2}, {a2, a2, b2}};
  r.weights = {0.5 * w1, 0.5 * w1, 0.5 * w1, 0.5 * w2, 0.5 * w2, 0.5 * w2};
  return r;
}

}  // namespace

const QuadratureRule& quadrature(int degree) {
  static const QuadratureRule rules[] = {make_centroid_rule(), make_three_point_rule(),
                                         make_six_point_rule(3), make_six_point_rule(4)};
  if (degree < 1 || degree > 4) {
    throw ArgumentError("unsupported quadrature degree " + std::to_string(degree));
  }
  return rules[degree - 1];
}

const LineRule& gauss_line_rule(int num_points) {
  static const LineRule two{{0.5 - 0.5 / std::sqrt(3.0), 0.5 + 0.5 / std::sqrt(3.0)}, {0.5, 0.5}};
  static const LineRule three{{0.5 - 0.5 * std::sqrt(0.6), 0.5, 0.5 + 0.5 * std::sqrt(0.6)},
                              {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0}};
  if (num_points == 2) return two;
  if (num_points == 3) return three;
  throw ArgumentError("unsupported line rule size " + std::to_string(num_points));
}

}  // namespace graphflow
