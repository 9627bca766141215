#include "graphflow/geometry.hpp"

#include <cmath>

#include "graphflow/errors.hpp"

namespace graphflow {

double q_of(const Vec2& p) { return std::sqrt(1.0 + p.squaredNorm()); }

std::array<double, 3> nu_of(const Vec2& p) {
  const double q = q_of(p);
  return {-p.x() / q, -p.y() / q, 1.0 / q};
}

Mat2 e_matrix(const Vec2& p) {
  const double q = q_of(p);
  Mat2 e;
  e(0, 0) = q - p.x() * p.x() / q;
  e(1, 1) = q - p.y() * p.y() / q;
  e(0, 1) = e(1, 0) = -p.x() * p.y() / q;
  return e;
}

std::vector<double> element_q(const FeFunction& u) {
  const int ne = u.space().num_elements();
  std::vector<double> q(ne);
  for (int e = 0; e < ne; ++e) q[e] = q_of(u.gradient(e));
  return q;
}

QuadratureValues discrete_velocity(const FeFunction& u_new, const FeFunction& u_old, double tau) {
  if (!(tau > 0.0)) throw ArgumentError("time step must be positive");
  if (&u_new.space() != &u_old.space()) throw ArgumentError("velocity needs functions on one space");
  const FeSpace& space = u_new.space();
  QuadratureValues v(space.num_elements(), space.points_per_element());
  for (int e = 0; e < space.num_elements(); ++e) {
    const double scale = 1.0 / (tau * q_of(u_new.gradient(e)));
    for (int q = 0; q < space.points_per_element(); ++q) {
      const auto& shape = space.rule().points[q];
      v.at(e, q) = (u_new.value(e, shape) - u_old.value(e, shape)) * scale;
    }
  }
  return v;
}

}  // namespace graphflow
