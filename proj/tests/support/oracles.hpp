// Independent reference computations for the test suites. Nothing here calls
// into the assembly, quadrature or geometry code of the library; only mesh
// data, FE coefficient vectors and the problems' pointwise callables are used.
#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <istream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include <graphflow/mesh.hpp>
#include <graphflow/problems.hpp>

namespace oracle {

using graphflow::Mat2;
using graphflow::Mesh;
using graphflow::Vec2;

struct TrianglePoint {
  std::array<double, 3> bary;
  double weight;  // fraction of the triangle area
};

// Dunavant's 6-point degree-4 rule, constants as tabulated in the literature.
inline const std::vector<TrianglePoint>& degree4_rule() {
  static const std::vector<TrianglePoint> rule = [] {
    const double a1 = 0.445948490915965, w1 = 0.223381589678011;
    const double a2 = 0.091576213509771, w2 = 0.109951743655322;
    std::vector<TrianglePoint> r;
    for (auto [a, w] : {std::pair{a1, w1}, std::pair{a2, w2}}) {
      const double b = 1.0 - 2.0 * a;
      r.push_back({{b, a, a}, w});
      r.push_back({{a, b, a}, w});
      r.push_back({{a, a, b}, w});
    }
    return r;
  }();
  return rule;
}

// Radau-type 7-point degree-5 rule.
inline const std::vector<TrianglePoint>& degree5_rule() {
  static const std::vector<TrianglePoint> rule = [] {
    const double s = std::sqrt(15.0);
    const double a = (6.0 - s) / 21.0, wa = (155.0 - s) / 1200.0;
    const double b = (6.0 + s) / 21.0, wb = (155.0 + s) / 1200.0;
    std::vector<TrianglePoint> r{{{1.0 / 3, 1.0 / 3, 1.0 / 3}, 9.0 / 40.0}};
    for (auto [c, w] : {std::pair{a, wa}, std::pair{b, wb}}) {
      r.push_back({{1.0 - 2.0 * c, c, c}, w});
      r.push_back({{c, 1.0 - 2.0 * c, c}, w});
      r.push_back({{c, c, 1.0 - 2.0 * c}, w});
    }
    return r;
  }();
  return rule;
}

struct Element {
  std::array<int, 3> v;
  std::array<Vec2, 3> x;
  double area;
  std::array<Vec2, 3> grad;  // gradients of the barycentric coordinates

  Vec2 point(const std::array<double, 3>& b) const { return b[0] * x[0] + b[1] * x[1] + b[2] * x[2]; }
  std::array<double, 3> bary(const Vec2& p) const {
    std::array<double, 3> l{};
    for (int i = 0; i < 3; ++i) {
      const Vec2& a = x[(i + 1) % 3];
      const Vec2& b = x[(i + 2) % 3];
      l[i] = 0.5 * ((b - a).x() * (p - a).y() - (b - a).y() * (p - a).x()) / area;
    }
    return l;
  }
};

inline Element element(const Mesh& mesh, std::size_t t) {
  Element e;
  e.v = mesh.triangles[t];
  for (int i = 0; i < 3; ++i) e.x[i] = mesh.vertices[e.v[i]];
  const Vec2 d1 = e.x[1] - e.x[0], d2 = e.x[2] - e.x[0];
  e.area = 0.5 * (d1.x() * d2.y() - d1.y() * d2.x());
  for (int i = 0; i < 3; ++i) {
    const Vec2& a = e.x[(i + 1) % 3];
    const Vec2& b = e.x[(i + 2) % 3];
    e.grad[i] = Vec2(a.y() - b.y(), b.x() - a.x()) / (2.0 * e.area);
  }
  return e;
}

inline Vec2 p1_gradient(const Element& e, const Eigen::VectorXd& values) {
  return values[e.v[0]] * e.grad[0] + values[e.v[1]] * e.grad[1] + values[e.v[2]] * e.grad[2];
}

inline double p1_value(const Element& e, const Eigen::VectorXd& values, const std::array<double, 3>& b) {
  return values[e.v[0]] * b[0] + values[e.v[1]] * b[1] + values[e.v[2]] * b[2];
}

inline double q(const Vec2& p) { return std::sqrt(1.0 + p.squaredNorm()); }

inline Mat2 e_matrix(const Vec2& p) {
  const double qq = q(p);
  return qq * Mat2::Identity() - (p * p.transpose()) / qq;
}

/// Integral of f over the mesh, each triangle split into n^2 congruent
/// pieces and each piece integrated with the degree-5 rule.
inline double integrate_subdivided(const Mesh& mesh, const std::function<double(std::size_t, const Vec2&)>& f,
                                   int n) {
  double total = 0.0;
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const Element e = element(mesh, t);
    auto node = [&](int i, int j) -> Vec2 {
      return e.x[0] + (double(i) / n) * (e.x[1] - e.x[0]) + (double(j) / n) * (e.x[2] - e.x[0]);
    };
    const double piece = e.area / (n * n);
    auto add = [&](const Vec2& a, const Vec2& b, const Vec2& c) {
      for (const auto& qp : degree5_rule()) {
        total += piece * qp.weight * f(t, qp.bary[0] * a + qp.bary[1] * b + qp.bary[2] * c);
      }
    };
    for (int i = 0; i < n; ++i) {
      for (int j = 0; i + j < n; ++j) {
        add(node(i, j), node(i + 1, j), node(i, j + 1));
        if (i + j < n - 1) add(node(i + 1, j), node(i + 1, j + 1), node(i, j + 1));
      }
    }
  }
  return total;
}

// ---------------------------------------------------------------------------
// Finite differences

inline constexpr double kFdStep = 1e-5;

inline Vec2 fd_gradient(const std::function<double(const Vec2&)>& f, const Vec2& x, double h = kFdStep) {
  return Vec2((f(x + Vec2(h, 0)) - f(x - Vec2(h, 0))) / (2 * h), (f(x + Vec2(0, h)) - f(x - Vec2(0, h))) / (2 * h));
}

inline Mat2 fd_jacobian(const std::function<Vec2(const Vec2&)>& g, const Vec2& x, double h = kFdStep) {
  Mat2 j;
  j.col(0) = (g(x + Vec2(h, 0)) - g(x - Vec2(h, 0))) / (2 * h);
  j.col(1) = (g(x + Vec2(0, h)) - g(x - Vec2(0, h))) / (2 * h);
  return j;
}

inline double fd_divergence(const std::function<Vec2(const Vec2&)>& g, const Vec2& x, double h = kFdStep) {
  return fd_jacobian(g, x, h).trace();
}

inline double fd_time(const std::function<double(double)>& f, double t, double h = kFdStep) {
  return (f(t + h) - f(t - h)) / (2 * h);
}

/// Strong residuals in divergence form with every divergence taken by
/// central differences of the analytic fluxes:
///   u_t/Q - div(grad u/Q) - f(w) - F_u,
///   w_t - div(E grad w)/Q - V div(w grad u/Q) - g(V, w) - F_w.
inline std::pair<double, double> fd_strong_residuals(const graphflow::ProblemSpec& p, const Vec2& x, double t) {
  const auto& ex = *p.exact;
  auto grad_u = [&](const Vec2& y) { return ex.u.gradient(y, t); };
  const Vec2 gu = grad_u(x);
  const double qq = q(gu);
  const double u_t = fd_time([&](double s) { return ex.u.value(x, s); }, t);
  const double w_t = fd_time([&](double s) { return ex.w.value(x, s); }, t);
  const double w = ex.w.value(x, t);
  const double v = u_t / qq;

  const double curvature = fd_divergence([&](const Vec2& y) -> Vec2 { return grad_u(y) / q(grad_u(y)); }, x);
  const double diffusion =
      fd_divergence([&](const Vec2& y) -> Vec2 { return e_matrix(grad_u(y)) * ex.w.gradient(y, t); }, x);
  const double transport =
      fd_divergence([&](const Vec2& y) -> Vec2 { return ex.w.value(y, t) * grad_u(y) / q(grad_u(y)); }, x);

  return {v - curvature - p.f(w) - ex.forcing_u(x, t),
          w_t - diffusion / qq - v * transport - p.g(v, w) - ex.forcing_w(x, t)};
}

// ---------------------------------------------------------------------------
// Dense re-assembly of the two step systems

struct DenseSystem {
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
  std::vector<bool> constrained;
};

/// ||(A x - b)_free|| / ||(b - A x_constrained)_free||.
inline double relative_residual(const DenseSystem& s, const Eigen::VectorXd& x) {
  Eigen::VectorXd xc = x;
  for (int i = 0; i < x.size(); ++i) {
    if (!s.constrained[i]) xc[i] = 0.0;
  }
  const Eigen::VectorXd r = s.a * x - s.b;
  const Eigen::VectorXd rhs = s.b - s.a * xc;
  double rn = 0.0, bn = 0.0;
  for (int i = 0; i < x.size(); ++i) {
    if (s.constrained[i]) continue;
    rn += r[i] * r[i];
    bn += rhs[i] * rhs[i];
  }
  return std::sqrt(rn) / std::sqrt(bn);
}

inline std::vector<bool> vertex_flags(const Mesh& mesh, const std::vector<int>& vertices) {
  std::vector<bool> flags(mesh.num_vertices(), false);
  for (int v : vertices) flags[v] = true;
  return flags;
}

/// Graph step: (1/tau) M_{1/Q(u_old)} + K_{I/Q(u_old)}, load from f(w_old),
/// manufactured forcing and contact-angle boundary term.
inline DenseSystem graph_system(const Mesh& mesh, const graphflow::ProblemSpec& p, const Eigen::VectorXd& u_old,
                                const Eigen::VectorXd& w_old, double tau, double t_next) {
  const int n = static_cast<int>(mesh.num_vertices());
  DenseSystem s{Eigen::MatrixXd::Zero(n, n), Eigen::VectorXd::Zero(n), std::vector<bool>(n, false)};
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const Element e = element(mesh, t);
    const double inv_q = 1.0 / q(p1_gradient(e, u_old));
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const double mass = e.area / 12.0 * (i == j ? 2.0 : 1.0);
        s.a(e.v[i], e.v[j]) += inv_q * (mass / tau + e.area * e.grad[i].dot(e.grad[j]));
        s.b[e.v[i]] += inv_q * mass / tau * u_old[e.v[j]];
      }
    }
    for (const auto& qp : degree4_rule()) {
      const Vec2 x = e.point(qp.bary);
      double density = p.f(p1_value(e, w_old, qp.bary));
      if (p.exact) density += p.exact->forcing_u(x, t_next);
      for (int i = 0; i < 3; ++i) s.b[e.v[i]] += e.area * qp.weight * density * qp.bary[i];
    }
  }
  if (p.graph_bc.kind == graphflow::GraphBoundaryKind::ContactAngle) {
    const double c = p.graph_bc.cos_angle(t_next);
    for (const auto& edge : mesh.boundary_edges) {
      const double len = (mesh.vertices[edge.vertices[0]] - mesh.vertices[edge.vertices[1]]).norm();
      for (int v : edge.vertices) s.b[v] -= 0.5 * c * len;
    }
  }
  if (p.graph_bc.kind == graphflow::GraphBoundaryKind::Dirichlet) {
    s.constrained = vertex_flags(mesh, mesh.boundary_vertices());
  }
  return s;
}

/// Surface step: (1/tau) M_{Q(u_new)} + K_{E(grad u_new)}, with transport,
/// reaction and manufactured loads, Dirichlet rows on the problem's tag.
inline DenseSystem surface_system(const Mesh& mesh, const graphflow::ProblemSpec& p, const Eigen::VectorXd& u_old,
                                  const Eigen::VectorXd& w_old, const Eigen::VectorXd& u_new, double tau,
                                  double t_next) {
  const int n = static_cast<int>(mesh.num_vertices());
  DenseSystem s{Eigen::MatrixXd::Zero(n, n), Eigen::VectorXd::Zero(n), std::vector<bool>(n, false)};
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const Element e = element(mesh, t);
    const Vec2 p_new = p1_gradient(e, u_new);
    const double q_new = q(p_new);
    const double q_old = q(p1_gradient(e, u_old));
    const Mat2 em = e_matrix(p_new);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const double mass = e.area / 12.0 * (i == j ? 2.0 : 1.0);
        s.a(e.v[i], e.v[j]) += q_new * mass / tau + e.area * e.grad[i].dot(em * e.grad[j]);
        s.b[e.v[i]] += q_old * mass / tau * w_old[e.v[j]];
      }
    }
    for (const auto& qp : degree4_rule()) {
      const Vec2 x = e.point(qp.bary);
      const double wq = p1_value(e, w_old, qp.bary);
      const double v = (p1_value(e, u_new, qp.bary) - p1_value(e, u_old, qp.bary)) / (tau * q_new);
      double density = p.g(v, wq) * q_new;
      if (p.exact) density += p.exact->forcing_w(x, t_next) * q(p.exact->u.gradient(x, t_next));
      for (int i = 0; i < 3; ++i) {
        s.b[e.v[i]] += e.area * qp.weight * (density * qp.bary[i] - v * wq * p_new.dot(e.grad[i]));
      }
    }
  }
  s.constrained = vertex_flags(mesh, mesh.boundary_vertices(p.w_bc.dirichlet_tag));
  return s;
}

// ---------------------------------------------------------------------------
// Minimal legacy-VTK reader (ASCII, unstructured grid, point scalars)

struct VtkData {
  std::string title;
  std::vector<std::array<double, 3>> points;
  std::vector<std::vector<int>> cells;
  std::vector<int> cell_types;
  std::map<std::string, std::vector<double>> scalars;
};

inline VtkData read_vtk(std::istream& in) {
  auto fail = [](const std::string& what) { throw std::runtime_error("vtk: " + what); };
  VtkData d;
  std::string line;
  if (!std::getline(in, line) || line.rfind("# vtk DataFile Version", 0) != 0) fail("missing version line");
  if (!std::getline(in, d.title)) fail("missing title");
  std::string word;
  if (!(in >> word) || word != "ASCII") fail("not ASCII");
  if (!(in >> word >> word) || word != "UNSTRUCTURED_GRID") fail("not an unstructured grid");
  std::size_t n = 0, total = 0;
  while (in >> word) {
    if (word == "POINTS") {
      in >> n >> word;
      d.points.resize(n);
      for (auto& p : d.points) in >> p[0] >> p[1] >> p[2];
    } else if (word == "CELLS") {
      in >> n >> total;
      d.cells.resize(n);
      for (auto& c : d.cells) {
        std::size_t k = 0;
        in >> k;
        c.resize(k);
        for (auto& v : c) in >> v;
      }
    } else if (word == "CELL_TYPES") {
      in >> n;
      d.cell_types.resize(n);
      for (auto& c : d.cell_types) in >> c;
    } else if (word == "POINT_DATA") {
      in >> n;
    } else if (word == "SCALARS") {
      std::string name, type;
      in >> name >> type;
      std::string rest;
      std::getline(in, rest);
      in >> word >> word;  // LOOKUP_TABLE default
      if (word != "default") fail("expected default lookup table");
      auto& values = d.scalars[name];
      values.resize(n);
      for (auto& v : values) in >> v;
    } else {
      fail("unexpected keyword " + word);
    }
    if (!in) fail("truncated after " + word);
  }
  return d;
}

}  // namespace oracle
