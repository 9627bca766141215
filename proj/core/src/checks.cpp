#include "graphflow/checks.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "graphflow/analysis.hpp"
#include "graphflow/assembly.hpp"
#include "graphflow/geometry.hpp"
#include "graphflow/problems.hpp"
#include "graphflow/scheme.hpp"
#include "text_format.hpp"

namespace graphflow {

namespace {

std::string num(double v) { return format_double(v, 4); }

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

bool bitwise_symmetric(const SparseMatrix& a) {
  const SparseMatrix at = a.transpose();
  if (at.nonZeros() != a.nonZeros()) return false;
  for (int r = 0; r < a.outerSize(); ++r) {
    SparseMatrix::InnerIterator i1(a, r), i2(at, r);
    for (; i1 && i2; ++i1, ++i2) {
      if (i1.col() != i2.col() || i1.value() != i2.value()) return false;
    }
    if (i1 || i2) return false;
  }
  return true;
}

double min_eigenvalue(const SparseMatrix& a) {
  const Eigen::MatrixXd dense(a);
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(dense, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
}

void mesh_checks(std::vector<CheckResult>& out) {
  double worst_ratio = 0.0;
  bool conforming = true;
  bool snapped = true;
  for (int level = 0; level <= 5; ++level) {
    const Mesh mesh = generate_disk_mesh(level);
    const EdgeCensus c = census_edges(mesh);
    conforming = conforming && c.nonmanifold == 0 && c.boundary_list_consistent;
    for (std::size_t t = 0; t < mesh.num_triangles(); ++t) conforming = conforming && mesh.signed_area(t) > 0.0;
    for (int v : mesh.boundary_vertices()) snapped = snapped && std::abs(mesh.vertices[v].norm() - 1.0) <= 1e-12;
    worst_ratio = std::max(worst_ratio, quasiuniformity_ratio(mesh));
  }
  out.push_back({"mesh", "disk conformity, levels 0-5", conforming, ""});
  out.push_back({"mesh", "disk boundary on unit circle", snapped, ""});
  out.push_back({"mesh", "quasiuniformity ratio <= 10", worst_ratio <= 10.0, "worst " + num(worst_ratio)});

  const Mesh rect = generate_rect_mesh({-2.0, 2.0}, {-2.0, 2.0}, 0.25);
  const EdgeCensus c = census_edges(rect);
  out.push_back({"mesh", "rectangle conformity", c.nonmanifold == 0 && c.boundary_list_consistent, ""});

  const Mesh a = generate_disk_mesh(3), b = generate_disk_mesh(3);
  bool same = a.vertices.size() == b.vertices.size();
  for (std::size_t i = 0; same && i < a.vertices.size(); ++i) same = a.vertices[i] == b.vertices[i];
  out.push_back({"mesh", "deterministic generation", same, ""});
}

void fem_checks(std::vector<CheckResult>& out) {
  const QuadratureRule& rule = quadrature(4);
  double worst = 0.0;
  for (int i = 0; i <= 4; ++i) {
    for (int j = 0; i + j <= 4; ++j) {
      double s = 0.0;
      for (std::size_t q = 0; q < rule.size(); ++q) {
        s += rule.weights[q] * std::pow(rule.points[q][1], i) * std::pow(rule.points[q][2], j);
      }
      worst = std::max(worst, std::abs(s - factorial(i) * factorial(j) / factorial(i + j + 2)));
    }
  }
  out.push_back({"fem", "degree-4 quadrature exactness", worst <= 1e-14, "max error " + num(worst)});

  auto space = std::make_shared<const FeSpace>(std::make_shared<const Mesh>(generate_disk_mesh(0)));
  const FeFunction u = FeFunction::interpolate(space, [](const Vec2& x) { return std::sin(3.0 * x.x()) + x.y() * x.y(); });
  const SparseMatrix k = assemble_weighted_stiffness(*space, [&](const QuadraturePoint& qp) { return e_matrix(u.gradient(qp.element)); });
  const SparseMatrix m = assemble_weighted_mass(*space, [&](const QuadraturePoint& qp) { return 1.0 / q_of(u.gradient(qp.element)); });
  out.push_back({"fem", "assembled matrices bitwise symmetric", bitwise_symmetric(k) && bitwise_symmetric(m), ""});

  const double kernel = (k * Vector::Ones(space->num_dofs())).cwiseAbs().maxCoeff();
  out.push_back({"fem", "E-stiffness annihilates constants", kernel <= 1e-12, "max |K 1| " + num(kernel)});

  const double tau = 1e-2;
  const SparseMatrix graph = (1.0 / tau) * m + k;
  const double lmin = min_eigenvalue(graph);
  out.push_back({"fem", "step matrix SPD (dense eigenvalues)", lmin > 0.0, "min eigenvalue " + num(lmin)});
}

void geometry_checks(std::vector<CheckResult>& out) {
  std::mt19937_64 rng(20240917);
  std::normal_distribution<double> normal(0.0, 3.0);
  bool unit = true, q_bound = true, det_one = true, coercive = true;
  for (int n = 0; n < 10000; ++n) {
    const Vec2 p(normal(rng), normal(rng));
    const auto nu = nu_of(p);
    unit = unit && std::abs(std::sqrt(nu[0] * nu[0] + nu[1] * nu[1] + nu[2] * nu[2]) - 1.0) <= 1e-15;
    const double q = q_of(p);
    q_bound = q_bound && q >= 1.0 && q >= p.norm();
    const Mat2 e = e_matrix(p);
    det_one = det_one && std::abs(e.determinant() - 1.0) <= 1e-12 * std::max(1.0, q * q);
    const Vec2 xi = Vec2(normal(rng), normal(rng)).normalized();
    coercive = coercive && xi.dot(e * xi) - 1.0 / q >= -1e-12;
  }
  out.push_back({"geometry", "|nu(p)| = 1", unit, ""});
  out.push_back({"geometry", "Q(p) >= max(1, |p|)", q_bound, ""});
  out.push_back({"geometry", "det E(p) = 1", det_one, ""});
  out.push_back({"geometry", "E(p) xi.xi >= |xi|^2 / Q(p)", coercive, ""});
}

void problem_checks(std::vector<CheckResult>& out) {
  for (const ProblemSpec& p : {example1(), example2()}) {
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
      for (int j = 0; j < 10; ++j) {
        const Vec2 x(-0.7 + 1.4 * i / 9.0, -0.7 + 1.4 * j / 9.0);
        for (int k = 0; k < 5; ++k) {
          const auto r = forcing_residual(p, x, 0.1 * k / 4.0);
          worst = std::max({worst, std::abs(r.graph), std::abs(r.surface)});
        }
      }
    }
    out.push_back({"problems", p.key + " strong residual grid", worst <= 1e-6, "max " + num(worst)});
  }
  const ProblemSpec ex2 = example2();
  double normal_derivative = 0.0;
  for (int k = 0; k < 64; ++k) {
    const double a = 2.0 * 3.14159265358979323846 * k / 64.0;
    const Vec2 n(std::cos(a), std::sin(a));
    normal_derivative = std::max(normal_derivative, std::abs(ex2.u0.gradient(n).dot(n)));
  }
  out.push_back({"problems", "example2 u0 has zero normal derivative", normal_derivative <= 1e-12, ""});

  bool homogeneous = true;
  for (const ProblemSpec& p : {example1(), contact_angle_problem(), digm_planar()}) {
    for (double r : {-2.5, -0.3, 0.0, 0.7, 4.0}) {
      for (double lambda : {0.5, 2.0, 7.0}) homogeneous = homogeneous && std::abs(p.g.alpha(lambda * r) - lambda * p.g.alpha(r)) <= 1e-14;
    }
  }
  out.push_back({"problems", "alpha positively homogeneous", homogeneous, ""});
}

void scheme_checks(std::vector<CheckResult>& out) {
  auto space = std::make_shared<const FeSpace>(std::make_shared<const Mesh>(generate_disk_mesh(1)));
  ProblemSpec flat = example2();
  flat.exact.reset();
  flat.f = [](double) { return 0.0; };
  flat.g = {0.0, 0.0, [](double) { return 0.0; }, [](double) { return 0.0; }};
  flat.w_bc.value = [](const Vec2&, double) { return 0.0; };
  flat.u0 = {[](const Vec2&) { return 0.3; }, [](const Vec2&) -> Vec2 { return Vec2::Zero(); }};
  flat.w0 = {[](const Vec2& x) { return 1.0 - x.squaredNorm(); }, [](const Vec2& x) -> Vec2 { return -2.0 * x; }};

  SchemeConfig config;
  config.tau = 1e-3;
  config.final_time = 20 * config.tau;
  double drift = 0.0;
  bool decays = true;
  double previous = std::numeric_limits<double>::infinity();
  run(flat, space, config,
      {[&](const State& s) {
        drift = std::max(drift, (s.u.values().array() - 0.3).abs().maxCoeff());
        const double norm = std::sqrt(l2_norm_squared(s.w));
        decays = decays && norm <= previous + 1e-12;
        previous = norm;
      }});
  out.push_back({"scheme", "flat graph stays stationary", drift <= 20 * 1e-10, "max drift " + num(drift)});
  out.push_back({"scheme", "heat-limit decay of |w|", decays, ""});
}

void analysis_checks(std::vector<CheckResult>& out) {
  const auto a = eoc(0.2, 0.04, 0.1, 0.01);
  const auto b = eoc(0.2, 0.04 * 37.0, 0.1, 0.01 * 37.0);
  out.push_back({"analysis", "eoc exact quadratic and scale invariant",
                 a && b && std::abs(*a - 2.0) <= 1e-12 && std::abs(*a - *b) <= 1e-12, ""});
}

}  // namespace

std::vector<CheckResult> run_invariant_checks() {
  std::vector<CheckResult> out;
  const std::vector<std::function<void(std::vector<CheckResult>&)>> suites{
      mesh_checks, fem_checks, geometry_checks, problem_checks, scheme_checks, analysis_checks};
  for (const auto& suite : suites) {
    try {
      suite(out);
    } catch (const std::exception& err) {
      out.push_back({"internal", "suite raised an exception", false, err.what()});
    }
  }
  return out;
}

}  // namespace graphflow
