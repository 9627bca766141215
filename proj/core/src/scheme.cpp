#include "graphflow/scheme.hpp"

#include <cmath>
#include <string>

#include "graphflow/assembly.hpp"
#include "graphflow/errors.hpp"
#include "graphflow/geometry.hpp"

namespace graphflow {

namespace {

// Projections iterate on solutions, so their inner solves run tighter than
// the time stepper's.
constexpr double kProjectionSolverTolerance = 1e-12;

DirichletMap boundary_values(const Mesh& mesh, const std::vector<int>& vertices,
                             const std::function<double(const Vec2&)>& value) {
  DirichletMap map;
  for (int v : vertices) map.emplace(v, value(mesh.vertices[v]));
  return map;
}

SparseMatrix scaled_identity_stiffness(const FeSpace& space, const std::vector<double>& scale) {
  return assemble_weighted_stiffness(space, [&](const QuadraturePoint& qp) -> Mat2 {
    return scale[qp.element] * Mat2::Identity();
  });
}

}  // namespace

int num_steps(const SchemeConfig& config) {
  if (!(config.tau > 0.0)) throw ArgumentError("time step must be positive");
  if (config.final_time < 0.0) throw ArgumentError("final time must be nonnegative");
  return static_cast<int>(std::llround(config.final_time / config.tau));
}

LinearSystem graph_system(const State& state, const ProblemSpec& problem, const SchemeConfig& config) {
  const FeSpace& space = state.u.space();
  const double tau = config.tau;
  const double t_next = (state.m + 1) * tau;

  std::vector<double> inv_q = element_q(state.u);
  for (double& v : inv_q) v = 1.0 / v;

  const SparseMatrix mass = assemble_weighted_mass(space, [&](const QuadraturePoint& qp) { return inv_q[qp.element]; });
  const SparseMatrix stiffness = scaled_identity_stiffness(space, inv_q);

  LinearSystem sys;
  sys.matrix = (1.0 / tau) * mass + stiffness;
  sys.rhs = (1.0 / tau) * (mass * state.u.values());
  sys.rhs += assemble_load(space, [&](const QuadraturePoint& qp) { return problem.f(state.w.value(qp)); });

  if (problem.exact) {
    const SpaceTimeFn& forcing = problem.exact->forcing_u;
    sys.rhs += assemble_load(space, [&](const QuadraturePoint& qp) { return forcing(qp.x, t_next); });
  }

  const Mesh& mesh = space.mesh();
  switch (problem.graph_bc.kind) {
    case GraphBoundaryKind::NeumannZero:
      break;
    case GraphBoundaryKind::ContactAngle: {
      // Prescribed angle along the whole of the boundary.
      const double c = problem.graph_bc.cos_angle(t_next);
      for (BoundaryTag tag : {BoundaryTag::Outer, BoundaryTag::LeftRight, BoundaryTag::TopBottom}) {
        if (mesh.has_tag(tag)) sys.rhs -= assemble_boundary_load(space, tag, [c](const EdgeQuadraturePoint&) { return c; });
      }
      break;
    }
    case GraphBoundaryKind::Dirichlet: {
      const SpaceTimeFn& g = problem.graph_bc.dirichlet_value;
      sys.dirichlet = boundary_values(mesh, mesh.boundary_vertices(), [&](const Vec2& x) { return g(x, t_next); });
      break;
    }
  }
  return sys;
}

FeFunction graph_step(const State& state, const ProblemSpec& problem, const SchemeConfig& config) {
  const LinearSystem sys = graph_system(state, problem, config);
  return FeFunction(state.u.space_ptr(), solve(sys, config.solver_tolerance));
}

LinearSystem surface_system(const State& state, const FeFunction& u_new, const ProblemSpec& problem,
                            const SchemeConfig& config) {
  const FeSpace& space = state.u.space();
  const double tau = config.tau;
  const double t_next = (state.m + 1) * tau;

  const std::vector<double> q_old = element_q(state.u);
  const std::vector<double> q_new = element_q(u_new);
  std::vector<Vec2> grad_new(space.num_elements());
  for (int e = 0; e < space.num_elements(); ++e) grad_new[e] = u_new.gradient(e);
  const QuadratureValues velocity = discrete_velocity(u_new, state.u, tau);

  const SparseMatrix mass_new = assemble_weighted_mass(space, [&](const QuadraturePoint& qp) { return q_new[qp.element]; });
  const SparseMatrix mass_old = assemble_weighted_mass(space, [&](const QuadraturePoint& qp) { return q_old[qp.element]; });
  const SparseMatrix stiffness =
      assemble_weighted_stiffness(space, [&](const QuadraturePoint& qp) { return e_matrix(grad_new[qp.element]); });

  LinearSystem sys;
  sys.matrix = (1.0 / tau) * mass_new + stiffness;
  sys.rhs = (1.0 / tau) * (mass_old * state.w.values());
  sys.rhs -= assemble_gradient_load(space, [&](const QuadraturePoint& qp) -> Vec2 {
    return (velocity(qp) * state.w.value(qp)) * grad_new[qp.element];
  });
  sys.rhs += assemble_load(space, [&](const QuadraturePoint& qp) {
    return problem.g(velocity(qp), state.w.value(qp)) * q_new[qp.element];
  });

  if (problem.exact) {
    const ExactSolution& ex = *problem.exact;
    sys.rhs += assemble_load(space, [&](const QuadraturePoint& qp) {
      return ex.forcing_w(qp.x, t_next) * q_of(ex.u.gradient(qp.x, t_next));
    });
  }

  const Mesh& mesh = space.mesh();
  const SpaceTimeFn& g = problem.w_bc.value;
  sys.dirichlet = boundary_values(mesh, mesh.boundary_vertices(problem.w_bc.dirichlet_tag),
                                  [&](const Vec2& x) { return g(x, t_next); });
  return sys;
}

FeFunction surface_step(const State& state, const FeFunction& u_new, const ProblemSpec& problem,
                        const SchemeConfig& config) {
  const LinearSystem sys = surface_system(state, u_new, problem, config);
  return FeFunction(state.u.space_ptr(), solve(sys, config.solver_tolerance));
}

FeFunction minimal_surface_projection(std::shared_ptr<const FeSpace> space, const InitialProfile& u,
                                      double tolerance, int max_iterations, ProjectionStats* stats) {
  const FeSpace& sp = *space;
  const SparseMatrix mass = assemble_weighted_mass(sp, [](const QuadraturePoint&) { return 1.0; });
  const SparseMatrix laplace = assemble_weighted_stiffness(sp, [](const QuadraturePoint&) -> Mat2 { return Mat2::Identity(); });
  const SparseMatrix h1 = mass + laplace;

  // Right-hand side uses the exact function at quadrature points.
  Vector rhs = assemble_gradient_load(sp, [&](const QuadraturePoint& qp) -> Vec2 {
    const Vec2 p = u.gradient(qp.x);
    return p / q_of(p);
  });
  rhs += assemble_load(sp, [&](const QuadraturePoint& qp) { return u.value(qp.x); });

  FeFunction iterate = FeFunction::interpolate(space, u.value);
  double increment = 0.0;
  for (int k = 1; k <= max_iterations; ++k) {
    std::vector<double> inv_q = element_q(iterate);
    for (double& v : inv_q) v = 1.0 / v;
    const SparseMatrix a = mass + scaled_identity_stiffness(sp, inv_q);
    Vector next = solve_spd(a, rhs, kProjectionSolverTolerance, nullptr, &iterate.values());

    const Vector delta = next - iterate.values();
    increment = std::sqrt(std::max(0.0, delta.dot(h1 * delta)));
    const double size = std::sqrt(std::max(0.0, next.dot(h1 * next)));
    iterate.values() = std::move(next);
    if (increment <= tolerance * std::max(1.0, size)) {
      if (stats) *stats = {k, increment};
      return iterate;
    }
  }
  if (stats) *stats = {max_iterations, increment};
  throw ConvergenceError("minimal surface projection did not converge in " + std::to_string(max_iterations) +
                             " iterations (last increment " + std::to_string(increment) + ")",
                         increment);
}

FeFunction w_projection(std::shared_ptr<const FeSpace> space, const InitialProfile& w, const FeFunction& u_hat,
                        const std::function<Vec2(const Vec2&)>& u_gradient, BoundaryTag dirichlet_tag,
                        double solver_tolerance) {
  const FeSpace& sp = *space;
  std::vector<Mat2> e_hat(sp.num_elements());
  for (int e = 0; e < sp.num_elements(); ++e) e_hat[e] = e_matrix(u_hat.gradient(e));

  LinearSystem sys;
  sys.matrix = assemble_weighted_stiffness(sp, [&](const QuadraturePoint& qp) { return e_hat[qp.element]; });
  sys.rhs = assemble_gradient_load(sp, [&](const QuadraturePoint& qp) -> Vec2 {
    return e_matrix(u_gradient(qp.x)) * w.gradient(qp.x);
  });
  const Mesh& mesh = sp.mesh();
  sys.dirichlet = boundary_values(mesh, mesh.boundary_vertices(dirichlet_tag), w.value);
  return FeFunction(space, solve(sys, std::min(solver_tolerance, kProjectionSolverTolerance)));
}

State initial_state(std::shared_ptr<const FeSpace> space, const ProblemSpec& problem, const SchemeConfig& config) {
  FeFunction u0 = minimal_surface_projection(space, problem.u0, config.projection_tolerance,
                                             config.projection_max_iterations);
  FeFunction w0 = w_projection(space, problem.w0, u0, problem.u0.gradient, problem.w_bc.dirichlet_tag,
                               config.solver_tolerance);
  return State{0, 0.0, std::move(u0), std::move(w0)};
}

RunResult run(const ProblemSpec& problem, std::shared_ptr<const FeSpace> space, const SchemeConfig& config,
              const std::vector<Observer>& observers) {
  const int steps = num_steps(config);
  State state = initial_state(space, problem, config);
  for (const auto& obs : observers) obs(state);

  for (int m = 0; m < steps; ++m) {
    try {
      FeFunction u_new = graph_step(state, problem, config);
      FeFunction w_new = surface_step(state, u_new, problem, config);
      state = State{m + 1, (m + 1) * config.tau, std::move(u_new), std::move(w_new)};
    } catch (const std::exception& err) {
      throw SchemeError("time level " + std::to_string(m + 1) + " (t = " + std::to_string((m + 1) * config.tau) +
                            "): " + err.what(),
                        m + 1);
    }
    for (const auto& obs : observers) obs(state);
  }
  return RunResult{std::move(state), steps};
}

}  // namespace graphflow
