#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "graphflow/fe_space.hpp"
#include "graphflow/linear_system.hpp"
#include "graphflow/problems.hpp"

namespace graphflow {

struct SchemeConfig {
  double tau = 0.0;
  double final_time = 0.0;
  double solver_tolerance = kDefaultSolverTolerance;
  /// Stopping threshold of the minimal-surface projection's fixed point,
  /// relative to max(1, H1 norm of the iterate).
  double projection_tolerance = 1e-10;
  int projection_max_iterations = 50;
};

/// M = round(T / tau); throws ArgumentError for tau <= 0 or T < 0.
int num_steps(const SchemeConfig& config);

struct State {
  int m = 0;
  double t = 0.0;
  FeFunction u;
  FeFunction w;
};

/// Height equation at level m+1:
///   (1/tau) (u_new - u_m, phi / Q(u_m)) + (grad u_new, grad phi / Q(u_m))
///     = (f(w_m), phi) [+ forcing] [- contact-angle boundary term].
LinearSystem graph_system(const State& state, const ProblemSpec& problem, const SchemeConfig& config);
FeFunction graph_step(const State& state, const ProblemSpec& problem, const SchemeConfig& config);

/// Surface diffusion at level m+1, after the height update:
///   (1/tau) [(w_new Q(u_new), eta) - (w_m Q(u_m), eta)] + (E(grad u_new) grad w_new, grad eta)
///     = -(grad u_new . grad eta, V w_m) + (g(V, w_m) Q(u_new), eta) [+ forcing].
LinearSystem surface_system(const State& state, const FeFunction& u_new, const ProblemSpec& problem,
                            const SchemeConfig& config);
FeFunction surface_step(const State& state, const FeFunction& u_new, const ProblemSpec& problem,
                        const SchemeConfig& config);

struct ProjectionStats {
  int iterations = 0;
  double last_increment = 0.0;
};

/// Minimal-surface type Ritz projection with an added zero-order term,
/// solved by a frozen-coefficient (Picard) iteration started from the
/// nodal interpolant. Throws ConvergenceError after max_iterations.
FeFunction minimal_surface_projection(std::shared_ptr<const FeSpace> space, const InitialProfile& u,
                                      double tolerance = 1e-10, int max_iterations = 50,
                                      ProjectionStats* stats = nullptr);

/// Ritz projection for w with the anisotropy E(grad u_hat) on the discrete
/// side and E(grad u) on the exact side; Dirichlet values interpolate w on
/// edges tagged `dirichlet_tag`.
FeFunction w_projection(std::shared_ptr<const FeSpace> space, const InitialProfile& w, const FeFunction& u_hat,
                        const std::function<Vec2(const Vec2&)>& u_gradient, BoundaryTag dirichlet_tag,
                        double solver_tolerance = kDefaultSolverTolerance);

/// Initial data u_h^0 and w_h^0 from the two projections.
State initial_state(std::shared_ptr<const FeSpace> space, const ProblemSpec& problem, const SchemeConfig& config);

using Observer = std::function<void(const State&)>;

struct RunResult {
  State final_state;
  int steps = 0;
};

/// Projects the initial data, then performs M = round(T/tau) pairs of
/// graph and surface solves. Observers see the state at every level,
/// starting with m = 0. Step failures surface as SchemeError.
RunResult run(const ProblemSpec& problem, std::shared_ptr<const FeSpace> space, const SchemeConfig& config,
              const std::vector<Observer>& observers = {});

}  // namespace graphflow
