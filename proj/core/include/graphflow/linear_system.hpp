#pragma once

#include <map>
#include <vector>

#include "graphflow/fe_space.hpp"

namespace graphflow {

using DirichletMap = std::map<int, double>;

struct LinearSystem {
  SparseMatrix matrix;
  Vector rhs;
  DirichletMap dirichlet;
};

/// System on the unconstrained unknowns after symmetric elimination.
struct ReducedSystem {
  SparseMatrix matrix;
  Vector rhs;
  std::vector<int> free_dofs;
  Vector prescribed;  // full-length; constrained entries hold their values

  Vector expand(const Vector& reduced_solution) const;
};

/// Removes constrained rows and columns; b_free -= A[free, k] * g_k.
ReducedSystem apply_dirichlet(const LinearSystem& system);

struct SolveStats {
  long iterations = 0;
  double relative_residual = 0.0;
};

inline constexpr double kDefaultSolverTolerance = 1e-10;

/// Jacobi-preconditioned conjugate gradients, relative residual <= tol,
/// at most 10*N iterations. Throws SolverError on non-convergence.
Vector solve_spd(const SparseMatrix& matrix, const Vector& rhs, double tol = kDefaultSolverTolerance,
                 SolveStats* stats = nullptr, const Vector* initial_guess = nullptr);

/// Reduce, solve and extend by the prescribed values.
Vector solve(const LinearSystem& system, double tol = kDefaultSolverTolerance,
             SolveStats* stats = nullptr);

}  // namespace graphflow
