#include "graphflow/linear_system.hpp"

#include <string>

#include <Eigen/IterativeLinearSolvers>

#include "graphflow/errors.hpp"

namespace graphflow {

Vector ReducedSystem::expand(const Vector& reduced_solution) const {
  Vector full = prescribed;
  for (std::size_t k = 0; k < free_dofs.size(); ++k) full[free_dofs[k]] = reduced_solution[static_cast<int>(k)];
  return full;
}

ReducedSystem apply_dirichlet(const LinearSystem& system) {
  const SparseMatrix& a = system.matrix;
  const int n = static_cast<int>(a.rows());
  if (a.cols() != n || system.rhs.size() != n) throw ArgumentError("linear system dimensions mismatch");

  ReducedSystem out;
  out.prescribed = Vector::Zero(n);
  std::vector<int> reduced_index(n, -1);
  for (const auto& [k, g] : system.dirichlet) {
    if (k < 0 || k >= n) throw ArgumentError("Dirichlet index " + std::to_string(k) + " out of range");
    out.prescribed[k] = g;
  }
  for (int i = 0; i < n; ++i) {
    if (!system.dirichlet.contains(i)) {
      reduced_index[i] = static_cast<int>(out.free_dofs.size());
      out.free_dofs.push_back(i);
    }
  }

  if (system.dirichlet.empty()) {
    out.matrix = a;
    out.rhs = system.rhs;
    return out;
  }

  const int nf = static_cast<int>(out.free_dofs.size());
  out.matrix.resize(nf, nf);
  out.matrix.reserve(a.nonZeros());
  out.rhs.resize(nf);
  for (int r = 0; r < nf; ++r) {
    const int i = out.free_dofs[r];
    double b = system.rhs[i];
    out.matrix.startVec(r);
    for (SparseMatrix::InnerIterator it(a, i); it; ++it) {
      const int j = static_cast<int>(it.col());
      if (reduced_index[j] >= 0) {
        out.matrix.insertBack(r, reduced_index[j]) = it.value();
      } else {
        b -= it.value() * out.prescribed[j];
      }
    }
    out.rhs[r] = b;
  }
  out.matrix.finalize();
  out.matrix.makeCompressed();
  return out;
}

Vector solve_spd(const SparseMatrix& matrix, const Vector& rhs, double tol, SolveStats* stats,
                 const Vector* initial_guess) {
  const long n = matrix.rows();
  if (n == 0) {
    if (stats) *stats = {};
    return Vector();
  }
  Eigen::ConjugateGradient<SparseMatrix, Eigen::Lower | Eigen::Upper, Eigen::DiagonalPreconditioner<double>> cg;
  // Eigen tests its recursively updated residual; leave headroom so the
  // true residual also meets tol.
  cg.setTolerance(0.5 * tol);
  cg.setMaxIterations(10 * n);
  cg.compute(matrix);
  Vector x = initial_guess ? cg.solveWithGuess(rhs, *initial_guess) : Vector(cg.solve(rhs));

  const double rhs_norm = rhs.norm();
  const double residual = rhs_norm > 0.0 ? (rhs - matrix * x).norm() / rhs_norm : (matrix * x).norm();
  if (stats) *stats = {static_cast<long>(cg.iterations()), residual};
  if (cg.info() != Eigen::Success || !(residual <= tol)) {
    throw SolverError("conjugate gradients did not converge: relative residual " + std::to_string(residual) +
                          " after " + std::to_string(cg.iterations()) + " iterations",
                      residual, static_cast<long>(cg.iterations()));
  }
  return x;
}

Vector solve(const LinearSystem& system, double tol, SolveStats* stats) {
  const ReducedSystem reduced = apply_dirichlet(system);
  return reduced.expand(solve_spd(reduced.matrix, reduced.rhs, tol, stats));
}

}  // namespace graphflow
