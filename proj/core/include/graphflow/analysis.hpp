#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "graphflow/problems.hpp"
#include "graphflow/scheme.hpp"

namespace graphflow {

/// Errors of one refinement level. E1..E5 are stored 0-based:
///   E1 = max_m |e_w^m|^2,            E2 = sum_{m=1..M} tau |grad e_w^m|^2,
///   E3 = max_m |e_u^m|^2,            E4 = max_m |grad e_u^m|^2,
///   E5 = sum_{m=0..M-1} tau |(e_u^{m+1} - e_u^m) / tau|^2.
struct ErrorReport {
  int level = 0;
  double h = 0.0;
  double tau = 0.0;
  std::array<double, 5> errors{};
  std::array<std::optional<double>, 5> eoc{};
  std::string failure;  // nonempty if the run for this level failed

  bool ok() const { return failure.empty(); }
};

/// Accumulates E1..E5 along a run. Attach with `observer()`; the object
/// must outlive the run.
class ErrorObserver {
 public:
  ErrorObserver(ExactSolution exact, double tau);

  void observe(const State& state);
  Observer observer() {
    return [this](const State& s) { observe(s); };
  }
  const std::array<double, 5>& errors() const { return errors_; }
  int levels_seen() const { return levels_seen_; }

 private:
  ExactSolution exact_;
  double tau_;
  std::array<double, 5> errors_{};
  std::optional<State> previous_;
  int levels_seen_ = 0;
};

/// log(E_c / E_f) / log(h_c / h_f); empty when an error is not positive or
/// the mesh sizes are not ordered.
std::optional<double> eoc(double h_coarse, double e_coarse, double h_fine, double e_fine);

/// Fills eoc fields between consecutive successful reports.
void fill_eoc(std::vector<ErrorReport>& reports);

struct StudyOptions {
  std::optional<double> fixed_tau;  // default rule: tau = h^2
  std::optional<double> final_time;
  double solver_tolerance = kDefaultSolverTolerance;
  Ic2Variant ic2 = Ic2Variant::Literal;
};

/// Runs the scheme with the error observer on each level; a failing level
/// is recorded in its report and the study continues.
std::vector<ErrorReport> convergence_study(std::string_view problem_key, const std::vector<int>& levels,
                                           const StudyOptions& options = {},
                                           const std::function<void(const ErrorReport&)>& on_level = {});

/// `level,h,tau,E1,...,E5,eoc1,...,eoc5`, six significant digits.
std::string format_csv(const std::vector<ErrorReport>& reports);

}  // namespace graphflow
