#pragma once

#include <string>
#include <vector>

namespace graphflow {

struct CheckResult {
  std::string module;
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Fast invariant suite over all modules (mesh conformity, quadrature
/// exactness, matrix symmetry and definiteness, geometric identities,
/// manufactured-forcing residuals, scheme stationarity and decay).
std::vector<CheckResult> run_invariant_checks();

}  // namespace graphflow
