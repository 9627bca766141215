#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include <graphflow/problems.hpp>

namespace graphflow::cli {

enum ExitCode : int { kSuccess = 0, kNumericalFailure = 1, kUsageError = 2 };

struct RunConfig {
  std::string command;
  std::string problem = "example1";
  int level = 2;
  std::pair<int, int> levels{2, 4};
  std::optional<double> final_time;
  std::optional<double> tau;  // empty: tau = h^2
  std::filesystem::path out = "graphflow-out";
  double tolerance = 1e-10;
  Ic2Variant ic2 = Ic2Variant::Literal;
};

/// Raised for malformed flags, config files and values.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// `key = value` lines; `#` starts a comment. Keys are the long flag names
/// without dashes (problem, level, levels, T, tau, out, tol, ic2-variant).
std::map<std::string, std::string> parse_config_text(const std::string& text);

/// Inclusive `a:b`.
std::pair<int, int> parse_level_range(const std::string& text);

/// Entry point behind the `graphflow` executable.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace graphflow::cli
