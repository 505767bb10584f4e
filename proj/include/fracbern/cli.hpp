#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fracbern/error_harness.hpp"
#include "fracbern/expr.hpp"

namespace fracbern {

// Configuration of one command-line run. Only long flags exist; defaults are
// N = 100, shifted nodes, and automatic precision (Extended(50) once the
// degree exceeds kCancelDegreeLimit).
struct RunConfig {
  enum class Command { Deriv, Integ, Solve, Tables, Eoc };
  Command command = Command::Deriv;
  std::string function_id = "exp";  // deriv / integ / eoc / tables
  double alpha = 0.5;
  int n = 40;
  int grid_N = kDefaultGridN;
  std::optional<unsigned> precision_digits;
  NodeStrategy node_strategy = NodeStrategy::ShiftedNodes;
  std::string output_path;
  std::string problem_id;                // registry id, or empty for --rhs
  std::string rhs_src, rhs_dx_src;       // expression right-hand sides
  std::vector<double> init_values;
  std::string table_kind = "EC";         // EC | EI | EOC_D | EOC_I
  double newton_tol = 1e-10;
  int max_iter = 30;
  bool integral = false;                 // eoc: integral instead of derivative
};

struct RegistryEntry {
  std::string description;
  double default_alpha;
  bool has_oracle;
  std::function<FodeProblem(double alpha, std::vector<double> init_values)> make;
  std::function<double(double alpha, double t)> oracle;  // null when !has_oracle
};

/// Built-in solve problems: relaxation, polyfode, oscillation, kiaproblem.
const std::map<std::string, RegistryEntry>& problem_registry();

/// Executes one configured run; returns the process exit status (0 or 2).
int run(const RunConfig& config);

/// Full argv front end; returns 0 on success, 1 on usage error, 2 on numeric failure.
int cli_main(int argc, const char* const* argv);

}  // namespace fracbern
