#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fracbern/frac_ops.hpp"

namespace fracbern {

enum class NodeStrategy { PaperNodes, ShiftedNodes };

// D^alpha x = f(t, x) on [0,1] with initial data x^(k)(0) = init_values[k].
struct FodeProblem {
  FracOrder order;
  std::function<double(double, double)> rhs;
  std::function<double(double, double)> rhs_dx;  // optional d f / d x
  std::vector<double> init_values;               // exactly m entries
  NodeStrategy node_strategy = NodeStrategy::ShiftedNodes;
  std::string label;

  void validate() const;
};

struct NewtonReport {
  int iterations = 0;
  double final_residual = 0.0;
  std::vector<double> residual_history;
};

// Collocation solution x_n(t) = sum_{i=m..n} c_i t^i (1-t)^(n-i) plus the
// re-added initial-value shift polynomial sum_k x_k t^k / k!.
struct AnsatzSolution {
  FracOrder order;
  int n = 0;
  int m = 0;
  std::vector<double> coeffs;      // c_m .. c_n
  std::vector<double> shift_poly;  // power coefficients x_k / k!, size m
  NewtonReport newton_report;
};

/// Thrown when the collocation Jacobian is singular to working precision.
class SingularSystem : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when Newton fails to meet the residual tolerance.
class NewtonStagnation : public std::runtime_error {
 public:
  NewtonStagnation(const std::string& what, std::vector<double> history)
      : std::runtime_error(what), residual_history(std::move(history)) {}
  std::vector<double> residual_history;
};

// Collocation grid t_j = j/n. PaperNodes takes j = 0..n-m (includes the
// degenerate t = 0 equation); ShiftedNodes takes j = 1..n-m+1.
std::vector<double> collocation_nodes(int n, int m, NodeStrategy strategy);

/// Caputo derivative of the ansatz at t; equals the RL value because every
/// basis term has an m-fold zero at the origin.
double ansatz_caputo(const AnsatzSolution& sol, double t);

/// Ansatz value including the shift polynomial.
double eval_solution(const AnsatzSolution& sol, double t);

/// Equivalent zero-initial-value problem in z = x - sum_k x_k t^k / k!.
FodeProblem shift_initial_conditions(const FodeProblem& problem);

AnsatzSolution solve(const FodeProblem& problem, int n, double newton_tol = 1e-10,
                     int max_iter = 30);

struct StabilityResult {
  double solution_gap = 0.0;  // max |x_n - x'_n| over the grid
  double rhs_gap = 0.0;       // max |f - f'| along the computed solution
};

StabilityResult stability_probe(const FodeProblem& problem,
                                const std::function<double(double, double)>& perturbed_rhs,
                                int n, const std::vector<double>& norm_grid);

}  // namespace fracbern
