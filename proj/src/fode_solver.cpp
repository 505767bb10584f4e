#include "fracbern/fode_solver.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace fracbern {

namespace {

// D^alpha of the basis term t^i (1-t)^(n-i):
//   sum_{l=0..n-i} C(n-i,l) (-1)^l Gamma(i+l+1)/Gamma(i+l+1-alpha) t^(i+l-alpha)
template <class Real>
Real basis_caputo(int n, int i, double alpha, const Real& t) {
  using std::pow;
  if (t == 0) return Real(0);
  CompensatedSum<Real> sum;
  Real binom(1);
  Real tp = pow(t, Real(i) - Real(alpha));
  const int mi = n - i;
  for (int l = 0; l <= mi; ++l) {
    const Real ratio =
        gamma_ratio(Real(i + l + 1), Real(i + l + 1) - Real(alpha));
    Real term = binom * ratio * tp;
    if (l & 1) term = -term;
    sum.add(term);
    tp *= t;
    binom *= mi - l;
    binom /= l + 1;
  }
  return sum.value();
}

double shift_value(const std::vector<double>& shift_poly, double t) {
  double acc = 0.0;
  for (auto it = shift_poly.rbegin(); it != shift_poly.rend(); ++it) {
    acc = acc * t + *it;
  }
  return acc;
}

double eval_ansatz_only(int n, int m, const std::vector<double>& c, double t) {
  // factored basis form; pow keeps the t = 0 and t = 1 limits exact
  const double omt = 1.0 - t;
  double acc = 0.0;
  double tp = std::pow(t, m);
  for (int i = m; i <= n; ++i) {
    acc += c[i - m] * tp * std::pow(omt, n - i);
    tp *= t;
  }
  return acc;
}

}  // namespace

void FodeProblem::validate() const {
  if (!rhs) throw std::invalid_argument("FodeProblem: rhs is required");
  if (static_cast<int>(init_values.size()) != order.m) {
    throw std::invalid_argument("FodeProblem: init_values must have exactly m = " +
                                std::to_string(order.m) + " entries");
  }
}

std::vector<double> collocation_nodes(int n, int m, NodeStrategy strategy) {
  if (n <= m) throw std::invalid_argument("collocation_nodes: need n > m");
  std::vector<double> nodes(n - m + 1);
  const int j0 = (strategy == NodeStrategy::PaperNodes) ? 0 : 1;
  for (int j = 0; j <= n - m; ++j) {
    nodes[j] = static_cast<double>(j + j0) / n;
  }
  return nodes;
}

double ansatz_caputo(const AnsatzSolution& sol, double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw std::domain_error("ansatz_caputo: t must lie in [0,1]");
  }
  if (t == 0.0) return 0.0;
  if (sol.n <= kCancelDegreeLimit) {
    CompensatedSum<double> sum;
    for (int i = sol.m; i <= sol.n; ++i) {
      sum.add(sol.coeffs[i - sol.m] * basis_caputo(sol.n, i, sol.order.alpha, t));
    }
    return sum.value();
  }
  // large degrees run in extended precision (same cancellation ledger as the
  // closed-form operators)
  PrecisionScope scope(working_digits(sol.n, 50));
  CompensatedSum<BigReal> sum;
  const BigReal tb(t);
  for (int i = sol.m; i <= sol.n; ++i) {
    sum.add(BigReal(sol.coeffs[i - sol.m]) *
            basis_caputo(sol.n, i, sol.order.alpha, tb));
  }
  return sum.value().convert_to<double>();
}

double eval_solution(const AnsatzSolution& sol, double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw std::domain_error("eval_solution: t must lie in [0,1]");
  }
  return eval_ansatz_only(sol.n, sol.m, sol.coeffs, t) +
         shift_value(sol.shift_poly, t);
}

FodeProblem shift_initial_conditions(const FodeProblem& problem) {
  problem.validate();
  const int m = problem.order.m;
  std::vector<double> shift(m, 0.0);
  double factorial = 1.0;
  bool zero = true;
  for (int k = 0; k < m; ++k) {
    if (k > 0) factorial *= k;
    shift[k] = problem.init_values[k] / factorial;
    if (shift[k] != 0.0) zero = false;
  }
  if (zero) return problem;
  FodeProblem out = problem;
  out.init_values.assign(m, 0.0);
  // the shift polynomial has degree < m, so its Caputo derivative vanishes
  auto rhs = problem.rhs;
  out.rhs = [rhs, shift](double t, double z) {
    return rhs(t, z + shift_value(shift, t));
  };
  if (problem.rhs_dx) {
    auto rhs_dx = problem.rhs_dx;
    out.rhs_dx = [rhs_dx, shift](double t, double z) {
      return rhs_dx(t, z + shift_value(shift, t));
    };
  }
  out.label = problem.label.empty() ? "shifted" : problem.label + " (shifted)";
  return out;
}

AnsatzSolution solve(const FodeProblem& problem, int n, double newton_tol,
                     int max_iter) {
  problem.validate();
  const int m = problem.order.m;
  const double alpha = problem.order.alpha;
  if (n <= m) throw std::invalid_argument("solve: need degree n > m");

  bool has_shift = false;
  for (double v : problem.init_values) has_shift |= (v != 0.0);
  const FodeProblem zero_ic = has_shift ? shift_initial_conditions(problem) : problem;

  std::vector<double> shift_poly(m, 0.0);
  if (has_shift) {
    double factorial = 1.0;
    for (int k = 0; k < m; ++k) {
      if (k > 0) factorial *= k;
      shift_poly[k] = problem.init_values[k] / factorial;
    }
  }

  const std::vector<double> nodes = collocation_nodes(n, m, problem.node_strategy);
  const int dim = n - m + 1;

  // derivative and value matrices of the ansatz basis at the nodes
  Eigen::MatrixXd A(dim, dim), B(dim, dim);
  for (int j = 0; j < dim; ++j) {
    const double t = nodes[j];
    for (int i = m; i <= n; ++i) {
      if (n <= kCancelDegreeLimit) {
        A(j, i - m) = basis_caputo(n, i, alpha, t);
      } else {
        PrecisionScope scope(working_digits(n, 50));
        A(j, i - m) = basis_caputo(n, i, alpha, BigReal(t)).convert_to<double>();
      }
      B(j, i - m) = std::pow(t, i) * std::pow(1.0 - t, n - i);
    }
  }

  auto rhs_dx = [&](double t, double x) {
    if (zero_ic.rhs_dx) return zero_ic.rhs_dx(t, x);
    const double h = 1e-6;
    return (zero_ic.rhs(t, x + h) - zero_ic.rhs(t, x - h)) / (2.0 * h);
  };

  auto residual = [&](const Eigen::VectorXd& c) {
    Eigen::VectorXd x = B * c;
    Eigen::VectorXd r = A * c;
    for (int j = 0; j < dim; ++j) r[j] -= zero_ic.rhs(nodes[j], x[j]);
    return r;
  };

  auto newton_from = [&](Eigen::VectorXd c,
                         std::vector<double>& history) -> std::optional<Eigen::VectorXd> {
    Eigen::VectorXd r = residual(c);
    double rnorm = r.lpNorm<Eigen::Infinity>();
    history.push_back(rnorm);
    for (int it = 0; it < max_iter; ++it) {
      if (rnorm <= newton_tol) return c;
      Eigen::VectorXd x = B * c;
      Eigen::MatrixXd J = A;
      for (int j = 0; j < dim; ++j) {
        J.row(j) -= rhs_dx(nodes[j], x[j]) * B.row(j);
      }
      Eigen::FullPivLU<Eigen::MatrixXd> lu(J);
      if (!lu.isInvertible()) {
        throw SingularSystem("singular collocation system (degree " +
                             std::to_string(n) + ")");
      }
      const Eigen::VectorXd dc = lu.solve(-r);
      double lambda = 1.0;
      Eigen::VectorXd c_next = c + dc;
      Eigen::VectorXd r_next = residual(c_next);
      for (int halving = 0; halving < 30; ++halving) {
        if (r_next.lpNorm<Eigen::Infinity>() < rnorm) break;
        lambda *= 0.5;
        c_next = c + lambda * dc;
        r_next = residual(c_next);
      }
      c = c_next;
      r = r_next;
      rnorm = r.lpNorm<Eigen::Infinity>();
      history.push_back(rnorm);
    }
    if (rnorm <= newton_tol) return c;
    return std::nullopt;
  };

  std::vector<double> history;
  std::optional<Eigen::VectorXd> c = newton_from(Eigen::VectorXd::Zero(dim), history);
  if (!c) {
    // one retry seeded with the rhs slope at the sample points
    Eigen::VectorXd seed(dim);
    for (int i = m; i <= n; ++i) {
      seed[i - m] = zero_ic.rhs(static_cast<double>(i) / n, 0.0);
    }
    c = newton_from(seed, history);
  }
  if (!c) {
    throw NewtonStagnation("Newton stagnation at degree " + std::to_string(n),
                           history);
  }

  AnsatzSolution sol{problem.order, n, m,
                     std::vector<double>(c->data(), c->data() + dim),
                     std::move(shift_poly), NewtonReport{}};
  sol.newton_report.iterations = static_cast<int>(history.size()) - 1;
  // residual certificate, recomputed outside the Newton loop
  double certificate = 0.0;
  for (double t : nodes) {
    const double x = eval_ansatz_only(n, m, sol.coeffs, t);
    certificate = std::max(certificate,
                           std::abs(ansatz_caputo(sol, t) - zero_ic.rhs(t, x)));
  }
  sol.newton_report.final_residual = certificate;
  sol.newton_report.residual_history = std::move(history);
  return sol;
}

StabilityResult stability_probe(
    const FodeProblem& problem,
    const std::function<double(double, double)>& perturbed_rhs, int n,
    const std::vector<double>& norm_grid) {
  FodeProblem perturbed = problem;
  perturbed.rhs = perturbed_rhs;
  // Newton tolerates the base problem's x-derivative as its slope; the
  // residual certificate still gates the result, and an unperturbed rhs
  // reproduces the base solve bit for bit.
  const AnsatzSolution base = solve(problem, n);
  const AnsatzSolution other = solve(perturbed, n);
  StabilityResult out;
  for (double t : norm_grid) {
    const double xb = eval_solution(base, t);
    out.solution_gap = std::max(out.solution_gap,
                                std::abs(xb - eval_solution(other, t)));
    out.rhs_gap = std::max(out.rhs_gap,
                           std::abs(problem.rhs(t, xb) - perturbed_rhs(t, xb)));
  }
  return out;
}

}  // namespace fracbern
