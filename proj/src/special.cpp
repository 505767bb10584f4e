#include "fracbern/special.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace fracbern {

double log_gamma(double a) {
  if (!(a > 0)) {
    throw std::domain_error("log_gamma: argument must be positive, got " +
                            std::to_string(a));
  }
  return std::lgamma(a);
}

double mittag_leffler(const MLParams& params, double z) {
  if (!(params.series_tol > 0)) {
    throw std::invalid_argument("mittag_leffler: series_tol must be > 0");
  }
  if (params.max_terms < 50) {
    throw std::invalid_argument("mittag_leffler: max_terms must be >= 50");
  }
  if (!(params.alpha > 0) || !(params.beta > 0)) {
    throw std::domain_error("mittag_leffler: alpha and beta must be positive");
  }
  if (std::abs(z) > 5.0) {
    throw std::domain_error("mittag_leffler: |z| > 5 is outside the plain-series domain");
  }
  // Terms via log space keeps z^k / Gamma(alpha k + beta) overflow-free.
  const double ln_abs_z = (z == 0.0) ? 0.0 : std::log(std::abs(z));
  CompensatedSum<double> sum;
  sum.add(1.0 / std::tgamma(params.beta));
  if (z == 0.0) return sum.value();
  for (int k = 1; k <= params.max_terms; ++k) {
    double term = std::exp(k * ln_abs_z - std::lgamma(params.alpha * k + params.beta));
    if (z < 0 && (k & 1)) term = -term;
    sum.add(term);
    if (std::abs(term) < params.series_tol * std::abs(sum.value())) {
      return sum.value();
    }
  }
  throw AccuracyError("mittag_leffler: series did not converge within max_terms");
}

double JacobiRule::moment() const {
  const double a = exponent_left, b = exponent_right;
  return std::pow(2.0, a + b + 1.0) *
         std::exp(std::lgamma(a + 1) + std::lgamma(b + 1) - std::lgamma(a + b + 2));
}

JacobiRule gauss_jacobi(int n_nodes, double exp_left, double exp_right) {
  if (n_nodes < 1) throw std::invalid_argument("gauss_jacobi: need at least one node");
  if (!(exp_left > -1.0) || !(exp_right > -1.0)) {
    throw std::domain_error("gauss_jacobi: weight exponents must exceed -1");
  }
  // Three-term recurrence coefficients for Jacobi polynomials with
  // weight (1-t)^a (1+t)^b; diag = alpha_k, offdiag^2 = beta_k.
  const double a = exp_left, b = exp_right;
  Eigen::VectorXd diag(n_nodes);
  Eigen::VectorXd offdiag(std::max(0, n_nodes - 1));
  const double apb = a + b;
  diag[0] = (b - a) / (apb + 2.0);
  for (int k = 1; k < n_nodes; ++k) {
    const double den = (2.0 * k + apb) * (2.0 * k + apb + 2.0);
    diag[k] = (b * b - a * a) / den;
  }
  if (n_nodes > 1) {
    offdiag[0] = std::sqrt(4.0 * (a + 1.0) * (b + 1.0) /
                           ((apb + 2.0) * (apb + 2.0) * (apb + 3.0)));
    for (int k = 2; k < n_nodes; ++k) {
      const double t = 2.0 * k + apb;
      const double beta_k = 4.0 * k * (k + a) * (k + b) * (k + apb) /
                            (t * t * (t + 1.0) * (t - 1.0));
      offdiag[k - 1] = std::sqrt(beta_k);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, offdiag, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("gauss_jacobi: tridiagonal eigen-solve failed");
  }
  JacobiRule rule;
  rule.exponent_left = exp_left;
  rule.exponent_right = exp_right;
  rule.nodes.resize(n_nodes);
  rule.weights.resize(n_nodes);
  const double mu0 = rule.moment();
  for (int i = 0; i < n_nodes; ++i) {
    rule.nodes[i] = solver.eigenvalues()[i];
    const double v0 = solver.eigenvectors()(0, i);
    rule.weights[i] = mu0 * v0 * v0;
  }
  return rule;
}

}  // namespace fracbern
