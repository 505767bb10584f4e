#pragma once

#include <vector>

#include "fracbern/numerics.hpp"

namespace fracbern {

/// ln Gamma(a) for a > 0; relative error below 1e-13.
double log_gamma(double a);

/// Parameters of the two-parameter Mittag-Leffler series E_{alpha,beta}.
struct MLParams {
  double alpha;
  double beta;
  double series_tol = 1e-16;
  int max_terms = 200;
};

/// E_{alpha,beta}(z) = sum_k z^k / Gamma(alpha k + beta) for |z| <= 5.
double mittag_leffler(const MLParams& params, double z);

/// Gauss-Jacobi rule on [-1,1] for the weight (1-t)^L (1+t)^R.
struct JacobiRule {
  double exponent_left;   // L, on (1 - t)
  double exponent_right;  // R, on (1 + t)
  std::vector<double> nodes;
  std::vector<double> weights;

  /// Analytic zeroth moment of the weight: 2^(L+R+1) B(L+1, R+1).
  double moment() const;

  /// Applies the rule to a callable g: sum_i w_i g(t_i).
  template <class F>
  double apply(F&& g) const {
    CompensatedSum<double> s;
    for (std::size_t i = 0; i < nodes.size(); ++i) s.add(weights[i] * g(nodes[i]));
    return s.value();
  }
};

// Golub-Welsch construction: eigen-decomposition of the symmetric
// tridiagonal matrix of the three-term recurrence. Exact for polynomials
// of degree <= 2 n_nodes - 1 against the weight.
JacobiRule gauss_jacobi(int n_nodes, double exp_left, double exp_right);

}  // namespace fracbern
