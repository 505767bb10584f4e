#pragma once

#include "fracbern/poly_core.hpp"
#include "fracbern/special.hpp"

namespace fracbern {

/// Fractional order alpha >= 0 with its integer bracket m-1 <= alpha < m.
struct FracOrder {
  double alpha;
  int m;

  explicit FracOrder(double a) : alpha(a), m(static_cast<int>(std::floor(a)) + 1) {
    if (!(a >= 0)) throw std::domain_error("FracOrder: alpha must be nonnegative");
  }
};

enum class Side { Left, Right };
enum class OpKind { CaputoDerivative, RLDerivative, RLIntegral };

// Evaluation backend. Auto resolves to ClosedForm for Extended-mode polys and
// for degrees <= kCancelDegreeLimit, and to Quadrature otherwise (the stable
// default for large degrees in Double mode).
struct Backend {
  enum Kind { Auto, ClosedForm, Quadrature } kind = Auto;
  int nodes = 0;  // Quadrature node count; 0 picks the exactness default

  static Backend closed_form() { return {ClosedForm, 0}; }
  static Backend quadrature(int n_nodes = 0) { return {Quadrature, n_nodes}; }
};

struct OperatorSpec {
  Side side;
  OpKind kind;
  FracOrder order;
  Backend backend;
};

double rl_derivative_left(const BernsteinPoly& p, const FracOrder& ord, double x,
                          Backend backend = {});
double rl_derivative_right(const BernsteinPoly& p, const FracOrder& ord, double x,
                           Backend backend = {});
double caputo_left(const BernsteinPoly& p, const FracOrder& ord, double x,
                   Backend backend = {});
double caputo_right(const BernsteinPoly& p, const FracOrder& ord, double x,
                    Backend backend = {});
double rl_integral_left(const BernsteinPoly& p, double alpha, double x,
                        Backend backend = {});
double rl_integral_right(const BernsteinPoly& p, double alpha, double x,
                         Backend backend = {});

double apply(const OperatorSpec& spec, const BernsteinPoly& p, double x);

// Closed-form operator bound to one (poly, order, kind, side): the scaled
// power-basis coefficients are prepared once, after which each evaluation
// costs O(n). Used by the error harness across grid sweeps.
class PreparedOperator {
 public:
  PreparedOperator(const OperatorSpec& spec, const BernsteinPoly& p);

  double operator()(double x) const;
  BigReal eval_big(const BigReal& x) const;

 private:
  Side side_;
  bool integral_;
  double alpha_;
  int k_min_;
  unsigned work_digits_;
  std::vector<BigReal> scaled_;  // gamma_k * Gamma(k+1)/Gamma(k+1 -+ alpha)
};

}  // namespace fracbern
