#pragma once

#include <map>
#include <string>

#include "fracbern/frac_ops.hpp"

namespace fracbern {

// Reference values for the worked examples: series and convolution forms of
// the exact fractional derivatives/integrals and FODE solutions. Series run
// at a configurable digit count and are downcast at the boundary.

/// Caputo derivative of e^x on [0,1]: x^(1-a) sum_k x^k / Gamma(k+2-a), a in (0,1].
double exp_caputo(double alpha, double x, unsigned digits = 50);

/// RL integral of e^x: sum_k x^(k+a) / Gamma(k+1+a), a > 0.
double exp_integral(double alpha, double x, unsigned digits = 50);

/// Caputo derivative of sin x: x^(1-a) sum_k (-1)^k x^(2k) / Gamma(2k+2-a).
double sin_caputo(double alpha, double x, unsigned digits = 50);

/// RL integral of sin x: sum_k (-1)^k x^(2k+1+a) / Gamma(2k+2+a).
double sin_integral(double alpha, double x, unsigned digits = 50);

BigReal exp_caputo_big(double alpha, const BigReal& x, unsigned digits = 50);
BigReal exp_integral_big(double alpha, const BigReal& x, unsigned digits = 50);
BigReal sin_caputo_big(double alpha, const BigReal& x, unsigned digits = 50);
BigReal sin_integral_big(double alpha, const BigReal& x, unsigned digits = 50);

/// Mittag-Leffler series in extended precision.
BigReal mittag_leffler_big(double alpha, double beta, const BigReal& z,
                           unsigned digits = 50);

/// Exact solution of c D^a x + k x = 1, x(0) = 0:
/// (1/k)(1 - E_{a,1}(-(k/c) t^a)).
double relaxation_exact(double k, double c, double alpha, double t,
                        unsigned digits = 50);

/// Exact solution t^5 - 3 t^4 + 2 t^3 of the quintic test problem.
double poly_fode_exact(double t);

/// Forcing f(t) with D^a x + k x^2 = f and the quintic exact solution.
double poly_fode_forcing(double k, double alpha, double t);

// Convolution solution of D^a x + x = t e^-t (zero initial data):
// int_0^t G(t-s) s e^-s ds with G(u) = u^(a-1) E_{a,a}(-u^a). The kernel is
// integrated after the substitution u = v^2, which turns the u^(a-1) endpoint
// weight and the u^(a k) series terms into a smooth Jacobi-weighted integrand.
double oscillation_exact(double alpha, double t, int quad_nodes = 60);

enum class OracleId { ExpDeriv, ExpInt, SinDeriv, SinInt, Relaxation, PolyFode, Oscillation };

struct OracleSpec {
  OracleId id;
  FracOrder alpha;
  std::map<std::string, double> params;
  double tol = 1e-12;

  /// Checks tol > 0 and that params carries exactly the names the id needs.
  void validate() const;
};

/// Evaluates the referenced oracle at x (t for the FODE solutions).
double evaluate(const OracleSpec& spec, double x);

}  // namespace fracbern
