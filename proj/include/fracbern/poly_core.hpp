#pragma once

#include <functional>
#include <vector>

#include "fracbern/numerics.hpp"

namespace fracbern {

enum class Basis { PowersOfX, PowersOfOneMinusX };

// Polynomial in the Bernstein basis C(n,i) x^i (1-x)^(n-i) on [0,1].
// Immutable after construction. In Extended mode a full-precision coefficient
// mirror is kept alongside the double view.
class BernsteinPoly {
 public:
  BernsteinPoly(std::vector<double> coeffs,
                PrecisionMode mode = PrecisionMode::Double());
  BernsteinPoly(std::vector<BigReal> coeffs, PrecisionMode mode);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<double>& coeffs() const { return coeffs_; }
  const std::vector<BigReal>& coeffs_big() const { return coeffs_big_; }
  PrecisionMode precision_mode() const { return mode_; }

  /// Same coefficients read right-to-left: q(x) = p(1-x).
  BernsteinPoly reflected() const;

 private:
  std::vector<double> coeffs_;
  std::vector<BigReal> coeffs_big_;
  PrecisionMode mode_;
};

/// Degree-n poly with b_i = f(i/n); rejects non-finite samples.
BernsteinPoly sample_function(const std::function<double(double)>& f, int n,
                              PrecisionMode mode = PrecisionMode::Double());

/// Extended-mode sampling with full-precision arguments i/n.
BernsteinPoly sample_function_big(const std::function<BigReal(const BigReal&)>& f,
                                  int n, unsigned digits = 50);

/// De Casteljau evaluation; x must lie in [0,1].
double eval(const BernsteinPoly& p, double x);
BigReal eval_big(const BernsteinPoly& p, const BigReal& x);

/// q-th derivative: degree n-q poly with coefficients n!/(n-q)! Delta^q b_i.
BernsteinPoly derivative(const BernsteinPoly& p, int order);

// Expansion of the poly in plain powers of x or of (1-x).
// coeffs[k] multiplies u^k where u is the basis variable. The double view is
// always present; Extended mode also stores coefficients at the requested
// digit count.
struct MonomialExpansion {
  Basis basis = Basis::PowersOfX;
  PrecisionMode mode;
  std::vector<double> coeffs;
  std::vector<BigReal> coeffs_ext;

  double eval(double x) const;
  BigReal eval_big(const BigReal& x) const;
};

// Power-basis coefficients. In Double mode degrees above kCancelDegreeLimit
// are refused (CancellationOverflow); Extended mode computes at an
// internally elevated working precision and stores at the requested digits.
MonomialExpansion expand(const BernsteinPoly& p, Basis basis);

namespace detail {

// Coefficient of u^k in the power-basis form of a Bernstein poly:
// gamma_k = C(n,k) Delta^k b_0, with pairwise (not binomial-sum) differences.
template <class Real>
std::vector<Real> power_basis_coeffs(std::vector<Real> b) {
  const int n = static_cast<int>(b.size()) - 1;
  std::vector<Real> g(n + 1);
  Real binom(1);
  for (int k = 0; k <= n; ++k) {
    g[k] = binom * b[0];
    for (int i = 0; i + k < n; ++i) b[i] = b[i + 1] - b[i];
    binom *= n - k;
    binom /= k + 1;
  }
  return g;
}

template <class Real>
Real de_casteljau(std::vector<Real> c, const Real& x) {
  const Real omx = Real(1) - x;
  for (std::size_t len = c.size() - 1; len > 0; --len) {
    for (std::size_t i = 0; i < len; ++i) {
      c[i] = omx * c[i] + x * c[i + 1];
    }
  }
  return c[0];
}

}  // namespace detail

}  // namespace fracbern
