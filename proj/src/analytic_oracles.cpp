#include "fracbern/analytic_oracles.hpp"

#include <cmath>
#include <set>

namespace fracbern {

namespace {

void check_x01(double x, const char* who) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::domain_error(std::string(who) + ": argument outside [0,1]");
  }
}

// sum_{k>=0} s^k x^(step k) / Gamma(step k + offset), s = +-1; relative
// termination at the scope precision. All in-scope series are entire.
BigReal power_gamma_series(const BigReal& x, int step, double offset, bool alternating,
                           unsigned digits) {
  const BigReal tol = pow(BigReal(10), -static_cast<int>(digits) - 5);
  BigReal sum(0), xp(1);
  const BigReal xs = pow(x, step);
  for (int k = 0; k <= 400; ++k) {
    BigReal term = xp * exp(-lgamma(BigReal(step) * k + BigReal(offset)));
    if (alternating && (k & 1)) term = -term;
    sum += term;
    if (abs(term) <= tol * abs(sum)) return sum;
    xp *= xs;
  }
  throw AccuracyError("oracle series did not converge");
}

}  // namespace

BigReal exp_caputo_big(double alpha, const BigReal& x, unsigned digits) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw std::domain_error("exp_caputo: alpha must lie in (0,1]");
  }
  PrecisionScope scope(digits + 10);
  if (x == 0) return BigReal(0);
  const BigReal s = power_gamma_series(x, 1, 2.0 - alpha, false, digits);
  return pow(x, BigReal(1) - BigReal(alpha)) * s;
}

BigReal exp_integral_big(double alpha, const BigReal& x, unsigned digits) {
  if (!(alpha > 0.0)) throw std::domain_error("exp_integral: alpha must be > 0");
  PrecisionScope scope(digits + 10);
  if (x == 0) return BigReal(0);
  const BigReal s = power_gamma_series(x, 1, 1.0 + alpha, false, digits);
  return pow(x, BigReal(alpha)) * s;
}

BigReal sin_caputo_big(double alpha, const BigReal& x, unsigned digits) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw std::domain_error("sin_caputo: alpha must lie in (0,1]");
  }
  PrecisionScope scope(digits + 10);
  if (x == 0) return BigReal(0);
  const BigReal s = power_gamma_series(x, 2, 2.0 - alpha, true, digits);
  return pow(x, BigReal(1) - BigReal(alpha)) * s;
}

BigReal sin_integral_big(double alpha, const BigReal& x, unsigned digits) {
  if (!(alpha > 0.0)) throw std::domain_error("sin_integral: alpha must be > 0");
  PrecisionScope scope(digits + 10);
  if (x == 0) return BigReal(0);
  const BigReal s = power_gamma_series(x, 2, 2.0 + alpha, true, digits);
  return pow(x, BigReal(1) + BigReal(alpha)) * s;
}

double exp_caputo(double alpha, double x, unsigned digits) {
  check_x01(x, "exp_caputo");
  PrecisionScope scope(digits + 10);
  return exp_caputo_big(alpha, BigReal(x), digits).convert_to<double>();
}

double exp_integral(double alpha, double x, unsigned digits) {
  check_x01(x, "exp_integral");
  PrecisionScope scope(digits + 10);
  return exp_integral_big(alpha, BigReal(x), digits).convert_to<double>();
}

double sin_caputo(double alpha, double x, unsigned digits) {
  check_x01(x, "sin_caputo");
  PrecisionScope scope(digits + 10);
  return sin_caputo_big(alpha, BigReal(x), digits).convert_to<double>();
}

double sin_integral(double alpha, double x, unsigned digits) {
  check_x01(x, "sin_integral");
  PrecisionScope scope(digits + 10);
  return sin_integral_big(alpha, BigReal(x), digits).convert_to<double>();
}

BigReal mittag_leffler_big(double alpha, double beta, const BigReal& z,
                           unsigned digits) {
  if (!(alpha > 0) || !(beta > 0)) {
    throw std::domain_error("mittag_leffler_big: alpha and beta must be positive");
  }
  PrecisionScope scope(digits + 10);
  const BigReal tol = pow(BigReal(10), -static_cast<int>(digits) - 5);
  BigReal sum(0), zp(1);
  for (int k = 0; k <= 2000; ++k) {
    const BigReal term = zp * exp(-lgamma(BigReal(alpha) * k + BigReal(beta)));
    sum += term;
    if (abs(term) <= tol * abs(sum) && k >= 4) return sum;
    zp *= z;
  }
  throw AccuracyError("mittag_leffler_big: series did not converge");
}

double relaxation_exact(double k, double c, double alpha, double t, unsigned digits) {
  if (!(k > 0) || !(c > 0)) {
    throw std::domain_error("relaxation_exact: k and c must be positive");
  }
  check_x01(t, "relaxation_exact");
  PrecisionScope scope(digits + 10);
  if (t == 0.0) return 0.0;
  const BigReal z = -BigReal(k) / BigReal(c) * pow(BigReal(t), BigReal(alpha));
  const BigReal e = mittag_leffler_big(alpha, 1.0, z, digits);
  return ((BigReal(1) - e) / BigReal(k)).convert_to<double>();
}

double poly_fode_exact(double t) {
  return ((t - 3.0) * t + 2.0) * t * t * t;
}

double poly_fode_forcing(double k, double alpha, double t) {
  if (t == 0.0) return 0.0;
  const double g6 = std::exp((5.0 - alpha) * std::log(t) - std::lgamma(6.0 - alpha));
  const double g5 = std::exp((4.0 - alpha) * std::log(t) - std::lgamma(5.0 - alpha));
  const double g4 = std::exp((3.0 - alpha) * std::log(t) - std::lgamma(4.0 - alpha));
  const double u = poly_fode_exact(t);
  return 120.0 * g6 - 72.0 * g5 + 12.0 * g4 + k * u * u;
}

double oscillation_exact(double alpha, double t, int quad_nodes) {
  if (!(alpha > 0.0 && alpha < 2.0)) {
    throw std::domain_error("oscillation_exact: alpha must lie in (0,2)");
  }
  check_x01(t, "oscillation_exact");
  if (t == 0.0) return 0.0;
  // 2 int_0^sqrt(t) v^(2a-1) E_{a,a}(-v^(2a)) (t-v^2) e^-(t-v^2) dv
  const double vmax = std::sqrt(t);
  const JacobiRule rule = gauss_jacobi(quad_nodes, 0.0, 2.0 * alpha - 1.0);
  const MLParams ml{alpha, alpha, 1e-16, 200};
  const double acc = rule.apply([&](double s) {
    const double v = vmax * (1.0 + s) / 2.0;
    const double u = v * v;
    return mittag_leffler(ml, -std::pow(u, alpha)) * (t - u) * std::exp(-(t - u));
  });
  return 2.0 * std::pow(vmax / 2.0, 2.0 * alpha) * acc;
}

void OracleSpec::validate() const {
  if (!(tol > 0)) throw std::invalid_argument("OracleSpec: tol must be > 0");
  static const std::map<OracleId, std::set<std::string>> required = {
      {OracleId::ExpDeriv, {}},
      {OracleId::ExpInt, {}},
      {OracleId::SinDeriv, {}},
      {OracleId::SinInt, {}},
      {OracleId::Relaxation, {"k", "c"}},
      {OracleId::PolyFode, {"k"}},
      {OracleId::Oscillation, {}},
  };
  std::set<std::string> given;
  for (const auto& [name, value] : params) given.insert(name);
  if (given != required.at(id)) {
    throw std::invalid_argument("OracleSpec: parameter names do not match the oracle id");
  }
}

double evaluate(const OracleSpec& spec, double x) {
  spec.validate();
  switch (spec.id) {
    case OracleId::ExpDeriv:
      return exp_caputo(spec.alpha.alpha, x);
    case OracleId::ExpInt:
      return exp_integral(spec.alpha.alpha, x);
    case OracleId::SinDeriv:
      return sin_caputo(spec.alpha.alpha, x);
    case OracleId::SinInt:
      return sin_integral(spec.alpha.alpha, x);
    case OracleId::Relaxation:
      return relaxation_exact(spec.params.at("k"), spec.params.at("c"),
                              spec.alpha.alpha, x);
    case OracleId::PolyFode:
      return poly_fode_exact(x);
    case OracleId::Oscillation:
      return oscillation_exact(spec.alpha.alpha, x);
  }
  throw std::logic_error("evaluate: unknown oracle id");
}

}  // namespace fracbern
