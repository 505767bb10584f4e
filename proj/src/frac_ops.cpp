#include "fracbern/frac_ops.hpp"

#include <cmath>

namespace fracbern {

namespace {

Backend::Kind resolve(const Backend& backend, const BernsteinPoly& p) {
  if (backend.kind != Backend::Auto) return backend.kind;
  if (p.precision_mode().extended || p.degree() <= kCancelDegreeLimit) {
    return Backend::ClosedForm;
  }
  return Backend::Quadrature;
}

void check_unit_interval(double x, const char* who) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::domain_error(std::string(who) + ": x must lie in [0,1], got " +
                            std::to_string(x));
  }
}

// Term-wise Gamma-ratio scaling of the power-basis expansion:
//   sum_{k>=k_min} gamma_k Gamma(k+1)/Gamma(k+1 -+ alpha) x^(k -+ alpha).
// k_min = m drops exactly the Caputo correction terms of the relation
// between the two derivative kinds; k_min = 0 gives the RL form.
template <class Real>
Real closed_form_value(std::vector<Real> samples, double alpha, int k_min,
                       bool integral, const Real& x) {
  using std::pow;
  const std::vector<Real> g = detail::power_basis_coeffs(std::move(samples));
  const int n = static_cast<int>(g.size()) - 1;
  const Real alpha_r(alpha);
  auto exponent = [&](int k) {
    return integral ? Real(k) + alpha_r : Real(k) - alpha_r;
  };
  auto ratio = [&](int k) {
    return gamma_ratio(Real(k + 1),
                       integral ? Real(k + 1) + alpha_r : Real(k + 1) - alpha_r);
  };
  if (x == 0) {
    Real acc(0);
    for (int k = k_min; k <= n; ++k) {
      const Real e = exponent(k);
      if (e > 0) break;
      // a vanishing Gamma-ratio (integer order) removes the term entirely
      if (g[k] == 0 || ratio(k) == 0) continue;
      if (e < 0) {
        throw std::domain_error(
            "closed form: singular at x = 0 (negative exponent with nonzero "
            "coefficient)");
      }
      acc += g[k] * ratio(k);
    }
    return acc;
  }
  CompensatedSum<Real> sum;
  Real xp = pow(x, exponent(k_min));
  for (int k = k_min; k <= n; ++k) {
    sum.add(g[k] * ratio(k) * xp);
    xp *= x;
  }
  return sum.value();
}

// Dispatches a left-sided closed form in the poly's precision mode.
double closed_form_left(const BernsteinPoly& p, double alpha, int k_min,
                        bool integral, double x) {
  if (!p.precision_mode().extended) {
    if (p.degree() > kCancelDegreeLimit) throw CancellationOverflow(p.degree());
    return closed_form_value<double>(p.coeffs(), alpha, k_min, integral, x);
  }
  const unsigned wd = working_digits(p.degree(), p.precision_mode().digits);
  PrecisionScope scope(wd);
  std::vector<BigReal> samples;
  samples.reserve(p.coeffs_big().size());
  for (const BigReal& c : p.coeffs_big()) samples.emplace_back(c, wd);
  return closed_form_value<BigReal>(std::move(samples), alpha, k_min, integral,
                                    BigReal(x))
      .convert_to<double>();
}

int default_caputo_nodes(int n, int m) { return std::max(1, (n - m + 3) / 2); }
int default_integral_nodes(int n) { return (n + 3) / 2; }

void check_node_count(int nodes, int minimum) {
  if (nodes < minimum) {
    throw std::invalid_argument("quadrature node count " + std::to_string(nodes) +
                                " is below the exactness threshold " +
                                std::to_string(minimum));
  }
}

// (1/Gamma(m-alpha)) int_0^x (x-t)^(m-alpha-1) p^(m)(t) dt with the kernel
// taken as the Jacobi weight, so the rule is exact for the polynomial factor.
double caputo_quadrature(const BernsteinPoly& p, const FracOrder& ord, double x,
                         int nodes) {
  const int n = p.degree();
  if (ord.m > n) return 0.0;  // m-th derivative vanishes identically
  if (x == 0.0) return 0.0;
  const int n_nodes = nodes > 0 ? nodes : default_caputo_nodes(n, ord.m);
  check_node_count(n_nodes, std::max(1, (n - ord.m + 2) / 2));
  const BernsteinPoly pm = derivative(p, ord.m);
  const JacobiRule rule = gauss_jacobi(n_nodes, ord.m - ord.alpha - 1.0, 0.0);
  const double acc =
      rule.apply([&](double s) { return eval(pm, x * (1.0 + s) / 2.0); });
  return std::pow(x / 2.0, ord.m - ord.alpha) * acc / std::tgamma(ord.m - ord.alpha);
}

double integral_quadrature(const BernsteinPoly& p, double alpha, double x,
                           int nodes) {
  if (x == 0.0) return 0.0;
  const int n = p.degree();
  const int n_nodes = nodes > 0 ? nodes : default_integral_nodes(n);
  check_node_count(n_nodes, std::max(1, (n + 1) / 2));
  const JacobiRule rule = gauss_jacobi(n_nodes, alpha - 1.0, 0.0);
  const double acc =
      rule.apply([&](double s) { return eval(p, x * (1.0 + s) / 2.0); });
  return std::pow(x / 2.0, alpha) * acc / std::tgamma(alpha);
}

// RL derivative from the Caputo value plus the endpoint terms
// sum_{k<m} p^(k)(0) x^(k-alpha) / Gamma(k+1-alpha).
double rl_correction(const BernsteinPoly& p, const FracOrder& ord, double x) {
  double acc = 0.0;
  for (int k = 0; k < ord.m && k <= p.degree(); ++k) {
    const double pk0 = derivative(p, k).coeffs()[0];
    const double coeff = pk0 * gamma_ratio(1.0, k + 1.0 - ord.alpha);
    const double e = k - ord.alpha;
    if (x == 0.0) {
      if (coeff == 0.0) continue;
      if (e < 0) {
        throw std::domain_error("RL derivative: singular at the interval endpoint");
      }
      if (e == 0) acc += coeff;
    } else {
      acc += coeff * std::pow(x, e);
    }
  }
  return acc;
}

}  // namespace

double caputo_left(const BernsteinPoly& p, const FracOrder& ord, double x,
                   Backend backend) {
  check_unit_interval(x, "caputo_left");
  if (resolve(backend, p) == Backend::ClosedForm) {
    return closed_form_left(p, ord.alpha, ord.m, false, x);
  }
  return caputo_quadrature(p, ord, x, backend.nodes);
}

double caputo_right(const BernsteinPoly& p, const FracOrder& ord, double x,
                    Backend backend) {
  check_unit_interval(x, "caputo_right");
  return caputo_left(p.reflected(), ord, 1.0 - x, backend);
}

double rl_derivative_left(const BernsteinPoly& p, const FracOrder& ord, double x,
                          Backend backend) {
  check_unit_interval(x, "rl_derivative_left");
  if (resolve(backend, p) == Backend::ClosedForm) {
    return closed_form_left(p, ord.alpha, 0, false, x);
  }
  return caputo_quadrature(p, ord, x, backend.nodes) + rl_correction(p, ord, x);
}

double rl_derivative_right(const BernsteinPoly& p, const FracOrder& ord, double x,
                           Backend backend) {
  check_unit_interval(x, "rl_derivative_right");
  return rl_derivative_left(p.reflected(), ord, 1.0 - x, backend);
}

double rl_integral_left(const BernsteinPoly& p, double alpha, double x,
                        Backend backend) {
  check_unit_interval(x, "rl_integral_left");
  if (!(alpha > 0)) throw std::domain_error("rl_integral_left: alpha must be > 0");
  if (resolve(backend, p) == Backend::ClosedForm) {
    return closed_form_left(p, alpha, 0, true, x);
  }
  return integral_quadrature(p, alpha, x, backend.nodes);
}

double rl_integral_right(const BernsteinPoly& p, double alpha, double x,
                         Backend backend) {
  check_unit_interval(x, "rl_integral_right");
  return rl_integral_left(p.reflected(), alpha, 1.0 - x, backend);
}

double apply(const OperatorSpec& spec, const BernsteinPoly& p, double x) {
  switch (spec.kind) {
    case OpKind::CaputoDerivative:
      return spec.side == Side::Left ? caputo_left(p, spec.order, x, spec.backend)
                                     : caputo_right(p, spec.order, x, spec.backend);
    case OpKind::RLDerivative:
      return spec.side == Side::Left
                 ? rl_derivative_left(p, spec.order, x, spec.backend)
                 : rl_derivative_right(p, spec.order, x, spec.backend);
    case OpKind::RLIntegral:
      return spec.side == Side::Left
                 ? rl_integral_left(p, spec.order.alpha, x, spec.backend)
                 : rl_integral_right(p, spec.order.alpha, x, spec.backend);
  }
  throw std::logic_error("apply: unknown operator kind");
}

PreparedOperator::PreparedOperator(const OperatorSpec& spec, const BernsteinPoly& p)
    : side_(spec.side),
      integral_(spec.kind == OpKind::RLIntegral),
      alpha_(spec.order.alpha),
      k_min_(spec.kind == OpKind::CaputoDerivative ? spec.order.m : 0) {
  const PrecisionMode mode = p.precision_mode();
  work_digits_ = working_digits(p.degree(), mode.extended ? mode.digits : 16u);
  PrecisionScope scope(work_digits_);
  const BernsteinPoly src = (side_ == Side::Left) ? p : p.reflected();
  std::vector<BigReal> samples;
  samples.reserve(src.coeffs().size());
  if (mode.extended) {
    for (const BigReal& c : src.coeffs_big()) samples.emplace_back(c, work_digits_);
  } else {
    for (double c : src.coeffs()) samples.emplace_back(c);
  }
  std::vector<BigReal> g = detail::power_basis_coeffs(std::move(samples));
  const BigReal alpha_r(alpha_);
  scaled_.reserve(g.size() - k_min_);
  for (int k = k_min_; k < static_cast<int>(g.size()); ++k) {
    const BigReal b = integral_ ? BigReal(k + 1) + alpha_r : BigReal(k + 1) - alpha_r;
    scaled_.push_back(g[k] * gamma_ratio(BigReal(k + 1), b));
  }
}

BigReal PreparedOperator::eval_big(const BigReal& x) const {
  PrecisionScope scope(work_digits_);
  if (x < 0 || x > 1) throw std::domain_error("PreparedOperator: x outside [0,1]");
  const BigReal u = (side_ == Side::Left) ? BigReal(x, work_digits_)
                                          : BigReal(1) - BigReal(x, work_digits_);
  const BigReal alpha_r(alpha_);
  auto exponent = [&](int k) {
    return integral_ ? BigReal(k) + alpha_r : BigReal(k) - alpha_r;
  };
  if (u == 0) {
    BigReal acc(0);
    for (std::size_t i = 0; i < scaled_.size(); ++i) {
      const BigReal e = exponent(k_min_ + static_cast<int>(i));
      if (e > 0) break;
      if (scaled_[i] == 0) continue;
      if (e < 0) {
        throw std::domain_error("PreparedOperator: singular at the interval endpoint");
      }
      acc += scaled_[i];
    }
    return acc;
  }
  CompensatedSum<BigReal> sum;
  BigReal up = pow(u, exponent(k_min_));
  for (std::size_t i = 0; i < scaled_.size(); ++i) {
    sum.add(scaled_[i] * up);
    up *= u;
  }
  return sum.value();
}

double PreparedOperator::operator()(double x) const {
  PrecisionScope scope(work_digits_);
  return eval_big(BigReal(x)).convert_to<double>();
}

}  // namespace fracbern
