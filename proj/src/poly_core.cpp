#include "fracbern/poly_core.hpp"

#include <cmath>

namespace fracbern {

BernsteinPoly::BernsteinPoly(std::vector<double> coeffs, PrecisionMode mode)
    : coeffs_(std::move(coeffs)), mode_(mode) {
  if (coeffs_.empty()) throw std::invalid_argument("BernsteinPoly: empty coefficients");
  if (mode_.extended) {
    PrecisionScope scope(mode_.digits);
    coeffs_big_.reserve(coeffs_.size());
    for (double c : coeffs_) coeffs_big_.emplace_back(c);
  }
}

BernsteinPoly::BernsteinPoly(std::vector<BigReal> coeffs, PrecisionMode mode)
    : coeffs_big_(std::move(coeffs)), mode_(mode) {
  if (coeffs_big_.empty()) throw std::invalid_argument("BernsteinPoly: empty coefficients");
  if (!mode_.extended) mode_ = PrecisionMode::Extended(50);
  coeffs_.reserve(coeffs_big_.size());
  for (const BigReal& c : coeffs_big_) coeffs_.push_back(c.convert_to<double>());
}

BernsteinPoly BernsteinPoly::reflected() const {
  if (mode_.extended) {
    std::vector<BigReal> rc(coeffs_big_.rbegin(), coeffs_big_.rend());
    return BernsteinPoly(std::move(rc), mode_);
  }
  std::vector<double> rc(coeffs_.rbegin(), coeffs_.rend());
  return BernsteinPoly(std::move(rc), mode_);
}

BernsteinPoly sample_function(const std::function<double(double)>& f, int n,
                              PrecisionMode mode) {
  if (n < 1) throw std::invalid_argument("sample_function: degree must be >= 1");
  std::vector<double> b(n + 1);
  for (int i = 0; i <= n; ++i) {
    b[i] = f(static_cast<double>(i) / n);
    if (!std::isfinite(b[i])) {
      throw std::domain_error("sample_function: non-finite sample at " +
                              std::to_string(i) + "/" + std::to_string(n));
    }
  }
  return BernsteinPoly(std::move(b), mode);
}

BernsteinPoly sample_function_big(const std::function<BigReal(const BigReal&)>& f,
                                  int n, unsigned digits) {
  if (n < 1) throw std::invalid_argument("sample_function_big: degree must be >= 1");
  PrecisionScope scope(working_digits(n, digits));
  std::vector<BigReal> b;
  b.reserve(n + 1);
  for (int i = 0; i <= n; ++i) {
    BigReal xi(i);
    xi /= n;
    b.push_back(f(xi));
    if (!isfinite(b.back())) {
      throw std::domain_error("sample_function_big: non-finite sample at " +
                              std::to_string(i) + "/" + std::to_string(n));
    }
  }
  return BernsteinPoly(std::move(b), PrecisionMode::Extended(digits));
}

double eval(const BernsteinPoly& p, double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::domain_error("eval: x must lie in [0,1], got " + std::to_string(x));
  }
  return detail::de_casteljau(p.coeffs(), x);
}

BigReal eval_big(const BernsteinPoly& p, const BigReal& x) {
  if (x < 0 || x > 1) throw std::domain_error("eval_big: x must lie in [0,1]");
  if (!p.coeffs_big().empty()) return detail::de_casteljau(p.coeffs_big(), x);
  PrecisionScope scope(x.precision());
  std::vector<BigReal> c;
  c.reserve(p.coeffs().size());
  for (double v : p.coeffs()) c.emplace_back(v);
  return detail::de_casteljau(std::move(c), x);
}

namespace {

template <class Real>
std::vector<Real> derivative_coeffs(std::vector<Real> b, int q) {
  const int n = static_cast<int>(b.size()) - 1;
  Real factor(1);
  for (int j = 0; j < q; ++j) {
    factor *= n - j;
    for (int i = 0; i + j < n; ++i) b[i] = b[i + 1] - b[i];
  }
  b.resize(n - q + 1);
  for (Real& v : b) v *= factor;
  return b;
}

}  // namespace

BernsteinPoly derivative(const BernsteinPoly& p, int order) {
  if (order < 0) throw std::invalid_argument("derivative: order must be >= 0");
  if (order > p.degree()) {
    throw std::domain_error("derivative: order " + std::to_string(order) +
                            " exceeds degree " + std::to_string(p.degree()));
  }
  if (order == 0) return p;
  if (p.precision_mode().extended) {
    PrecisionScope scope(working_digits(p.degree(), p.precision_mode().digits));
    return BernsteinPoly(derivative_coeffs(p.coeffs_big(), order), p.precision_mode());
  }
  return BernsteinPoly(derivative_coeffs(p.coeffs(), order), p.precision_mode());
}

double MonomialExpansion::eval(double x) const {
  if (!coeffs_ext.empty()) return eval_big(BigReal(x)).convert_to<double>();
  const double u = (basis == Basis::PowersOfX) ? x : 1.0 - x;
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * u + *it;
  return acc;
}

BigReal MonomialExpansion::eval_big(const BigReal& x) const {
  PrecisionScope scope(std::max<unsigned>(x.precision(),
                                          mode.extended ? mode.digits : 16u));
  const BigReal u = (basis == Basis::PowersOfX) ? x : BigReal(1) - x;
  BigReal acc(0);
  if (!coeffs_ext.empty()) {
    for (auto it = coeffs_ext.rbegin(); it != coeffs_ext.rend(); ++it) {
      acc = acc * u + *it;
    }
  } else {
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * u + *it;
  }
  return acc;
}

MonomialExpansion expand(const BernsteinPoly& p, Basis basis) {
  const BernsteinPoly src = (basis == Basis::PowersOfX) ? p : p.reflected();
  MonomialExpansion out;
  out.basis = basis;
  out.mode = p.precision_mode();
  if (!out.mode.extended) {
    if (p.degree() > kCancelDegreeLimit) throw CancellationOverflow(p.degree());
    out.coeffs = detail::power_basis_coeffs(src.coeffs());
    return out;
  }
  const unsigned digits = out.mode.digits;
  // Stored coefficients are rounded to the requested digits, which breaks the
  // error cancellation the evaluation pipeline enjoys; the expansion itself
  // therefore runs at the stricter per-coefficient precision.
  const unsigned wp =
      std::max(working_digits(p.degree(), digits),
               digits + 12u + static_cast<unsigned>((p.degree() * 12 + 24) / 25));
  PrecisionScope scope(wp);
  std::vector<BigReal> work = src.coeffs_big();
  for (BigReal& v : work) v = BigReal(v, wp);
  std::vector<BigReal> g = detail::power_basis_coeffs(std::move(work));
  out.coeffs_ext.reserve(g.size());
  out.coeffs.reserve(g.size());
  for (const BigReal& v : g) {
    out.coeffs_ext.emplace_back(v, digits);
    out.coeffs.push_back(v.convert_to<double>());
  }
  return out;
}

}  // namespace fracbern
