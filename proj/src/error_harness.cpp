#include "fracbern/error_harness.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>

namespace fracbern {

double ErrorReport::at(double x, double eps) const {
  for (const auto& [xj, err] : per_point) {
    if (std::abs(xj - x) <= eps) return err;
  }
  throw std::out_of_range("ErrorReport::at: no grid point near x = " +
                          std::to_string(x));
}

ErrorReport grid_error(const std::function<double(double)>& approx,
                       const std::function<double(double)>& oracle, int N) {
  if (N < 1) throw std::invalid_argument("grid_error: N must be >= 1");
  ErrorReport report;
  report.grid_n = N;
  report.per_point.reserve(N);
  for (int j = 1; j <= N; ++j) {
    const double x = static_cast<double>(j) / N;
    const double e = std::abs(oracle(x) - approx(x));
    if (!std::isfinite(e)) report.non_finite = true;
    report.per_point.emplace_back(x, e);
    if (std::isfinite(e)) report.max_error = std::max(report.max_error, e);
  }
  return report;
}

double eoc(double e_n, double e_2n) {
  if (!(e_n > 0.0) || !(e_2n > 0.0)) {
    throw std::domain_error("eoc: both errors must be positive");
  }
  return std::abs(std::log2(std::abs(e_2n / e_n)));
}

namespace {

BernsteinPoly sampled(ExampleFn example, int n, unsigned digits) {
  if (example == ExampleFn::Exp) {
    return sample_function_big([](const BigReal& x) { return exp(x); }, n, digits);
  }
  return sample_function_big([](const BigReal& x) { return sin(x); }, n, digits);
}

BigReal oracle_big(ExampleFn example, bool derivative, double alpha, const BigReal& x,
                   unsigned digits) {
  if (example == ExampleFn::Exp) {
    return derivative ? exp_caputo_big(alpha, x, digits)
                      : exp_integral_big(alpha, x, digits);
  }
  return derivative ? sin_caputo_big(alpha, x, digits)
                    : sin_integral_big(alpha, x, digits);
}

PreparedOperator prepared(const BernsteinPoly& p, bool derivative, double alpha) {
  const OpKind kind = derivative ? OpKind::CaputoDerivative : OpKind::RLIntegral;
  return PreparedOperator({Side::Left, kind, FracOrder(alpha), {}}, p);
}

double point_error(const PreparedOperator& op, ExampleFn example, bool derivative,
                   double alpha, double x, unsigned digits) {
  PrecisionScope scope(digits + 10);
  const BigReal xb(x);
  const BigReal diff = oracle_big(example, derivative, alpha, xb, digits) -
                       op.eval_big(xb);
  return abs(diff).convert_to<double>();
}

}  // namespace

double endpoint_error(ExampleFn example, bool derivative, double alpha, int n,
                      unsigned digits) {
  const BernsteinPoly p = sampled(example, n, digits);
  const PreparedOperator op = prepared(p, derivative, alpha);
  return point_error(op, example, derivative, alpha, 1.0, digits);
}

Table table(TableKind kind, ExampleFn example, const std::vector<double>& alphas,
            const std::vector<int>& ns, unsigned digits) {
  if (alphas.empty() || ns.empty()) {
    throw std::invalid_argument("table: alphas and ns must be nonempty");
  }
  Table out;
  const bool derivative = (kind == TableKind::EC || kind == TableKind::EOC_D);
  if (kind == TableKind::EC || kind == TableKind::EI) {
    const double alpha = alphas.front();
    const char* tag = derivative ? "EC" : "EI";
    out.header.push_back("x");
    for (int n : ns) out.header.push_back(std::string(tag) + "_" + std::to_string(n));
    for (int r = 0; r <= 5; ++r) out.row_keys.push_back(0.2 * r);
    out.rows.assign(out.row_keys.size(), {});
    for (std::size_t c = 0; c < ns.size(); ++c) {
      const BernsteinPoly p = sampled(example, ns[c], digits);
      const PreparedOperator op = prepared(p, derivative, alpha);
      for (std::size_t r = 0; r < out.row_keys.size(); ++r) {
        const double x = out.row_keys[r];
        out.rows[r].push_back(
            x == 0.0 ? 0.0 : point_error(op, example, derivative, alpha, x, digits));
      }
    }
    return out;
  }
  // EOC tables: cell(n, alpha) = |log2(E(2n)/E(n))| from endpoint errors
  out.header.push_back("n");
  for (double a : alphas) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "EOC_%g", a);
    out.header.push_back(buf);
  }
  std::map<std::pair<int, int>, double> cache;  // (n, alpha index) -> E(n)
  auto endpoint = [&](int n, int ai) {
    auto key = std::make_pair(n, ai);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    const double e = endpoint_error(example, derivative, alphas[ai], n, digits);
    cache.emplace(key, e);
    return e;
  };
  for (int n : ns) {
    out.row_keys.push_back(n);
    std::vector<double> row;
    for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
      row.push_back(eoc(endpoint(n, static_cast<int>(ai)),
                        endpoint(2 * n, static_cast<int>(ai))));
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

double Table::cell(double row_key, int column) const {
  for (std::size_t r = 0; r < row_keys.size(); ++r) {
    if (std::abs(row_keys[r] - row_key) <= 1e-12) return rows[r].at(column);
  }
  throw std::out_of_range("Table::cell: no row with key " + std::to_string(row_key));
}

std::string to_csv(const Table& t) {
  std::string out;
  for (std::size_t i = 0; i < t.header.size(); ++i) {
    if (i) out += ',';
    out += t.header[i];
  }
  out += '\n';
  char buf[64];
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const bool integer_key = std::floor(t.row_keys[r]) == t.row_keys[r] &&
                             t.row_keys[r] >= 2.0;
    if (integer_key) {
      std::snprintf(buf, sizeof buf, "%d", static_cast<int>(t.row_keys[r]));
    } else {
      std::snprintf(buf, sizeof buf, "%.10f", t.row_keys[r]);
    }
    out += buf;
    for (double v : t.rows[r]) {
      std::snprintf(buf, sizeof buf, ",%.10f", v);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output path: " + tmp);
    f << content;
    if (!f) throw std::runtime_error("write failed: " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

std::vector<ErrorReport> fode_error_curve(const FodeProblem& problem,
                                          const std::function<double(double)>& oracle,
                                          const std::vector<int>& ns, int grid_N) {
  std::vector<ErrorReport> out;
  out.reserve(ns.size());
  double prev_error = 0.0;
  bool have_prev = false;
  int prev_n = 0;
  for (int n : ns) {
    const AnsatzSolution sol = solve(problem, n);
    ErrorReport rep = grid_error([&](double t) { return eval_solution(sol, t); },
                                 oracle, grid_N);
    rep.n = n;
    rep.alpha_signed = problem.order.alpha;
    if (have_prev && n == 2 * prev_n && prev_error > 0 && rep.max_error > 0) {
      rep.eoc_vs_half = eoc(prev_error, rep.max_error);
    }
    prev_error = rep.max_error;
    prev_n = n;
    have_prev = true;
    out.push_back(std::move(rep));
  }
  return out;
}

}  // namespace fracbern
