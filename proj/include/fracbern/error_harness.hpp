#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fracbern/analytic_oracles.hpp"
#include "fracbern/fode_solver.hpp"

namespace fracbern {

inline constexpr int kDefaultGridN = 100;

// Grid-error record: alpha_signed keeps the sign convention positive =
// derivative, negative = integral.
struct ErrorReport {
  int n = 0;
  double alpha_signed = 0.0;
  int grid_n = kDefaultGridN;
  double max_error = 0.0;
  std::vector<std::pair<double, double>> per_point;  // (x_j, error)
  std::optional<double> eoc_vs_half;
  bool non_finite = false;  // flagged, never silently dropped

  double at(double x, double eps = 1e-12) const;
};

/// Pointwise |oracle - approx| on x_j = j/N, j = 1..N, left to right.
ErrorReport grid_error(const std::function<double(double)>& approx,
                       const std::function<double(double)>& oracle, int N);

/// Experimental order of convergence |log2 |e_2n / e_n||.
double eoc(double e_n, double e_2n);

enum class TableKind { EC, EI, EOC_D, EOC_I };
enum class ExampleFn { Exp, Sin };

struct Table {
  std::vector<std::string> header;   // first column name + one per data column
  std::vector<double> row_keys;      // x for EC/EI, n for EOC tables
  std::vector<std::vector<double>> rows;

  double cell(double row_key, int column) const;
};

// EC/EI: pointwise approximation errors at x = 0.0, 0.2, ..., 1.0 (rows)
// for each degree in ns (columns); uses alphas[0].
// EOC_D/EOC_I: rows are the degrees in ns, columns the alphas; each cell is
// eoc(E(n), E(2n)) with E(n) the endpoint error at x = 1, where the grid
// error curves of both operators attain their largest values.
Table table(TableKind kind, ExampleFn example, const std::vector<double>& alphas,
            const std::vector<int>& ns, unsigned digits = 50);

/// Endpoint error |oracle(1) - D/I of B_n at 1| in the extended pipeline.
double endpoint_error(ExampleFn example, bool derivative, double alpha, int n,
                      unsigned digits = 50);

/// CSV per the interchange contract: 10 fractional digits, LF endings.
std::string to_csv(const Table& t);

/// Writes atomically (temp file + rename).
void write_file_atomic(const std::string& path, const std::string& content);

/// Solves at each degree in ns and reports grid errors against the oracle.
std::vector<ErrorReport> fode_error_curve(const FodeProblem& problem,
                                          const std::function<double(double)>& oracle,
                                          const std::vector<int>& ns, int grid_N);

}  // namespace fracbern
