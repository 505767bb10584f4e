#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "fracbern/error_harness.hpp"

using namespace fracbern;

TEST_CASE("grid_error basics") {
  auto f = [](double x) { return std::sin(3 * x); };
  const ErrorReport same = grid_error(f, f, 100);
  CHECK(same.max_error == 0.0);
  CHECK(same.per_point.size() == 100);
  CHECK(same.per_point.front().first == doctest::Approx(0.01));
  CHECK(same.per_point.back().first == doctest::Approx(1.0));
  // recomputed max matches the stored per-point values
  double recomputed = 0.0;
  for (const auto& [x, e] : same.per_point) recomputed = std::max(recomputed, e);
  CHECK(recomputed == same.max_error);
}

TEST_CASE("grid_error flags non-finite values") {
  auto approx = [](double) { return 1.0; };
  auto oracle = [](double x) {
    return x == 0.5 ? std::numeric_limits<double>::quiet_NaN() : 1.0;
  };
  const ErrorReport r = grid_error(approx, oracle, 10);
  CHECK(r.non_finite);
  CHECK(r.per_point.size() == 10);
}

TEST_CASE("eoc arithmetic") {
  CHECK(eoc(2e-3, 1e-3) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(eoc(0.0, 1e-3), std::domain_error);
  CHECK_THROWS_AS(eoc(1e-3, 0.0), std::domain_error);
}

TEST_CASE("error-table spot cells") {
  const Table t1 = table(TableKind::EC, ExampleFn::Exp, {0.5}, {40, 60, 80, 100});
  // row x = 0.4 across the four degrees
  CHECK(t1.cell(0.4, 0) == doctest::Approx(0.0073719719).epsilon(2e-4));
  CHECK(t1.cell(0.4, 1) == doctest::Approx(0.0049132237).epsilon(2e-4));
  CHECK(t1.cell(0.4, 2) == doctest::Approx(0.0036843732).epsilon(2e-4));
  CHECK(t1.cell(0.4, 3) == doctest::Approx(0.0029472355).epsilon(2e-4));
  CHECK(t1.cell(0.0, 0) == 0.0);

  const Table t2 = table(TableKind::EI, ExampleFn::Exp, {0.5}, {60});
  CHECK(t2.cell(0.6, 0) == doctest::Approx(0.0023986370).epsilon(2e-4));
}

TEST_CASE("grid_error against the derivative pipeline at sampled points") {
  const BernsteinPoly p = sample_function_big(
      [](const BigReal& x) { return exp(x); }, 80, 50);
  const PreparedOperator op(
      {Side::Left, OpKind::CaputoDerivative, FracOrder(0.5), {}}, p);
  const ErrorReport r = grid_error([&](double x) { return op(x); },
                                   [](double x) { return exp_caputo(0.5, x); }, 100);
  CHECK(r.at(1.0) == doctest::Approx(0.0053288670).epsilon(2e-4));

  const BernsteinPoly ps = sample_function_big(
      [](const BigReal& x) { return sin(x); }, 80, 50);
  const PreparedOperator ops(
      {Side::Left, OpKind::RLIntegral, FracOrder(0.75), {}}, ps);
  const ErrorReport rs = grid_error([&](double x) { return ops(x); },
                                    [](double x) { return sin_integral(0.75, x); }, 100);
  CHECK(std::abs(rs.at(0.8) - 0.0005178911) <= 1e-6);
}

TEST_CASE("EOC table spot cells") {
  const Table d = table(TableKind::EOC_D, ExampleFn::Exp, {0.5}, {20});
  CHECK(d.cell(20, 0) == doctest::Approx(0.9927445216).epsilon(1e-3));
  const Table s = table(TableKind::EOC_D, ExampleFn::Sin, {0.25}, {80});
  CHECK(s.cell(80, 0) == doctest::Approx(0.9984573422).epsilon(1e-3));
}

TEST_CASE("CSV layout and determinism") {
  const Table t = table(TableKind::EC, ExampleFn::Exp, {0.5}, {40, 60});
  const std::string csv = to_csv(t);
  CHECK(csv.substr(0, csv.find('\n')) == "x,EC_40,EC_60");
  CHECK(csv.find("\r") == std::string::npos);
  // bit-identical rerun
  const Table t2 = table(TableKind::EC, ExampleFn::Exp, {0.5}, {40, 60});
  CHECK(to_csv(t2) == csv);
  // 10 fractional digits per float cell
  const std::string first_row = csv.substr(csv.find('\n') + 1);
  const std::string cell = first_row.substr(first_row.find(',') + 1);
  CHECK(cell.substr(0, cell.find(',')).size() == 12);  // "0.0000000000"
}

TEST_CASE("fode_error_curve") {
  FodeProblem quintic{FracOrder(1.5),
                      [](double t, double x) {
                        return poly_fode_forcing(1.0, 1.5, t) - x * x;
                      },
                      [](double, double x) { return -2.0 * x; },
                      {0.0, 0.0},
                      NodeStrategy::ShiftedNodes,
                      "quintic"};
  const auto curve = fode_error_curve(quintic, poly_fode_exact, {5}, 100);
  REQUIRE(curve.size() == 1);
  CHECK(curve[0].max_error <= 1e-8);

  FodeProblem relax{FracOrder(0.5),
                    [](double, double x) { return (1.0 - 10.0 * x) / 100.0; },
                    [](double, double) { return -0.1; },
                    {0.0},
                    NodeStrategy::ShiftedNodes,
                    "relaxation"};
  const auto curves = fode_error_curve(
      relax, [](double t) { return relaxation_exact(10.0, 100.0, 0.5, t); },
      {5, 10, 15, 20}, 100);
  REQUIRE(curves.size() == 4);
  for (std::size_t i = 1; i < curves.size(); ++i) {
    CHECK(curves[i].max_error < curves[i - 1].max_error);
  }
  CHECK(curves[1].eoc_vs_half.has_value());

  // oracle equal to the solver output itself gives the zero curve
  const AnsatzSolution self = solve(relax, 8);
  const auto zero = fode_error_curve(
      relax, [&](double t) { return eval_solution(self, t); }, {8}, 50);
  CHECK(zero[0].max_error == 0.0);
}

TEST_CASE("EOC drift toward one") {
  const Table d = table(TableKind::EOC_D, ExampleFn::Exp, {0.25, 0.5}, {20, 40, 80});
  for (int col = 0; col < 2; ++col) {
    CHECK(d.cell(40, col) > d.cell(20, col));
    CHECK(d.cell(80, col) > d.cell(40, col));
    CHECK(d.cell(80, col) < 1.0001);
  }
}

TEST_CASE("atomic file write") {
  const std::string path = "harness_test_output.csv";
  write_file_atomic(path, "a,b\n1,2\n");
  std::ifstream in(path);
  std::string content((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  CHECK(content == "a,b\n1,2\n");
  std::remove(path.c_str());
  CHECK_THROWS(write_file_atomic("/nonexistent_dir_xyz/out.csv", "x"));
}
