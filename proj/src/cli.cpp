#include "fracbern/cli.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

namespace fracbern {

namespace {

unsigned digits_for(const RunConfig& config) {
  if (config.precision_digits) return *config.precision_digits;
  return 50;  // sampling and closed forms elevate internally past n = 25
}

ExampleFn parse_function_id(const std::string& id) {
  if (id == "exp") return ExampleFn::Exp;
  if (id == "sin") return ExampleFn::Sin;
  throw std::invalid_argument("unknown function id '" + id + "' (expected exp or sin)");
}

int run_deriv_or_integ(const RunConfig& config, bool derivative) {
  const ExampleFn fn = parse_function_id(config.function_id);
  const unsigned digits = digits_for(config);
  const BernsteinPoly p =
      fn == ExampleFn::Exp
          ? sample_function_big([](const BigReal& x) { return exp(x); }, config.n, digits)
          : sample_function_big([](const BigReal& x) { return sin(x); }, config.n, digits);
  const OpKind kind = derivative ? OpKind::CaputoDerivative : OpKind::RLIntegral;
  const PreparedOperator op({Side::Left, kind, FracOrder(config.alpha), {}}, p);
  auto oracle = [&](double x) {
    if (fn == ExampleFn::Exp) {
      return derivative ? exp_caputo(config.alpha, x, digits)
                        : exp_integral(config.alpha, x, digits);
    }
    return derivative ? sin_caputo(config.alpha, x, digits)
                      : sin_integral(config.alpha, x, digits);
  };
  const ErrorReport report =
      grid_error([&](double x) { return op(x); }, oracle, config.grid_N);
  double arg_max = 0.0;
  for (const auto& [x, e] : report.per_point) {
    if (e == report.max_error) {
      arg_max = x;
      break;
    }
  }
  std::printf("%s of B_%d(%s), alpha = %g: max error %.10f at x = %.2f over %d points\n",
              derivative ? "caputo derivative" : "rl integral", config.n,
              config.function_id.c_str(), config.alpha, report.max_error, arg_max,
              config.grid_N);
  if (!config.output_path.empty()) {
    std::string csv = "x,error\n";
    char buf[64];
    for (const auto& [x, e] : report.per_point) {
      std::snprintf(buf, sizeof buf, "%.10f,%.10f\n", x, e);
      csv += buf;
    }
    write_file_atomic(config.output_path, csv);
  }
  return report.non_finite ? 2 : 0;
}

FodeProblem build_problem(const RunConfig& config) {
  if (!config.problem_id.empty()) {
    const auto& registry = problem_registry();
    auto it = registry.find(config.problem_id);
    if (it == registry.end()) {
      throw std::invalid_argument("unknown registry id '" + config.problem_id + "'");
    }
    return it->second.make(config.alpha, config.init_values);
  }
  if (config.rhs_src.empty()) {
    throw std::invalid_argument("solve needs --problem or --rhs");
  }
  const ExprPtr rhs_ast = parse_expr(config.rhs_src);
  FodeProblem problem{FracOrder(config.alpha),
                      [rhs_ast](double t, double x) { return eval_expr(*rhs_ast, t, x); },
                      nullptr,
                      {},
                      config.node_strategy,
                      "expr: " + config.rhs_src};
  if (!config.rhs_dx_src.empty()) {
    const ExprPtr dx_ast = parse_expr(config.rhs_dx_src);
    problem.rhs_dx = [dx_ast](double t, double x) { return eval_expr(*dx_ast, t, x); };
  }
  problem.init_values.assign(problem.order.m, 0.0);
  for (std::size_t k = 0; k < config.init_values.size(); ++k) {
    if (k >= problem.init_values.size()) {
      throw std::invalid_argument("more init values than the order admits");
    }
    problem.init_values[k] = config.init_values[k];
  }
  return problem;
}

std::function<double(double)> problem_oracle(const RunConfig& config) {
  if (config.problem_id.empty()) return nullptr;
  const auto& entry = problem_registry().at(config.problem_id);
  if (!entry.has_oracle) return nullptr;
  const double alpha = config.alpha;
  auto oracle = entry.oracle;
  return [oracle, alpha](double t) { return oracle(alpha, t); };
}

int run_solve(const RunConfig& config) {
  FodeProblem problem = build_problem(config);
  problem.node_strategy = config.node_strategy;
  const AnsatzSolution sol = solve(problem, config.n, config.newton_tol, config.max_iter);
  const auto oracle = problem_oracle(config);

  std::string csv;
  char buf[128];
  double max_err = 0.0;
  if (oracle) {
    csv = "t,x_n,x_exact,error\n";
    for (int j = 0; j <= config.grid_N; ++j) {
      const double t = static_cast<double>(j) / config.grid_N;
      const double xn = eval_solution(sol, t);
      const double xe = oracle(t);
      max_err = std::max(max_err, std::abs(xn - xe));
      std::snprintf(buf, sizeof buf, "%.10f,%.10f,%.10f,%.10f\n", t, xn, xe,
                    std::abs(xn - xe));
      csv += buf;
    }
    std::printf("solve %s: n = %d, alpha = %g, newton iterations %d, residual %.3e, "
                "max error %.10f\n",
                problem.label.c_str(), config.n, config.alpha,
                sol.newton_report.iterations, sol.newton_report.final_residual,
                max_err);
  } else {
    // no closed-form reference: report the gap against the doubled degree
    const AnsatzSolution finer = solve(problem, 2 * config.n, config.newton_tol,
                                       config.max_iter);
    csv = "t,x_n\n";
    for (int j = 0; j <= config.grid_N; ++j) {
      const double t = static_cast<double>(j) / config.grid_N;
      const double xn = eval_solution(sol, t);
      max_err = std::max(max_err, std::abs(xn - eval_solution(finer, t)));
      std::snprintf(buf, sizeof buf, "%.10f,%.10f\n", t, xn);
      csv += buf;
    }
    std::printf("solve %s: n = %d, alpha = %g, newton iterations %d, residual %.3e, "
                "self-consistency gap vs n = %d: %.10f\n",
                problem.label.c_str(), config.n, config.alpha,
                sol.newton_report.iterations, sol.newton_report.final_residual,
                2 * config.n, max_err);
  }
  if (!config.output_path.empty()) write_file_atomic(config.output_path, csv);
  return 0;
}

int run_tables(const RunConfig& config) {
  const ExampleFn fn = parse_function_id(config.function_id);
  const unsigned digits = digits_for(config);
  Table t;
  if (config.table_kind == "EC" || config.table_kind == "EI") {
    const TableKind kind =
        config.table_kind == "EC" ? TableKind::EC : TableKind::EI;
    t = table(kind, fn, {config.alpha}, {40, 60, 80, 100}, digits);
  } else if (config.table_kind == "EOC_D" || config.table_kind == "EOC_I") {
    const TableKind kind =
        config.table_kind == "EOC_D" ? TableKind::EOC_D : TableKind::EOC_I;
    t = table(kind, fn, {0.25, 0.5, 0.75}, {20, 40, 80, 160, 320}, digits);
  } else {
    throw std::invalid_argument("unknown table kind '" + config.table_kind + "'");
  }
  const std::string csv = to_csv(t);
  if (config.output_path.empty()) {
    std::fputs(csv.c_str(), stdout);
  } else {
    write_file_atomic(config.output_path, csv);
    std::printf("wrote %s (%zu rows)\n", config.output_path.c_str(), t.rows.size());
  }
  return 0;
}

int run_eoc(const RunConfig& config) {
  const ExampleFn fn = parse_function_id(config.function_id);
  const unsigned digits = digits_for(config);
  const double e_n = endpoint_error(fn, !config.integral, config.alpha, config.n, digits);
  const double e_2n =
      endpoint_error(fn, !config.integral, config.alpha, 2 * config.n, digits);
  std::printf("EOC(%s, %s, alpha = %g, n = %d) = %.10f\n", config.function_id.c_str(),
              config.integral ? "integral" : "derivative", config.alpha, config.n,
              eoc(e_n, e_2n));
  return 0;
}

}  // namespace

const std::map<std::string, RegistryEntry>& problem_registry() {
  static const std::map<std::string, RegistryEntry> registry = {
      {"relaxation",
       {"linear relaxation c*D^a x + k x = 1 with c = 100, k = 10, x(0) = 0",
        0.5, true,
        [](double alpha, std::vector<double>) {
          return FodeProblem{FracOrder(alpha),
                             [](double, double x) { return (1.0 - 10.0 * x) / 100.0; },
                             [](double, double) { return -0.1; },
                             std::vector<double>(FracOrder(alpha).m, 0.0),
                             NodeStrategy::ShiftedNodes,
                             "relaxation"};
        },
        [](double alpha, double t) { return relaxation_exact(10.0, 100.0, alpha, t); }}},
      {"polyfode",
       {"nonlinear D^a x + x^2 = f(t) whose solution is t^5 - 3t^4 + 2t^3",
        1.5, true,
        [](double alpha, std::vector<double>) {
          return FodeProblem{FracOrder(alpha),
                             [alpha](double t, double x) {
                               return poly_fode_forcing(1.0, alpha, t) - x * x;
                             },
                             [](double, double x) { return -2.0 * x; },
                             std::vector<double>(FracOrder(alpha).m, 0.0),
                             NodeStrategy::ShiftedNodes,
                             "polyfode"};
        },
        [](double, double t) { return poly_fode_exact(t); }}},
      {"oscillation",
       {"oscillation D^a x + x = t e^-t with zero initial data",
        1.5, true,
        [](double alpha, std::vector<double>) {
          return FodeProblem{FracOrder(alpha),
                             [](double t, double x) { return t * std::exp(-t) - x; },
                             [](double, double) { return -1.0; },
                             std::vector<double>(FracOrder(alpha).m, 0.0),
                             NodeStrategy::ShiftedNodes,
                             "oscillation"};
        },
        [](double alpha, double t) { return oscillation_exact(alpha, t); }}},
      {"kiaproblem",
       {"nonlinear D^0.28 x + (t - 0.5) sin(x) = 0.8 t^3 with x(0) = x0 (no "
        "closed-form solution)",
        0.28, false,
        [](double alpha, std::vector<double> init) {
          const double x0 = init.empty() ? 1.2 : init[0];
          return FodeProblem{FracOrder(alpha),
                             [](double t, double x) {
                               return 0.8 * t * t * t - (t - 0.5) * std::sin(x);
                             },
                             [](double t, double x) {
                               return -(t - 0.5) * std::cos(x);
                             },
                             {x0},
                             NodeStrategy::ShiftedNodes,
                             "kiaproblem"};
        },
        nullptr}},
  };
  return registry;
}

int run(const RunConfig& config) {
  switch (config.command) {
    case RunConfig::Command::Deriv:
      return run_deriv_or_integ(config, true);
    case RunConfig::Command::Integ:
      return run_deriv_or_integ(config, false);
    case RunConfig::Command::Solve:
      return run_solve(config);
    case RunConfig::Command::Tables:
      return run_tables(config);
    case RunConfig::Command::Eoc:
      return run_eoc(config);
  }
  throw std::logic_error("run: unknown command");
}

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"Fractional derivatives and integrals of Bernstein polynomials, "
               "with a collocation solver for fractional differential equations "
               "on [0,1]"};
  app.require_subcommand(1);

  RunConfig config;
  std::string nodes = "shifted";
  unsigned digits = 0;

  std::string registry_help = "built-in problems:";
  for (const auto& [id, entry] : problem_registry()) {
    registry_help += "\n  " + id + ": " + entry.description;
  }

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--alpha", config.alpha, "fractional order");
    cmd->add_option("--n", config.n, "polynomial degree");
    cmd->add_option("--N", config.grid_N, "evaluation grid density (default 100)");
    cmd->add_option("--digits", digits, "extended-precision digit count");
    cmd->add_option("--out", config.output_path, "CSV output path");
  };

  CLI::App* deriv = app.add_subcommand("deriv", "approximate a Caputo derivative");
  deriv->add_option("--f", config.function_id, "function id (exp or sin)");
  add_common(deriv);

  CLI::App* integ = app.add_subcommand("integ", "approximate an RL integral");
  integ->add_option("--f", config.function_id, "function id (exp or sin)");
  add_common(integ);

  CLI::App* solve_cmd = app.add_subcommand("solve", "collocation solve of D^a x = f(t,x)");
  solve_cmd->add_option("--problem", config.problem_id, registry_help);
  solve_cmd->add_option("--rhs", config.rhs_src, "right-hand side f(t,x) as an expression");
  solve_cmd->add_option("--rhs-dx", config.rhs_dx_src, "df/dx as an expression");
  solve_cmd->add_option("--x0", config.init_values, "initial values x(0), x'(0), ...");
  solve_cmd->add_option("--nodes", nodes, "collocation nodes: shifted or paper");
  solve_cmd->add_option("--newton-tol", config.newton_tol, "Newton residual tolerance");
  solve_cmd->add_option("--max-iter", config.max_iter, "Newton iteration cap");
  add_common(solve_cmd);

  CLI::App* tables_cmd = app.add_subcommand("tables", "emit an error or EOC table");
  tables_cmd->add_option("--example", config.function_id, "function id (exp or sin)");
  tables_cmd->add_option("--kind", config.table_kind, "EC, EI, EOC_D, or EOC_I");
  add_common(tables_cmd);

  CLI::App* eoc_cmd = app.add_subcommand("eoc", "experimental order of convergence");
  eoc_cmd->add_option("--f", config.function_id, "function id (exp or sin)");
  eoc_cmd->add_flag("--integral", config.integral, "use the RL integral");
  add_common(eoc_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  if (digits > 0) config.precision_digits = digits;
  if (nodes == "paper") {
    config.node_strategy = NodeStrategy::PaperNodes;
  } else if (nodes != "shifted") {
    std::fprintf(stderr, "unknown node strategy '%s'\n", nodes.c_str());
    return 1;
  }
  if (deriv->parsed()) config.command = RunConfig::Command::Deriv;
  if (integ->parsed()) config.command = RunConfig::Command::Integ;
  if (solve_cmd->parsed()) config.command = RunConfig::Command::Solve;
  if (tables_cmd->parsed()) config.command = RunConfig::Command::Tables;
  if (eoc_cmd->parsed()) config.command = RunConfig::Command::Eoc;

  try {
    return run(config);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 1;
  } catch (const ParseError& e) {
    std::fprintf(stderr, "expression error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "numeric failure: %s\n", e.what());
    return 2;
  }
}

}  // namespace fracbern
