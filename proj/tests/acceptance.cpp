// Acceptance suite: one PASS/FAIL line per criterion, exit code = #failures.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <vector>

#include "fracbern/cli.hpp"
#include "fracbern/error_harness.hpp"

using namespace fracbern;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& label,
            const std::string& detail, double seconds) {
  std::printf("%s %2d  %-46s %s [%.2f s]\n", pass ? "PASS" : "FAIL", criterion,
              label.c_str(), detail.c_str(), seconds);
  if (!pass) ++g_failures;
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
  }
};

const std::vector<double> kTableXs = {0.2, 0.4, 0.6, 0.8, 1.0};
const std::vector<int> kTableNs = {40, 60, 80, 100};
const std::vector<int> kEocNs = {20, 40, 80, 160, 320};
const std::vector<double> kEocAlphas = {0.25, 0.5, 0.75};

// 20-cell error tables at alpha = 1/2 (exp) and 3/4 (sin); rows x = 0.2..1.0
const double kTableExpD[5][4] = {
    {0.0061036942, 0.0040621962, 0.0030440502, 0.0024339892},
    {0.0073719719, 0.0049132237, 0.0036843732, 0.0029472355},
    {0.0058767960, 0.0039249810, 0.0029463970, 0.0023583970},
    {0.0004944290, 0.0003392010, 0.0002580000, 0.0002081350},
    {0.0106309420, 0.0070992270, 0.0053288670, 0.0042652620}};
const double kTableExpI[5][4] = {
    {0.0008334426, 0.0005544267, 0.0004153698, 0.0003320800},
    {0.0022223574, 0.0014794349, 0.0011087740, 0.0008866339},
    {0.0036002970, 0.0023986370, 0.0017983900, 0.0014384260},
    {0.0043154540, 0.0028772970, 0.0021580890, 0.0017265270},
    {0.0034169630, 0.0022786810, 0.0017092750, 0.0013675460}};
const double kTableSinD[5][4] = {
    {0.0021517476, 0.0014317995, 0.0010728366, 0.0008577819},
    {0.0030879772, 0.0020645865, 0.0015506726, 0.0012416113},
    {0.0019715930, 0.0013211308, 0.0009933784, 0.0007959183},
    {0.0012727043, 0.0008483037, 0.0006361733, 0.0005089138},
    {0.0063047021, 0.0042104896, 0.0031606168, 0.0025297984}};
const double kTableSinI[5][4] = {
    {0.0000588363, 0.0000387162, 0.0000288465, 0.0000229857},
    {0.0003075654, 0.0002042553, 0.0001528957, 0.0001221744},
    {0.0006967566, 0.0004640866, 0.0003479090, 0.0002782522},
    {0.0010354049, 0.0006904372, 0.0005178911, 0.0004143439},
    {0.0010486693, 0.0006994101, 0.0005246694, 0.0004197893}};

// EOC tables; rows n = 20..320, columns alpha = 1/4, 1/2, 3/4
const double kEocExpD[5][3] = {{0.9945716137, 0.9927445216, 0.9905964160},
                               {0.9972834530, 0.9963632907, 0.9952824963},
                               {0.9986406642, 0.9981985963, 0.9976418495},
                               {0.9993064563, 0.9990896057, 0.9987894922},
                               {0.9996330493, 0.9994812690, 0.9990779310}};
const double kEocExpI[5][3] = {{0.9974779044, 0.9986421496, 0.9996580722},
                               {0.9987433922, 0.9993300993, 0.9998404485},
                               {0.9993742741, 0.9996624232, 0.9999198418},
                               {0.9996853779, 0.9998531789, 0.9999704282},
                               {0.9998513835, 0.9998852549, 0.9999719852}};
const double kEocSinD[5][3] = {{0.9937752559, 0.9929561676, 0.9923368788},
                               {0.9969076505, 0.9965126525, 0.9962296261},
                               {0.9984573422, 0.9982238029, 0.9981122106},
                               {0.9992402809, 0.9991070234, 0.9990444572},
                               {0.9994769560, 0.9996091945, 0.9998994139}};
const double kEocSinI[5][3] = {{0.9958096867, 0.9969600807, 0.9981760620},
                               {0.9979038936, 0.9984739450, 0.9990790991},
                               {0.9989581171, 0.9992369945, 0.9995370214},
                               {0.9994912812, 0.9996141316, 0.9997773614},
                               {0.9997385874, 0.9998309959, 0.9999065568}};

double check_error_table(TableKind kind, ExampleFn fn, double alpha,
                         const double expected[5][4], std::string& worst_cell) {
  const Table t = table(kind, fn, {alpha}, kTableNs);
  double worst = 0.0;
  for (int r = 0; r < 5; ++r) {
    for (int c = 0; c < 4; ++c) {
      const double got = t.cell(kTableXs[r], c);
      const double diff = std::abs(got - expected[r][c]);
      if (diff > worst) {
        worst = diff;
        char buf[96];
        std::snprintf(buf, sizeof buf, "x=%.1f n=%d got %.10f want %.10f",
                      kTableXs[r], kTableNs[c], got, expected[r][c]);
        worst_cell = buf;
      }
    }
  }
  return worst;
}

struct EocCheck {
  double worst_cell_diff = 0.0;
  bool columns_increasing = true;
  bool in_window = true;
};

EocCheck check_eoc_table(TableKind kind, ExampleFn fn, const double expected[5][3]) {
  const Table t = table(kind, fn, kEocAlphas, kEocNs);
  EocCheck out;
  for (int c = 0; c < 3; ++c) {
    double prev = 0.0;
    for (int r = 0; r < 5; ++r) {
      const double got = t.cell(kEocNs[r], c);
      out.worst_cell_diff = std::max(out.worst_cell_diff,
                                     std::abs(got - expected[r][c]));
      if (r > 0 && got <= prev) out.columns_increasing = false;
      if (!(got > 0.99 && got < 1.0001)) out.in_window = false;
      prev = got;
    }
  }
  return out;
}

FodeProblem relaxation_problem() {
  return problem_registry().at("relaxation").make(0.5, {});
}

FodeProblem quintic_problem() {
  return problem_registry().at("polyfode").make(1.5, {});
}

FodeProblem oscillation_problem() {
  return problem_registry().at("oscillation").make(1.5, {});
}

FodeProblem kia_problem(double x0) {
  return problem_registry().at("kiaproblem").make(0.28, {x0});
}

double solution_gap(const AnsatzSolution& a, const AnsatzSolution& b) {
  double worst = 0.0;
  for (int j = 0; j <= 100; ++j) {
    const double t = j / 100.0;
    worst = std::max(worst, std::abs(eval_solution(a, t) - eval_solution(b, t)));
  }
  return worst;
}

void criterion_1_to_3() {
  {
    Timer timer;
    std::string cell;
    const double worst = check_error_table(TableKind::EC, ExampleFn::Exp, 0.5,
                                           kTableExpD, cell);
    char detail[160];
    std::snprintf(detail, sizeof detail, "20 cells, max |diff| = %.2e (%s)", worst,
                  cell.c_str());
    const double secs = timer.elapsed();
    report(1, worst <= 1e-6 && secs < 10.0, "derivative error table, exp, a = 1/2",
           detail, secs);
  }
  {
    Timer timer;
    std::string cell;
    const double worst = check_error_table(TableKind::EI, ExampleFn::Exp, 0.5,
                                           kTableExpI, cell);
    char detail[160];
    std::snprintf(detail, sizeof detail, "20 cells, max |diff| = %.2e", worst);
    report(2, worst <= 1e-6, "integral error table, exp, a = 1/2", detail,
           timer.elapsed());
  }
  {
    Timer timer;
    std::string cell_d, cell_i;
    const double worst_d = check_error_table(TableKind::EC, ExampleFn::Sin, 0.75,
                                             kTableSinD, cell_d);
    const double worst_i = check_error_table(TableKind::EI, ExampleFn::Sin, 0.75,
                                             kTableSinI, cell_i);
    char detail[160];
    std::snprintf(detail, sizeof detail,
                  "40 cells, max |diff| = %.2e (deriv), %.2e (integral)", worst_d,
                  worst_i);
    report(3, worst_d <= 1e-6 && worst_i <= 1e-6, "error tables, sin, a = 3/4",
           detail, timer.elapsed());
  }
}

void criterion_4() {
  Timer timer;
  const EocCheck d_exp = check_eoc_table(TableKind::EOC_D, ExampleFn::Exp, kEocExpD);
  const EocCheck i_exp = check_eoc_table(TableKind::EOC_I, ExampleFn::Exp, kEocExpI);
  const EocCheck d_sin = check_eoc_table(TableKind::EOC_D, ExampleFn::Sin, kEocSinD);
  const EocCheck i_sin = check_eoc_table(TableKind::EOC_I, ExampleFn::Sin, kEocSinI);
  const double worst =
      std::max(std::max(d_exp.worst_cell_diff, i_exp.worst_cell_diff),
               std::max(d_sin.worst_cell_diff, i_sin.worst_cell_diff));
  const bool increasing = d_exp.columns_increasing && i_exp.columns_increasing &&
                          d_sin.columns_increasing && i_sin.columns_increasing;
  const bool window = d_exp.in_window && i_exp.in_window && d_sin.in_window &&
                      i_sin.in_window;
  const double secs = timer.elapsed();
  char detail[160];
  std::snprintf(detail, sizeof detail,
                "60 cells, max |diff| = %.2e, increasing = %s, window = %s", worst,
                increasing ? "yes" : "no", window ? "yes" : "no");
  report(4, worst <= 1e-3 && increasing && window && secs < 300.0,
         "order-of-convergence tables (n up to 320)", detail, secs);
}

void criterion_5() {
  Timer timer;
  const auto curve5 = fode_error_curve(quintic_problem(), poly_fode_exact, {5}, 100);
  const auto curve10 = fode_error_curve(quintic_problem(), poly_fode_exact, {10}, 100);
  char detail[160];
  std::snprintf(detail, sizeof detail, "E(5) = %.2e, E(10) = %.2e",
                curve5[0].max_error, curve10[0].max_error);
  report(5,
         curve5[0].max_error <= 1e-8 && curve10[0].max_error > curve5[0].max_error,
         "quintic problem exact at n = 5, worse at n = 10", detail, timer.elapsed());
}

void criterion_6() {
  Timer timer;
  auto oracle = [](double t) { return relaxation_exact(10.0, 100.0, 0.5, t); };
  const auto curves =
      fode_error_curve(relaxation_problem(), oracle, {5, 10, 15, 20}, 100);
  bool monotone = true;
  for (std::size_t i = 1; i < curves.size(); ++i) {
    monotone &= curves[i].max_error < curves[i - 1].max_error;
  }
  const double e10 =
      std::abs(eval_solution(solve(relaxation_problem(), 10), 1.0) - oracle(1.0));
  const double e20 =
      std::abs(eval_solution(solve(relaxation_problem(), 20), 1.0) - oracle(1.0));
  const double order = eoc(e10, e20);
  char detail[160];
  std::snprintf(detail, sizeof detail,
                "errors %.2e > %.2e > %.2e > %.2e, endpoint EOC(10,20) = %.4f",
                curves[0].max_error, curves[1].max_error, curves[2].max_error,
                curves[3].max_error, order);
  report(6, monotone && order >= 0.7 && order <= 1.3,
         "relaxation convergence (monotone + first order)", detail, timer.elapsed());
}

void criterion_7() {
  Timer timer;
  auto oracle = [](double t) { return oscillation_exact(1.5, t); };
  const auto curve = fode_error_curve(oscillation_problem(), oracle, {15}, 100);
  char detail[96];
  std::snprintf(detail, sizeof detail, "max error %.2e (bound 2e-4)",
                curve[0].max_error);
  report(7, curve[0].max_error <= 2e-4, "oscillation problem accuracy at n = 15",
         detail, timer.elapsed());
}

void criterion_8() {
  Timer timer;
  bool consistent = true;
  bool ordered = true;
  double prev_at_0 = -1e300;
  double worst_ratio = 0.0;
  for (double x0 : {1.2, 1.3, 1.4, 1.5, 1.6}) {
    const AnsatzSolution s10 = solve(kia_problem(x0), 10);
    const AnsatzSolution s15 = solve(kia_problem(x0), 15);
    const AnsatzSolution s20 = solve(kia_problem(x0), 20);
    const double g1015 = solution_gap(s10, s15);
    const double g1020 = solution_gap(s10, s20);
    worst_ratio = std::max(worst_ratio, g1020 / g1015);
    consistent &= g1020 <= 2.0 * g1015;
    const double at0 = eval_solution(s20, 0.0);
    ordered &= at0 > prev_at_0 && std::abs(at0 - x0) < 1e-14;
    prev_at_0 = at0;
  }
  char detail[96];
  std::snprintf(detail, sizeof detail, "max gap ratio %.3f, curves ordered = %s",
                worst_ratio, ordered ? "yes" : "no");
  report(8, consistent && ordered, "self-consistency with nonzero initial values",
         detail, timer.elapsed());
}

void criterion_9() {
  Timer timer;
  const FodeProblem base = relaxation_problem();
  std::vector<double> grid;
  for (int j = 0; j <= 100; ++j) grid.push_back(j / 100.0);
  std::vector<double> ratios;
  for (double eps : {1e-3, 1e-4}) {
    auto perturbed = [eps](double, double x) { return (1.0 + eps - 10.0 * x) / 100.0; };
    const StabilityResult r = stability_probe(base, perturbed, 10, grid);
    ratios.push_back(r.solution_gap / eps);
  }
  const bool finite = std::isfinite(ratios[0]) && std::isfinite(ratios[1]);
  const bool close = std::abs(ratios[0] - ratios[1]) <= 0.1 * ratios[0];
  char detail[96];
  std::snprintf(detail, sizeof detail, "gap/eps = %.6f vs %.6f", ratios[0], ratios[1]);
  report(9, finite && close, "stability under forcing perturbations", detail,
         timer.elapsed());
}

void criterion_10() {
  Timer timer;
  bool pass = true;
  std::string failed;
  auto property = [&](const char* name, bool ok) {
    if (!ok) {
      pass = false;
      failed += failed.empty() ? name : std::string(", ") + name;
    }
  };

  {
    bool ok = true;
    for (int n : {3, 12, 25, 50}) {
      const BernsteinPoly one = sample_function([](double) { return 1.0; }, n);
      const BernsteinPoly id = sample_function([](double x) { return x; }, n);
      for (int i = 0; i <= 20; ++i) {
        const double x = i / 20.0;
        ok &= std::abs(eval(one, x) - 1.0) <= Tolerances::partition_of_unity;
        ok &= std::abs(eval(id, x) - x) <= Tolerances::linear_reproduction;
      }
    }
    property("partition/linear", ok);
  }
  {
    const BernsteinPoly p = sample_function([](double x) { return std::exp(x); }, 12);
    const BernsteinPoly q =
        sample_function([](double x) { return std::exp(1.0 - x); }, 12);
    const FracOrder ord(0.5);
    bool ok = true;
    for (int i = 0; i <= 10; ++i) {
      const double x = i / 10.0;
      ok &= std::abs(caputo_right(p, ord, x) - caputo_left(q, ord, 1.0 - x)) <= 1e-10;
    }
    property("reflection", ok);
  }
  {
    const BernsteinPoly p = sample_function([](double x) { return std::exp(x); }, 14);
    const BernsteinPoly d1 = derivative(p, 1);
    bool ok = true;
    for (int i = 0; i <= 10; ++i) {
      const double x = i / 10.0;
      ok &= std::abs(rl_derivative_left(p, FracOrder(1.0), x) - eval(d1, x)) <=
            Tolerances::integer_order_reduction;
    }
    property("integer-order reduction", ok);
  }
  {
    bool ok = true;
    for (int n : {8, 17, 25}) {
      const BernsteinPoly p = sample_function([](double x) { return std::exp(x); }, n);
      for (double alpha : {0.25, 0.5, 0.75, 1.5}) {
        const FracOrder ord(alpha);
        for (int i = 1; i <= 20; ++i) {
          const double x = i / 20.0;
          ok &= std::abs(caputo_left(p, ord, x, Backend::closed_form()) -
                         caputo_left(p, ord, x, Backend::quadrature())) <=
                Tolerances::backend_agreement;
        }
      }
    }
    property("backend agreement", ok);
  }
  {
    const BernsteinPoly c = sample_function([](double) { return 2.5; }, 9);
    bool ok = true;
    for (int i = 0; i <= 10; ++i) {
      ok &= std::abs(caputo_left(c, FracOrder(0.6), i / 10.0)) <= 1e-13;
    }
    property("caputo kills constants", ok);
  }
  {
    const double limit = 0.25 * std::exp(0.5);
    double prev_gap = -1.0;
    bool ok = true;
    for (int n : {40, 80, 160}) {
      const BernsteinPoly p =
          sample_function_big([](const BigReal& x) { return exp(x); }, n, 50);
      PrecisionScope scope(60);
      const BigReal half = BigReal(1) / 2;
      const double scaled =
          (BigReal(2 * n) * (eval_big(p, half) - exp(half))).convert_to<double>();
      const double gap = std::abs(scaled - limit);
      if (prev_gap > 0) {
        const double ratio = prev_gap / gap;
        ok &= ratio > 1.6 && ratio < 2.4;
      }
      prev_gap = gap;
    }
    property("asymptotic doubling trend", ok);
  }
  {
    bool ok = true;
    for (double a : {-0.75, -0.5, -0.25, 0.0, 0.5}) {
      const JacobiRule rule = gauss_jacobi(6, a, 0.0);
      const JacobiRule ref = gauss_jacobi(40, a, 0.0);
      for (int k = 0; k <= 11; ++k) {
        const auto mono = [k](double t) { return std::pow(t, k); };
        const double got = rule.apply(mono);
        const double want = ref.apply(mono);
        ok &= std::abs(got - want) / std::max(std::abs(want), 1e-3) <= 1e-11;
      }
    }
    property("quadrature exactness sweep", ok);
  }

  report(10, pass, "property suites",
         pass ? "all properties hold" : "failed: " + failed, timer.elapsed());
}

}  // namespace

int main() {
  std::printf("acceptance suite\n");
  criterion_1_to_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  if (g_failures == 0) {
    std::printf("all criteria satisfied\n");
  } else {
    std::printf("%d criterion(s) failed\n", g_failures);
  }
  return g_failures;
}
