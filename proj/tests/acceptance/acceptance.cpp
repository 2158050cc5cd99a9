// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.
// Usage: fchs_acceptance [path-to-fchs-cli]
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <numbers>
#include <string>
#include <vector>

#include "fchs/diagnostics.hpp"
#include "fchs/errors.hpp"
#include "fchs/fractional_ops.hpp"
#include "fchs/gagliardo.hpp"
#include "fchs/integrator.hpp"
#include "fchs/persistence.hpp"
#include "fchs/runner.hpp"
#include "fchs/scenarios.hpp"

using namespace fchs;
namespace fs = std::filesystem;

namespace {

// Tolerances and runtime budgets, fixed.
constexpr double kHelmholtzTol = 1e-12;
constexpr double kTrilinearTol = 1e-11;
constexpr double kBudgetTol = 1e-6;
constexpr double kMonotoneSlack = 1e-9;
constexpr double kLinearTol = 1e-13;
constexpr double kOrderTol = 0.25;
constexpr double kGagliardoTol = 0.05;
constexpr double kConstantTol = 1e-10;
constexpr double kCriticalGrowth = 1.5;
constexpr double kResumeTol = 1e-12;

struct Outcome {
  bool passed = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Outcome()> body;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("fchs_acceptance_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

struct Corpus {
  GridSpec grid;
  std::vector<SpectralField> fields;
};

const std::vector<Corpus>& corpus() {
  static const std::vector<Corpus> c = [] {
    std::vector<Corpus> out;
    for (auto [dim, n, count] : {std::tuple{2, 64, 100}, std::tuple{3, 32, 20}}) {
      Corpus k{GridSpec(dim, n), {}};
      for (int seed = 0; seed < count; ++seed)
        k.fields.push_back(random_divfree(k.grid, 1.0, static_cast<std::uint64_t>(seed)));
      out.push_back(std::move(k));
    }
    return out;
  }();
  return c;
}

constexpr double kAlphas[] = {0.1, 1.0, 2.0};

Outcome helmholtz_identity() {
  double worst = 0.0;
  for (const auto& c : corpus())
    for (const auto& v : c.fields)
      for (double alpha : kAlphas)
        for (int m = 0; m <= 2; ++m) worst = std::max(worst, helmholtz_ladder_residual(v, alpha, c.grid, m));
  return {worst <= kHelmholtzTol, "max residual " + fmt(worst) + " (tol " + fmt(kHelmholtzTol) + ")"};
}

Outcome trilinear() {
  double worst = 0.0;
  for (const auto& c : corpus())
    for (const auto& v : c.fields)
      for (double alpha : kAlphas) worst = std::max(worst, trilinear_residual(helmholtz_filter(v, c.grid, alpha), v, c.grid));
  return {worst <= kTrilinearTol, "max residual " + fmt(worst) + " (tol " + fmt(kTrilinearTol) + ")"};
}

Outcome energy_law() {
  bool ok = true;
  std::string detail;
  for (double s : {0.5, 0.75}) {
    RunConfig cfg;
    cfg.n_points = 64;
    cfg.s = s;
    cfg.nu = 0.01;
    cfg.alpha = 0.2;
    cfg.scheme = Scheme::if_rk4;
    cfg.dt = 1e-3;
    cfg.t_end = 1.0;
    cfg.scenario = "taylor_green";
    cfg.out_dir = scratch("energy").string();
    const auto res = run_simulation(cfg);
    double worst_budget = 0.0;
    double worst_rise = -INFINITY;
    for (std::size_t i = 0; i < res.records.size(); ++i) {
      worst_budget = std::max(worst_budget, std::abs(res.records[i].budget_residual));
      if (i > 0) worst_rise = std::max(worst_rise, res.records[i].energy - res.records[i - 1].energy);
    }
    ok = ok && worst_budget <= kBudgetTol && worst_rise <= kMonotoneSlack && res.records.size() == 1001;
    detail += "s=" + fmt(s) + ": budget " + fmt(worst_budget) + ", max dE " + fmt(worst_rise) + "; ";
    fs::remove_all(cfg.out_dir);
  }
  return {ok, detail + "(tol " + fmt(kBudgetTol) + ", slack " + fmt(kMonotoneSlack) + ")"};
}

Outcome linear_exactness() {
  const GridSpec g(2, 32);
  double worst = 0.0;
  int points = 0;
  for (double s : {0.5, 0.75, 0.9})
    for (std::array<int, 3> k : {std::array<int, 3>{1, 0, 0}, std::array<int, 3>{2, 1, 0}})
      for (auto [nu, T] : {std::pair{0.01, 1.0}, std::pair{0.1, 2.0}}) {
        const PhysParams p(s, nu, 0.2, 2);
        SpectralField v = zero_spectral(g, 2);
        const auto i = g.index_of(k);
        // Divergence-free polarisation perpendicular to k.
        v[0][i] = Complex(0.0, -0.5 * k[1]);
        v[1][i] = Complex(0.0, 0.5 * k[0]);
        v[0][g.negated(i)] = std::conj(v[0][i]);
        v[1][g.negated(i)] = std::conj(v[1][i]);
        IntegratorConfig cfg;
        cfg.dt = 0.01;
        cfg.t_end = T;
        RhsOptions opts;
        opts.nonlinear = false;
        const auto end = integrate(SimState(0.0, v), p, g, cfg, {}, opts);
        const double kk = std::sqrt(static_cast<double>(k[0] * k[0] + k[1] * k[1]));
        const double decay = std::exp(-nu * std::pow(kk, 2.0 * s) * T);
        for (std::size_t c = 0; c < 2; ++c) {
          if (v[c][i] == Complex(0.0)) continue;
          worst = std::max(worst, std::abs(end.v_hat()[c][i] - v[c][i] * decay) / std::abs(v[c][i] * decay));
        }
        ++points;
      }
  return {points == 12 && worst <= kLinearTol,
          std::to_string(points) + " points, max relative error " + fmt(worst) + " (tol " + fmt(kLinearTol) + ")"};
}

Outcome temporal_convergence() {
  const GridSpec g(2, 32);
  const PhysParams p(0.75, 0.01, 0.2, 2);
  const std::vector<double> dts = {0.1, 0.05, 0.025};
  const auto euler = manufactured_run(g, p, Scheme::if_euler, dts);
  const auto rk4 = manufactured_run(g, p, Scheme::if_rk4, dts);
  const bool ok = std::abs(euler.order - 1.0) <= kOrderTol && std::abs(rk4.order - 4.0) <= kOrderTol;
  return {ok, "if_euler order " + fmt(euler.order) + ", if_rk4 order " + fmt(rk4.order) + " (tol " + fmt(kOrderTol) + ")"};
}

Outcome gagliardo_equivalence() {
  const int n = 48;
  const double half = 8.0;
  auto gaussian = [](std::span<const double> x) { return std::exp(-(x[0] * x[0] + x[1] * x[1])); };
  const Patch patch{2, n, half};
  const double oracle = std::pow(gagliardo_seminorm_oracle(sample_patch(patch, gaussian), patch, 0.5), 2);

  const GridSpec g(2, n, 2.0 * half);
  RealField f = zero_real(g, 1);
  for (std::size_t i = 0; i < g.modes(); ++i) {
    const double x = -half + g.coordinate(static_cast<int>(i / static_cast<std::size_t>(n)));
    const double y = -half + g.coordinate(static_cast<int>(i % static_cast<std::size_t>(n)));
    f[0][i] = std::exp(-(x * x + y * y));
  }
  const double semi = sobolev_seminorm(forward_transform(f, g), g, 0.5);
  const double multiplier = 2.0 / kernel_normalization_constant(2, 0.5) * semi * semi;
  const double rel = std::abs(oracle - multiplier) / multiplier;
  return {rel <= kGagliardoTol,
          "oracle " + fmt(oracle) + ", multiplier " + fmt(multiplier) + ", relative " + fmt(rel) + " (tol " +
              fmt(kGagliardoTol) + ")"};
}

Outcome normalization() {
  const double pi = std::numbers::pi;
  const double e2 = std::abs(normalization_constant(2, 0.5) - 1.0 / pi) * pi;
  const double e3 = std::abs(normalization_constant(3, 0.5) - 2.0 / (pi * pi)) * (pi * pi) / 2.0;
  return {e2 <= kConstantTol && e3 <= kConstantTol,
          "C(2,1/2) rel " + fmt(e2) + ", C(3,1/2) rel " + fmt(e3) + " (tol " + fmt(kConstantTol) + ")"};
}

Outcome critical_stability() {
  RunConfig cfg;
  cfg.dim = 2;
  cfg.n_points = 64;
  cfg.s = 0.5;
  cfg.nu = 0.01;
  cfg.alpha = 0.2;
  cfg.dt = 1e-2;
  cfg.t_end = 2.0;
  cfg.scenario = "small_data";
  cfg.amplitude = 1e-2;
  cfg.seed = 1;
  cfg.out_dir = scratch("critical").string();
  try {
    const auto res = run_simulation(cfg);
    double rise = -INFINITY;
    double growth = 0.0;
    const double h0 = res.records.front().hs_v;
    for (std::size_t i = 0; i < res.records.size(); ++i) {
      if (i > 0) rise = std::max(rise, res.records[i].energy - res.records[i - 1].energy);
      growth = std::max(growth, res.records[i].hs_v / h0);
    }
    fs::remove_all(cfg.out_dir);
    const double l2_0 = res.records.front().l2_v;
    const bool ok = rise <= 0.0 && growth <= kCriticalGrowth && std::abs(l2_0 - 1e-2) <= 1e-15;
    return {ok, "||v0|| " + fmt(l2_0) + ", max dE " + fmt(rise) + ", max H^{1/2} ratio " + fmt(growth) +
                    " (limit " + fmt(kCriticalGrowth) + ")"};
  } catch (const BlowUpError& e) {
    return {false, std::string("blow-up: ") + e.what()};
  }
}

Outcome persistence() {
  const auto dir_full = scratch("persist_full");
  const auto dir_part = scratch("persist_part");
  RunConfig cfg;
  cfg.n_points = 32;
  cfg.dt = 1e-2;
  cfg.t_end = 0.5;
  cfg.scenario = "random_divfree";
  cfg.seed = 3;
  cfg.checkpoint_stride = 20;
  cfg.out_dir = dir_full.string();
  const auto full = run_simulation(cfg);

  const auto bytes = encode_checkpoint(full.final_state, cfg.params(), cfg.grid());
  const auto back = decode_checkpoint(bytes);
  const bool exact = back.state.v_hat() == full.final_state.v_hat() && back.state.t == full.final_state.t &&
                     encode_checkpoint(back.state, back.params, back.grid) == bytes &&
                     slurp(full.checkpoint_path) == std::string(bytes.begin(), bytes.end());

  // Interrupted run: integrate to step 20, then resume from its checkpoint.
  auto first = cfg;
  first.out_dir = dir_part.string();
  first.t_end = 20 * 1e-2;
  run_simulation(first);
  auto rest = cfg;
  rest.out_dir = dir_part.string();
  const auto resumed = run_simulation(rest, dir_part / checkpoint_name(20));

  double worst = 0.0;
  bool same_rows = resumed.records.size() == full.records.size();
  std::ifstream csv(dir_part / kDiagnosticsFile);
  const auto rows = parse_csv(csv);
  same_rows = same_rows && rows.size() == full.records.size();
  for (std::size_t i = 0; same_rows && i < rows.size(); ++i) {
    const auto& a = rows[i];
    const auto& b = full.records[i];
    for (auto [x, y] : {std::pair{a.t, b.t}, {a.energy, b.energy}, {a.dissipation, b.dissipation},
                        {a.budget_residual, b.budget_residual}, {a.l2_v, b.l2_v}, {a.hs_v, b.hs_v}}) {
      const double scale = std::max(std::abs(y), 1e-300);
      worst = std::max(worst, std::abs(x - y) / scale);
    }
  }
  fs::remove_all(dir_full);
  fs::remove_all(dir_part);
  return {exact && same_rows && worst <= kResumeTol,
          std::string("round trip ") + (exact ? "bit-exact" : "MISMATCH") + ", resume max relative " + fmt(worst) +
              " (tol " + fmt(kResumeTol) + ")"};
}

Outcome determinism(const std::string& cli) {
  const auto dir = scratch("determinism");
  const auto cfg_path = dir / "run.cfg";
  {
    std::ofstream out(cfg_path);
    out << "n_points = 32\ns = 0.75\nnu = 0.01\nalpha = 0.3\ndt = 0.01\nt_end = 0.3\n"
           "scenario = random_divfree\nseed = 17\ncheckpoint_stride = 10\n";
  }
  auto run_once = [&](const std::string& tag) {
    const auto out = dir / tag;
    if (cli.empty()) {
      auto cfg = load_config(cfg_path.string());
      cfg.out_dir = out.string();
      run_simulation(cfg);
      return 0;
    }
    const std::string cmd = "\"" + cli + "\" run --config \"" + cfg_path.string() + "\" --out_dir \"" + out.string() +
                            "\" > /dev/null 2>&1";
    return std::system(cmd.c_str());
  };
  const int ra = run_once("a");
  const int rb = run_once("b");
  bool ok = ra == 0 && rb == 0;
  std::size_t compared = 0;
  for (const char* name : {kDiagnosticsFile, kFinalCheckpoint}) {
    const auto a = slurp(dir / "a" / name);
    const auto b = slurp(dir / "b" / name);
    ok = ok && !a.empty() && a == b;
    ++compared;
  }
  const auto ca = slurp(dir / "a" / checkpoint_name(10));
  ok = ok && !ca.empty() && ca == slurp(dir / "b" / checkpoint_name(10));
  fs::remove_all(dir);
  return {ok, std::string(cli.empty() ? "in-process" : "cli") + " runs, " + std::to_string(compared + 1) +
                  " files compared: " + (ok ? "identical" : "DIFFERENT")};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  const std::vector<Criterion> criteria = {
      {1, "helmholtz filter identity", 30.0, helmholtz_identity},
      {2, "trilinear cancellation", 60.0, trilinear},
      {3, "energy law", 300.0, energy_law},
      {4, "linear exactness", 5.0, linear_exactness},
      {5, "temporal convergence", 180.0, temporal_convergence},
      {6, "gagliardo/fourier equivalence", 120.0, gagliardo_equivalence},
      {7, "normalization constant", 1.0, normalization},
      {8, "critical-regime stability", 300.0, critical_stability},
      {9, "persistence", 60.0, persistence},
      {10, "determinism", 60.0, [&] { return determinism(cli); }},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.budget_seconds;
    const bool pass = o.passed && in_time;
    if (!pass) ++failures;
    std::printf("criterion %2d %s  %-30s %s; %.2fs (budget %.0fs)%s\n", c.id, pass ? "PASS" : "FAIL", c.name,
                o.detail.c_str(), secs, c.budget_seconds, in_time ? "" : " OVER BUDGET");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
