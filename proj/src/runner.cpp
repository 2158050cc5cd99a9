#include "fchs/runner.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "fchs/errors.hpp"
#include "fchs/kernels.hpp"
#include "fchs/persistence.hpp"
#include "fchs/scenarios.hpp"

namespace fchs {

namespace fs = std::filesystem;

std::string checkpoint_name(std::uint64_t step) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "checkpoint_%08llu.fchs", static_cast<unsigned long long>(step));
  return buf;
}

namespace {

void write_checkpoint(const fs::path& path, const SimState& state, const PhysParams& params, const GridSpec& grid,
                      const EnergyLedger& ledger, std::uint64_t steps, double dt) {
  store_file(state, params, grid, path);
  std::ofstream meta(metadata_path(path), std::ios::binary | std::ios::trunc);
  if (!meta) throw Error(ErrorCode::Io, "cannot write " + metadata_path(path).string());
  write_metadata({steps, dt, ledger.first(), ledger.last(), ledger.accumulated()}, meta);
}

std::vector<DiagnosticsRecord> existing_rows(const fs::path& csv, double up_to) {
  std::vector<DiagnosticsRecord> rows;
  std::ifstream in(csv);
  if (!in) return rows;
  for (const auto& r : parse_csv(in))
    if (r.t <= up_to) rows.push_back(r);
  return rows;
}

}  // namespace

RunResult run_simulation(const RunConfig& cfg, const std::optional<fs::path>& resume_from) {
  cfg.validate();
  const GridSpec grid = cfg.grid();
  const PhysParams params = cfg.params();
  const fs::path out(cfg.out_dir);
  fs::create_directories(out);

  RunResult result;
  result.csv_path = out / kDiagnosticsFile;
  EnergyLedger ledger(params.nu());
  SimState state;
  std::uint64_t steps0 = 0;
  double dt = 0.0;
  std::vector<DiagnosticsRecord> prior;

  if (resume_from) {
    auto ck = restore_file(*resume_from);
    if (!(ck.grid == grid) || !(ck.params == params))
      throw Error(ErrorCode::Config, "resume: checkpoint grid or parameters differ from the configuration");
    std::ifstream meta_in(metadata_path(*resume_from));
    if (!meta_in) throw Error(ErrorCode::Io, "resume: missing " + metadata_path(*resume_from).string());
    const auto meta = read_metadata(meta_in);
    state = std::move(ck.state);
    ledger = EnergyLedger::resume(params.nu(), meta.first, meta.last, meta.accumulated);
    steps0 = meta.steps;
    dt = cfg.dt ? *cfg.dt : meta.dt;
    prior = existing_rows(result.csv_path, state.t);
  } else {
    state = SimState(0.0, make_initial_data(cfg.scenario, grid, cfg.amplitude, cfg.seed));
    dt = cfg.dt ? *cfg.dt : suggest_dt(state, params, grid, *cfg.cfl);
    const auto& u = state.u_hat(grid, params.alpha());
    ledger.add(state.t, energy(u, params.alpha(), grid), dissipation(u, params, grid));
    prior.push_back(compute_record(state, params, grid, ledger));
  }
  result.dt = dt;

  std::ofstream csv(result.csv_path, std::ios::binary | std::ios::trunc);
  if (!csv) throw Error(ErrorCode::Io, "cannot write " + result.csv_path.string());
  CsvWriter writer(csv);
  for (const auto& r : prior) writer.write(r);
  result.records = std::move(prior);

  IntegratorConfig icfg;
  icfg.scheme = cfg.scheme;
  icfg.dt = dt;
  icfg.t_end = cfg.t_end;
  icfg.t_origin = ledger.first().t;
  icfg.step_offset = steps0;
  std::uint64_t steps = steps0;

  auto on_sample = [&](const SimState& s, std::size_t k) {
    steps = steps0 + k;
    const auto& u = s.u_hat(grid, params.alpha());
    ledger.add(s.t, energy(u, params.alpha(), grid), dissipation(u, params, grid));
    const auto rec = compute_record(s, params, grid, ledger);
    writer.write(rec);
    result.records.push_back(rec);
    if (cfg.checkpoint_stride > 0 && steps % static_cast<std::uint64_t>(cfg.checkpoint_stride) == 0)
      write_checkpoint(out / checkpoint_name(steps), s, params, grid, ledger, steps, dt);
  };

  try {
    result.final_state = integrate(state, params, grid, icfg, on_sample);
  } catch (IntegrationBlowUp& e) {
    csv.flush();
    const auto path = out / kLastGoodCheckpoint;
    write_checkpoint(path, e.last_good, params, grid, ledger, steps, dt);
    BlowUpError rethrown(e.time(), e.offending_norm(), e.last_good_time(), e.what());
    rethrown.checkpoint_path = path.string();
    throw rethrown;
  }
  csv.flush();
  if (!csv) throw Error(ErrorCode::Io, "csv: write failed");

  result.steps = steps;
  result.checkpoint_path = out / kFinalCheckpoint;
  write_checkpoint(result.checkpoint_path, result.final_state, params, grid, ledger, steps, dt);
  return result;
}

SpectralField manufactured_profile(const GridSpec& grid, const ManufacturedOptions& opts) {
  auto V = taylor_green(grid, opts.amplitude);
  const auto W = shear_mode(grid, opts.amplitude * opts.shear);
  for (std::size_t c = 0; c < V.components(); ++c) kernels::parallel::axpy(V[c], 1.0, W[c]);
  return V;
}

Forcing manufactured_forcing(const GridSpec& grid, const PhysParams& params, const ManufacturedOptions& opts) {
  const auto V = manufactured_profile(grid, opts);
  const auto U = helmholtz_filter(V, grid, params.alpha());
  auto quadratic = leray_project(nonlinear_term(U, V, grid), grid);
  auto linear = V;
  const auto lam = lambda_multiplier(grid, 2.0 * params.s());
  for (std::size_t c = 0; c < linear.components(); ++c)
    for (std::size_t i = 0; i < grid.modes(); ++i) linear[c][i] *= params.nu() * lam[i] - opts.lambda;
  const double rate = opts.lambda;
  return [linear = std::move(linear), quadratic = std::move(quadratic), rate](double t, SpectralField& out) {
    const double e1 = std::exp(-rate * t);
    const double e2 = e1 * e1;
    for (std::size_t c = 0; c < out.components(); ++c) {
      kernels::parallel::axpy(out[c], e1, linear[c]);
      kernels::parallel::axpy(out[c], e2, quadratic[c]);
    }
  };
}

double least_squares_order(std::span<const double> dts, std::span<const double> errors) {
  if (dts.size() != errors.size() || dts.size() < 2)
    throw Error(ErrorCode::InvalidArgument, "least_squares_order: need at least two (dt, error) pairs");
  double mx = 0.0, my = 0.0;
  const double n = static_cast<double>(dts.size());
  for (std::size_t i = 0; i < dts.size(); ++i) {
    mx += std::log(dts[i]) / n;
    my += std::log(errors[i]) / n;
  }
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < dts.size(); ++i) {
    const double dx = std::log(dts[i]) - mx;
    sxy += dx * (std::log(errors[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

ConvergenceStudy manufactured_run(const GridSpec& grid, const PhysParams& params, Scheme scheme,
                                  std::span<const double> dts, const ManufacturedOptions& opts) {
  if (dts.size() < 3) throw Error(ErrorCode::InvalidArgument, "manufactured_run: need at least three dt values");
  if (!(opts.lambda > 0.0)) throw Error(ErrorCode::Domain, "manufactured_run: lambda must be positive");
  for (std::size_t i = 1; i < dts.size(); ++i)
    if (!(dts[i] < dts[i - 1])) throw Error(ErrorCode::InvalidArgument, "manufactured_run: dts must decrease");

  const auto V = manufactured_profile(grid, opts);
  RhsOptions rhs_opts;
  rhs_opts.forcing = manufactured_forcing(grid, params, opts);
  auto target = V;
  const double decay = std::exp(-opts.lambda * opts.t_end);
  for (std::size_t c = 0; c < target.components(); ++c)
    for (auto& z : target[c]) z *= decay;

  ConvergenceStudy study;
  study.scheme = scheme;
  for (double dt : dts) {
    IntegratorConfig icfg;
    icfg.scheme = scheme;
    icfg.dt = dt;
    icfg.t_end = opts.t_end;
    const auto final_state = integrate(SimState(0.0, V), params, grid, icfg, {}, rhs_opts);
    auto diff = final_state.v_hat();
    for (std::size_t c = 0; c < diff.components(); ++c) kernels::parallel::axpy(diff[c], -1.0, target[c]);
    study.dts.push_back(dt);
    study.errors.push_back(l2_norm(diff, grid));
  }
  for (std::size_t i = 1; i < study.errors.size(); ++i) {
    if (!(study.errors[i] < study.errors[i - 1])) {
      std::ostringstream msg;
      msg << "manufactured_run(" << scheme_name(scheme) << "): error did not decrease with dt:";
      for (std::size_t j = 0; j < study.errors.size(); ++j)
        msg << " dt=" << study.dts[j] << " err=" << study.errors[j] << ';';
      throw Error(ErrorCode::NonMonotoneConvergence, msg.str());
    }
  }
  study.order = least_squares_order(study.dts, study.errors);
  return study;
}

std::vector<SweepPoint> sweep(const RunConfig& base, std::span<const double> s_values,
                              std::span<const double> alpha_values) {
  std::vector<SweepPoint> points;
  if (s_values.empty() && alpha_values.empty()) return points;
  const std::vector<double> ss = s_values.empty() ? std::vector<double>{base.s}
                                                  : std::vector<double>(s_values.begin(), s_values.end());
  const std::vector<double> as = alpha_values.empty()
                                     ? std::vector<double>{base.alpha}
                                     : std::vector<double>(alpha_values.begin(), alpha_values.end());
  std::vector<RunConfig> configs;
  for (double s : ss)
    for (double a : as) {
      RunConfig cfg = base;
      cfg.s = s;
      cfg.alpha = a;
      cfg.out_dir = (fs::path(base.out_dir) / ("s_" + format_double(s) + "_alpha_" + format_double(a))).string();
      cfg.validate();
      configs.push_back(std::move(cfg));
    }
  for (const auto& cfg : configs) {
    SweepPoint p;
    p.s = cfg.s;
    p.alpha = cfg.alpha;
    p.out_dir = cfg.out_dir;
    try {
      p.rows = run_simulation(cfg).records.size();
    } catch (const BlowUpError& e) {
      p.blew_up = true;
      p.message = e.what();
    }
    points.push_back(std::move(p));
  }
  return points;
}

namespace {

template <typename F>
CheckResult run_check(const std::string& name, F&& body) {
  CheckResult r{name, false, {}};
  try {
    std::ostringstream detail;
    r.passed = body(detail);
    r.detail = detail.str();
  } catch (const std::exception& e) {
    r.detail = std::string("exception: ") + e.what();
  }
  return r;
}

double relative(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

std::vector<CheckResult> verification_suite() {
  std::vector<CheckResult> out;
  const GridSpec g2(2, 32);

  out.push_back(run_check("transform round trip", [&](std::ostream& d) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    RealField f = zero_real(g2, 2);
    for (std::size_t c = 0; c < 2; ++c)
      for (auto& x : f[c]) x = uni(rng);
    const auto back = inverse_transform(forward_transform(f, g2), g2);
    double err = 0.0;
    for (std::size_t c = 0; c < 2; ++c)
      for (std::size_t i = 0; i < g2.modes(); ++i) err = std::max(err, std::abs(back[c][i] - f[c][i]));
    d << "max error " << err;
    return err <= 1e-13;
  }));

  out.push_back(run_check("helmholtz identity ladder", [&](std::ostream& d) {
    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < 10; ++seed)
      for (double alpha : {0.1, 1.0, 2.0})
        for (int m = 0; m <= 2; ++m)
          worst = std::max(worst, helmholtz_ladder_residual(random_divfree(g2, 1.0, seed), alpha, g2, m));
    d << "worst residual " << worst;
    return worst <= 1e-12;
  }));

  out.push_back(run_check("trilinear cancellation", [&](std::ostream& d) {
    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto v = random_divfree(g2, 1.0, seed);
      worst = std::max(worst, trilinear_residual(helmholtz_filter(v, g2, 1.0), v, g2));
    }
    d << "worst residual " << worst;
    return worst <= 1e-11;
  }));

  out.push_back(run_check("projection is divergence-free", [&](std::ostream& d) {
    const double div = max_divergence(random_divfree(g2, 1.0, 3), g2);
    d << "max divergence " << div;
    return div <= 1e-12;
  }));

  out.push_back(run_check("filtered velocity bounded by momentum", [&](std::ostream& d) {
    const auto v = random_divfree(g2, 1.0, 4);
    const double nu_ = l2_norm(helmholtz_filter(v, g2, 0.5), g2);
    const double nv = l2_norm(v, g2);
    d << "||u|| = " << nu_ << ", ||v|| = " << nv;
    return nu_ <= nv + 1e-13;
  }));

  out.push_back(run_check("linear decay is exact", [&](std::ostream& d) {
    const PhysParams p(0.75, 0.1, 0.3, 2);
    SpectralField v = zero_spectral(g2, 2);
    const std::size_t plus = g2.index_of({0, 3, 0});
    const std::size_t minus = g2.index_of({0, -3, 0});
    v[0][plus] = Complex(0.0, -0.5);
    v[0][minus] = Complex(0.0, 0.5);
    IntegratorConfig icfg;
    icfg.dt = 0.01;
    icfg.t_end = 1.0;
    RhsOptions opts;
    opts.nonlinear = false;
    const auto end = integrate(SimState(0.0, v), p, g2, icfg, {}, opts);
    const double expected = l2_norm(v, g2) * std::exp(-p.nu() * std::pow(3.0, 1.5) * icfg.t_end);
    const double err = relative(l2_norm(end.v_hat(), g2), expected);
    d << "relative error " << err;
    return err <= 1e-13;
  }));

  out.push_back(run_check("normalization constants", [&](std::ostream& d) {
    const double pi = std::numbers::pi;
    const double e2 = relative(normalization_constant(2, 0.5), 1.0 / pi);
    const double e3 = relative(normalization_constant(3, 0.5), 2.0 / (pi * pi));
    d << "relative errors " << e2 << ", " << e3;
    return e2 <= 1e-10 && e3 <= 1e-10;
  }));

  out.push_back(run_check("checkpoint round trip", [&](std::ostream& d) {
    const PhysParams p(0.75, 0.01, 0.2, 2);
    const SimState s(0.125, random_divfree(g2, 1.0, 5));
    const auto bytes = encode_checkpoint(s, p, g2);
    const auto back = decode_checkpoint(bytes);
    d << bytes.size() << " bytes";
    return back.state.v_hat() == s.v_hat() && back.state.t == s.t && back.params == p && back.grid == g2;
  }));

  out.push_back(run_check("energy budget and monotonicity", [&](std::ostream& d) {
    const PhysParams p(0.75, 0.01, 0.2, 2);
    SpectralField v0 = taylor_green(g2, 1.0);
    const auto w = shear_mode(g2, 0.5);
    for (std::size_t c = 0; c < 2; ++c) kernels::parallel::axpy(v0[c], 1.0, w[c]);
    EnergyLedger ledger(p.nu());
    const SimState s0(0.0, v0);
    const auto& u0 = s0.u_hat(g2, p.alpha());
    ledger.add(0.0, energy(u0, p.alpha(), g2), dissipation(u0, p, g2));
    bool monotone = true;
    IntegratorConfig icfg;
    icfg.dt = 1e-3;
    icfg.t_end = 0.1;
    integrate(s0, p, g2, icfg, [&](const SimState& s, std::size_t) {
      const auto& u = s.u_hat(g2, p.alpha());
      const double e = energy(u, p.alpha(), g2);
      if (e > ledger.last().energy * (1.0 + 1e-9)) monotone = false;
      ledger.add(s.t, e, dissipation(u, p, g2));
    });
    const auto res = budget_residual(ledger);
    d << "budget residual " << res.value << (monotone ? "" : ", energy increased");
    return monotone && res.value <= 1e-6;
  }));

  out.push_back(run_check("csv round trip", [&](std::ostream& d) {
    std::vector<DiagnosticsRecord> recs(3);
    for (std::size_t i = 0; i < recs.size(); ++i) {
      recs[i].t = 0.1 * static_cast<double>(i);
      recs[i].energy = 1.0 / 3.0 + static_cast<double>(i);
      recs[i].trilinear_residual = 1e-17 * std::numbers::pi;
    }
    std::stringstream ss;
    emit_csv(recs, ss);
    const auto back = parse_csv(ss);
    d << back.size() << " rows";
    return back == recs;
  }));

  return out;
}

}  // namespace fchs
