#include "fchs/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fchs/kernels.hpp"

namespace fchs {

namespace kp = kernels::parallel;

int scheme_order(Scheme scheme) noexcept { return scheme == Scheme::if_rk4 ? 4 : 1; }

const char* scheme_name(Scheme scheme) noexcept { return scheme == Scheme::if_rk4 ? "if_rk4" : "if_euler"; }

Scheme parse_scheme(const std::string& name) {
  if (name == "if_rk4") return Scheme::if_rk4;
  if (name == "if_euler") return Scheme::if_euler;
  throw Error(ErrorCode::Config, "unknown scheme '" + name + "' (expected if_rk4 or if_euler)");
}

void IntegratorConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw Error(ErrorCode::Config, "dt must be positive and finite");
  if (!std::isfinite(t_end)) throw Error(ErrorCode::Config, "t_end must be finite");
  if (callback_stride < 1) throw Error(ErrorCode::Config, "callback_stride must be >= 1");
}

std::vector<double> dissipation_factor(const GridSpec& grid, const PhysParams& params, double h) {
  if (!(h >= 0.0)) throw Error(ErrorCode::Domain, "dissipation_factor: h must be >= 0");
  auto m = lambda_multiplier(grid, 2.0 * params.s());
  for (double& x : m) x = std::exp(-params.nu() * x * h);
  return m;
}

namespace {

double coefficient_norm(const SpectralField& F) {
  double sum = 0.0;
  for (std::size_t c = 0; c < F.components(); ++c) sum += kp::weighted_norm2(F[c], {});
  return std::sqrt(sum);
}

SpectralField explicit_part(double t, const SpectralField& v, const PhysParams& params, const GridSpec& grid,
                            const RhsOptions& options) {
  return explicit_rhs(t, v, helmholtz_filter(v, grid, params.alpha()), grid, options);
}

bool needs_explicit(const RhsOptions& options) { return options.nonlinear || static_cast<bool>(options.forcing); }

std::vector<double> linear_factor(const GridSpec& grid, const PhysParams& params, double h, const RhsOptions& options) {
  if (!options.dissipation) return std::vector<double>(grid.modes(), 1.0);
  return dissipation_factor(grid, params, h);
}

// Lawson integrating-factor RK4 with E_h = exp(-nu |k|^{2s} h):
//   k1 = N(t, v)
//   k2 = N(t + h/2, E_h/2 (v + h/2 k1))
//   k3 = N(t + h/2, E_h/2 v + h/2 k2)
//   k4 = N(t + h, E_h v + h E_h/2 k3)
//   v' = E_h v + h/6 (E_h k1 + 2 E_h/2 (k2 + k3) + k4)
SpectralField advance_rk4(double t, const SpectralField& v, double h, const PhysParams& params, const GridSpec& grid,
                          const RhsOptions& options) {
  const auto full = linear_factor(grid, params, h, options);
  const auto half = linear_factor(grid, params, 0.5 * h, options);
  const std::size_t dim = v.components();

  const auto k1 = explicit_part(t, v, params, grid, options);

  SpectralField stage = v;
  for (std::size_t c = 0; c < dim; ++c) kp::axpy_then_scale(stage[c], 0.5 * h, k1[c], half);
  const auto k2 = explicit_part(t + 0.5 * h, stage, params, grid, options);

  SpectralField ev_half = v;
  for (std::size_t c = 0; c < dim; ++c) kp::scale(ev_half[c], half);
  stage = ev_half;
  for (std::size_t c = 0; c < dim; ++c) kp::axpy(stage[c], 0.5 * h, k2[c]);
  const auto k3 = explicit_part(t + 0.5 * h, stage, params, grid, options);

  SpectralField out = v;
  for (std::size_t c = 0; c < dim; ++c) kp::scale(out[c], full);
  stage = out;
  for (std::size_t c = 0; c < dim; ++c) {
    std::vector<Complex> ek3(k3[c].begin(), k3[c].end());
    kp::scale(ek3, half);
    kp::axpy(stage[c], h, ek3);
  }
  const auto k4 = explicit_part(t + h, stage, params, grid, options);

  for (std::size_t c = 0; c < dim; ++c) {
    std::vector<Complex> ek1(k1[c].begin(), k1[c].end());
    kp::scale(ek1, full);
    std::vector<Complex> mid(k2[c].begin(), k2[c].end());
    kp::axpy(mid, 1.0, k3[c]);
    kp::scale(mid, half);
    kp::axpy(out[c], h / 6.0, ek1);
    kp::axpy(out[c], h / 3.0, mid);
    kp::axpy(out[c], h / 6.0, k4[c]);
  }
  return out;
}

// v' = E_h (v + h N(t, v))
SpectralField advance_euler(double t, const SpectralField& v, double h, const PhysParams& params,
                            const GridSpec& grid, const RhsOptions& options) {
  const auto full = linear_factor(grid, params, h, options);
  const auto k1 = explicit_part(t, v, params, grid, options);
  SpectralField out = v;
  for (std::size_t c = 0; c < v.components(); ++c) kp::axpy_then_scale(out[c], h, k1[c], full);
  return out;
}

}  // namespace

SimState step(const SimState& state, const PhysParams& params, const GridSpec& grid, Scheme scheme, double h,
              const RhsOptions& options) {
  SpectralField next;
  if (!needs_explicit(options)) {
    // Linear decay only: the integrating factor is the exact solution.
    next = state.v_hat();
    const auto full = linear_factor(grid, params, h, options);
    for (std::size_t c = 0; c < next.components(); ++c) kp::scale(next[c], full);
  } else if (scheme == Scheme::if_rk4) {
    next = advance_rk4(state.t, state.v_hat(), h, params, grid, options);
  } else {
    next = advance_euler(state.t, state.v_hat(), h, params, grid, options);
  }
  leray_project_in_place(next, grid);

  const double norm = coefficient_norm(next);
  const double t_next = state.t + h;
  if (!std::isfinite(norm)) {
    std::ostringstream msg;
    msg << "non-finite coefficients at t=" << t_next << " (last finite state at t=" << state.t << ")";
    throw BlowUpError(t_next, norm, state.t, msg.str());
  }
  return SimState(t_next, std::move(next));
}

SimState step(const SimState& state, const PhysParams& params, const GridSpec& grid, const IntegratorConfig& cfg,
              const RhsOptions& options) {
  return step(state, params, grid, cfg.scheme, cfg.dt, options);
}

SimState integrate(const SimState& state0, const PhysParams& params, const GridSpec& grid, const IntegratorConfig& cfg,
                   const SampleCallback& on_sample, const RhsOptions& options) {
  cfg.validate();
  SimState state = state0;
  const double origin = cfg.t_origin.value_or(state0.t);
  std::uint64_t k = cfg.step_offset;
  std::size_t taken = 0;
  while (state.t < cfg.t_end) {
    const double t_next = origin + static_cast<double>(k + 1) * cfg.dt;
    const double slack = 1e-9 * cfg.dt;
    const bool last = t_next >= cfg.t_end - slack;
    const bool on_lattice = std::abs(t_next - cfg.t_end) <= slack;
    const double h = last && !on_lattice ? cfg.t_end - state.t : cfg.dt;
    try {
      state = step(state, params, grid, cfg.scheme, h, options);
    } catch (const BlowUpError& e) {
      throw IntegrationBlowUp(e, state);
    }
    state.t = last ? cfg.t_end : t_next;
    ++k;
    ++taken;
    if (on_sample && (taken % static_cast<std::size_t>(cfg.callback_stride) == 0 || last)) on_sample(state, taken);
    if (last) break;
  }
  return state;
}

double suggest_dt(const SimState& state, const PhysParams& params, const GridSpec& grid, double cfl) {
  if (!(cfl > 0.0 && cfl <= 1.0)) throw Error(ErrorCode::Domain, "suggest_dt: cfl must lie in (0, 1]");
  const auto u = inverse_transform_trusted(state.u_hat(grid, params.alpha()), grid);
  double umax = 0.0;
  for (std::size_t i = 0; i < grid.modes(); ++i) {
    double m2 = 0.0;
    for (std::size_t c = 0; c < u.components(); ++c) m2 += u[c][i] * u[c][i];
    umax = std::max(umax, std::sqrt(m2));
  }
  return cfl * grid.spacing() / std::max(umax, kVelocityFloor);
}

}  // namespace fchs
