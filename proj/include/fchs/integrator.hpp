#pragma once

// Integrating-factor time stepping. The diagonal dissipation -nu |k|^{2s} is
// applied through its exact exponential; only the projected nonlinearity and
// forcing go through the explicit stages.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fchs/errors.hpp"
#include "fchs/rhs.hpp"

namespace fchs {

enum class Scheme { if_rk4, if_euler };

int scheme_order(Scheme scheme) noexcept;
const char* scheme_name(Scheme scheme) noexcept;
/// Parses "if_rk4" / "if_euler"; throws ErrorCode::Config otherwise.
Scheme parse_scheme(const std::string& name);

struct IntegratorConfig {
  Scheme scheme = Scheme::if_rk4;
  double dt = 1e-3;
  double t_end = 1.0;
  int callback_stride = 1;
  /// Step k ends at t_origin + k * dt, with k counted on from step_offset.
  /// Without an origin the lattice starts at the initial state's time.
  std::optional<double> t_origin;
  std::uint64_t step_offset = 0;

  void validate() const;
};

/// Floor on |u|_inf in suggest_dt.
inline constexpr double kVelocityFloor = 1e-8;

/// exp(-nu |k|^{2s} h) per mode; 1 at k = 0.
std::vector<double> dissipation_factor(const GridSpec& grid, const PhysParams& params, double h);

/// Blow-up raised from inside integrate(); carries the last finite state.
class IntegrationBlowUp : public BlowUpError {
public:
  IntegrationBlowUp(const BlowUpError& cause, SimState last_good)
      : BlowUpError(cause), last_good(std::move(last_good)) {}

  SimState last_good;
};

/// Advance by exactly `h`. Re-projects v_hat afterwards. Throws BlowUpError
/// when the result has non-finite coefficients.
SimState step(const SimState& state, const PhysParams& params, const GridSpec& grid, Scheme scheme, double h,
              const RhsOptions& options = {});

/// Advance by cfg.dt.
SimState step(const SimState& state, const PhysParams& params, const GridSpec& grid, const IntegratorConfig& cfg,
              const RhsOptions& options = {});

/// Called with the state after every `callback_stride` steps and after the
/// final step; `step_index` counts steps taken since the start of integrate().
using SampleCallback = std::function<void(const SimState& state, std::size_t step_index)>;

/// Step from state0.t to cfg.t_end along the time lattice of cfg. The final
/// step is shortened when t_end falls between lattice points. Deterministic for fixed inputs.
SimState integrate(const SimState& state0, const PhysParams& params, const GridSpec& grid, const IntegratorConfig& cfg,
                   const SampleCallback& on_sample = {}, const RhsOptions& options = {});

/// cfl * dx / max(|u|_inf, kVelocityFloor), with u the filtered velocity.
double suggest_dt(const SimState& state, const PhysParams& params, const GridSpec& grid, double cfl);

}  // namespace fchs
