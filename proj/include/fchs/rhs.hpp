#pragma once

// Semi-discrete right-hand side of the fractional Camassa-Holm system
//
//   v_t + u.grad v + v.grad u^T + grad p = -nu (-Delta)^s v,
//   u - alpha^2 Delta u = v,   div v = div u = 0,
//
// with the pressure eliminated by Leray projection:
//
//   dv/dt = -P[u.grad v + v.grad u^T] - nu |k|^{2s} v + P[f].

#include <functional>
#include <optional>

#include "fchs/fractional_ops.hpp"
#include "fchs/grid.hpp"

namespace fchs {

/// Time plus the prognostic momentum v_hat. The filtered velocity u_hat is
/// derived on demand and cached until v_hat is mutated. The cache is not
/// synchronized: one writer per state.
class SimState {
public:
  SimState() = default;
  SimState(double t, SpectralField v_hat) : t(t), v_hat_(std::move(v_hat)) {}

  double t = 0.0;

  const SpectralField& v_hat() const noexcept { return v_hat_; }
  SpectralField& mutable_v_hat() noexcept {
    u_cache_.reset();
    return v_hat_;
  }
  void set_v_hat(SpectralField v) {
    v_hat_ = std::move(v);
    u_cache_.reset();
  }

  const SpectralField& u_hat(const GridSpec& grid, double alpha) const;

private:
  struct Cached {
    double alpha;
    SpectralField u_hat;
  };

  SpectralField v_hat_;
  mutable std::optional<Cached> u_cache_;
};

/// Writes the spectral forcing at time t into `out` (pre-zeroed, dim components).
using Forcing = std::function<void(double t, SpectralField& out)>;

struct RhsOptions {
  bool nonlinear = true;
  /// Test hook: drop the -nu |k|^{2s} v term.
  bool dissipation = true;
  Forcing forcing;
};

/// u.grad v, formed pointwise and dealiased. Inputs must be dealias-masked.
SpectralField convective_term(const SpectralField& u_hat, const SpectralField& v_hat, const GridSpec& grid);

/// v.grad u^T, with component i equal to sum_j v_j d_i u_j; dealiased.
SpectralField transpose_gradient_term(const SpectralField& v_hat, const SpectralField& u_hat, const GridSpec& grid);

/// u.grad v + v.grad u^T in a single pass; dealiased, not projected.
SpectralField nonlinear_term(const SpectralField& u_hat, const SpectralField& v_hat, const GridSpec& grid);

/// curl of a 3-component field.
SpectralField curl(const SpectralField& F, const GridSpec& grid);

/// u x (curl v) for 3D fields; dealiased.
SpectralField rotational_term(const SpectralField& u_hat, const SpectralField& v_hat, const GridSpec& grid);

/// The part of dv/dt that integrators treat explicitly:
/// -P[nonlinear] + P[forcing(t)].
SpectralField explicit_rhs(double t, const SpectralField& v_hat, const SpectralField& u_hat, const GridSpec& grid,
                           const RhsOptions& options = {});

/// Full dv/dt including the diagonal dissipation.
SpectralField rhs(const SimState& state, const PhysParams& params, const GridSpec& grid,
                  const RhsOptions& options = {});

/// Pressure for a given (unprojected) nonlinearity: p(k) = i k.N(k) / |k|^2,
/// zero mean, so that N + grad p = P[N].
SpectralField pressure_from_nonlinear(const SpectralField& n_hat, const GridSpec& grid);

/// Pressure of the current state (unforced).
SpectralField pressure_recover(const SimState& state, const PhysParams& params, const GridSpec& grid);

/// Spectral gradient of a scalar field.
SpectralField gradient(const SpectralField& scalar, const GridSpec& grid);

}  // namespace fchs
