#include "fchs/rhs.hpp"

#include <string>

#include "fchs/errors.hpp"
#include "fchs/kernels.hpp"

namespace fchs {

namespace kp = kernels::parallel;

const SpectralField& SimState::u_hat(const GridSpec& grid, double alpha) const {
  if (!u_cache_ || u_cache_->alpha != alpha) u_cache_ = Cached{alpha, helmholtz_filter(v_hat_, grid, alpha)};
  return u_cache_->u_hat;
}

namespace {

void require_vector(const SpectralField& F, const GridSpec& grid, const char* where) {
  if (F.components() != static_cast<std::size_t>(grid.dim()) || F.size() != grid.modes())
    throw Error(ErrorCode::DimensionMismatch, std::string(where) + ": expected a " + std::to_string(grid.dim()) +
                                                  "-component field on the grid");
}

std::vector<double> physical_derivative(std::span<const Complex> F, const GridSpec& grid, int axis) {
  return inverse_transform_component(differentiate(F, grid, axis), grid);
}

std::vector<std::vector<double>> physical_components(const SpectralField& F, const GridSpec& grid) {
  std::vector<std::vector<double>> out;
  out.reserve(F.components());
  for (std::size_t c = 0; c < F.components(); ++c) out.push_back(inverse_transform_component(F[c], grid));
  return out;
}

SpectralField to_spectral_dealiased(std::vector<std::vector<double>>& physical, const GridSpec& grid) {
  SpectralField out(physical.size(), grid.modes());
  for (std::size_t c = 0; c < physical.size(); ++c) out.component(c) = forward_transform_component(physical[c], grid);
  apply_dealias(out, grid);
  return out;
}

}  // namespace

SpectralField convective_term(const SpectralField& u_hat, const SpectralField& v_hat, const GridSpec& grid) {
  require_vector(u_hat, grid, "convective_term");
  require_vector(v_hat, grid, "convective_term");
  const int dim = grid.dim();
  const auto u = physical_components(u_hat, grid);
  std::vector<std::vector<double>> acc(dim, std::vector<double>(grid.modes(), 0.0));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) kp::multiply_accumulate(acc[i], u[j], physical_derivative(v_hat[i], grid, j));
  return to_spectral_dealiased(acc, grid);
}

SpectralField transpose_gradient_term(const SpectralField& v_hat, const SpectralField& u_hat, const GridSpec& grid) {
  require_vector(u_hat, grid, "transpose_gradient_term");
  require_vector(v_hat, grid, "transpose_gradient_term");
  const int dim = grid.dim();
  const auto v = physical_components(v_hat, grid);
  std::vector<std::vector<double>> acc(dim, std::vector<double>(grid.modes(), 0.0));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) kp::multiply_accumulate(acc[i], v[j], physical_derivative(u_hat[j], grid, i));
  return to_spectral_dealiased(acc, grid);
}

SpectralField nonlinear_term(const SpectralField& u_hat, const SpectralField& v_hat, const GridSpec& grid) {
  require_vector(u_hat, grid, "nonlinear_term");
  require_vector(v_hat, grid, "nonlinear_term");
  const int dim = grid.dim();
  const auto u = physical_components(u_hat, grid);
  const auto v = physical_components(v_hat, grid);
  std::vector<std::vector<double>> acc(dim, std::vector<double>(grid.modes(), 0.0));
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      kp::multiply_accumulate(acc[i], u[j], physical_derivative(v_hat[i], grid, j));
      kp::multiply_accumulate(acc[i], v[j], physical_derivative(u_hat[j], grid, i));
    }
  }
  return to_spectral_dealiased(acc, grid);
}

SpectralField curl(const SpectralField& F, const GridSpec& grid) {
  if (grid.dim() != 3) throw Error(ErrorCode::InvalidArgument, "curl: only defined for 3D fields");
  require_vector(F, grid, "curl");
  SpectralField out(3, grid.modes());
  for (int c = 0; c < 3; ++c) {
    const int a = (c + 1) % 3;
    const int b = (c + 2) % 3;
    const auto dab = differentiate(F[b], grid, a);
    const auto dba = differentiate(F[a], grid, b);
    for (std::size_t i = 0; i < grid.modes(); ++i) out[c][i] = dab[i] - dba[i];
  }
  return out;
}

SpectralField rotational_term(const SpectralField& u_hat, const SpectralField& v_hat, const GridSpec& grid) {
  const auto u = physical_components(u_hat, grid);
  const auto w = physical_components(curl(v_hat, grid), grid);
  std::vector<std::vector<double>> acc(3, std::vector<double>(grid.modes(), 0.0));
  for (std::size_t i = 0; i < grid.modes(); ++i) {
    acc[0][i] = u[1][i] * w[2][i] - u[2][i] * w[1][i];
    acc[1][i] = u[2][i] * w[0][i] - u[0][i] * w[2][i];
    acc[2][i] = u[0][i] * w[1][i] - u[1][i] * w[0][i];
  }
  return to_spectral_dealiased(acc, grid);
}

SpectralField explicit_rhs(double t, const SpectralField& v_hat, const SpectralField& u_hat, const GridSpec& grid,
                           const RhsOptions& options) {
  SpectralField out = zero_spectral(grid, grid.dim());
  if (options.nonlinear) {
    const auto n = nonlinear_term(u_hat, v_hat, grid);
    for (int c = 0; c < grid.dim(); ++c) kp::axpy(out[c], -1.0, n[c]);
  }
  if (options.forcing) {
    SpectralField f = zero_spectral(grid, grid.dim());
    options.forcing(t, f);
    for (int c = 0; c < grid.dim(); ++c) kp::axpy(out[c], 1.0, f[c]);
  }
  leray_project_in_place(out, grid);
  return out;
}

SpectralField rhs(const SimState& state, const PhysParams& params, const GridSpec& grid, const RhsOptions& options) {
  require_vector(state.v_hat(), grid, "rhs");
  SpectralField out = explicit_rhs(state.t, state.v_hat(), state.u_hat(grid, params.alpha()), grid, options);
  if (options.dissipation) {
    const auto m = lambda_multiplier(grid, 2.0 * params.s());
    for (int c = 0; c < grid.dim(); ++c) {
      auto dst = out[c];
      const auto v = state.v_hat()[c];
      for (std::size_t i = 0; i < grid.modes(); ++i) dst[i] -= params.nu() * m[i] * v[i];
    }
  }
  return out;
}

SpectralField pressure_from_nonlinear(const SpectralField& n_hat, const GridSpec& grid) {
  require_vector(n_hat, grid, "pressure_from_nonlinear");
  SpectralField p = zero_spectral(grid, 1);
  const auto k2 = grid.wavenumber_squared();
  for (std::size_t i = 0; i < grid.modes(); ++i) {
    if (k2[i] == 0.0) continue;
    Complex kn = 0.0;
    for (int a = 0; a < grid.dim(); ++a) kn += grid.wavenumbers(a)[i] * n_hat[a][i];
    p[0][i] = Complex(0.0, 1.0) * kn / k2[i];
  }
  return p;
}

SpectralField pressure_recover(const SimState& state, const PhysParams& params, const GridSpec& grid) {
  return pressure_from_nonlinear(nonlinear_term(state.u_hat(grid, params.alpha()), state.v_hat(), grid), grid);
}

SpectralField gradient(const SpectralField& scalar, const GridSpec& grid) {
  SpectralField out(grid.dim(), grid.modes());
  for (int a = 0; a < grid.dim(); ++a) {
    const auto k = grid.wavenumbers(a);
    for (std::size_t i = 0; i < grid.modes(); ++i) out[a][i] = Complex(0.0, k[i]) * scalar[0][i];
  }
  return out;
}

}  // namespace fchs
