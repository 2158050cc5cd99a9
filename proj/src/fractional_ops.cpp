#include "fchs/fractional_ops.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fchs/errors.hpp"
#include "fchs/kernels.hpp"

namespace fchs {

namespace kp = kernels::parallel;

PhysParams::PhysParams(double s, double nu, double alpha, int dim) : s_(s), nu_(nu), alpha_(alpha), dim_(dim) {
  if (dim != 2 && dim != 3) throw Error(ErrorCode::Domain, "dimension must be 2 or 3");
  if (!std::isfinite(s) || s < dim / 4.0 || s >= 1.0)
    throw Error(ErrorCode::Domain, "fractional order s=" + std::to_string(s) + " outside [" +
                                       std::to_string(dim / 4.0) + ", 1) for dim=" + std::to_string(dim));
  if (!std::isfinite(nu) || !(nu > 0.0)) throw Error(ErrorCode::Domain, "viscosity nu must be > 0");
  if (!std::isfinite(alpha) || alpha < 0.0) throw Error(ErrorCode::Domain, "filter width alpha must be >= 0");
}

std::vector<double> lambda_multiplier(const GridSpec& grid, double gamma) {
  if (!std::isfinite(gamma) || gamma < 0.0)
    throw Error(ErrorCode::Domain, "lambda_power: gamma must be finite and >= 0, got " + std::to_string(gamma));
  const auto k2 = grid.wavenumber_squared();
  std::vector<double> m(k2.size());
  for (std::size_t i = 0; i < k2.size(); ++i) {
    if (gamma == 0.0)
      m[i] = 1.0;
    else if (k2[i] == 0.0)
      m[i] = 0.0;
    else if (gamma == 2.0)
      m[i] = k2[i];
    else
      m[i] = std::pow(k2[i], 0.5 * gamma);
  }
  return m;
}

SpectralField lambda_power(const SpectralField& F, const GridSpec& grid, double gamma) {
  const auto m = lambda_multiplier(grid, gamma);
  SpectralField out = F;
  for (std::size_t c = 0; c < out.components(); ++c) kp::scale(out[c], m);
  return out;
}

SpectralField fractional_laplacian(const SpectralField& F, const GridSpec& grid, const PhysParams& params) {
  return lambda_power(F, grid, 2.0 * params.s());
}

SpectralField helmholtz_filter(const SpectralField& v_hat, const GridSpec& grid, double alpha) {
  SpectralField out = v_hat;
  if (alpha == 0.0) return out;
  const auto k2 = grid.wavenumber_squared();
  std::vector<double> m(k2.size());
  const double a2 = alpha * alpha;
  for (std::size_t i = 0; i < k2.size(); ++i) m[i] = 1.0 / (1.0 + a2 * k2[i]);
  for (std::size_t c = 0; c < out.components(); ++c) kp::scale(out[c], m);
  return out;
}

void leray_project_in_place(SpectralField& F, const GridSpec& grid) {
  if (F.components() != static_cast<std::size_t>(grid.dim()))
    throw Error(ErrorCode::DimensionMismatch, "leray_project: field must have one component per axis");
  std::vector<std::span<Complex>> comps;
  std::vector<std::span<const double>> kvec;
  for (int a = 0; a < grid.dim(); ++a) {
    comps.push_back(F[a]);
    kvec.push_back(grid.wavenumbers(a));
  }
  kp::leray_project(comps, kvec, grid.wavenumber_squared());
}

SpectralField leray_project(const SpectralField& F, const GridSpec& grid) {
  SpectralField out = F;
  leray_project_in_place(out, grid);
  return out;
}

double normalization_constant(int n, double s) {
  if (n != 2 && n != 3) throw Error(ErrorCode::Domain, "normalization_constant: n must be 2 or 3");
  if (!(s > 0.0 && s < 1.0))
    throw Error(ErrorCode::Domain, "normalization_constant: s must lie in (0, 1), got " + std::to_string(s));
  return std::pow(2.0, 2.0 * s) * std::tgamma(0.5 * (n + 2.0 * s)) /
         (std::pow(std::numbers::pi, 0.5 * n) * std::tgamma(1.0 - s));
}

double kernel_normalization_constant(int n, double s) { return s * normalization_constant(n, s); }

double l2_norm(const SpectralField& F, const GridSpec& grid) {
  double sum = 0.0;
  for (std::size_t c = 0; c < F.components(); ++c) sum += kp::weighted_norm2(F[c], {});
  return std::sqrt(grid.volume() * sum);
}

double sobolev_seminorm(const SpectralField& F, const GridSpec& grid, double gamma) {
  if (gamma == 0.0) return l2_norm(F, grid);
  const auto m = lambda_multiplier(grid, 2.0 * gamma);
  double sum = 0.0;
  for (std::size_t c = 0; c < F.components(); ++c) sum += kp::weighted_norm2(F[c], m);
  return std::sqrt(grid.volume() * sum);
}

double sobolev_norm_hs(const SpectralField& F, const GridSpec& grid, double s) {
  const double c = normalization_constant(grid.dim(), s);
  const double semi = sobolev_seminorm(F, grid, s);
  const double l2 = l2_norm(F, grid);
  return std::sqrt(2.0 / c * semi * semi + l2 * l2);
}

double lp_norm(const RealField& f, const GridSpec& grid, double p) {
  if (!(p >= 1.0)) throw Error(ErrorCode::Domain, "lp_norm: p must be >= 1");
  const double cell = std::pow(grid.spacing(), grid.dim());
  if (p == 4.0) {
    std::vector<std::span<const double>> comps;
    for (std::size_t c = 0; c < f.components(); ++c) comps.push_back(f[c]);
    return std::pow(kp::sum_fourth_power_magnitude(comps) * cell, 0.25);
  }
  if (p == 2.0) {
    double sum = 0.0;
    for (std::size_t c = 0; c < f.components(); ++c) sum += kp::sum_squares(f[c]);
    return std::sqrt(sum * cell);
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    double m2 = 0.0;
    for (std::size_t c = 0; c < f.components(); ++c) m2 += f[c][i] * f[c][i];
    sum += std::pow(m2, 0.5 * p);
  }
  return std::pow(sum * cell, 1.0 / p);
}

double ladyzhenskaya_ratio(const SpectralField& u_hat, const GridSpec& grid) {
  const double l2 = l2_norm(u_hat, grid);
  if (l2 == 0.0) return 0.0;
  const double semi = sobolev_seminorm(u_hat, grid, grid.dim() / 4.0);
  const double l4 = lp_norm(inverse_transform_trusted(u_hat, grid), grid, 4.0);
  return l4 * l4 / (semi * semi + l2 * l2);
}

double max_divergence(const SpectralField& F, const GridSpec& grid) {
  double norm2 = 0.0;
  for (std::size_t c = 0; c < F.components(); ++c) norm2 += kp::weighted_norm2(F[c], {});
  if (norm2 == 0.0) return 0.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.modes(); ++i) {
    Complex div = 0.0;
    for (int a = 0; a < grid.dim(); ++a) div += grid.wavenumbers(a)[i] * F[a][i];
    worst = std::max(worst, std::abs(div));
  }
  return worst / std::sqrt(norm2);
}

}  // namespace fchs
