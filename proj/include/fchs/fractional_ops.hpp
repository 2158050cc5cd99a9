#pragma once

// Fourier-diagonal linear operators and fractional Sobolev norms.

#include <span>
#include <vector>

#include "fchs/grid.hpp"

namespace fchs {

/// Physical parameters (fractional order, viscosity, filter width) validated
/// against the spatial dimension: dim/4 <= s < 1, nu > 0, alpha >= 0.
class PhysParams {
public:
  PhysParams(double s, double nu, double alpha, int dim);

  double s() const noexcept { return s_; }
  double nu() const noexcept { return nu_; }
  double alpha() const noexcept { return alpha_; }
  int dim() const noexcept { return dim_; }
  /// s == dim/4, the regime where only small data is covered.
  bool critical() const noexcept { return s_ == dim_ / 4.0; }

  friend bool operator==(const PhysParams&, const PhysParams&) = default;

private:
  double s_;
  double nu_;
  double alpha_;
  int dim_;
};

/// Per-mode |k|^gamma with 0^gamma = 0 for gamma > 0 and 1 for gamma == 0.
std::vector<double> lambda_multiplier(const GridSpec& grid, double gamma);

/// Lambda^gamma F: every coefficient scaled by |k|^gamma. gamma < 0 is rejected.
SpectralField lambda_power(const SpectralField& F, const GridSpec& grid, double gamma);

/// (-Delta)^s F == lambda_power(F, 2 s).
SpectralField fractional_laplacian(const SpectralField& F, const GridSpec& grid, const PhysParams& params);

/// Solve u - alpha^2 Delta u = v: coefficients divided by 1 + alpha^2 |k|^2.
SpectralField helmholtz_filter(const SpectralField& v_hat, const GridSpec& grid, double alpha);

/// Leray projection P(k) = I - k k^T / |k|^2; the mean mode is untouched.
SpectralField leray_project(const SpectralField& F, const GridSpec& grid);
void leray_project_in_place(SpectralField& F, const GridSpec& grid);

/// Closed form 2^{2s} Gamma((n+2s)/2) / (pi^{n/2} Gamma(1-s)), 0 < s < 1.
double normalization_constant(int n, double s);

/// Reciprocal of the kernel integral int (1 - cos z_1) / |z|^{n+2s} dz.
/// This equals s * normalization_constant(n, s) and is the constant for
/// which the Gagliardo seminorm and the Fourier seminorm coincide.
double kernel_normalization_constant(int n, double s);

/// Spectral L2 norm, sqrt(L^dim sum_k |F(k)|^2) over all components.
double l2_norm(const SpectralField& F, const GridSpec& grid);

/// Homogeneous seminorm ||Lambda^gamma F||_{L2}.
double sobolev_seminorm(const SpectralField& F, const GridSpec& grid, double gamma);

/// Inhomogeneous norm sqrt(2 C_{n,s}^{-1} ||Lambda^s F||^2 + ||F||^2) with the
/// closed-form constant; n is the grid dimension.
double sobolev_norm_hs(const SpectralField& F, const GridSpec& grid, double s);

/// L^p norm of the pointwise Euclidean magnitude, by physical-grid quadrature.
double lp_norm(const RealField& f, const GridSpec& grid, double p);

/// ||u||_{L4}^2 / (||Lambda^{n/4} u||^2 + ||u||^2) for a spectral field u.
double ladyzhenskaya_ratio(const SpectralField& u_hat, const GridSpec& grid);

/// max_k |k . F(k)| / sqrt(sum_k |F(k)|^2) (coefficient norm); 0 for F = 0.
double max_divergence(const SpectralField& F, const GridSpec& grid);

}  // namespace fchs
