#include "fchs/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "fchs/errors.hpp"
#include "fchs/fractional_ops.hpp"

namespace fchs {

namespace {

template <typename F>
SpectralField sample_vector(const GridSpec& grid, F&& f) {
  RealField real = zero_real(grid, static_cast<std::size_t>(grid.dim()));
  const int n = grid.points_per_axis();
  const double k0 = grid.fundamental();
  std::array<double, 3> x{};
  std::array<double, 3> out{};
  for (std::size_t i = 0; i < grid.modes(); ++i) {
    std::size_t rem = i;
    for (int a = grid.dim() - 1; a >= 0; --a) {
      x[a] = k0 * grid.coordinate(static_cast<int>(rem % n));
      rem /= n;
    }
    out = {};
    f(x, out);
    for (int c = 0; c < grid.dim(); ++c) real[c][i] = out[c];
  }
  auto spec = forward_transform(real, grid);
  apply_dealias(spec, grid);
  leray_project_in_place(spec, grid);
  return spec;
}

void scale_field(SpectralField& F, double factor) {
  for (std::size_t c = 0; c < F.components(); ++c)
    for (auto& z : F[c]) z *= factor;
}

}  // namespace

SpectralField taylor_green(const GridSpec& grid, double amplitude) {
  const bool three = grid.dim() == 3;
  return sample_vector(grid, [&](const std::array<double, 3>& x, std::array<double, 3>& v) {
    const double z = three ? std::cos(x[2]) : 1.0;
    v[0] = amplitude * std::sin(x[0]) * std::cos(x[1]) * z;
    v[1] = -amplitude * std::cos(x[0]) * std::sin(x[1]) * z;
  });
}

SpectralField shear_mode(const GridSpec& grid, double amplitude) {
  return sample_vector(grid, [&](const std::array<double, 3>& x, std::array<double, 3>& v) {
    const double w = std::sin(x[0] + 2.0 * x[1]);
    v[0] = -2.0 * amplitude * w;
    v[1] = amplitude * w;
  });
}

SpectralField random_divfree(const GridSpec& grid, double amplitude, std::uint64_t seed) {
  const std::size_t dim = static_cast<std::size_t>(grid.dim());
  SpectralField F = zero_spectral(grid, dim);
  if (amplitude == 0.0) return F;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto mask = dealias_mask(grid);
  const auto k2 = grid.wavenumber_squared();
  for (std::size_t i = 0; i < grid.modes(); ++i) {
    if (!mask[i] || k2[i] == 0.0) continue;
    const double w = 1.0 / (1.0 + k2[i]);
    for (std::size_t c = 0; c < dim; ++c) {
      const double re = normal(rng);
      const double im = normal(rng);
      F[c][i] = w * Complex(re, im);
    }
  }
  symmetrize_hermitian(F, grid);
  leray_project_in_place(F, grid);
  const double rms = l2_norm(F, grid) / std::sqrt(grid.volume());
  if (rms == 0.0) throw Error(ErrorCode::InvalidArgument, "random_divfree: grid has no admissible modes");
  scale_field(F, amplitude / rms);
  return F;
}

SpectralField small_data(const GridSpec& grid, double amplitude, std::uint64_t seed) {
  SpectralField F = random_divfree(grid, 1.0, seed);
  if (amplitude == 0.0) return zero_spectral(grid, F.components());
  scale_field(F, amplitude / l2_norm(F, grid));
  return F;
}

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = {"taylor_green", "random_divfree", "small_data"};
  return names;
}

bool is_scenario(std::string_view name) {
  const auto& names = scenario_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

SpectralField make_initial_data(std::string_view scenario, const GridSpec& grid, double amplitude, std::uint64_t seed) {
  if (scenario == "taylor_green") return taylor_green(grid, amplitude);
  if (scenario == "random_divfree") return random_divfree(grid, amplitude, seed);
  if (scenario == "small_data") return small_data(grid, amplitude, seed);
  throw Error(ErrorCode::Config, "unknown scenario '" + std::string(scenario) + "'");
}

}  // namespace fchs
