#pragma once

// Initial data. Every generator returns a Leray-projected, dealiased,
// Hermitian-symmetric momentum field v_hat.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fchs/grid.hpp"

namespace fchs {

/// A (sin x cos y, -cos x sin y) in 2D, with a cos z factor and zero third
/// component in 3D. Coordinates are scaled by the box fundamental.
SpectralField taylor_green(const GridSpec& grid, double amplitude);

/// (-2 sin(x + 2y), sin(x + 2y)[, 0]): a divergence-free shear mode that does
/// not commute with Taylor-Green under the nonlinearity.
SpectralField shear_mode(const GridSpec& grid, double amplitude);

/// Seeded random field on the dealiased band with coefficient weights
/// 1 / (1 + |k|^2), scaled to root-mean-square magnitude `amplitude`.
SpectralField random_divfree(const GridSpec& grid, double amplitude, std::uint64_t seed);

/// random_divfree rescaled after projection so that ||v||_{L2} == amplitude.
SpectralField small_data(const GridSpec& grid, double amplitude, std::uint64_t seed);

const std::vector<std::string>& scenario_names();
bool is_scenario(std::string_view name);

/// Dispatch on a registered scenario tag; throws ErrorCode::Config otherwise.
SpectralField make_initial_data(std::string_view scenario, const GridSpec& grid, double amplitude, std::uint64_t seed);

}  // namespace fchs
