#pragma once

// Brute-force Gagliardo seminorm on a truncated patch of R^n.
//
//   [f]^2 = int int |f(x) - f(y)|^2 / |x - y|^{n+2s} dx dy
//
// evaluated as a double sum over grid nodes, O(N^{2n}). Two local pieces the
// plain sum misses are added back:
//   - tail: pairs with y outside the patch, where f vanishes, contribute
//     2 sum_x f(x)^2 dx^n int_{outside} |x - y|^{-(n+2s)} dy;
//   - diagonal: the excluded x == y cell contributes, to leading order,
//     |grad f(x)|^2 / n * dx^{2-2s} * int_{unit cube} |h|^{2-n-2s} dh.
// Both integrals are reduced to angular quadratures of the distance to a box
// boundary. This is a cross-validation oracle, not a production path.

#include <functional>
#include <span>
#include <vector>

namespace fchs {

/// Nodes x_i = -half_width + i * (2 half_width / N), i = 0..N-1, on every axis.
struct Patch {
  int dim = 2;
  int points_per_axis = 32;
  double half_width = 8.0;

  double spacing() const noexcept { return 2.0 * half_width / points_per_axis; }
  double coordinate(int i) const noexcept { return -half_width + i * spacing(); }
  std::size_t size() const noexcept;
};

struct GagliardoOptions {
  bool tail_correction = true;
  bool diagonal_correction = true;
  int angular_points = 1024;  // per angular coordinate
};

/// Squared contributions; `total()` is [f]^2.
struct GagliardoParts {
  double pair_sum = 0.0;
  double tail = 0.0;
  double diagonal = 0.0;
  double total() const noexcept { return pair_sum + tail + diagonal; }
};

std::vector<double> sample_patch(const Patch& patch, const std::function<double(std::span<const double>)>& f);

GagliardoParts gagliardo_parts(std::span<const double> samples, const Patch& patch, double s,
                               const GagliardoOptions& options = {});

/// [f]_{H^s}. Rejects samples exceeding 1e-10 of the peak on the outermost
/// node layer; a constant field returns 0.
double gagliardo_seminorm_oracle(std::span<const double> samples, const Patch& patch, double s,
                                 const GagliardoOptions& options = {});

/// int_{S^{n-1}} rho(w)^{-p} / p dw, the integral of |y|^{-(n+p)} over the
/// exterior of the box [lo, hi]^n seen from a point inside it.
double exterior_kernel_integral(std::span<const double> point, double lo, double hi, double p,
                                int angular_points);

/// int over the centred unit cube of |h|^{2-n-2s} dh.
double unit_cube_singular_integral(int n, double s, int angular_points);

}  // namespace fchs
