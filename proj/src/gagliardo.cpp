#include "fchs/gagliardo.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "fchs/errors.hpp"
#include "fchs/kernels.hpp"

namespace fchs {

namespace {

// Midpoint rule on the circle, or on the sphere in (cos theta, phi), which is
// area-uniform. 3D is capped at 128 points per coordinate.
template <typename Fn>
double sphere_quadrature(int n, int points, Fn&& g) {
  constexpr double pi = std::numbers::pi;
  double sum = 0.0;
  if (n == 2) {
    const double h = 2.0 * pi / points;
    for (int i = 0; i < points; ++i) {
      const double th = (i + 0.5) * h;
      const std::array<double, 3> w{std::cos(th), std::sin(th), 0.0};
      sum += g(w);
    }
    return sum * h;
  }
  const int m = std::min(points, 128);
  const double hu = 2.0 / m;
  const double hp = 2.0 * pi / (2 * m);
  for (int i = 0; i < m; ++i) {
    const double u = -1.0 + (i + 0.5) * hu;
    const double r = std::sqrt(1.0 - u * u);
    for (int j = 0; j < 2 * m; ++j) {
      const double ph = (j + 0.5) * hp;
      const std::array<double, 3> w{r * std::cos(ph), r * std::sin(ph), u};
      sum += g(w);
    }
  }
  return sum * hu * hp;
}

double distance_to_box(std::span<const double> x, const std::array<double, 3>& w, int n, double lo, double hi) {
  double rho = std::numeric_limits<double>::infinity();
  for (int a = 0; a < n; ++a) {
    if (w[a] > 0.0)
      rho = std::min(rho, (hi - x[a]) / w[a]);
    else if (w[a] < 0.0)
      rho = std::min(rho, (lo - x[a]) / w[a]);
  }
  return rho;
}

}  // namespace

std::size_t Patch::size() const noexcept {
  std::size_t r = 1;
  for (int a = 0; a < dim; ++a) r *= static_cast<std::size_t>(points_per_axis);
  return r;
}

std::vector<double> sample_patch(const Patch& patch, const std::function<double(std::span<const double>)>& f) {
  std::vector<double> out(patch.size());
  std::array<double, 3> x{};
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    std::size_t rest = flat;
    for (int a = patch.dim - 1; a >= 0; --a) {
      x[a] = patch.coordinate(static_cast<int>(rest % patch.points_per_axis));
      rest /= patch.points_per_axis;
    }
    out[flat] = f(std::span<const double>(x.data(), patch.dim));
  }
  return out;
}

double exterior_kernel_integral(std::span<const double> point, double lo, double hi, double p, int angular_points) {
  const int n = static_cast<int>(point.size());
  return sphere_quadrature(n, angular_points, [&](const std::array<double, 3>& w) {
    return std::pow(distance_to_box(point, w, n, lo, hi), -p) / p;
  });
}

double unit_cube_singular_integral(int n, double s, int angular_points) {
  const double p = 2.0 - 2.0 * s;
  return sphere_quadrature(n, angular_points, [&](const std::array<double, 3>& w) {
    double m = 0.0;
    for (int a = 0; a < n; ++a) m = std::max(m, std::abs(w[a]));
    return std::pow(0.5 / m, p) / p;
  });
}

GagliardoParts gagliardo_parts(std::span<const double> samples, const Patch& patch, double s,
                               const GagliardoOptions& options) {
  if (patch.dim != 2 && patch.dim != 3) throw Error(ErrorCode::InvalidArgument, "patch dimension must be 2 or 3");
  if (!(s > 0.0 && s < 1.0)) throw Error(ErrorCode::Domain, "gagliardo: s must lie in (0, 1)");
  if (samples.size() != patch.size())
    throw Error(ErrorCode::DimensionMismatch, "gagliardo: sample count does not match patch");

  const int n = patch.dim;
  const int N = patch.points_per_axis;
  const double dx = patch.spacing();
  const double cell = std::pow(dx, n);

  std::vector<double> coords(samples.size() * n);
  std::vector<std::array<int, 3>> index(samples.size());
  for (std::size_t flat = 0; flat < samples.size(); ++flat) {
    std::size_t rest = flat;
    for (int a = n - 1; a >= 0; --a) {
      index[flat][a] = static_cast<int>(rest % N);
      rest /= N;
      coords[flat * n + a] = patch.coordinate(index[flat][a]);
    }
  }

  GagliardoParts parts;
  parts.pair_sum = kernels::parallel::gagliardo_pair_sum({n, coords, samples}, s) * cell * cell;

  double peak = 0.0;
  for (double v : samples) peak = std::max(peak, std::abs(v));
  const double negligible = 1e-30 * peak * peak;

  if (options.tail_correction) {
    // Node cells tile [-a - dx/2, a - dx/2]^n.
    const double lo = -patch.half_width - 0.5 * dx;
    const double hi = patch.half_width - 0.5 * dx;
    double tail = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const double f2 = samples[i] * samples[i];
      if (f2 <= negligible) continue;
      tail += f2 * exterior_kernel_integral({coords.data() + i * n, static_cast<std::size_t>(n)}, lo, hi, 2.0 * s,
                                            options.angular_points);
    }
    parts.tail = 2.0 * tail * cell;
  }

  if (options.diagonal_correction) {
    // Fourth-order central differences; f is zero beyond the patch.
    auto at = [&](std::array<int, 3> idx) -> double {
      std::size_t flat = 0;
      for (int a = 0; a < n; ++a) {
        if (idx[a] < 0 || idx[a] >= N) return 0.0;
        flat = flat * N + static_cast<std::size_t>(idx[a]);
      }
      return samples[flat];
    };
    double grad_sum = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      double g2 = 0.0;
      for (int a = 0; a < n; ++a) {
        auto shifted = [&](int d) {
          auto idx = index[i];
          idx[a] += d;
          return at(idx);
        };
        const double g = (-shifted(2) + 8.0 * shifted(1) - 8.0 * shifted(-1) + shifted(-2)) / (12.0 * dx);
        g2 += g * g;
      }
      grad_sum += g2;
    }
    const double K = unit_cube_singular_integral(n, s, options.angular_points);
    parts.diagonal = grad_sum / n * cell * std::pow(dx, 2.0 - 2.0 * s) * K;
  }
  return parts;
}

double gagliardo_seminorm_oracle(std::span<const double> samples, const Patch& patch, double s,
                                 const GagliardoOptions& options) {
  if (samples.size() != patch.size())
    throw Error(ErrorCode::DimensionMismatch, "gagliardo: sample count does not match patch");
  const auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end());
  if (samples.empty() || *lo_it == *hi_it) return 0.0;

  double peak = 0.0;
  for (double v : samples) peak = std::max(peak, std::abs(v));
  const int N = patch.points_per_axis;
  for (std::size_t flat = 0; flat < samples.size(); ++flat) {
    std::size_t rest = flat;
    bool boundary = false;
    for (int a = 0; a < patch.dim; ++a) {
      const auto i = static_cast<int>(rest % N);
      rest /= N;
      boundary = boundary || i == 0 || i == N - 1;
    }
    if (boundary && std::abs(samples[flat]) > 1e-10 * peak)
      throw Error(ErrorCode::SupportViolation,
                  "gagliardo: field not numerically compactly supported (boundary value " +
                      std::to_string(std::abs(samples[flat]) / peak) + " of peak)");
  }
  return std::sqrt(gagliardo_parts(samples, patch, s, options).total());
}

}  // namespace fchs
