#pragma once

// Independent reference computations used by the unit tests. Nothing here
// calls into the transform or operator code under test.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

/// Row-major multi-index helpers for an N^dim grid.
struct Box {
  int dim;
  int n;

  std::size_t size() const {
    std::size_t m = 1;
    for (int a = 0; a < dim; ++a) m *= static_cast<std::size_t>(n);
    return m;
  }
  std::array<int, 3> index(std::size_t flat) const {
    std::array<int, 3> out{};
    for (int a = dim - 1; a >= 0; --a) {
      out[a] = static_cast<int>(flat % n);
      flat /= n;
    }
    return out;
  }
  /// Integer wavenumber in [-n/2+1, n/2] for storage slot `i`.
  int wave(int i) const { return i <= n / 2 ? i : i - n; }
  std::array<int, 3> waves(std::size_t flat) const {
    auto idx = index(flat);
    for (int a = 0; a < dim; ++a) idx[a] = wave(idx[a]);
    return idx;
  }
  std::size_t flat_of_wave(std::array<int, 3> k) const {
    std::size_t f = 0;
    for (int a = 0; a < dim; ++a) f = f * n + static_cast<std::size_t>(((k[a] % n) + n) % n);
    return f;
  }
};

/// F(k) = n^-dim sum_x f(x) exp(-2 pi i k.j / n), by direct summation.
inline std::vector<cplx> dft(const Box& b, const std::vector<double>& f) {
  const std::size_t m = b.size();
  std::vector<cplx> out(m);
  for (std::size_t kf = 0; kf < m; ++kf) {
    const auto k = b.index(kf);
    cplx sum = 0.0;
    for (std::size_t xf = 0; xf < m; ++xf) {
      const auto j = b.index(xf);
      long phase = 0;
      for (int a = 0; a < b.dim; ++a) phase += static_cast<long>(k[a]) * j[a];
      const double ang = -2.0 * std::numbers::pi * static_cast<double>(phase % b.n) / b.n;
      sum += f[xf] * cplx(std::cos(ang), std::sin(ang));
    }
    out[kf] = sum / static_cast<double>(m);
  }
  return out;
}

inline bool in_band(const Box& b, const std::array<int, 3>& k) {
  for (int a = 0; a < b.dim; ++a)
    if (std::abs(k[a]) > b.n / 3) return false;
  return true;
}

/// Exact spectral convolution sum_{p+q=k} a(p) * b(q) over band-limited inputs,
/// evaluated on output modes inside the 2/3 band.
inline std::vector<cplx> convolve(const Box& b, const std::vector<cplx>& x, const std::vector<cplx>& y) {
  const std::size_t m = b.size();
  std::vector<cplx> out(m, 0.0);
  for (std::size_t pf = 0; pf < m; ++pf) {
    if (x[pf] == cplx(0.0)) continue;
    const auto p = b.waves(pf);
    for (std::size_t qf = 0; qf < m; ++qf) {
      if (y[qf] == cplx(0.0)) continue;
      const auto q = b.waves(qf);
      std::array<int, 3> k{};
      for (int a = 0; a < b.dim; ++a) k[a] = p[a] + q[a];
      if (!in_band(b, k)) continue;
      out[b.flat_of_wave(k)] += x[pf] * y[qf];
    }
  }
  return out;
}

/// Spectral derivative along `axis` of a band-limited coefficient array (box 2 pi).
inline std::vector<cplx> derivative(const Box& b, const std::vector<cplx>& x, int axis) {
  std::vector<cplx> out(x.size());
  for (std::size_t f = 0; f < x.size(); ++f) out[f] = cplx(0.0, b.waves(f)[axis]) * x[f];
  return out;
}

/// Composite Simpson rule on [a, b] with an even number of panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
  if (panels % 2) ++panels;
  const double h = (b - a) / panels;
  double sum = f(a) + f(b);
  for (int i = 1; i < panels; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return sum * h / 3.0;
}

/// int_0^inf (1 - cos r) r^{-1-2s} dr for 0 < s < 1, by quadrature: a series
/// near 0, Simpson on [r0, R], and an integrated-by-parts tail beyond R.
inline double radial_kernel_integral(double s) {
  const double r0 = 1e-3;
  // (1 - cos r) = r^2/2 - r^4/24 + ... on [0, r0]
  const double head = std::pow(r0, 2.0 - 2.0 * s) / (2.0 * (2.0 - 2.0 * s)) -
                      std::pow(r0, 4.0 - 2.0 * s) / (24.0 * (4.0 - 2.0 * s));
  const double R = 400.0 * std::numbers::pi;
  auto g = [s](double r) { return (1.0 - std::cos(r)) * std::pow(r, -1.0 - 2.0 * s); };
  // r = e^u on [r0, 1] keeps the integrand smooth near the origin.
  double body = simpson([&](double u) { return g(std::exp(u)) * std::exp(u); }, std::log(r0), 0.0, 4000);
  for (double a = 1.0; a < R; a += 1.0) body += simpson(g, a, std::min(a + 1.0, R), 64);
  // int_R^inf r^{-1-2s} dr - int_R^inf cos r r^{-1-2s} dr; the second by parts at sin(R) = 0.
  const double p = 1.0 + 2.0 * s;
  const double tail = std::pow(R, -2.0 * s) / (2.0 * s) - std::cos(R) * p * std::pow(R, -p - 1.0);
  return head + body + tail;
}

/// int over the unit sphere S^{n-1} of |omega_1|^{2s}.
inline double sphere_moment(int n, double s) {
  if (n == 2) {
    // 4 int_0^{pi/2} sin^{2s} theta d theta with theta = v^4 to smooth the endpoint.
    return 4.0 * simpson(
                     [s](double v) {
                       const double v3 = v * v * v;
                       return std::pow(std::sin(v3 * v), 2.0 * s) * 4.0 * v3;
                     },
                     0.0, std::pow(std::numbers::pi / 2.0, 0.25), 20000);
  }
  // n == 3: 2 pi int_{-1}^{1} |mu|^{2s} d mu
  return 4.0 * std::numbers::pi / (2.0 * s + 1.0);
}

/// int_{R^n} (1 - cos z_1) / |z|^{n+2s} dz by separated quadrature.
inline double kernel_integral(int n, double s) { return sphere_moment(n, s) * radial_kernel_integral(s); }

/// [f]^2 for f = exp(-|x|^2) in R^2 at s = 1/2 using the continuum Fourier side:
/// int |xi| |F f(xi)|^2 d xi / (2 pi)^2 * (2 / C_kernel) with C_kernel = 1 / (2 pi).
/// Closed form: 4 pi * (pi / 2) * sqrt(pi / 2).
inline double gaussian_gagliardo_squared_2d() {
  const double pi = std::numbers::pi;
  return 4.0 * pi * (pi / 2.0) * std::sqrt(pi / 2.0);
}

}  // namespace oracle
