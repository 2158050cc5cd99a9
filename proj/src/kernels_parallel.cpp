// OpenMP kernels. Reductions accumulate one partial per fixed-size block and
// combine the partials in block order, which makes the result independent of
// the worker count.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <vector>

#include "fchs/kernels.hpp"

#ifdef FCHS_HAVE_OPENMP
#include <omp.h>
#endif

namespace fchs::kernels::parallel {

namespace {

std::atomic<int> requested_workers{0};

int threads() {
#ifdef FCHS_HAVE_OPENMP
  const int r = requested_workers.load(std::memory_order_relaxed);
  return r > 0 ? r : omp_get_max_threads();
#else
  return 1;
#endif
}

using Index = std::ptrdiff_t;

template <typename BlockSum>
double blocked_reduce(std::size_t n, BlockSum&& block_sum) {
  const Index blocks = static_cast<Index>((n + kReductionBlock - 1) / kReductionBlock);
  std::vector<double> partial(static_cast<std::size_t>(blocks), 0.0);
#pragma omp parallel for schedule(static) num_threads(threads())
  for (Index b = 0; b < blocks; ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kReductionBlock;
    const std::size_t hi = std::min(n, lo + kReductionBlock);
    partial[static_cast<std::size_t>(b)] = block_sum(lo, hi);
  }
  double sum = 0.0;
  for (double p : partial) sum += p;
  return sum;
}

}  // namespace

int worker_count() { return threads(); }

void set_worker_count(int workers) { requested_workers.store(std::max(0, workers)); }

void scale(std::span<Complex> data, std::span<const double> factor) {
  const Index n = static_cast<Index>(data.size());
#pragma omp parallel for schedule(static) num_threads(threads())
  for (Index i = 0; i < n; ++i) data[i] *= factor[i];
}

void axpy(std::span<Complex> y, Complex a, std::span<const Complex> x) {
  const Index n = static_cast<Index>(y.size());
#pragma omp parallel for schedule(static) num_threads(threads())
  for (Index i = 0; i < n; ++i) y[i] += a * x[i];
}

void axpy_then_scale(std::span<Complex> y, Complex a, std::span<const Complex> x,
                     std::span<const double> factor) {
  const Index n = static_cast<Index>(y.size());
#pragma omp parallel for schedule(static) num_threads(threads())
  for (Index i = 0; i < n; ++i) y[i] = factor[i] * (y[i] + a * x[i]);
}

void multiply_accumulate(std::span<double> out, std::span<const double> a, std::span<const double> b) {
  const Index n = static_cast<Index>(out.size());
#pragma omp parallel for schedule(static) num_threads(threads())
  for (Index i = 0; i < n; ++i) out[i] += a[i] * b[i];
}

double weighted_norm2(std::span<const Complex> data, std::span<const double> weight) {
  return blocked_reduce(data.size(), [&](std::size_t lo, std::size_t hi) {
    double sum = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      const double m = std::norm(data[i]);
      sum += weight.empty() ? m : weight[i] * m;
    }
    return sum;
  });
}

double weighted_inner(std::span<const Complex> a, std::span<const Complex> b, std::span<const double> weight) {
  return blocked_reduce(a.size(), [&](std::size_t lo, std::size_t hi) {
    double sum = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      const double r = a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
      sum += weight.empty() ? r : weight[i] * r;
    }
    return sum;
  });
}

double sum_squares(std::span<const double> x) {
  return blocked_reduce(x.size(), [&](std::size_t lo, std::size_t hi) {
    double sum = 0.0;
    for (std::size_t i = lo; i < hi; ++i) sum += x[i] * x[i];
    return sum;
  });
}

double sum_fourth_power_magnitude(std::span<const std::span<const double>> components) {
  if (components.empty()) return 0.0;
  return blocked_reduce(components.front().size(), [&](std::size_t lo, std::size_t hi) {
    double sum = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      double m2 = 0.0;
      for (const auto& c : components) m2 += c[i] * c[i];
      sum += m2 * m2;
    }
    return sum;
  });
}

double max_abs(std::span<const double> x) {
  double m = 0.0;
  const Index n = static_cast<Index>(x.size());
#pragma omp parallel for schedule(static) reduction(max : m) num_threads(threads())
  for (Index i = 0; i < n; ++i) m = std::max(m, std::abs(x[i]));
  return m;
}

void leray_project(std::span<const std::span<Complex>> components, std::span<const std::span<const double>> kvec,
                   std::span<const double> k2) {
  const std::size_t dim = components.size();
  const Index n = static_cast<Index>(k2.size());
#pragma omp parallel for schedule(static) num_threads(threads())
  for (Index i = 0; i < n; ++i) {
    if (k2[i] == 0.0) continue;
    Complex kdotf = 0.0;
    for (std::size_t a = 0; a < dim; ++a) kdotf += kvec[a][i] * components[a][i];
    const Complex scale = kdotf / k2[i];
    for (std::size_t a = 0; a < dim; ++a) components[a][i] -= kvec[a][i] * scale;
  }
}

double gagliardo_pair_sum(const PointCloud& cloud, double s) {
  const std::size_t dim = static_cast<std::size_t>(cloud.dim);
  const std::size_t n = cloud.values.size();
  const double exponent = 0.5 * (cloud.dim + 2.0 * s);
  // One partial per source point, combined in point order.
  std::vector<double> row(n, 0.0);
  const Index rows = static_cast<Index>(n);
#pragma omp parallel for schedule(dynamic, 16) num_threads(threads())
  for (Index ii = 0; ii < rows; ++ii) {
    const std::size_t i = static_cast<std::size_t>(ii);
    const double* xi = cloud.coords.data() + i * dim;
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double* xj = cloud.coords.data() + j * dim;
      double r2 = 0.0;
      for (std::size_t a = 0; a < dim; ++a) r2 += (xi[a] - xj[a]) * (xi[a] - xj[a]);
      const double df = cloud.values[i] - cloud.values[j];
      sum += df * df / std::pow(r2, exponent);
    }
    row[i] = sum;
  }
  double total = 0.0;
  for (double r : row) total += r;
  return total;
}

}  // namespace fchs::kernels::parallel
