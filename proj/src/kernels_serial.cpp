// Reference implementations: straightforward loops, no blocking.

#include <algorithm>
#include <cmath>

#include "fchs/kernels.hpp"

namespace fchs::kernels::serial {

void scale(std::span<Complex> data, std::span<const double> factor) {
  for (std::size_t i = 0; i < data.size(); ++i) data[i] *= factor[i];
}

void axpy(std::span<Complex> y, Complex a, std::span<const Complex> x) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

void axpy_then_scale(std::span<Complex> y, Complex a, std::span<const Complex> x,
                     std::span<const double> factor) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = factor[i] * (y[i] + a * x[i]);
}

void multiply_accumulate(std::span<double> out, std::span<const double> a, std::span<const double> b) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += a[i] * b[i];
}

double weighted_norm2(std::span<const Complex> data, std::span<const double> weight) {
  double sum = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double m = std::norm(data[i]);
    sum += weight.empty() ? m : weight[i] * m;
  }
  return sum;
}

double weighted_inner(std::span<const Complex> a, std::span<const Complex> b, std::span<const double> weight) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double r = a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    sum += weight.empty() ? r : weight[i] * r;
  }
  return sum;
}

double sum_squares(std::span<const double> x) {
  double sum = 0.0;
  for (double v : x) sum += v * v;
  return sum;
}

double sum_fourth_power_magnitude(std::span<const std::span<const double>> components) {
  if (components.empty()) return 0.0;
  const std::size_t n = components.front().size();
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double m2 = 0.0;
    for (const auto& c : components) m2 += c[i] * c[i];
    sum += m2 * m2;
  }
  return sum;
}

double max_abs(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

void leray_project(std::span<const std::span<Complex>> components, std::span<const std::span<const double>> kvec,
                   std::span<const double> k2) {
  const std::size_t dim = components.size();
  for (std::size_t i = 0; i < k2.size(); ++i) {
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
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double* xi = cloud.coords.data() + i * dim;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double* xj = cloud.coords.data() + j * dim;
      double r2 = 0.0;
      for (std::size_t a = 0; a < dim; ++a) r2 += (xi[a] - xj[a]) * (xi[a] - xj[a]);
      const double df = cloud.values[i] - cloud.values[j];
      sum += df * df / std::pow(r2, exponent);
    }
  }
  return sum;
}

}  // namespace fchs::kernels::serial
