#include "fchs/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <string>
#include <utility>

#include "fchs/errors.hpp"

namespace fchs {

struct GridSpec::Tables {
  std::vector<int> lattice;  // modes * dim, row-major axis order
  std::array<std::vector<double>, 3> k;
  std::array<std::vector<double>, 3> dk;
  std::vector<double> k2;
  std::vector<std::size_t> negated;
};

namespace {

int signed_index(int i, int n) { return i <= n / 2 ? i : i - n; }

std::size_t ipow(std::size_t base, int e) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

// FFTW plans are cached per (dim, N, direction). Planning is serialized;
// execution through fftw_execute_dft is thread safe. FFTW_UNALIGNED makes the
// chosen codelets independent of buffer alignment, so identical inputs give
// identical outputs regardless of where the vectors live.
class PlanCache {
public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(int dim, int n, int sign) {
    std::lock_guard lock(mutex_);
    const auto key = std::make_tuple(dim, n, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    const std::size_t total = ipow(static_cast<std::size_t>(n), dim);
    auto* in = fftw_alloc_complex(total);
    auto* out = fftw_alloc_complex(total);
    std::array<int, 3> dims{n, n, n};
    fftw_plan plan = fftw_plan_dft(dim, dims.data(), in, out, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(in);
    fftw_free(out);
    plans_.emplace(key, plan);
    return plan;
  }

  PlanCache(const PlanCache&) = delete;
  PlanCache& operator=(const PlanCache&) = delete;

private:
  PlanCache() = default;
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  std::mutex mutex_;
  std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

void execute(const GridSpec& g, int sign, const Complex* in, Complex* out) {
  fftw_plan plan = PlanCache::instance().get(g.dim(), g.points_per_axis(), sign);
  // fftw_complex is layout-compatible with std::complex<double>.
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
}

}  // namespace

GridSpec::GridSpec(int dim, int points_per_axis, double box_length)
    : dim_(dim), n_(points_per_axis), length_(box_length) {
  if (dim != 2 && dim != 3)
    throw Error(ErrorCode::InvalidArgument, "grid dimension must be 2 or 3, got " + std::to_string(dim));
  if (points_per_axis < 8 || points_per_axis % 2 != 0)
    throw Error(ErrorCode::InvalidArgument,
                "points per axis must be an even integer >= 8, got " + std::to_string(points_per_axis));
  if (!(box_length > 0.0) || !std::isfinite(box_length))
    throw Error(ErrorCode::InvalidArgument, "box length must be positive and finite");

  modes_ = ipow(static_cast<std::size_t>(n_), dim_);
  auto t = std::make_shared<Tables>();
  t->lattice.resize(modes_ * dim_);
  t->k2.assign(modes_, 0.0);
  t->negated.resize(modes_);
  const double k0 = fundamental();
  for (int a = 0; a < dim_; ++a) {
    t->k[a].resize(modes_);
    t->dk[a].resize(modes_);
  }
  for (std::size_t flat = 0; flat < modes_; ++flat) {
    std::size_t rest = flat;
    std::array<int, 3> idx{};
    for (int a = dim_ - 1; a >= 0; --a) {
      idx[a] = static_cast<int>(rest % n_);
      rest /= n_;
    }
    std::size_t neg = 0;
    for (int a = 0; a < dim_; ++a) {
      const int m = signed_index(idx[a], n_);
      t->lattice[flat * dim_ + a] = m;
      const double k = k0 * m;
      t->k[a][flat] = k;
      t->dk[a][flat] = (idx[a] == n_ / 2) ? 0.0 : k;
      t->k2[flat] += k * k;
      neg = neg * n_ + static_cast<std::size_t>((n_ - idx[a]) % n_);
    }
    t->negated[flat] = neg;
  }
  tables_ = std::move(t);
}

double GridSpec::volume() const noexcept { return std::pow(length_, dim_); }

int GridSpec::lattice(std::size_t flat, int axis) const noexcept {
  return tables_->lattice[flat * dim_ + axis];
}

std::array<int, 3> GridSpec::lattice(std::size_t flat) const noexcept {
  std::array<int, 3> r{};
  for (int a = 0; a < dim_; ++a) r[a] = lattice(flat, a);
  return r;
}

std::size_t GridSpec::index_of(std::array<int, 3> lat) const {
  std::size_t flat = 0;
  for (int a = 0; a < dim_; ++a) {
    int m = lat[a];
    if (m <= -n_ / 2 || m > n_ / 2)
      throw Error(ErrorCode::InvalidArgument, "lattice index " + std::to_string(m) + " outside grid");
    flat = flat * n_ + static_cast<std::size_t>((m + n_) % n_);
  }
  return flat;
}

std::size_t GridSpec::negated(std::size_t flat) const noexcept { return tables_->negated[flat]; }

std::span<const double> GridSpec::wavenumbers(int axis) const noexcept { return tables_->k[axis]; }

std::span<const double> GridSpec::wavenumber_squared() const noexcept { return tables_->k2; }

std::span<const double> GridSpec::derivative_wavenumbers(int axis) const noexcept {
  return tables_->dk[axis];
}

RealField zero_real(const GridSpec& grid, std::size_t components) {
  return RealField(components, grid.modes());
}

SpectralField zero_spectral(const GridSpec& grid, std::size_t components) {
  return SpectralField(components, grid.modes());
}

SpectralField forward_transform(const RealField& f, const GridSpec& grid) {
  if (f.size() != grid.modes())
    throw Error(ErrorCode::DimensionMismatch,
                "forward_transform: field has " + std::to_string(f.size()) + " samples, grid expects " +
                    std::to_string(grid.modes()));
  SpectralField out(f.components(), grid.modes());
  std::vector<Complex> in(grid.modes());
  const double norm = 1.0 / static_cast<double>(grid.modes());
  for (std::size_t c = 0; c < f.components(); ++c) {
    std::copy(f[c].begin(), f[c].end(), in.begin());
    execute(grid, FFTW_FORWARD, in.data(), out[c].data());
    for (auto& z : out[c]) z *= norm;
  }
  return out;
}

std::vector<Complex> forward_transform_component(std::span<const double> f, const GridSpec& grid) {
  std::vector<Complex> in(f.begin(), f.end());
  std::vector<Complex> out(grid.modes());
  execute(grid, FFTW_FORWARD, in.data(), out.data());
  const double norm = 1.0 / static_cast<double>(grid.modes());
  for (auto& z : out) z *= norm;
  return out;
}

std::vector<double> inverse_transform_component(std::span<const Complex> F, const GridSpec& grid) {
  std::vector<Complex> buf(grid.modes());
  execute(grid, FFTW_BACKWARD, F.data(), buf.data());
  std::vector<double> out(buf.size());
  for (std::size_t i = 0; i < buf.size(); ++i) out[i] = buf[i].real();
  return out;
}

double hermitian_defect(const SpectralField& F, const GridSpec& grid) {
  double peak = 0.0;
  double defect = 0.0;
  for (std::size_t c = 0; c < F.components(); ++c) {
    const auto data = F[c];
    for (std::size_t i = 0; i < data.size(); ++i) {
      peak = std::max(peak, std::abs(data[i]));
      defect = std::max(defect, std::abs(data[i] - std::conj(data[grid.negated(i)])));
    }
  }
  return peak == 0.0 ? 0.0 : defect / peak;
}

RealField inverse_transform_trusted(const SpectralField& F, const GridSpec& grid) {
  RealField out(F.components(), grid.modes());
  std::vector<Complex> buf(grid.modes());
  for (std::size_t c = 0; c < F.components(); ++c) {
    execute(grid, FFTW_BACKWARD, F[c].data(), buf.data());
    auto dst = out[c];
    for (std::size_t i = 0; i < buf.size(); ++i) dst[i] = buf[i].real();
  }
  return out;
}

RealField inverse_transform(const SpectralField& F, const GridSpec& grid) {
  if (F.size() != grid.modes())
    throw Error(ErrorCode::DimensionMismatch,
                "inverse_transform: field has " + std::to_string(F.size()) + " modes, grid expects " +
                    std::to_string(grid.modes()));
  const double defect = hermitian_defect(F, grid);
  if (defect > 1e-10)
    throw Error(ErrorCode::HermitianViolation,
                "inverse_transform: Hermitian symmetry broken (relative defect " + std::to_string(defect) + ")");
  return inverse_transform_trusted(F, grid);
}

std::vector<bool> dealias_mask(const GridSpec& grid) {
  std::vector<bool> mask(grid.modes(), true);
  const int cut = grid.dealias_cutoff();
  for (std::size_t i = 0; i < grid.modes(); ++i)
    for (int a = 0; a < grid.dim(); ++a)
      if (std::abs(grid.lattice(i, a)) > cut) {
        mask[i] = false;
        break;
      }
  return mask;
}

void apply_dealias(SpectralField& F, const GridSpec& grid) {
  const int cut = grid.dealias_cutoff();
  for (std::size_t i = 0; i < grid.modes(); ++i) {
    bool keep = true;
    for (int a = 0; a < grid.dim() && keep; ++a) keep = std::abs(grid.lattice(i, a)) <= cut;
    if (!keep)
      for (std::size_t c = 0; c < F.components(); ++c) F[c][i] = 0.0;
  }
}

std::vector<Complex> differentiate(std::span<const Complex> F, const GridSpec& grid, int axis) {
  std::vector<Complex> out(F.size());
  const auto k = grid.derivative_wavenumbers(axis);
  for (std::size_t i = 0; i < F.size(); ++i) out[i] = Complex(0.0, k[i]) * F[i];
  return out;
}

void symmetrize_hermitian(SpectralField& F, const GridSpec& grid) {
  for (std::size_t c = 0; c < F.components(); ++c) {
    auto data = F[c];
    for (std::size_t i = 0; i < data.size(); ++i) {
      const std::size_t j = grid.negated(i);
      if (j < i) continue;
      const Complex avg = 0.5 * (data[i] + std::conj(data[j]));
      data[i] = avg;
      data[j] = std::conj(avg);
    }
  }
}

void check_same_shape(const SpectralField& a, const SpectralField& b, const char* where) {
  if (a.components() != b.components() || a.size() != b.size())
    throw Error(ErrorCode::DimensionMismatch, std::string(where) + ": field shapes differ");
}

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "dimension mismatch";
    case ErrorCode::HermitianViolation: return "hermitian violation";
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::Domain: return "domain error";
    case ErrorCode::SupportViolation: return "support violation";
    case ErrorCode::BlowUp: return "blow-up";
    case ErrorCode::Config: return "config error";
    case ErrorCode::Io: return "i/o error";
    case ErrorCode::BadMagic: return "bad magic";
    case ErrorCode::BadVersion: return "bad version";
    case ErrorCode::BadChecksum: return "bad checksum";
    case ErrorCode::InvariantViolation: return "invariant violation";
    case ErrorCode::NonMonotoneConvergence: return "non-monotone convergence";
  }
  return "unknown";
}

}  // namespace fchs
