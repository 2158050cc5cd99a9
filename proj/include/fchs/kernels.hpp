#pragma once

// Data-parallel inner loops. Two implementations share one signature set:
//
//   kernels::serial    plain loops, kept as the reference for testing
//   kernels::parallel  OpenMP loops; reductions use fixed-size blocks summed
//                      in block order, so results do not depend on the
//                      number of threads
//
// The library calls kernels::parallel. Element-wise kernels agree bit for
// bit between the two; reductions agree to 1e-13 relative.

#include <complex>
#include <cstddef>
#include <span>

namespace fchs::kernels {

using Complex = std::complex<double>;

/// Block length for deterministic reductions.
inline constexpr std::size_t kReductionBlock = 2048;

/// Samples for the Gagliardo double sum; coordinates are stored as `dim`
/// consecutive doubles per point.
struct PointCloud {
  int dim;
  std::span<const double> coords;
  std::span<const double> values;
};

namespace serial {
#include "fchs/kernel_signatures.inc"
}  // namespace serial

namespace parallel {
#include "fchs/kernel_signatures.inc"
/// Worker count the parallel kernels will use (1 without OpenMP).
int worker_count();
/// Override the worker count; 0 restores the runtime default.
void set_worker_count(int workers);
}  // namespace parallel

}  // namespace fchs::kernels
