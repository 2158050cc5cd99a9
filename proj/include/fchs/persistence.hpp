#pragma once

// Binary checkpoints, little-endian throughout:
//
//   "FCHS" | version u32 | dim u32 | N u32 | L s nu alpha t (f64) |
//   dim * N^dim complex coefficients as (re, im) f64 | FNV-1a 64 checksum u64
//
// The checksum covers every preceding byte.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "fchs/diagnostics.hpp"
#include "fchs/fractional_ops.hpp"
#include "fchs/grid.hpp"
#include "fchs/rhs.hpp"

namespace fchs {

inline constexpr std::uint32_t kCheckpointVersion = 1;
/// Restored states with max_divergence above this are rejected.
inline constexpr double kRestoreDivergenceTolerance = 1e-8;

struct Checkpoint {
  SimState state;
  PhysParams params;
  GridSpec grid;
};

std::uint64_t fnv1a64(std::span<const unsigned char> bytes) noexcept;

std::vector<unsigned char> encode_checkpoint(const SimState& state, const PhysParams& params, const GridSpec& grid);

/// Checks in order: magic, version, checksum (also catches truncation), then
/// the header values and the divergence of v_hat. Each failure has its own code.
Checkpoint decode_checkpoint(std::span<const unsigned char> bytes);

void store(const SimState& state, const PhysParams& params, const GridSpec& grid, std::ostream& sink);
Checkpoint restore(std::istream& source);

void store_file(const SimState& state, const PhysParams& params, const GridSpec& grid,
                const std::filesystem::path& path);
Checkpoint restore_file(const std::filesystem::path& path);

/// Run bookkeeping stored next to a checkpoint (`<checkpoint>.meta`) so that a
/// resumed run continues the energy ledger and CSV exactly.
struct RunMetadata {
  std::uint64_t steps = 0;
  double dt = 0.0;
  EnergyLedger::Sample first{};
  EnergyLedger::Sample last{};
  double accumulated = 0.0;

  friend bool operator==(const RunMetadata&, const RunMetadata&) = default;
};

void write_metadata(const RunMetadata& meta, std::ostream& sink);
RunMetadata read_metadata(std::istream& source);

std::filesystem::path metadata_path(const std::filesystem::path& checkpoint);

}  // namespace fchs
