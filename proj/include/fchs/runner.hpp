#pragma once

// Driving runs: single simulations with diagnostics and checkpoints,
// manufactured-solution convergence studies, parameter sweeps and the
// self-check suite behind `fchs verify`.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fchs/config.hpp"
#include "fchs/diagnostics.hpp"
#include "fchs/integrator.hpp"

namespace fchs {

inline constexpr const char* kDiagnosticsFile = "diagnostics.csv";
inline constexpr const char* kFinalCheckpoint = "final.fchs";
inline constexpr const char* kLastGoodCheckpoint = "last_good.fchs";

/// Name of the periodic checkpoint written after `step` steps.
std::string checkpoint_name(std::uint64_t step);

struct RunResult {
  SimState final_state;
  std::vector<DiagnosticsRecord> records;
  std::uint64_t steps = 0;
  double dt = 0.0;
  std::filesystem::path csv_path;
  std::filesystem::path checkpoint_path;
};

/// Integrate cfg and write diagnostics.csv plus checkpoints under
/// cfg.out_dir. One diagnostics row per step. With `resume_from`, the run
/// continues from that checkpoint and its `.meta` sidecar; earlier CSV rows
/// already in out_dir are kept. On blow-up the last finite state is written
/// to last_good.fchs and the BlowUpError is rethrown with checkpoint_path set.
RunResult run_simulation(const RunConfig& cfg, const std::optional<std::filesystem::path>& resume_from = {});

struct ConvergenceStudy {
  Scheme scheme = Scheme::if_rk4;
  std::vector<double> dts;
  std::vector<double> errors;
  /// Least-squares slope of log(error) against log(dt).
  double order = 0.0;
};

struct ManufacturedOptions {
  /// Decay rate of the target v*(t) = exp(-lambda t) V.
  double lambda = 1.0;
  double t_end = 1.0;
  /// Weight of the shear mode added to Taylor-Green in V.
  double shear = 0.5;
  double amplitude = 1.0;
};

/// The target profile V = TG + shear * W.
SpectralField manufactured_profile(const GridSpec& grid, const ManufacturedOptions& opts);

/// Forcing that makes exp(-lambda t) V an exact solution of the semi-discrete
/// system: exp(-lambda t)(nu |k|^{2s} - lambda) V + exp(-2 lambda t) P[N(V)].
Forcing manufactured_forcing(const GridSpec& grid, const PhysParams& params, const ManufacturedOptions& opts);

/// Integrate to opts.t_end at each dt and report L2 errors against the
/// target. Throws ErrorCode::NonMonotoneConvergence unless the errors
/// strictly decrease along the (decreasing) dt sequence.
ConvergenceStudy manufactured_run(const GridSpec& grid, const PhysParams& params, Scheme scheme,
                                  std::span<const double> dts, const ManufacturedOptions& opts = {});

double least_squares_order(std::span<const double> dts, std::span<const double> errors);

struct SweepPoint {
  double s = 0.0;
  double alpha = 0.0;
  std::filesystem::path out_dir;
  bool blew_up = false;
  std::string message;
  std::size_t rows = 0;
};

/// One run per (s, alpha) pair in the product of the lists, each in its own
/// subdirectory of base.out_dir. An empty list means the base value, except
/// that two empty lists mean no runs. Every value is validated before the
/// first run. Blow-ups are recorded and the sweep continues.
std::vector<SweepPoint> sweep(const RunConfig& base, std::span<const double> s_values,
                              std::span<const double> alpha_values);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// The identity and property checks run by `fchs verify`.
std::vector<CheckResult> verification_suite();

}  // namespace fchs
