#pragma once

// Run configuration: a line-oriented `key = value` file with `#` comments.
//
//   dim, n_points, box_length, s, nu, alpha, scheme, dt | cfl, t_end,
//   scenario, amplitude, seed, out_dir, checkpoint_stride
//
// Unknown keys, malformed lines and out-of-range values throw
// Error(ErrorCode::Config) with a "source:line:" prefix where one exists.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "fchs/fractional_ops.hpp"
#include "fchs/grid.hpp"
#include "fchs/integrator.hpp"

namespace fchs {

struct RunConfig {
  int dim = 2;
  int n_points = 64;
  double box_length = kTwoPi;
  double s = 0.75;
  double nu = 0.01;
  double alpha = 0.2;
  Scheme scheme = Scheme::if_rk4;
  std::optional<double> dt;
  /// When set, dt is cfl * dx / |u0|_inf, fixed for the whole run.
  std::optional<double> cfl;
  double t_end = 1.0;
  std::string scenario = "taylor_green";
  double amplitude = 1.0;
  std::uint64_t seed = 0;
  std::string out_dir = "out";
  /// Steps between checkpoints; 0 writes only the final one.
  int checkpoint_stride = 0;

  /// Throws ErrorCode::Config naming the violated rule.
  void validate() const;

  GridSpec grid() const;
  PhysParams params() const;
};

/// Set one key. `where` prefixes error messages. Setting dt clears cfl and
/// vice versa, so later sources override earlier ones.
void set_config_value(RunConfig& cfg, std::string_view key, std::string_view value, const std::string& where);

/// Parse a config stream on top of `base`. Giving both dt and cfl in the same
/// file is an error.
RunConfig parse_config(std::istream& source, const std::string& source_name, RunConfig base = {});
RunConfig load_config(const std::string& path, RunConfig base = {});

/// The config as a parseable `key = value` file.
std::string format_config(const RunConfig& cfg);

bool is_config_key(std::string_view key);

}  // namespace fchs
