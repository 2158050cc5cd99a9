#include "fchs/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

#include "fchs/diagnostics.hpp"
#include "fchs/errors.hpp"
#include "fchs/scenarios.hpp"

namespace fchs {

namespace {

constexpr std::array<std::string_view, 15> kKeys = {
    "dim",    "n_points", "box_length", "s",         "nu",   "alpha",   "scheme",           "dt",
    "cfl",    "t_end",    "scenario",   "amplitude", "seed", "out_dir", "checkpoint_stride"};

[[noreturn]] void config_error(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::Config, where.empty() ? what : where + ": " + what);
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(std::string_view key, std::string_view value, const std::string& where) {
  try {
    return parse_double(value);
  } catch (const Error&) {
    config_error(where, std::string(key) + ": expected a number, got '" + std::string(value) + "'");
  }
}

template <typename Int>
Int to_int(std::string_view key, std::string_view value, const std::string& where) {
  Int out{};
  const auto res = std::from_chars(value.data(), value.data() + value.size(), out);
  if (res.ec != std::errc() || res.ptr != value.data() + value.size())
    config_error(where, std::string(key) + ": expected an integer, got '" + std::string(value) + "'");
  return out;
}

}  // namespace

bool is_config_key(std::string_view key) { return std::find(kKeys.begin(), kKeys.end(), key) != kKeys.end(); }

void set_config_value(RunConfig& cfg, std::string_view key, std::string_view value, const std::string& where) {
  if (key == "dim") cfg.dim = to_int<int>(key, value, where);
  else if (key == "n_points") cfg.n_points = to_int<int>(key, value, where);
  else if (key == "box_length") cfg.box_length = to_double(key, value, where);
  else if (key == "s") cfg.s = to_double(key, value, where);
  else if (key == "nu") cfg.nu = to_double(key, value, where);
  else if (key == "alpha") cfg.alpha = to_double(key, value, where);
  else if (key == "scheme") {
    try {
      cfg.scheme = parse_scheme(std::string(value));
    } catch (const Error& e) {
      config_error(where, e.what());
    }
  } else if (key == "dt") {
    cfg.dt = to_double(key, value, where);
    cfg.cfl.reset();
  } else if (key == "cfl") {
    cfg.cfl = to_double(key, value, where);
    cfg.dt.reset();
  } else if (key == "t_end") cfg.t_end = to_double(key, value, where);
  else if (key == "scenario") cfg.scenario = std::string(value);
  else if (key == "amplitude") cfg.amplitude = to_double(key, value, where);
  else if (key == "seed") cfg.seed = to_int<std::uint64_t>(key, value, where);
  else if (key == "out_dir") cfg.out_dir = std::string(value);
  else if (key == "checkpoint_stride") cfg.checkpoint_stride = to_int<int>(key, value, where);
  else config_error(where, "unknown key '" + std::string(key) + "'");
}

RunConfig parse_config(std::istream& source, const std::string& source_name, RunConfig base) {
  RunConfig cfg = std::move(base);
  bool saw_dt = false;
  bool saw_cfl = false;
  std::string raw;
  int line_no = 0;
  while (std::getline(source, raw)) {
    ++line_no;
    const std::string where = source_name + ":" + std::to_string(line_no);
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) config_error(where, "expected 'key = value'");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty()) config_error(where, "missing key");
    if (value.empty()) config_error(where, "missing value for '" + std::string(key) + "'");
    if (key == "dt") saw_dt = true;
    if (key == "cfl") saw_cfl = true;
    if (saw_dt && saw_cfl) config_error(where, "give exactly one of dt and cfl");
    set_config_value(cfg, key, value, where);
  }
  return cfg;
}

RunConfig load_config(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Config, path + ": cannot open config file");
  return parse_config(in, path, std::move(base));
}

void RunConfig::validate() const {
  auto bad = [](const std::string& what) { config_error("", what); };
  if (dim != 2 && dim != 3) bad("dim must be 2 or 3 (got " + std::to_string(dim) + ")");
  if (n_points < 8 || n_points % 2 != 0) bad("n_points must be even and >= 8 (got " + std::to_string(n_points) + ")");
  if (!(box_length > 0.0)) bad("box_length must be positive");
  const double s_min = dim / 4.0;
  if (!(s >= s_min && s < 1.0))
    bad("s must satisfy dim/4 <= s < 1 (dim=" + std::to_string(dim) + ", s=" + format_double(s) + ")");
  if (!(nu > 0.0)) bad("nu must be positive");
  if (!(alpha >= 0.0)) bad("alpha must be >= 0");
  if (dt.has_value() == cfl.has_value()) bad("give exactly one of dt and cfl");
  if (dt && !(*dt > 0.0)) bad("dt must be positive");
  if (cfl && !(*cfl > 0.0 && *cfl <= 1.0)) bad("cfl must lie in (0, 1]");
  if (!(t_end >= 0.0)) bad("t_end must be >= 0");
  if (!is_scenario(scenario)) bad("unknown scenario '" + scenario + "'");
  if (!(amplitude >= 0.0)) bad("amplitude must be >= 0");
  if (checkpoint_stride < 0) bad("checkpoint_stride must be >= 0");
  if (out_dir.empty()) bad("out_dir must not be empty");
}

GridSpec RunConfig::grid() const { return GridSpec(dim, n_points, box_length); }

PhysParams RunConfig::params() const { return PhysParams(s, nu, alpha, dim); }

std::string format_config(const RunConfig& cfg) {
  std::ostringstream out;
  out << "dim = " << cfg.dim << '\n'
      << "n_points = " << cfg.n_points << '\n'
      << "box_length = " << format_double(cfg.box_length) << '\n'
      << "s = " << format_double(cfg.s) << '\n'
      << "nu = " << format_double(cfg.nu) << '\n'
      << "alpha = " << format_double(cfg.alpha) << '\n'
      << "scheme = " << scheme_name(cfg.scheme) << '\n';
  if (cfg.dt) out << "dt = " << format_double(*cfg.dt) << '\n';
  if (cfg.cfl) out << "cfl = " << format_double(*cfg.cfl) << '\n';
  out << "t_end = " << format_double(cfg.t_end) << '\n'
      << "scenario = " << cfg.scenario << '\n'
      << "amplitude = " << format_double(cfg.amplitude) << '\n'
      << "seed = " << cfg.seed << '\n'
      << "out_dir = " << cfg.out_dir << '\n'
      << "checkpoint_stride = " << cfg.checkpoint_stride << '\n';
  return out.str();
}

}  // namespace fchs
