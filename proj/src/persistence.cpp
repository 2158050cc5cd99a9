#include "fchs/persistence.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>

#include "fchs/errors.hpp"

namespace fchs {

namespace {

constexpr unsigned char kMagic[4] = {'F', 'C', 'H', 'S'};
constexpr std::size_t kHeaderBytes = 4 + 3 * 4 + 5 * 8;
constexpr std::size_t kChecksumBytes = 8;

class Writer {
public:
  void bytes(const unsigned char* p, std::size_t n) { buf_.insert(buf_.end(), p, p + n); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) buf_.push_back(static_cast<unsigned char>(v >> (8 * i)));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) buf_.push_back(static_cast<unsigned char>(v >> (8 * i)));
  }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  std::vector<unsigned char>& buffer() { return buf_; }

private:
  std::vector<unsigned char> buf_;
};

class Reader {
public:
  explicit Reader(std::span<const unsigned char> b) : b_(b) {}
  std::uint32_t u32() {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t{b_[pos_ + i]} << (8 * i);
    pos_ += 4;
    return v;
  }
  std::uint64_t u64() {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t{b_[pos_ + i]} << (8 * i);
    pos_ += 8;
    return v;
  }
  double f64() { return std::bit_cast<double>(u64()); }
  void skip(std::size_t n) { pos_ += n; }

private:
  std::span<const unsigned char> b_;
  std::size_t pos_ = 0;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what) { throw Error(code, "checkpoint: " + what); }

}  // namespace

std::uint64_t fnv1a64(std::span<const unsigned char> bytes) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::vector<unsigned char> encode_checkpoint(const SimState& state, const PhysParams& params, const GridSpec& grid) {
  const auto& v = state.v_hat();
  if (v.components() != static_cast<std::size_t>(grid.dim()) || v.size() != grid.modes())
    throw Error(ErrorCode::DimensionMismatch, "checkpoint: state does not match grid");
  Writer w;
  w.bytes(kMagic, 4);
  w.u32(kCheckpointVersion);
  w.u32(static_cast<std::uint32_t>(grid.dim()));
  w.u32(static_cast<std::uint32_t>(grid.points_per_axis()));
  w.f64(grid.box_length());
  w.f64(params.s());
  w.f64(params.nu());
  w.f64(params.alpha());
  w.f64(state.t);
  for (std::size_t c = 0; c < v.components(); ++c)
    for (const Complex& z : v[c]) {
      w.f64(z.real());
      w.f64(z.imag());
    }
  w.u64(fnv1a64(w.buffer()));
  return std::move(w.buffer());
}

Checkpoint decode_checkpoint(std::span<const unsigned char> bytes) {
  if (bytes.size() >= 4 && std::memcmp(bytes.data(), kMagic, 4) != 0) fail(ErrorCode::BadMagic, "bad magic");
  if (bytes.size() >= 8) {
    Reader r(bytes.subspan(4, 4));
    const auto version = r.u32();
    if (version != kCheckpointVersion)
      fail(ErrorCode::BadVersion,
           "unsupported version " + std::to_string(version) + " (expected " + std::to_string(kCheckpointVersion) + ")");
  }
  if (bytes.size() < kHeaderBytes + kChecksumBytes) fail(ErrorCode::BadChecksum, "truncated file");
  const auto body = bytes.first(bytes.size() - kChecksumBytes);
  Reader tail(bytes.last(kChecksumBytes));
  if (tail.u64() != fnv1a64(body)) fail(ErrorCode::BadChecksum, "checksum mismatch");

  Reader r(body);
  r.skip(8);
  const auto dim = r.u32();
  const auto n = r.u32();
  const double length = r.f64();
  const double s = r.f64();
  const double nu = r.f64();
  const double alpha = r.f64();
  const double t = r.f64();

  auto invariant = [](const std::string& what) { fail(ErrorCode::InvariantViolation, what); };
  if (dim != 2 && dim != 3) invariant("dimension must be 2 or 3");
  if (n > (1u << 12)) invariant("implausible points per axis");
  std::optional<GridSpec> grid;
  std::optional<PhysParams> params;
  try {
    grid.emplace(static_cast<int>(dim), static_cast<int>(n), length);
    params.emplace(s, nu, alpha, static_cast<int>(dim));
  } catch (const Error& e) {
    invariant(e.what());
  }
  if (!std::isfinite(t)) invariant("non-finite time");
  const std::size_t expected = kHeaderBytes + dim * grid->modes() * 16 + kChecksumBytes;
  if (bytes.size() != expected) invariant("payload size does not match header");

  SpectralField v(dim, grid->modes());
  for (std::size_t c = 0; c < dim; ++c)
    for (Complex& z : v[c]) {
      const double re = r.f64();
      const double im = r.f64();
      z = {re, im};
    }
  for (std::size_t c = 0; c < dim; ++c)
    for (const Complex& z : v[c])
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) invariant("non-finite coefficient");
  const double div = max_divergence(v, *grid);
  if (div > kRestoreDivergenceTolerance) {
    std::ostringstream msg;
    msg << "stored field is not divergence-free (max_divergence " << div << " > " << kRestoreDivergenceTolerance << ")";
    invariant(msg.str());
  }
  return Checkpoint{SimState(t, std::move(v)), *params, *grid};
}

void store(const SimState& state, const PhysParams& params, const GridSpec& grid, std::ostream& sink) {
  const auto bytes = encode_checkpoint(state, params, grid);
  sink.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  sink.flush();
  if (!sink) throw Error(ErrorCode::Io, "checkpoint: write failed");
}

Checkpoint restore(std::istream& source) {
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(source)), std::istreambuf_iterator<char>());
  if (source.bad()) throw Error(ErrorCode::Io, "checkpoint: read failed");
  return decode_checkpoint(bytes);
}

void store_file(const SimState& state, const PhysParams& params, const GridSpec& grid,
                const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "checkpoint: cannot open " + path.string() + " for writing");
  store(state, params, grid, out);
}

Checkpoint restore_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "checkpoint: cannot open " + path.string());
  return restore(in);
}

std::filesystem::path metadata_path(const std::filesystem::path& checkpoint) {
  auto p = checkpoint;
  p += ".meta";
  return p;
}

void write_metadata(const RunMetadata& m, std::ostream& sink) {
  sink << "steps=" << m.steps << '\n'
       << "dt=" << format_double(m.dt) << '\n'
       << "first_t=" << format_double(m.first.t) << '\n'
       << "first_energy=" << format_double(m.first.energy) << '\n'
       << "first_dissipation=" << format_double(m.first.dissipation) << '\n'
       << "last_t=" << format_double(m.last.t) << '\n'
       << "last_energy=" << format_double(m.last.energy) << '\n'
       << "last_dissipation=" << format_double(m.last.dissipation) << '\n'
       << "accumulated=" << format_double(m.accumulated) << '\n';
  if (!sink) throw Error(ErrorCode::Io, "metadata: write failed");
}

RunMetadata read_metadata(std::istream& source) {
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(source, line)) {
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::InvalidArgument, "metadata: malformed line '" + line + "'");
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  auto get = [&](const char* key) -> const std::string& {
    auto it = kv.find(key);
    if (it == kv.end()) throw Error(ErrorCode::InvalidArgument, std::string("metadata: missing key ") + key);
    return it->second;
  };
  RunMetadata m;
  m.steps = std::stoull(get("steps"));
  m.dt = parse_double(get("dt"));
  m.first = {parse_double(get("first_t")), parse_double(get("first_energy")), parse_double(get("first_dissipation"))};
  m.last = {parse_double(get("last_t")), parse_double(get("last_energy")), parse_double(get("last_dissipation"))};
  m.accumulated = parse_double(get("accumulated"));
  return m;
}

}  // namespace fchs
