#include "fchs/diagnostics.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "fchs/errors.hpp"
#include "fchs/kernels.hpp"

namespace fchs {

namespace kp = kernels::parallel;

void EnergyLedger::add(double t, double e, double d) {
  if (!samples_.empty()) {
    const auto& prev = samples_.back();
    if (t < prev.t) throw Error(ErrorCode::InvalidArgument, "EnergyLedger: samples must be added in time order");
    accumulated_ += nu_ * (t - prev.t) * (prev.dissipation + d);
  }
  samples_.push_back({t, e, d});
}

EnergyLedger EnergyLedger::resume(double nu, Sample first, Sample last, double accumulated) {
  EnergyLedger ledger(nu);
  ledger.samples_.push_back(first);
  if (last.t != first.t || last.energy != first.energy || last.dissipation != first.dissipation)
    ledger.samples_.push_back(last);
  ledger.accumulated_ = accumulated;
  return ledger;
}

namespace {

std::vector<double> power_weight(const GridSpec& grid, double power_of_k2) {
  const auto k2 = grid.wavenumber_squared();
  std::vector<double> w(k2.size());
  for (std::size_t i = 0; i < k2.size(); ++i)
    w[i] = power_of_k2 == 0.0 ? 1.0 : (k2[i] == 0.0 ? 0.0 : std::pow(k2[i], power_of_k2));
  return w;
}

double weighted_sum(const SpectralField& F, std::span<const double> w) {
  double sum = 0.0;
  for (std::size_t c = 0; c < F.components(); ++c) sum += kp::weighted_norm2(F[c], w);
  return sum;
}

}  // namespace

double energy(const SpectralField& u_hat, double alpha, const GridSpec& grid) {
  const auto k2 = grid.wavenumber_squared();
  std::vector<double> w(k2.size());
  for (std::size_t i = 0; i < k2.size(); ++i) w[i] = 1.0 + alpha * alpha * k2[i];
  return grid.volume() * weighted_sum(u_hat, w);
}

double dissipation(const SpectralField& u_hat, const PhysParams& params, const GridSpec& grid) {
  const auto k2 = grid.wavenumber_squared();
  auto w = lambda_multiplier(grid, 2.0 * params.s());
  const double a2 = params.alpha() * params.alpha();
  for (std::size_t i = 0; i < k2.size(); ++i) w[i] *= 1.0 + a2 * k2[i];
  return grid.volume() * weighted_sum(u_hat, w);
}

BudgetResidual budget_residual(const EnergyLedger& ledger) {
  if (ledger.empty()) throw Error(ErrorCode::InvalidArgument, "budget_residual: empty ledger");
  const double e0 = ledger.first().energy;
  const double diff = std::abs(ledger.last().energy + ledger.accumulated() - e0);
  if (e0 == 0.0) return {diff, true};
  return {diff / e0, false};
}

double helmholtz_ladder_residual(const SpectralField& v_hat, double alpha, const GridSpec& grid, int order) {
  if (order < 0) throw Error(ErrorCode::Domain, "helmholtz_ladder_residual: order must be >= 0");
  const auto u_hat = helmholtz_filter(v_hat, grid, alpha);
  const double m = order;
  const double rhs = weighted_sum(v_hat, power_weight(grid, m));
  if (rhs == 0.0) return 0.0;
  const double a0 = weighted_sum(u_hat, power_weight(grid, m));
  const double a1 = weighted_sum(u_hat, power_weight(grid, m + 1.0));
  const double a2 = weighted_sum(u_hat, power_weight(grid, m + 2.0));
  const double al2 = alpha * alpha;
  return std::abs(a0 + 2.0 * al2 * a1 + al2 * al2 * a2 - rhs) / rhs;
}

double helmholtz_identity_residual(const SpectralField& v_hat, double alpha, const GridSpec& grid) {
  return helmholtz_ladder_residual(v_hat, alpha, grid, 0);
}

std::vector<double> norm_ladder(const SpectralField& v_hat, const GridSpec& grid, std::span<const int> orders) {
  std::vector<double> out;
  out.reserve(orders.size());
  for (int m : orders) {
    if (m < 0) throw Error(ErrorCode::Domain, "norm_ladder: orders must be >= 0");
    out.push_back(std::sqrt(grid.volume() * weighted_sum(v_hat, power_weight(grid, m))));
  }
  return out;
}

double trilinear_residual(const SpectralField& u_hat, const SpectralField& v_hat, const GridSpec& grid) {
  const double u2 = grid.volume() * weighted_sum(u_hat, {});
  const double grad_v = std::sqrt(grid.volume() * weighted_sum(v_hat, grid.wavenumber_squared()));
  if (u2 == 0.0 || grad_v == 0.0) return 0.0;
  const auto n = nonlinear_term(u_hat, v_hat, grid);
  double inner = 0.0;
  for (std::size_t c = 0; c < n.components(); ++c) inner += kp::weighted_inner(n[c], u_hat[c], {});
  return std::abs(grid.volume() * inner) / (u2 * grad_v);
}

DiagnosticsRecord compute_record(const SimState& state, const PhysParams& params, const GridSpec& grid,
                                 const EnergyLedger& ledger) {
  const auto& v = state.v_hat();
  const auto& u = state.u_hat(grid, params.alpha());
  DiagnosticsRecord r;
  r.t = state.t;
  r.energy = energy(u, params.alpha(), grid);
  r.dissipation = dissipation(u, params, grid);
  r.budget_residual = ledger.empty() ? 0.0 : budget_residual(ledger).value;
  r.l2_v = l2_norm(v, grid);
  r.hs_v = sobolev_norm_hs(v, grid, params.s());
  r.helmholtz_residual = helmholtz_identity_residual(v, params.alpha(), grid);
  r.max_divergence = max_divergence(v, grid);
  r.ladyzhenskaya_ratio = ladyzhenskaya_ratio(u, grid);
  r.trilinear_residual = trilinear_residual(u, v, grid);
  return r;
}

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size())
    throw Error(ErrorCode::InvalidArgument, "cannot parse number '" + std::string(text) + "'");
  return value;
}

CsvWriter::CsvWriter(std::ostream& out) : out_(out) {
  out_ << kCsvHeader << '\n';
  if (!out_) throw Error(ErrorCode::Io, "csv: failed to write header");
}

void CsvWriter::write(const DiagnosticsRecord& r) {
  const double fields[] = {r.t,          r.energy,         r.dissipation,          r.budget_residual,
                           r.l2_v,       r.hs_v,           r.helmholtz_residual,   r.max_divergence,
                           r.ladyzhenskaya_ratio, r.trilinear_residual};
  bool first = true;
  for (double f : fields) {
    if (!first) out_ << ',';
    out_ << format_double(f);
    first = false;
  }
  out_ << '\n';
  if (!out_) throw Error(ErrorCode::Io, "csv: write failed");
}

void emit_csv(std::span<const DiagnosticsRecord> records, std::ostream& sink) {
  CsvWriter writer(sink);
  for (const auto& r : records) writer.write(r);
  sink.flush();
  if (!sink) throw Error(ErrorCode::Io, "csv: flush failed");
}

std::vector<DiagnosticsRecord> parse_csv(std::istream& source) {
  std::string line;
  if (!std::getline(source, line) || line != kCsvHeader)
    throw Error(ErrorCode::InvalidArgument, "csv: missing or unexpected header");
  std::vector<DiagnosticsRecord> out;
  std::size_t line_no = 1;
  while (std::getline(source, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<double> values;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      const auto end = comma == std::string::npos ? line.size() : comma;
      values.push_back(parse_double(std::string_view(line).substr(start, end - start)));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (values.size() != 10)
      throw Error(ErrorCode::InvalidArgument, "csv: line " + std::to_string(line_no) + " has " +
                                                  std::to_string(values.size()) + " fields, expected 10");
    out.push_back({values[0], values[1], values[2], values[3], values[4], values[5], values[6], values[7], values[8],
                   values[9]});
  }
  return out;
}

}  // namespace fchs
