#pragma once

// Energy functionals, identity residuals and norm ladders, plus the CSV
// stream they are written to.
//
//   E = ||u||^2 + alpha^2 ||grad u||^2
//   D = ||Lambda^s u||^2 + alpha^2 ||grad Lambda^s u||^2
//   dE/dt = -2 nu D  (unforced)

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fchs/rhs.hpp"

namespace fchs {

struct DiagnosticsRecord {
  double t = 0.0;
  double energy = 0.0;
  double dissipation = 0.0;
  double budget_residual = 0.0;
  double l2_v = 0.0;
  double hs_v = 0.0;
  double helmholtz_residual = 0.0;
  double max_divergence = 0.0;
  double ladyzhenskaya_ratio = 0.0;
  double trilinear_residual = 0.0;

  friend bool operator==(const DiagnosticsRecord&, const DiagnosticsRecord&) = default;
};

inline constexpr const char* kCsvHeader =
    "t,energy,dissipation,budget_residual,l2_v,hs_v,helmholtz_residual,max_divergence,ladyzhenskaya_ratio,"
    "trilinear_residual";

/// Time history of (t, E, D) with the trapezoid running integral of 2 nu D.
class EnergyLedger {
public:
  struct Sample {
    double t;
    double energy;
    double dissipation;
    friend bool operator==(const Sample&, const Sample&) = default;
  };

  explicit EnergyLedger(double nu) : nu_(nu) {}

  /// Append a sample; t must not decrease.
  void add(double t, double energy, double dissipation);

  /// Continue a ledger from a saved summary (first sample, last sample, integral).
  static EnergyLedger resume(double nu, Sample first, Sample last, double accumulated);

  double nu() const noexcept { return nu_; }
  bool empty() const noexcept { return samples_.empty(); }
  const std::vector<Sample>& samples() const noexcept { return samples_; }
  const Sample& first() const { return samples_.front(); }
  const Sample& last() const { return samples_.back(); }
  /// 2 nu int_0^t D dt by the trapezoid rule over the recorded samples.
  double accumulated() const noexcept { return accumulated_; }

private:
  double nu_;
  std::vector<Sample> samples_;
  double accumulated_ = 0.0;
};

struct BudgetResidual {
  double value = 0.0;
  /// True when E(0) == 0 and `value` is the absolute residual.
  bool absolute = false;
};

double energy(const SpectralField& u_hat, double alpha, const GridSpec& grid);
double dissipation(const SpectralField& u_hat, const PhysParams& params, const GridSpec& grid);

/// |E(t) + 2 nu int D - E(0)| / E(0) at the last ledger sample.
BudgetResidual budget_residual(const EnergyLedger& ledger);

/// |||u||^2 + 2 a^2 ||grad u||^2 + a^4 ||Lap u||^2 - ||v||^2| / ||v||^2 with
/// u the filtered v; 0 when v = 0.
double helmholtz_identity_residual(const SpectralField& v_hat, double alpha, const GridSpec& grid);

/// The same identity applied to grad^m u and grad^m v.
double helmholtz_ladder_residual(const SpectralField& v_hat, double alpha, const GridSpec& grid, int order);

/// ||grad^m v||_{L2} for each requested order.
std::vector<double> norm_ladder(const SpectralField& v_hat, const GridSpec& grid, std::span<const int> orders);

/// |<u.grad v, u> + <v.grad u^T, u>| / (||u||^2 ||grad v||); 0 for u = 0 or grad v = 0.
double trilinear_residual(const SpectralField& u_hat, const SpectralField& v_hat, const GridSpec& grid);

/// Every state-dependent column plus the budget residual from `ledger`.
DiagnosticsRecord compute_record(const SimState& state, const PhysParams& params, const GridSpec& grid,
                                 const EnergyLedger& ledger);

/// Shortest decimal that parses back to the same double.
std::string format_double(double value);
double parse_double(std::string_view text);

/// Streams header + rows. Throws ErrorCode::Io on write failure.
class CsvWriter {
public:
  explicit CsvWriter(std::ostream& out);
  void write(const DiagnosticsRecord& record);

private:
  std::ostream& out_;
};

void emit_csv(std::span<const DiagnosticsRecord> records, std::ostream& sink);
std::vector<DiagnosticsRecord> parse_csv(std::istream& source);

}  // namespace fchs
