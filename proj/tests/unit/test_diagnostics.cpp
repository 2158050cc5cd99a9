#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "fchs/diagnostics.hpp"
#include "fchs/errors.hpp"
#include "fchs/integrator.hpp"
#include "fchs/scenarios.hpp"

using namespace fchs;

namespace {

SpectralField mode(const GridSpec& g, std::array<int, 3> k, std::size_t comp, double amp = 1.0) {
  SpectralField v = zero_spectral(g, static_cast<std::size_t>(g.dim()));
  const auto i = g.index_of(k);
  v[comp][i] = Complex(0.0, -0.5 * amp);
  v[comp][g.negated(i)] = Complex(0.0, 0.5 * amp);
  return v;
}

}  // namespace

TEST_CASE("energy functional") {
  const GridSpec g(2, 16);
  CHECK(energy(zero_spectral(g, 2), 1.0, g) == 0.0);
  const auto u = mode(g, {1, 0, 0}, 1);
  const double c = l2_norm(u, g) * l2_norm(u, g);
  CHECK(energy(u, 1.0, g) == doctest::Approx(2.0 * c).epsilon(1e-15));
  CHECK(energy(u, 0.0, g) == doctest::Approx(c).epsilon(1e-15));
  const auto w = random_divfree(g, 1.0, 3);
  CHECK(energy(w, 0.0, g) == doctest::Approx(std::pow(l2_norm(w, g), 2)).epsilon(1e-14));
  CHECK(energy(w, 0.7, g) ==
        doctest::Approx(std::pow(l2_norm(w, g), 2) + 0.49 * std::pow(sobolev_seminorm(w, g, 1.0), 2)).epsilon(1e-14));
}

TEST_CASE("dissipation functional") {
  const GridSpec g(2, 16);
  const PhysParams p(0.8, 0.1, 0.6, 2);
  CHECK(dissipation(zero_spectral(g, 2), p, g) == 0.0);
  const auto u = mode(g, {0, 1, 0}, 0);
  for (double s : {0.5, 0.75, 0.9}) {
    const PhysParams q(s, 0.1, 0.6, 2);
    CHECK(dissipation(u, q, g) == doctest::Approx(energy(u, 0.6, g)).epsilon(1e-15));
  }
  const auto w = random_divfree(g, 1.0, 3);
  const double expected = std::pow(sobolev_seminorm(w, g, 0.8), 2) + 0.36 * std::pow(sobolev_seminorm(w, g, 1.8), 2);
  CHECK(dissipation(w, p, g) == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("energy ledger and budget residual") {
  EnergyLedger ledger(0.5);
  CHECK_THROWS_AS(budget_residual(ledger), Error);
  ledger.add(0.0, 2.0, 1.0);
  CHECK(budget_residual(ledger).value == 0.0);
  ledger.add(1.0, 1.0, 1.0);
  // accumulated = 2 nu * trapezoid = 2 * 0.5 * 1 = 1; E + acc - E0 = 0
  CHECK(ledger.accumulated() == 1.0);
  CHECK(budget_residual(ledger).value == 0.0);
  ledger.add(2.0, 0.5, 0.0);
  CHECK(ledger.accumulated() == 1.5);
  CHECK(budget_residual(ledger).value == doctest::Approx(0.0));
  CHECK_THROWS_AS(ledger.add(1.5, 0.4, 0.0), Error);

  EnergyLedger zero(1.0);
  zero.add(0.0, 0.0, 0.0);
  zero.add(1.0, 0.25, 0.0);
  const auto r = budget_residual(zero);
  CHECK(r.absolute);
  CHECK(r.value == 0.25);
}

TEST_CASE("ledger resume continues the running integral bit for bit") {
  EnergyLedger full(0.01);
  for (int i = 0; i <= 10; ++i) full.add(0.1 * i, 1.0 / (1.0 + i), 0.3 / (1.0 + i * i));
  EnergyLedger part(0.01);
  for (int i = 0; i <= 4; ++i) part.add(0.1 * i, 1.0 / (1.0 + i), 0.3 / (1.0 + i * i));
  auto resumed = EnergyLedger::resume(0.01, part.first(), part.last(), part.accumulated());
  for (int i = 5; i <= 10; ++i) resumed.add(0.1 * i, 1.0 / (1.0 + i), 0.3 / (1.0 + i * i));
  CHECK(resumed.accumulated() == full.accumulated());
  CHECK(budget_residual(resumed).value == budget_residual(full).value);
}

TEST_CASE("linear decay closes the budget to trapezoid accuracy") {
  const GridSpec g(2, 16);
  const PhysParams p(0.5, 1.0, 0.5, 2);
  const auto v = mode(g, {2, 0, 0}, 1);
  RhsOptions opts;
  opts.nonlinear = false;
  for (double dt : {0.02, 0.01}) {
    EnergyLedger ledger(p.nu());
    const SimState s0(0.0, v);
    ledger.add(0.0, energy(s0.u_hat(g, 0.5), 0.5, g), dissipation(s0.u_hat(g, 0.5), p, g));
    IntegratorConfig cfg;
    cfg.dt = dt;
    cfg.t_end = 0.5;
    integrate(s0, p, g, cfg, [&](const SimState& s, std::size_t) {
      const auto& u = s.u_hat(g, 0.5);
      ledger.add(s.t, energy(u, 0.5, g), dissipation(u, p, g));
    }, opts);
    // E(t) = E0 exp(-2 nu |k|^{2s} t) with rate 4; trapezoid error <= T dt^2 / 12 * max|E''| / E0.
    const double bound = 0.5 * dt * dt / 12.0 * 16.0 * 4.0 / 2.0;
    CHECK(budget_residual(ledger).value <= bound);
    CHECK(budget_residual(ledger).value > 0.0);
  }
}

TEST_CASE("Helmholtz identity and ladder") {
  for (int dim : {2, 3}) {
    const GridSpec g(dim, dim == 2 ? 32 : 16);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const auto v = random_divfree(g, 1.0, seed);
      for (double alpha : {0.1, 1.0, 2.0})
        for (int m = 0; m <= 2; ++m) CHECK(helmholtz_ladder_residual(v, alpha, g, m) <= 1e-12);
      if (dim == 3 && seed >= 20) break;
    }
  }
  const GridSpec g(2, 16);
  CHECK(helmholtz_identity_residual(zero_spectral(g, 2), 1.0, g) == 0.0);
  CHECK(helmholtz_identity_residual(random_divfree(g, 1.0, 1), 0.0, g) == 0.0);
  // Plane wave |k| = 1, alpha = 1: ||u|| = ||v|| / 2 and (1 + 2 + 1) / 4 = 1.
  const auto v = mode(g, {1, 0, 0}, 1);
  CHECK(l2_norm(helmholtz_filter(v, g, 1.0), g) == doctest::Approx(0.5 * l2_norm(v, g)).epsilon(1e-15));
  CHECK(helmholtz_identity_residual(v, 1.0, g) <= 1e-15);
}

TEST_CASE("norm ladder") {
  const GridSpec g(2, 16);
  const auto v = mode(g, {2, 0, 0}, 1);
  const std::vector<int> orders = {0, 1, 2};
  const auto ladder = norm_ladder(v, g, orders);
  CHECK(ladder[0] == doctest::Approx(l2_norm(v, g)));
  CHECK(ladder[1] == doctest::Approx(2.0 * l2_norm(v, g)));
  CHECK(ladder[2] == doctest::Approx(4.0 * l2_norm(v, g)));
}

TEST_CASE("record invariants on a live state") {
  const GridSpec g(2, 32);
  const PhysParams p(0.75, 0.01, 0.3, 2);
  const SimState s(0.0, random_divfree(g, 1.0, 2));
  EnergyLedger ledger(p.nu());
  const auto& u = s.u_hat(g, p.alpha());
  ledger.add(0.0, energy(u, p.alpha(), g), dissipation(u, p, g));
  const auto r = compute_record(s, p, g, ledger);
  CHECK(r.energy > 0.0);
  CHECK(r.dissipation > 0.0);
  CHECK(r.budget_residual == 0.0);
  CHECK(r.helmholtz_residual <= 1e-12);
  CHECK(r.max_divergence <= 1e-13);
  CHECK(r.trilinear_residual <= 1e-11);
  CHECK(r.l2_v == doctest::Approx(l2_norm(s.v_hat(), g)));
  CHECK(r.hs_v >= r.l2_v);
  for (double x : {r.t, r.energy, r.dissipation, r.l2_v, r.hs_v, r.ladyzhenskaya_ratio}) CHECK(std::isfinite(x));
}

TEST_CASE("shortest round-trip number formatting") {
  for (double x : {0.1, 1.0 / 3.0, 1e-300, 6.02214076e23, -0.0, 5e-324, 123456789.125}) {
    const auto s = format_double(x);
    CHECK(std::bit_cast<std::uint64_t>(parse_double(s)) == std::bit_cast<std::uint64_t>(x));
  }
  CHECK(format_double(0.1) == "0.1");
  CHECK_THROWS_AS(parse_double("1.0x"), Error);
  CHECK_THROWS_AS(parse_double(""), Error);
}

TEST_CASE("csv emission") {
  SUBCASE("empty record list writes only the header") {
    std::ostringstream out;
    emit_csv({}, out);
    CHECK(out.str() == std::string(kCsvHeader) + "\n");
  }
  SUBCASE("three records give four LF-terminated lines and parse back exactly") {
    std::vector<DiagnosticsRecord> recs(3);
    for (std::size_t i = 0; i < 3; ++i) {
      auto& r = recs[i];
      r.t = 0.1 * static_cast<double>(i);
      r.energy = std::numbers::pi / (1.0 + static_cast<double>(i));
      r.dissipation = 1.0 / 3.0;
      r.budget_residual = 1.234e-17;
      r.l2_v = std::sqrt(2.0);
      r.hs_v = std::exp(1.0);
      r.helmholtz_residual = 2.2e-16;
      r.max_divergence = 0.0;
      r.ladyzhenskaya_ratio = 0.0737;
      r.trilinear_residual = 5e-324;
    }
    std::ostringstream out;
    emit_csv(recs, out);
    const auto text = out.str();
    CHECK(std::count(text.begin(), text.end(), '\n') == 4);
    CHECK(text.find('\r') == std::string::npos);
    std::istringstream in(text);
    CHECK(parse_csv(in) == recs);
  }
  SUBCASE("write failure is reported") {
    std::ostringstream out;
    out.setstate(std::ios::badbit);
    CHECK_THROWS_AS(emit_csv({}, out), Error);
  }
}
