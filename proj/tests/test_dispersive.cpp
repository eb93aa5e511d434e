#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "spectator/dispersive.hpp"
#include "spectator/errors.hpp"

using namespace spectator;

namespace {

TransmonSpec make_q(const char* id, double freq, double anh, double beta = 0) {
  return TransmonSpec{id, freq, anh, beta};
}

GateContext paper_timings() {
  GateContext ctx;
  ctx.g1 = "G1";
  ctx.g2 = "G2";
  ctx.t_g = 80.0;
  ctx.t_b = 5.0;
  ctx.t_s = 53.0;
  ctx.j = 4.5;
  return ctx;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * double(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

TEST_CASE("dispersive shifts at the reference point") {
  // Delta = -500, alpha_G = alpha_S = -300, J = 4.5, beta = 0.
  // By hand: zeta1 = 2 J^2 (1/(Delta - aG) - 1/(Delta + aS))
  //                = 40.5 (1/(-200) - 1/(-800)) = -40.5 * 3/800 = -0.151875,
  // zeta2 = J^2 (-1/D + 2/(D-aG) + 3/(D-2aG) - 4/(D-aG+aS))
  //       = 20.25 (0.002 - 0.01 + 0.03 + 0.008) = +0.6075.
  // The exact-diagonalization oracle confirms these magnitudes and signs
  // (see the oracle tests).
  const auto g = make_q("G", 6000.0, -300.0);
  const auto s = make_q("S", 5500.0, -300.0);
  const ShiftTriple t = shifts(g, s, 4.5);
  CHECK(!t.any_diverged());
  CHECK(t.zeta1 == doctest::Approx(-0.151875).epsilon(1e-12));
  CHECK(t.zeta2 == doctest::Approx(0.6075).epsilon(1e-12));
  CHECK(t.zeta12 == doctest::Approx(0.759375).epsilon(1e-12));
  CHECK(t.zeta12 == doctest::Approx(t.zeta2 - t.zeta1).epsilon(1e-15));
}

TEST_CASE("zeta poles sit at the documented detunings") {
  const auto g = make_q("G", 6000.0, -289.0, -35.0);
  const auto s = make_q("S", 6000.0, -300.0);
  const ZetaPoles p = zeta_poles(g, s);
  CHECK(p.zeta1[0] == doctest::Approx(-289.0));
  CHECK(p.zeta1[1] == doctest::Approx(300.0));
  CHECK(p.zeta2[0] == doctest::Approx(0.0));
  CHECK(p.zeta2[1] == doctest::Approx(-289.0));
  CHECK(p.zeta2[2] == doctest::Approx(-613.0));  // 2 alpha_G + beta_G
  CHECK(p.zeta2[3] == doctest::Approx(11.0));
}

TEST_CASE("pole proximity flags a divergence instead of a huge number") {
  const auto g = make_q("G", 6000.0, -300.0);
  auto s = make_q("S", 6000.0, -300.0);

  s.freq = g.freq - 300.0;  // Delta = alpha_G, pole of zeta1 and zeta2
  ShiftTriple t = shifts(g, s, 4.5);
  CHECK(t.zeta1_diverged);
  CHECK(t.zeta2_diverged);
  CHECK(t.zeta12_diverged());

  s.freq = g.freq - 300.5;  // within the default 1 MHz guard
  t = shifts(g, s, 4.5);
  CHECK(t.zeta1_diverged);

  s.freq = g.freq - 301.5;  // outside the guard
  t = shifts(g, s, 4.5);
  CHECK(!t.zeta1_diverged);

  s.freq = g.freq - 305.0;  // custom guard widens the window
  t = shifts(g, s, 4.5, 10.0);
  CHECK(t.zeta1_diverged);
}

TEST_CASE("shifts change sign across every pole") {
  // alpha_S chosen so all four zeta2 poles are at least 89 MHz apart and the
  // +-10 MHz samples are dominated by the diverging term.
  const auto g = make_q("G", 6000.0, -289.0, -35.0);
  const auto s = make_q("S", 6000.0, -200.0);
  const ZetaPoles poles = zeta_poles(g, s);

  auto at = [&](double delta) {
    auto sp = s;
    sp.freq = g.freq + delta;
    return shifts(g, sp, 4.5, 0.5);
  };

  for (double pole : poles.zeta1) {
    CAPTURE(pole);
    const ShiftTriple lo = at(pole - 10.0);
    const ShiftTriple hi = at(pole + 10.0);
    REQUIRE(!lo.zeta1_diverged);
    REQUIRE(!hi.zeta1_diverged);
    CHECK(lo.zeta1 * hi.zeta1 < 0.0);
  }
  for (double pole : poles.zeta2) {
    CAPTURE(pole);
    const ShiftTriple lo = at(pole - 10.0);
    const ShiftTriple hi = at(pole + 10.0);
    REQUIRE(!lo.zeta2_diverged);
    REQUIRE(!hi.zeta2_diverged);
    CHECK(lo.zeta2 * hi.zeta2 < 0.0);
  }
}

TEST_CASE("gate detuning composes per-role contributions") {
  SpectatorConfig config;
  std::vector<SpectatorShift> list;

  SUBCASE("measured-value composition") {
    ShiftTriple s1;
    s1.zeta1 = -0.133;
    ShiftTriple s2;
    s2.zeta1 = 0.0;
    s2.zeta2 = -0.467;
    s2.zeta12 = -0.467;
    list.push_back({"A", SpectatorRole::kComputational, s1});
    list.push_back({"B", SpectatorRole::kLeakage, s2});
    config.bits = {{"A", 1}, {"B", 1}};
    const Detuning d = gate_detuning(list, config);
    CHECK(!d.diverged);
    CHECK(d.mhz == doctest::Approx(0.334).epsilon(1e-12));

    config.bits = {{"A", 0}, {"B", 1}};
    CHECK(gate_detuning(list, config).mhz == doctest::Approx(0.467));

    config.bits = {{"A", 0}, {"B", 0}};
    CHECK(gate_detuning(list, config).mhz == doctest::Approx(0.0));
  }

  SUBCASE("divergence flags propagate only from excited spectators") {
    ShiftTriple bad;
    bad.zeta1 = 0.0;
    bad.zeta1_diverged = true;
    list.push_back({"A", SpectatorRole::kComputational, bad});
    config.bits = {{"A", 0}};
    CHECK(!gate_detuning(list, config).diverged);
    config.bits = {{"A", 1}};
    CHECK(gate_detuning(list, config).diverged);
  }

  SUBCASE("missing config entry") {
    ShiftTriple s1;
    list.push_back({"A", SpectatorRole::kComputational, s1});
    config.bits = {};
    CHECK_THROWS_AS(gate_detuning(list, config), ValidationError);
  }
}

TEST_CASE("gate detuning is linear in the configuration bits") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<SpectatorShift> list;
    const int k = 1 + int(rng() % 5);
    for (int i = 0; i < k; ++i) {
      ShiftTriple t;
      t.zeta1 = uniform(rng, -0.5, 0.5);
      t.zeta2 = uniform(rng, -0.5, 0.5);
      t.zeta12 = t.zeta2 - t.zeta1;
      list.push_back({"S" + std::to_string(i),
                      (rng() & 1) ? SpectatorRole::kComputational
                                  : SpectatorRole::kLeakage,
                      t});
    }
    const unsigned config_bits = unsigned(rng() % (1u << k));
    SpectatorConfig config;
    double sum_of_singles = 0.0;
    for (int i = 0; i < k; ++i) {
      const int bit = int((config_bits >> i) & 1u);
      config.bits[list[std::size_t(i)].label] = bit;
      SpectatorConfig single;
      for (int m = 0; m < k; ++m) {
        single.bits[list[std::size_t(m)].label] = (m == i) ? bit : 0;
      }
      sum_of_singles += gate_detuning(list, single).mhz;
    }
    CHECK(gate_detuning(list, config).mhz ==
          doctest::Approx(sum_of_singles).epsilon(1e-12));
  }
}

TEST_CASE("conditional phase error") {
  CHECK(conditional_phase_error(0.0, 4.5) == 0.0);
  // zeta1 of the Q1 spectator: delta = -0.133 MHz.
  CHECK(conditional_phase_error(-0.133, 4.5) ==
        doctest::Approx(-1.881).epsilon(2e-4));
  // zeta12 of the Q3 spectator: delta = -zeta12 = -0.4667 MHz -> -6.6 deg.
  CHECK(conditional_phase_error(-0.4667, 4.5) ==
        doctest::Approx(-6.6).epsilon(1e-3));
  CHECK_THROWS_AS(conditional_phase_error(1.0, 0.0), ValidationError);

  // Odd in delta.
  std::mt19937_64 rng(7);
  for (int i = 0; i < 100; ++i) {
    const double delta = uniform(rng, -3.0, 3.0);
    CHECK(conditional_phase_error(-delta, 4.5) ==
          doctest::Approx(-conditional_phase_error(delta, 4.5)).epsilon(1e-14));
  }
}

TEST_CASE("duration route matches the coupling route at the ideal gate time") {
  const double t_ideal = 1.0e3 / (2.0 * std::sqrt(2.0) * 4.5);
  std::mt19937_64 rng(13);
  for (int i = 0; i < 50; ++i) {
    const double delta = uniform(rng, -1.0, 1.0);
    CHECK(conditional_phase_error_from_duration(delta, t_ideal) ==
          doctest::Approx(conditional_phase_error(delta, 4.5)).epsilon(1e-12));
  }
  // With the lab's 80 ns the two differ by the duration ratio.
  CHECK(conditional_phase_error_from_duration(-0.204, 80.0) ==
        doctest::Approx(-2.9376).epsilon(1e-12));
}

TEST_CASE("leakage error") {
  CHECK(leakage_error(0.0, 4.5) == 0.0);
  // 0.5 (pi/2)^2 (1 / (2 sqrt(2) 4.5))^4 = pi^2 / 209952.
  const double pi = 3.14159265358979323846;
  CHECK(leakage_error(1.0, 4.5) ==
        doctest::Approx(pi * pi / 209952.0).epsilon(1e-12));
  CHECK(leakage_error(1.0, 4.5) == doctest::Approx(4.71e-5).epsilon(0.005));
  CHECK(leakage_error(2.0, 4.5) ==
        doctest::Approx(16.0 * leakage_error(1.0, 4.5)).epsilon(1e-12));

  // Quartic scaling and evenness.
  std::mt19937_64 rng(23);
  for (int i = 0; i < 100; ++i) {
    const double delta = uniform(rng, 0.01, 3.0);
    CHECK(leakage_error(2.0 * delta, 4.5) ==
          doctest::Approx(16.0 * leakage_error(delta, 4.5)).epsilon(1e-12));
    CHECK(leakage_error(-delta, 4.5) ==
          doctest::Approx(leakage_error(delta, 4.5)).epsilon(1e-14));
  }

  // Outside the perturbative validity range.
  CHECK_THROWS_WITH_AS(leakage_error(7.0, 4.5), doctest::Contains("not valid"),
                       ValidationError);
  CHECK_NOTHROW(leakage_error(6.3, 4.5));
  CHECK_THROWS_AS(leakage_error(1.0, 0.0), ValidationError);
}

TEST_CASE("dynamical phase error reproduces the measured chain") {
  const GateContext ctx = paper_timings();
  // -zeta1 (t_g + 2 t_b + t_s) with zeta1 = -133 kHz over 143 ns.
  CHECK(dynamical_phase_error(-0.133, ctx) ==
        doctest::Approx(6.84684).epsilon(1e-12));
  CHECK(dynamical_phase_error(-0.133, ctx) ==
        doctest::Approx(6.9).epsilon(0.01));
  CHECK(dynamical_phase_error(0.0, ctx) == 0.0);
  // All three spectators excited: zeta1_tot = -204 kHz.
  CHECK(dynamical_phase_error(-0.204, ctx) ==
        doctest::Approx(10.50192).epsilon(1e-12));
}

TEST_CASE("dynamical over conditional phase ratio is fixed by the timings") {
  const GateContext ctx = paper_timings();
  std::mt19937_64 rng(31);
  for (int i = 0; i < 50; ++i) {
    const double z = uniform(rng, -0.5, -0.001);
    const double ratio = dynamical_phase_error(z, ctx) /
                         conditional_phase_error_from_duration(z, ctx.t_g);
    CHECK(ratio == doctest::Approx(-3.575).epsilon(1e-12));
  }
}

TEST_CASE("spectator phase error variants") {
  const GateContext ctx = paper_timings();
  using Case = SpectatorPhaseCase;
  // Computational roundtrip, distant gate qubit in |0>: same window as the
  // dynamical phase error.
  CHECK(spectator_phase_error(Case::kComputationalDistant0, -0.133, 0.0, 0.0,
                              ctx) == doctest::Approx(6.84684).epsilon(1e-12));
  // Distant gate qubit in |1>: the neighboring gate qubit spends half the
  // pulse in |0>.
  CHECK(spectator_phase_error(Case::kComputationalDistant1, -0.133, 0.0, 0.0,
                              ctx) == doctest::Approx(4.93164).epsilon(1e-12));
  CHECK(spectator_phase_error(Case::kComputationalDistant1, -0.133, 0.0, 0.0,
                              ctx) == doctest::Approx(5.0).epsilon(0.015));

  // Leakage-side roundtrips combine the pulse-detuning and idle shifts.
  const double z1 = -0.156, z2 = 0.469, z_idle = -0.367;
  CHECK(spectator_phase_error(Case::kLeakageDistant0, z1, z2, z_idle, ctx) ==
        doctest::Approx(phase_deg(-z1, 80.0) + phase_deg(-z_idle, 63.0))
            .epsilon(1e-12));
  CHECK(spectator_phase_error(Case::kLeakageDistant1, z1, z2, z_idle, ctx) ==
        doctest::Approx(phase_deg(-0.5 * (z1 + z2), 80.0) +
                        phase_deg(-z_idle, 63.0))
            .epsilon(1e-12));

  for (Case c : {Case::kComputationalDistant0, Case::kComputationalDistant1,
                 Case::kLeakageDistant0, Case::kLeakageDistant1}) {
    CHECK(spectator_phase_error(c, 0.0, 0.0, 0.0, ctx) == 0.0);
  }
}

TEST_CASE("zeta1 total is the bit-weighted sum") {
  using Entry = std::pair<double, int>;
  std::vector<Entry> entries = {{-0.133, 0}, {-0.037, 0}, {-0.034, 0}};
  CHECK(zeta1_total(entries) == 0.0);

  entries = {{-0.133, 1}, {-0.037, 0}, {-0.034, 1}};
  CHECK(zeta1_total(entries) == doctest::Approx(-0.167).epsilon(1e-12));

  entries = {{-0.133, 1}, {-0.037, 1}, {-0.034, 1}};
  CHECK(zeta1_total(entries) == doctest::Approx(-0.204).epsilon(1e-12));

  entries = {{-0.1, 2}};
  CHECK_THROWS_AS(zeta1_total(entries), ValidationError);
}
