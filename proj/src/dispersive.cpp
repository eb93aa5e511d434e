#include "spectator/dispersive.hpp"

#include <cmath>
#include <limits>

#include "spectator/errors.hpp"

namespace spectator {

namespace {

constexpr double kPi = 3.14159265358979323846;

// A perturbative 1/x term; below pole_eps the term is meaningless.
struct Term {
  double value = 0.0;
  bool diverged = false;
};

Term inv(double denom, double eps) {
  if (std::abs(denom) < eps) return {0.0, true};
  return {1.0 / denom, false};
}

}  // namespace

ZetaPoles zeta_poles(const TransmonSpec& gate, const TransmonSpec& spectator) {
  ZetaPoles p;
  p.zeta1 = {gate.anh, -spectator.anh};
  p.zeta2 = {0.0, gate.anh, 2.0 * gate.anh + gate.beta,
             gate.anh - spectator.anh};
  return p;
}

ShiftTriple shifts(const TransmonSpec& gate, const TransmonSpec& spectator,
                   double j_mhz, double pole_eps_mhz) {
  if (!(j_mhz > 0.0)) {
    throw ValidationError("shifts: coupling j must be > 0 MHz");
  }
  if (!(pole_eps_mhz >= 0.0)) {
    throw ValidationError("shifts: pole_eps must be >= 0 MHz");
  }
  const double delta = spectator.freq - gate.freq;
  const double j2 = j_mhz * j_mhz;

  // Dressed-energy second order in J. The |11> level is pushed by the
  // |02> and |20> resonances, the |21> level by |30> and |12>, and the
  // single-excitation levels by the |01>-|10> swap.
  const Term t_gap_s = inv(delta + spectator.anh, pole_eps_mhz);  // |11>-|02|
  const Term t_gap_g = inv(delta - gate.anh, pole_eps_mhz);       // |11>-|20|
  const Term t_swap = inv(delta, pole_eps_mhz);                   // |01>-|10|
  const Term t_30 = inv(delta - 2.0 * gate.anh - gate.beta, pole_eps_mhz);
  const Term t_12 = inv(delta - gate.anh + spectator.anh, pole_eps_mhz);

  ShiftTriple out;
  out.zeta1 = 2.0 * j2 * (t_gap_g.value - t_gap_s.value);
  out.zeta1_diverged = t_gap_g.diverged || t_gap_s.diverged;
  out.zeta2 = j2 * (-t_swap.value + 2.0 * t_gap_g.value + 3.0 * t_30.value -
                    4.0 * t_12.value);
  out.zeta2_diverged =
      t_swap.diverged || t_gap_g.diverged || t_30.diverged || t_12.diverged;
  out.zeta12 = out.zeta2 - out.zeta1;
  return out;
}

Detuning gate_detuning(std::span<const SpectatorShift> shifts,
                       const SpectatorConfig& config) {
  Detuning out;
  for (const auto& s : shifts) {
    auto it = config.bits.find(s.label);
    if (it == config.bits.end()) {
      throw ValidationError("gate_detuning: no configuration bit for '" +
                            s.label + "'");
    }
    if (it->second == 0) continue;
    if (s.role == SpectatorRole::kComputational) {
      out.mhz += s.shift.zeta1;
      out.diverged = out.diverged || s.shift.zeta1_diverged;
    } else {
      out.mhz -= s.shift.zeta12;
      out.diverged = out.diverged || s.shift.zeta12_diverged();
    }
  }
  return out;
}

double conditional_phase_error(double delta_mhz, double j_mhz) {
  if (!(j_mhz > 0.0)) {
    throw ValidationError("conditional_phase_error: j must be > 0 MHz");
  }
  return 180.0 * delta_mhz / (2.0 * std::sqrt(2.0) * j_mhz);
}

double conditional_phase_error_from_duration(double delta_mhz, double t_g_ns) {
  return phase_deg(0.5 * delta_mhz, t_g_ns);
}

double leakage_error(double delta_mhz, double j_mhz) {
  if (!(j_mhz > 0.0)) {
    throw ValidationError("leakage_error: j must be > 0 MHz");
  }
  const double x = delta_mhz / (2.0 * std::sqrt(2.0) * j_mhz);
  if (std::abs(x) > 0.5) {
    throw ValidationError(
        "leakage_error: |delta / (2 sqrt(2) J)| > 0.5; the quartic "
        "perturbative expression is not valid this far off resonance");
  }
  const double x2 = x * x;
  return 0.5 * (kPi / 2.0) * (kPi / 2.0) * x2 * x2;
}

double dynamical_phase_error(double zeta1_tot_mhz, const GateContext& ctx) {
  return phase_deg(-zeta1_tot_mhz, ctx.phase_window());
}

double spectator_phase_error(SpectatorPhaseCase variant, double zeta1_mhz,
                             double zeta2_mhz, double zeta1_idle_mhz,
                             const GateContext& ctx) {
  const double idle_window = 2.0 * ctx.t_b + ctx.t_s;
  switch (variant) {
    case SpectatorPhaseCase::kComputationalDistant0:
      return phase_deg(-zeta1_mhz, ctx.t_g + idle_window);
    case SpectatorPhaseCase::kComputationalDistant1:
      return phase_deg(-zeta1_mhz, 0.5 * ctx.t_g + idle_window);
    case SpectatorPhaseCase::kLeakageDistant0:
      return phase_deg(-zeta1_mhz, ctx.t_g) +
             phase_deg(-zeta1_idle_mhz, idle_window);
    case SpectatorPhaseCase::kLeakageDistant1:
      return phase_deg(-0.5 * (zeta1_mhz + zeta2_mhz), ctx.t_g) +
             phase_deg(-zeta1_idle_mhz, idle_window);
  }
  throw ValidationError("spectator_phase_error: unknown variant");
}

double zeta1_total(std::span<const std::pair<double, int>> per_spectator) {
  double total = 0.0;
  for (const auto& [zeta1, bit] : per_spectator) {
    if (bit != 0 && bit != 1) {
      throw ValidationError("zeta1_total: bits must be 0 or 1");
    }
    total += bit * zeta1;
  }
  return total;
}

}  // namespace spectator
