#pragma once

#include <array>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "spectator/device.hpp"

namespace spectator {

inline constexpr double kDefaultPoleEps = 1.0;  // MHz

/// Second-order dispersive shifts of a gate qubit conditioned on a spectator
/// being in |1>, in MHz. zeta1 (zeta2) shifts the gate qubit's |1> (|2>)
/// level; zeta12 = zeta2 - zeta1 shifts the 1-2 transition.
///
/// Sign convention: zeta_n is the dressed-energy combination
/// E(n,1) - E(n,0) - E(0,1) + E(0,0), i.e. exactly what a Ramsey experiment
/// on the gate qubit measures and what the exact diagonalization oracle
/// returns.
struct ShiftTriple {
  double zeta1 = 0.0;
  double zeta2 = 0.0;
  double zeta12 = 0.0;
  bool zeta1_diverged = false;
  bool zeta2_diverged = false;

  bool zeta12_diverged() const { return zeta1_diverged || zeta2_diverged; }
  bool any_diverged() const { return zeta1_diverged || zeta2_diverged; }
};

/// Detunings Delta = freq_S - freq_G at which the perturbative denominators
/// vanish. zeta1: {alpha_G, -alpha_S}; zeta2: {0, alpha_G,
/// 2 alpha_G + beta_G, alpha_G - alpha_S}.
struct ZetaPoles {
  std::array<double, 2> zeta1;
  std::array<double, 4> zeta2;
};

ZetaPoles zeta_poles(const TransmonSpec& gate, const TransmonSpec& spectator);

/// Closed-form dispersive shifts for one (gate, spectator) pair at their
/// current detuning. Any denominator with magnitude below `pole_eps`
/// flags the affected shifts as diverged instead of returning huge numbers.
ShiftTriple shifts(const TransmonSpec& gate, const TransmonSpec& spectator,
                   double j_mhz, double pole_eps_mhz = kDefaultPoleEps);

struct SpectatorShift {
  std::string label;
  SpectatorRole role;
  ShiftTriple shift;
};

struct Detuning {
  double mhz = 0.0;
  bool diverged = false;
};

/// |11>-|02> detuning induced by the excited spectators:
/// delta = sum_{computational-side in |1>} zeta1 - sum_{leakage-side in |1>} zeta12.
/// Spectators in |0> contribute zero. Divergence flags propagate.
Detuning gate_detuning(std::span<const SpectatorShift> shifts,
                       const SpectatorConfig& config);

/// Conditional phase error in degrees for a detuning delta during the gate:
/// 180 * delta / (2 sqrt(2) j).
double conditional_phase_error(double delta_mhz, double j_mhz);

/// Same quantity parameterized by the actual gate duration instead of j:
/// delta accumulates over half the |11>-|02> cycle, 0.5 * delta * t_g.
/// Equals conditional_phase_error when t_g = gate_duration_from_j(j).
double conditional_phase_error_from_duration(double delta_mhz, double t_g_ns);

/// Residual |02> population after the gate for the standard benchmark
/// preparation: 0.5 (pi/2)^2 (delta / (2 sqrt(2) j))^4. Only valid for
/// |delta / (2 sqrt(2) j)| <= 0.5; rejects inputs outside that range.
double leakage_error(double delta_mhz, double j_mhz);

/// Single-qubit dynamical phase error on a gate qubit in degrees:
/// -zeta1_tot * (t_g + 2 t_b + t_s), MHz * ns converted to degrees.
double dynamical_phase_error(double zeta1_tot_mhz, const GateContext& ctx);

/// The four closed-form spectator phase error cases. "Computational"
/// (resp. "leakage") means the neighboring gate qubit makes a roundtrip
/// between |1> and |0> (resp. |1> and |2>) conditioned on the distant gate
/// qubit; Distant0/Distant1 is the distant gate qubit's prepared state.
enum class SpectatorPhaseCase {
  kComputationalDistant0,  // -zeta1 (t_g + 2 t_b + t_s)
  kComputationalDistant1,  // -zeta1 (0.5 t_g + 2 t_b + t_s)
  kLeakageDistant0,        // -zeta1 t_g - zeta1_idle (2 t_b + t_s)
  kLeakageDistant1,        // -(0.5 zeta1 + 0.5 zeta2) t_g - zeta1_idle (2 t_b + t_s)
};

double spectator_phase_error(SpectatorPhaseCase variant, double zeta1_mhz,
                             double zeta2_mhz, double zeta1_idle_mhz,
                             const GateContext& ctx);

/// Total dispersive shift sum_i bit_i * zeta1_i.
double zeta1_total(std::span<const std::pair<double, int>> per_spectator);

/// Degrees accumulated by a level shifted by `mhz` over `ns`.
inline double phase_deg(double mhz, double ns) { return 360.0e-3 * mhz * ns; }

}  // namespace spectator
