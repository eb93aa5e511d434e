#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "spectator/device.hpp"

namespace spectator {

/// Rectangular flux pulse filtered with a normalized Gaussian of width
/// `sigma` (truncated at +-4 sigma). `amplitude` is the frequency excursion
/// it causes, signed, in MHz; sigma = 0 is the ideal rectangle.
struct PulseShape {
  double amplitude = 0.0;  // MHz
  double duration = 0.0;   // ns
  double sigma = 1.0;      // ns
};

/// Reduced |11>-|02> model of the gate. j_eff is the coupling between the
/// two states (sqrt(2) J for a transmon pair). delta is the static
/// spectator-induced detuning; the pulse excursion is the additional
/// |11>-|02> detuning present outside the plateau, so the detuning seen by
/// the integrator is delta + amplitude * (1 - envelope(t)).
struct TwoLevelGateProblem {
  double j_eff = 0.0;  // MHz
  double delta = 0.0;  // MHz
  PulseShape pulse;
};

struct TrajectorySample {
  double t = 0.0;  // ns
  std::vector<std::complex<double>> amplitudes;
};

struct Trajectory {
  std::vector<std::string> labels;  // basis state per amplitude column
  std::vector<TrajectorySample> samples;
};

struct GateOutcome {
  /// Conditional phase in degrees, wrapped to [0, 360); ideal gate: 180.
  double phi_c = 0.0;
  /// |02> population for the standard benchmark preparation
  /// (g1 in (|0>+|1>)/sqrt(2), g2 in |1>), i.e. half the |11>-prepared
  /// leakage; directly comparable with leakage_error().
  double leak = 0.0;
  /// Raw |<02|psi(end)>|^2 with the system prepared in |11>.
  double pop_leakage = 0.0;
  /// | ||psi|| - 1 | at the end of the integration.
  double norm_error = 0.0;
  std::optional<Trajectory> trajectory;
};

struct SimOptions {
  double dt = 0.0;            // ns; 0 = automatic
  int trajectory_stride = 0;  // record every n-th step; 0 = no trajectory
};

/// Integrates the 2x2 Schroedinger equation from |11> with a fixed-step RK4
/// scheme and returns phase, leakage and norm drift. Throws NumericalError
/// when the norm drifts by more than 1e-9 and ValidationError when a
/// user-supplied dt violates the resolution bound.
GateOutcome simulate_two_level(const TwoLevelGateProblem& problem,
                               const SimOptions& options = {});

/// A transmon pair for full-model simulation. The pulsed qubit's frequency
/// is lowered by amplitude * envelope(t); by default g2 (the qubit whose
/// |2> state participates) is pulsed.
struct PairGateSetup {
  TransmonSpec g1;
  TransmonSpec g2;
  double j = 0.0;  // MHz
  int dims = 4;
  bool pulse_g1 = false;
};

/// Excursion that brings |11> and |02> exactly into resonance for the
/// pulsed qubit.
double resonance_amplitude(const PairGateSetup& setup);

/// Integrates the dims^2-dimensional problem from the four dressed
/// computational states and extracts
/// Phi_c = arg<11|psi_11> - arg<10|psi_10> - arg<01|psi_01> + arg<00|psi_00>
/// plus the |02> leakage. `spectator_delta` enters as a static shift of the
/// |11>-|02> gap (applied to the |02> level), mirroring how dispersive
/// spectator shifts act on the gate.
GateOutcome simulate_full_pair(const PairGateSetup& setup,
                               const PulseShape& pulse,
                               double spectator_delta_mhz = 0.0,
                               const SimOptions& options = {});

struct CalibrationOptions {
  double sigma = 1.0;           // ns, pulse filter width
  double phase_tol_deg = 0.05;  // |Phi_c - 180| target
  double leak_tol = 1e-3;
  const PulseShape* seed = nullptr;  // returned unchanged if already in spec
};

/// Finds pulse amplitude and duration with Phi_c = 180 deg and leakage
/// below tolerance: 1-D root find on the amplitude at fixed duration near
/// the ideal gate time, then duration refinement. Throws NumericalError
/// when no root exists in the search box (e.g. j = 0).
PulseShape calibrate_pulse(const PairGateSetup& setup,
                           const CalibrationOptions& options = {});

}  // namespace spectator
