#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "spectator/device.hpp"
#include "spectator/dispersive.hpp"
#include "spectator/table.hpp"

namespace spectator {

enum class SweepParameter {
  kSpectatorDetuning,  // x = Delta between the swept spectator and its gate qubit
  kGateDelta,          // x = |11>-|02> detuning delta directly
  kZeta1Tot,           // x = total dispersive shift of the gate qubit
};

struct SweepSpec {
  SweepParameter parameter = SweepParameter::kSpectatorDetuning;
  double start = 0.0;  // MHz
  double stop = 0.0;   // MHz
  int points = 2;
  std::string spectator;  // required for kSpectatorDetuning
  double pole_eps = kDefaultPoleEps;
};

/// Per-point perturbative evaluation: shift triple, induced detuning,
/// conditional phase error, leakage and dynamical phase error. Points near
/// poles carry a divergence flag and empty numeric cells. Rows are sorted
/// by x. Throws NumericalError when every point diverged.
ResultTable run_sweep(const DeviceTopology& device, const GateContext& ctx,
                      const SweepSpec& spec);

/// Everything the model predicts for one spectator configuration.
struct PhaseErrorReport {
  double d_phi_c = 0.0;               // deg
  double d_phi_d1 = 0.0;              // deg, gate qubit g1
  double d_phi_d2 = 0.0;              // deg, gate qubit g2
  std::vector<double> d_phi_s;        // deg, one per context spectator
  double d_leak = 0.0;
  double zeta1_tot = 0.0;             // MHz, all excited spectators
  bool diverged = false;
};

struct BudgetRow {
  std::vector<int> bits;  // configuration, first declared spectator first
  PhaseErrorReport report;
  double eps_cz = 0.0;  // trace-based process error of the phase-error unitary
};

/// Enumerates all 2^k spectator configurations (k <= 12) in bit order with
/// the first declared spectator as the most significant bit.
std::vector<BudgetRow> run_budget(const DeviceTopology& device,
                                  const GateContext& ctx,
                                  double pole_eps = kDefaultPoleEps);

ResultTable budget_table(const GateContext& ctx,
                         const std::vector<BudgetRow>& rows);

struct RamseyResult {
  ResultTable fringes;          // phase_deg, p_control0, p_control1
  double fitted_diff_deg = 0.0; // fitted phase difference, ideal: 180 + phi_c
  double fitted_phi_c_deg = 0.0;
  double fitted_sigma_deg = 0.0;  // 1-sigma estimate from the fit residuals
};

/// Synthesizes the two conditional-phase Ramsey fringes
/// P(phi) = 1/2 + (contrast/2) cos(phi + offset), the control-|1> fringe
/// offset by 180 deg + phi_c, optionally with binomial shot noise
/// (`shots` counts per phase point; 0 = noiseless), and recovers the phase
/// difference by sinusoidal least squares.
RamseyResult synthesize_ramsey(double phi_c_deg, double contrast, long shots,
                               std::uint64_t seed = 0, int phase_points = 41);

struct FigureOptions {
  std::filesystem::path out_dir;
  bool csv = true;
  bool svg = true;
};

/// Regenerates the model data behind one of the summary figures
/// ("fig1c", "fig2", "fig3", "fig4") from the bundled example device;
/// returns the written file paths.
std::vector<std::filesystem::path> reproduce_figure(std::string_view name,
                                                    const DeviceTopology& device,
                                                    const FigureOptions& options);

namespace detail {
/// Deterministic parallel map: runs fn(i) for i in [0, n) on worker threads
/// and guarantees results land at index i regardless of scheduling.
void parallel_for(int n, const std::function<void(int)>& fn);
}  // namespace detail

}  // namespace spectator
