#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace spectator {

// Unit conventions used across the library:
//   * frequencies are ordinary frequencies (omega / 2pi) in MHz,
//   * times are in ns,
//   * phases are degrees at API boundaries, radians internally.
// Angular factors of 2pi appear only inside Hamiltonian construction and
// phase accumulation.

/// One transmon as an anharmonic oscillator. `anh` is the 0-1 vs 1-2
/// transition difference (negative), `beta` the additional 2-3 correction
/// so that E23/h = freq + anh + beta.
struct TransmonSpec {
  std::string id;
  double freq = 0.0;  // MHz
  double anh = 0.0;   // MHz, < 0
  double beta = 0.0;  // MHz, |beta| < |anh|
};

/// Exchange coupling J/2pi between two qubits.
struct Coupling {
  std::string a;
  std::string b;
  double j = 0.0;  // MHz, > 0
};

struct DeviceTopology {
  std::vector<TransmonSpec> qubits;
  std::vector<Coupling> couplings;

  const TransmonSpec* find_qubit(std::string_view id) const;
  /// Throws ValidationError when `id` is not declared.
  const TransmonSpec& qubit(std::string_view id) const;
  std::optional<double> coupling_j(std::string_view a, std::string_view b) const;
  std::vector<std::string> neighbors(std::string_view id) const;
};

/// Checks all DeviceTopology invariants; throws ValidationError with the
/// offending field path in the message.
void validate_device(const DeviceTopology& device);

/// Loads and validates a device description file (see data/device7.json for
/// the schema). Unknown keys are rejected.
DeviceTopology load_device(const std::filesystem::path& path);
DeviceTopology parse_device(std::string_view json_text);

std::string device_to_json(const DeviceTopology& device);
void save_device(const DeviceTopology& device, const std::filesystem::path& path);

/// Duration of one full |11>-|02> oscillation: 10^3 / (2 sqrt(2) j) ns for
/// j = J/2pi in MHz.
double gate_duration_from_j(double j_mhz);

/// Role of a spectator with respect to the gate pair: coupled to the gate
/// qubit that stays in the computational subspace (g1), or to the one whose
/// |2> state participates in the gate (g2).
enum class SpectatorRole {
  kComputational,  // couples to g1
  kLeakage,        // couples to g2
};

/// A controlled-phase gate instance: the two gate qubits, the spectators
/// with their roles, the timing budget and the gate coupling.
struct GateContext {
  std::string g1;
  std::string g2;  // the qubit whose |2> state participates
  std::vector<std::pair<std::string, SpectatorRole>> spectators;
  double t_g = 80.0;  // ns, flux-pulse duration
  double t_b = 5.0;   // ns, buffer before and after the flux pulse
  double t_s = 53.0;  // ns, single-qubit gate duration
  double j = 4.5;     // MHz, coupling between g1 and g2

  /// Ramsey window over which dispersive phases accumulate.
  double phase_window() const { return t_g + 2.0 * t_b + t_s; }
};

void validate_gate_context(const GateContext& ctx);

/// Builds a GateContext from a device, deriving each spectator's role from
/// which gate qubit it couples to. The gate coupling is looked up from the
/// topology unless `j_override` > 0.
GateContext make_gate_context(const DeviceTopology& device, std::string_view g1,
                              std::string_view g2,
                              const std::vector<std::string>& spectators,
                              double t_g = 80.0, double t_b = 5.0,
                              double t_s = 53.0, double j_override = 0.0);

/// Which spectators are excited: label -> 0/1.
struct SpectatorConfig {
  std::map<std::string, int> bits;
};

/// Throws unless the config keys exactly match the context's spectator set.
void validate_config(const GateContext& ctx, const SpectatorConfig& config);

}  // namespace spectator
