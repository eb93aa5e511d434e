#pragma once

#include <Eigen/Dense>
#include <complex>

namespace spectator {

/// Two-qubit unitaries in the basis {|00>, |01>, |10>, |11>} with
/// |q1 q2> ordering, q1 the leftmost label.
using GateUnitary = Eigen::Matrix4cd;

/// 16x16 process matrix in the two-qubit Pauli basis
/// {I,X,Y,Z} x {I,X,Y,Z}, index m = 4*a + b.
using ProcessMatrix = Eigen::Matrix<std::complex<double>, 16, 16>;

/// Controlled-phase gate with a conditional phase error dc and single-qubit
/// phase errors d1, d2 (degrees):
/// diag(1, e^{i d1}, e^{i d2}, e^{i(pi + dc + d1 + d2)}).
/// d1 multiplies |01>, d2 multiplies |10>.
GateUnitary cz_error_unitary(double d1_deg, double d2_deg, double dc_deg);

GateUnitary ideal_cz();

/// chi = c c^dag with c_m = Tr[P_m U] / 4; trace-1 and rank-1 for unitary
/// input. Throws ValidationError when U is not unitary to 1e-9.
ProcessMatrix chi_from_unitary(const GateUnitary& u);

/// Gate infidelity against the ideal CZ: 1 - Tr[chi(u) chi(CZ)].
double process_error(const GateUnitary& u);
double process_error(double d1_deg, double d2_deg, double dc_deg);

/// Small-phase expansion of the same quantity (phases converted to radians):
/// 0.25 d1^2 + 0.25 d2^2 + 0.1875 dc^2 + 0.25 d1 dc + 0.25 d2 dc.
double process_error_quadratic(double d1_deg, double d2_deg, double dc_deg);

struct RepeatedGateScaling {
  double eps_one = 0.0;
  double eps_n = 0.0;
  double ratio = 1.0;  // eps_n / eps_one; -> n^2 in the quadratic regime
};

/// Error of n identical gates in series (phases scale by n) relative to one
/// gate.
RepeatedGateScaling repeated_gate_error_scaling(int n, double d1_deg,
                                                double d2_deg, double dc_deg);

}  // namespace spectator
