#include "spectator/tomography.hpp"

#include <array>
#include <cmath>

#include "spectator/errors.hpp"

namespace spectator {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kDegToRad = kPi / 180.0;

using Matrix2cd = Eigen::Matrix2cd;
using cd = std::complex<double>;

const std::array<Matrix2cd, 4>& pauli_basis() {
  static const std::array<Matrix2cd, 4> paulis = [] {
    std::array<Matrix2cd, 4> p;
    p[0] << cd(1, 0), cd(0, 0), cd(0, 0), cd(1, 0);   // I
    p[1] << cd(0, 0), cd(1, 0), cd(1, 0), cd(0, 0);   // X
    p[2] << cd(0, 0), cd(0, -1), cd(0, 1), cd(0, 0);  // Y
    p[3] << cd(1, 0), cd(0, 0), cd(0, 0), cd(-1, 0);  // Z
    return p;
  }();
  return paulis;
}

Eigen::Matrix4cd two_qubit_pauli(int m) {
  const auto& p = pauli_basis();
  Eigen::Matrix4cd out;
  const Matrix2cd& a = p[m / 4];
  const Matrix2cd& b = p[m % 4];
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

Eigen::Vector<cd, 16> pauli_coefficients(const GateUnitary& u) {
  Eigen::Vector<cd, 16> c;
  for (int m = 0; m < 16; ++m) {
    c(m) = (two_qubit_pauli(m) * u).trace() / 4.0;
  }
  return c;
}

void require_unitary(const GateUnitary& u, const char* who) {
  const double dev = (u.adjoint() * u - GateUnitary::Identity()).norm();
  if (dev > 1e-9) {
    throw ValidationError(std::string(who) + ": input matrix is not unitary");
  }
}

}  // namespace

GateUnitary cz_error_unitary(double d1_deg, double d2_deg, double dc_deg) {
  const double d1 = d1_deg * kDegToRad;
  const double d2 = d2_deg * kDegToRad;
  const double dc = dc_deg * kDegToRad;
  GateUnitary u = GateUnitary::Zero();
  u(0, 0) = cd(1, 0);
  u(1, 1) = std::polar(1.0, d1);
  u(2, 2) = std::polar(1.0, d2);
  u(3, 3) = std::polar(1.0, kPi + dc + d1 + d2);
  return u;
}

GateUnitary ideal_cz() { return cz_error_unitary(0.0, 0.0, 0.0); }

ProcessMatrix chi_from_unitary(const GateUnitary& u) {
  require_unitary(u, "chi_from_unitary");
  const auto c = pauli_coefficients(u);
  return c * c.adjoint();
}

double process_error(const GateUnitary& u) {
  require_unitary(u, "process_error");
  // Tr[chi(u) chi(ideal)] = |<c_ideal, c_u>|^2 = |Tr[CZ^dag U]|^2 / 16.
  const cd overlap = (ideal_cz().adjoint() * u).trace() / 4.0;
  return 1.0 - std::norm(overlap);
}

double process_error(double d1_deg, double d2_deg, double dc_deg) {
  return process_error(cz_error_unitary(d1_deg, d2_deg, dc_deg));
}

double process_error_quadratic(double d1_deg, double d2_deg, double dc_deg) {
  const double d1 = d1_deg * kDegToRad;
  const double d2 = d2_deg * kDegToRad;
  const double dc = dc_deg * kDegToRad;
  return 0.25 * d1 * d1 + 0.25 * d2 * d2 + 0.1875 * dc * dc +
         0.25 * d1 * dc + 0.25 * d2 * dc;
}

RepeatedGateScaling repeated_gate_error_scaling(int n, double d1_deg,
                                                double d2_deg, double dc_deg) {
  if (n < 1) {
    throw ValidationError("repeated_gate_error_scaling: n must be >= 1");
  }
  RepeatedGateScaling out;
  out.eps_one = process_error(d1_deg, d2_deg, dc_deg);
  out.eps_n = process_error(n * d1_deg, n * d2_deg, n * dc_deg);
  out.ratio = out.eps_one > 1e-300 ? out.eps_n / out.eps_one : 1.0;
  return out;
}

}  // namespace spectator
