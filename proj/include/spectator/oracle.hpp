#pragma once

#include <Eigen/Dense>
#include <vector>

#include "spectator/device.hpp"
#include "spectator/dispersive.hpp"

namespace spectator {

/// Two coupled anharmonic oscillators in the bare product basis
/// |n_G n_S>, index = n_G * dims + n_S, entries in MHz.
struct PairHamiltonian {
  int dims = 4;
  Eigen::MatrixXd matrix;

  int index(int n_g, int n_s) const { return n_g * dims + n_s; }
};

/// Diagonal: sum_i freq*n + (anh/2) n(n-1) + (beta/6) n(n-1)(n-2) per
/// oscillator; off-diagonal: J (a_G a_S^dag + h.c.) with sqrt(n) matrix
/// elements. Requires dims >= 3.
PairHamiltonian build_pair_hamiltonian(const TransmonSpec& gate,
                                       const TransmonSpec& spectator,
                                       double j_mhz, int dims = 4);

struct DressedState {
  double energy = 0.0;   // MHz
  double overlap = 0.0;  // |<bare|dressed>|^2 of the assigned eigenvector
  int eigen_index = -1;
};

/// Eigen-decomposition with each eigenvector assigned to a bare label by
/// maximum overlap (greedy, globally ordered, bijective; ties broken by
/// energy ordering).
struct DressedSpectrum {
  int dims = 0;
  std::vector<DressedState> states;  // indexed like PairHamiltonian

  const DressedState& at(int n_g, int n_s) const {
    return states[static_cast<std::size_t>(n_g * dims + n_s)];
  }
};

DressedSpectrum dressed_spectrum(const PairHamiltonian& h);

struct ExactShifts {
  ShiftTriple triple;
  bool hybridized = false;  // some needed overlap <= 0.5; shifts ill-defined
  double min_overlap = 1.0;
};

/// Numerically exact dispersive shifts from the dressed energies:
/// zeta1 = E11 - E10 - E01 + E00, zeta2 = E21 - E20 - E01 + E00
/// (gate index first).
ExactShifts exact_shifts(const PairHamiltonian& h);

/// Lowest `nlevels` eigenvalues of 4 E_C n^2 - (E_J/2)(|n><n+1| + h.c.) on
/// charge states n in [-cutoff, cutoff], shifted so E0 = 0. MHz in, MHz out.
std::vector<double> charge_basis_levels(double ej_mhz, double ec_mhz,
                                        int nlevels, int cutoff = 20);

struct TransmonFit {
  double ej = 0.0;       // MHz
  double ec = 0.0;       // MHz
  double beta = 0.0;     // MHz, E3 - 3 E2 + 3 E1 - E0
  double freq_fit = 0.0; // round-trip E01 of the fitted parameters
  double anh_fit = 0.0;  // round-trip E12 - E01
  int cutoff = 20;
};

/// Fits (E_J, E_C) of the charge-basis transmon Hamiltonian so that E01 and
/// E12 - E01 match the requested frequency and anharmonicity, then reads off
/// the sextic correction beta. The charge cutoff starts at +-20 and is
/// raised to +-30 when the truncation shifts any level by more than 1 kHz.
TransmonFit fit_transmon(double freq_mhz, double anh_mhz);

double transmon_beta(double freq_mhz, double anh_mhz);

}  // namespace spectator
