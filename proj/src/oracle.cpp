#include "spectator/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "spectator/errors.hpp"

namespace spectator {

namespace {

// Bare level of one oscillator: freq*n + (anh/2) n(n-1) + (beta/6) n(n-1)(n-2).
double bare_level(const TransmonSpec& q, int n) {
  return q.freq * n + 0.5 * q.anh * n * (n - 1) +
         q.beta / 6.0 * n * (n - 1) * (n - 2);
}

}  // namespace

PairHamiltonian build_pair_hamiltonian(const TransmonSpec& gate,
                                       const TransmonSpec& spectator,
                                       double j_mhz, int dims) {
  if (dims < 3) {
    throw ValidationError(
        "build_pair_hamiltonian: dims must be >= 3 so the |2> state is "
        "representable");
  }
  PairHamiltonian h;
  h.dims = dims;
  const int size = dims * dims;
  h.matrix = Eigen::MatrixXd::Zero(size, size);
  for (int ng = 0; ng < dims; ++ng) {
    for (int ns = 0; ns < dims; ++ns) {
      const int row = h.index(ng, ns);
      h.matrix(row, row) = bare_level(gate, ng) + bare_level(spectator, ns);
      // J (a_G a_S^dag): |ng, ns> -> |ng-1, ns+1>, element sqrt(ng (ns+1)).
      if (ng > 0 && ns + 1 < dims) {
        const int col = h.index(ng - 1, ns + 1);
        const double elem = j_mhz * std::sqrt(double(ng) * double(ns + 1));
        h.matrix(row, col) = elem;
        h.matrix(col, row) = elem;
      }
    }
  }
  return h;
}

DressedSpectrum dressed_spectrum(const PairHamiltonian& h) {
  const int size = h.dims * h.dims;
  if (h.matrix.rows() != size || h.matrix.cols() != size) {
    throw ValidationError("dressed_spectrum: matrix size does not match dims^2");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.matrix);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("dressed_spectrum: eigen-decomposition failed");
  }
  const auto& evals = solver.eigenvalues();
  const auto& evecs = solver.eigenvectors();

  // Greedy bijective assignment: repeatedly match the (bare, eigenvector)
  // pair with the largest remaining overlap. Eigenvalues come sorted, which
  // makes ties resolve by energy ordering.
  DressedSpectrum spec;
  spec.dims = h.dims;
  spec.states.resize(size);
  std::vector<bool> bare_done(size, false), eig_done(size, false);
  for (int assigned = 0; assigned < size; ++assigned) {
    int best_bare = -1, best_eig = -1;
    double best = -1.0;
    for (int b = 0; b < size; ++b) {
      if (bare_done[b]) continue;
      for (int k = 0; k < size; ++k) {
        if (eig_done[k]) continue;
        const double w = evecs(b, k) * evecs(b, k);
        if (w > best) {
          best = w;
          best_bare = b;
          best_eig = k;
        }
      }
    }
    bare_done[best_bare] = true;
    eig_done[best_eig] = true;
    spec.states[best_bare] = {evals(best_eig), best, best_eig};
  }
  return spec;
}

ExactShifts exact_shifts(const PairHamiltonian& h) {
  const DressedSpectrum spec = dressed_spectrum(h);
  ExactShifts out;
  const std::pair<int, int> needed[] = {{0, 0}, {0, 1}, {1, 0},
                                        {1, 1}, {2, 0}, {2, 1}};
  for (const auto& [ng, ns] : needed) {
    const double overlap = spec.at(ng, ns).overlap;
    out.min_overlap = std::min(out.min_overlap, overlap);
    if (overlap <= 0.5) out.hybridized = true;
  }
  const double e00 = spec.at(0, 0).energy;
  const double e01 = spec.at(0, 1).energy;
  const double e10 = spec.at(1, 0).energy;
  const double e11 = spec.at(1, 1).energy;
  const double e20 = spec.at(2, 0).energy;
  const double e21 = spec.at(2, 1).energy;
  out.triple.zeta1 = e11 - e10 - e01 + e00;
  out.triple.zeta2 = e21 - e20 - e01 + e00;
  out.triple.zeta12 = out.triple.zeta2 - out.triple.zeta1;
  return out;
}

std::vector<double> charge_basis_levels(double ej_mhz, double ec_mhz,
                                        int nlevels, int cutoff) {
  if (!(ej_mhz > 0.0) || !(ec_mhz > 0.0)) {
    throw ValidationError("charge_basis_levels: E_J and E_C must be > 0");
  }
  const int size = 2 * cutoff + 1;
  if (nlevels > size) {
    throw ValidationError("charge_basis_levels: nlevels exceeds basis size");
  }
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(size, size);
  for (int i = 0; i < size; ++i) {
    const double n = i - cutoff;  // n_g = 0
    h(i, i) = 4.0 * ec_mhz * n * n;
    if (i + 1 < size) {
      h(i, i + 1) = -0.5 * ej_mhz;
      h(i + 1, i) = -0.5 * ej_mhz;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("charge_basis_levels: eigen-decomposition failed");
  }
  std::vector<double> levels(nlevels);
  for (int k = 0; k < nlevels; ++k) {
    levels[k] = solver.eigenvalues()(k) - solver.eigenvalues()(0);
  }
  return levels;
}

namespace {

struct Observables {
  double freq;  // E01
  double anh;   // E12 - E01
};

Observables transmon_observables(double ej, double ec, int cutoff) {
  const auto e = charge_basis_levels(ej, ec, 3, cutoff);
  return {e[1], e[2] - 2.0 * e[1]};
}

}  // namespace

TransmonFit fit_transmon(double freq_mhz, double anh_mhz) {
  if (!(freq_mhz > 0.0) || !(anh_mhz < 0.0)) {
    throw ValidationError("fit_transmon: need freq > 0 and anh < 0");
  }
  int cutoff = 20;
  // Asymptotic transmon relations seed the Newton iteration:
  // E01 ~ sqrt(8 E_J E_C) - E_C, anh ~ -E_C.
  double ec = -anh_mhz;
  double ej = (freq_mhz + ec) * (freq_mhz + ec) / (8.0 * ec);

  for (int attempt = 0; attempt < 2; ++attempt) {
    bool converged = false;
    for (int iter = 0; iter < 60; ++iter) {
      const Observables f = transmon_observables(ej, ec, cutoff);
      const double r1 = f.freq - freq_mhz;
      const double r2 = f.anh - anh_mhz;
      if (std::abs(r1) < 1e-9 && std::abs(r2) < 1e-9) {
        converged = true;
        break;
      }
      const double dej = std::max(1e-6 * ej, 1e-3);
      const double dec = std::max(1e-6 * ec, 1e-3);
      const Observables fj = transmon_observables(ej + dej, ec, cutoff);
      const Observables fc = transmon_observables(ej, ec + dec, cutoff);
      const double a11 = (fj.freq - f.freq) / dej;
      const double a12 = (fc.freq - f.freq) / dec;
      const double a21 = (fj.anh - f.anh) / dej;
      const double a22 = (fc.anh - f.anh) / dec;
      const double det = a11 * a22 - a12 * a21;
      if (std::abs(det) < 1e-14) {
        throw NumericalError("fit_transmon: singular Jacobian");
      }
      double step_ej = (-r1 * a22 + r2 * a12) / det;
      double step_ec = (-a11 * r2 + a21 * r1) / det;
      // Damp steps that would leave the positive quadrant.
      double scale = 1.0;
      if (ej + step_ej < 0.1 * ej) scale = std::min(scale, -0.9 * ej / step_ej);
      if (ec + step_ec < 0.1 * ec) scale = std::min(scale, -0.9 * ec / step_ec);
      ej += scale * step_ej;
      ec += scale * step_ec;
    }
    if (!converged) {
      throw NumericalError(
          "fit_transmon: root finder failed to converge for freq = " +
          std::to_string(freq_mhz) + " MHz, anh = " + std::to_string(anh_mhz) +
          " MHz");
    }
    // Truncation check: accept only if widening the charge basis moves no
    // level by more than 1 kHz.
    const auto lo = charge_basis_levels(ej, ec, 4, cutoff);
    const auto hi = charge_basis_levels(ej, ec, 4, 30);
    double worst = 0.0;
    for (int k = 0; k < 4; ++k) worst = std::max(worst, std::abs(lo[k] - hi[k]));
    if (worst <= 1e-3 || cutoff >= 30) break;
    cutoff = 30;
  }

  if (ej / ec < 20.0) {
    throw NumericalError(
        "fit_transmon: fitted E_J/E_C = " + std::to_string(ej / ec) +
        " is outside the transmon regime (need >= 20)");
  }

  const auto e = charge_basis_levels(ej, ec, 4, cutoff);
  TransmonFit fit;
  fit.ej = ej;
  fit.ec = ec;
  fit.beta = e[3] - 3.0 * e[2] + 3.0 * e[1] - e[0];
  fit.freq_fit = e[1];
  fit.anh_fit = e[2] - 2.0 * e[1];
  fit.cutoff = cutoff;
  return fit;
}

double transmon_beta(double freq_mhz, double anh_mhz) {
  return fit_transmon(freq_mhz, anh_mhz).beta;
}

}  // namespace spectator
