#include "spectator/dynamics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "spectator/errors.hpp"

namespace spectator {

namespace {

constexpr double kPi = 3.14159265358979323846;
// MHz * ns -> radians.
constexpr double kOmega = 2.0 * kPi * 1.0e-3;
constexpr double kNormTol = 1e-9;
// Norm-drift budget used to pick the step size; one decade under the check.
constexpr double kNormBudget = 1e-10;

using cd = std::complex<double>;

double wrap_deg_0_360(double deg) {
  double w = std::fmod(deg, 360.0);
  if (w < 0.0) w += 360.0;
  return w;
}

double wrap_deg_pm180(double deg) {
  double w = wrap_deg_0_360(deg + 180.0);
  return w - 180.0;
}

// Fixed-step-size selection. The spec bound resolves the fastest dynamics;
// the drift bound keeps the accumulated RK4 norm loss, T omega^6 dt^5 / 144,
// inside the budget.
double choose_dt(double fmax_mhz, double total_ns, double user_dt) {
  const double fmax = std::max(fmax_mhz, 1.0);
  const double spec_bound = 1.0e3 / (50.0 * fmax);
  const double omega = kOmega * fmax;  // rad/ns
  const double drift_bound =
      std::pow(144.0 * kNormBudget / (total_ns * std::pow(omega, 6.0)), 0.2);
  if (user_dt > 0.0) {
    if (user_dt > spec_bound) {
      throw ValidationError(
          "simulation: step size violates the resolution bound dt <= "
          "1/(50 f_max)");
    }
    return user_dt;
  }
  return std::min({0.01, spec_bound, drift_bound});
}

// Gaussian-filtered rectangle sampled on the integrator's half-step grid:
// the unit rectangle on [0, duration] convolved with a normalized Gaussian
// kernel truncated at +-4 sigma. The plateau is exactly 1 by construction.
class Envelope {
 public:
  Envelope(const PulseShape& pulse, double t0, double h, int half_points)
      : t0_(t0), h_(h), duration_(pulse.duration) {
    values_.resize(half_points);
    const double sigma = pulse.sigma;
    const int radius = sigma > 0.0 ? int(std::lround(4.0 * sigma / h)) : 0;
    if (radius == 0) {
      for (int k = 0; k < half_points; ++k) {
        const double t = t0_ + k * h_;
        values_[k] = (t >= 0.0 && t <= duration_) ? 1.0 : 0.0;
      }
      return;
    }
    std::vector<double> prefix(2 * radius + 2, 0.0);
    double norm = 0.0;
    for (int m = -radius; m <= radius; ++m) {
      const double x = m * h;
      norm += std::exp(-x * x / (2.0 * sigma * sigma));
    }
    double run = 0.0;
    for (int m = -radius; m <= radius; ++m) {
      const double x = m * h;
      run += std::exp(-x * x / (2.0 * sigma * sigma)) / norm;
      prefix[m + radius + 1] = run;
    }
    for (int k = 0; k < half_points; ++k) {
      const double t = t0_ + k * h_;
      int lo = int(std::ceil((t - duration_) / h - 1e-9));
      int hi = int(std::floor(t / h + 1e-9));
      lo = std::max(lo, -radius);
      hi = std::min(hi, radius);
      values_[k] = hi < lo ? 0.0
                           : prefix[hi + radius + 1] - prefix[lo + radius];
    }
  }

  double at_half_step(int k) const { return values_[k]; }

 private:
  double t0_;
  double h_;
  double duration_;
  std::vector<double> values_;
};

// Classic RK4 for psi' = -i * kOmega * H(t) psi with H supplied per
// half-step index.
template <typename Deriv>
void rk4_evolve(std::vector<cd>& psi, int steps, double dt, Deriv&& deriv,
                const std::function<void(int, double)>& on_step = {}) {
  const std::size_t n = psi.size();
  std::vector<cd> k1(n), k2(n), k3(n), k4(n), tmp(n);
  for (int s = 0; s < steps; ++s) {
    deriv(2 * s, psi, k1);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = psi[i] + 0.5 * dt * k1[i];
    deriv(2 * s + 1, tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = psi[i] + 0.5 * dt * k2[i];
    deriv(2 * s + 1, tmp, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = psi[i] + dt * k3[i];
    deriv(2 * s + 2, tmp, k4);
    for (std::size_t i = 0; i < n; ++i) {
      psi[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    if (on_step) on_step(s + 1, 0.0);
  }
}

double norm_of(const std::vector<cd>& psi) {
  double n2 = 0.0;
  for (const cd& a : psi) n2 += std::norm(a);
  return std::sqrt(n2);
}

void check_norm(double norm, double* out_err) {
  const double err = std::abs(norm - 1.0);
  if (out_err) *out_err = err;
  if (err > kNormTol) {
    throw NumericalError(
        "simulation: non-unitary drift beyond 1e-9 (norm error " +
        std::to_string(err) + ")");
  }
}

double bare_level(const TransmonSpec& q, int n) {
  return q.freq * n + 0.5 * q.anh * n * (n - 1) +
         q.beta / 6.0 * n * (n - 1) * (n - 2);
}

}  // namespace

GateOutcome simulate_two_level(const TwoLevelGateProblem& problem,
                               const SimOptions& options) {
  if (!(problem.j_eff > 0.0)) {
    throw ValidationError("simulate_two_level: j_eff must be > 0 MHz");
  }
  if (!(problem.pulse.duration > 0.0)) {
    throw ValidationError("simulate_two_level: pulse duration must be > 0 ns");
  }
  if (problem.pulse.sigma < 0.0) {
    throw ValidationError("simulate_two_level: sigma must be >= 0 ns");
  }
  if (!std::isfinite(problem.pulse.amplitude)) {
    throw ValidationError("simulate_two_level: amplitude must be finite");
  }

  const double pad = 4.0 * problem.pulse.sigma;
  const double t0 = -pad;
  const double t1 = problem.pulse.duration + pad;
  const double fmax = std::max(
      problem.j_eff, std::abs(problem.delta) + std::abs(problem.pulse.amplitude));
  double dt = choose_dt(fmax, t1 - t0, options.dt);
  const int steps = std::max(1, int(std::ceil((t1 - t0) / dt)));
  dt = (t1 - t0) / steps;

  const Envelope env(problem.pulse, t0, 0.5 * dt, 2 * steps + 1);

  // Frame: E(|11>) = 0, E(|02>) = -detuning(t); the uncoupled reference
  // phase of |11> is then identically zero.
  const double j = problem.j_eff;
  auto deriv = [&](int half, const std::vector<cd>& x, std::vector<cd>& out) {
    const double detuning =
        problem.delta + problem.pulse.amplitude * (1.0 - env.at_half_step(half));
    const cd mi(0.0, -kOmega);
    out[0] = mi * (j * x[1]);
    out[1] = mi * (j * x[0] - detuning * x[1]);
  };

  std::vector<cd> psi = {cd(1.0, 0.0), cd(0.0, 0.0)};

  GateOutcome outcome;
  Trajectory traj;
  if (options.trajectory_stride > 0) {
    traj.labels = {"11", "02"};
    traj.samples.push_back({t0, psi});
  }
  auto recorder = [&](int step, double) {
    if (options.trajectory_stride > 0 &&
        (step % options.trajectory_stride == 0 || step == steps)) {
      traj.samples.push_back({t0 + step * dt, psi});
    }
  };
  rk4_evolve(psi, steps, dt, deriv, recorder);

  check_norm(norm_of(psi), &outcome.norm_error);
  outcome.phi_c = wrap_deg_0_360(std::arg(psi[0]) * 180.0 / kPi);
  outcome.pop_leakage = std::norm(psi[1]);
  outcome.leak = 0.5 * outcome.pop_leakage;
  if (options.trajectory_stride > 0) outcome.trajectory = std::move(traj);
  return outcome;
}

namespace {

// Full transmon-pair problem in the bare product basis |n1 n2>,
// index = n1 * dims + n2. The coupling conserves total excitation number,
// so the four computational initial states only ever reach the
// zero/one/two-excitation blocks; levels above |2> stay empty regardless
// of dims.
struct PairProblem {
  int dims;
  int size;
  std::vector<double> diag_static;  // MHz, frame-shifted
  std::vector<double> diag_pulse;   // MHz per unit envelope
  struct OffDiag {
    int row;
    int col;
    double value;
  };
  std::vector<OffDiag> couplings;
  double fmax = 0.0;  // max |H| over reachable states, both pulse extremes
};

PairProblem make_pair_problem(const PairGateSetup& setup,
                              const PulseShape& pulse,
                              double spectator_delta) {
  PairProblem p;
  p.dims = setup.dims;
  p.size = setup.dims * setup.dims;
  p.diag_static.resize(p.size);
  p.diag_pulse.assign(p.size, 0.0);

  for (int n1 = 0; n1 < setup.dims; ++n1) {
    for (int n2 = 0; n2 < setup.dims; ++n2) {
      const int i = n1 * setup.dims + n2;
      p.diag_static[i] = bare_level(setup.g1, n1) + bare_level(setup.g2, n2);
      const int pulsed_n = setup.pulse_g1 ? n1 : n2;
      p.diag_pulse[i] = -pulse.amplitude * pulsed_n;
      if (n1 > 0 && n2 + 1 < setup.dims) {
        const int jcol = (n1 - 1) * setup.dims + (n2 + 1);
        p.couplings.push_back(
            {i, jcol, setup.j * std::sqrt(double(n1) * double(n2 + 1))});
      }
    }
  }
  // The spectator-induced |11>-|02> detuning acts on the leakage level.
  p.diag_static[2] -= spectator_delta;  // index(0, 2)

  // Remove c0 + c1 * n_tot from the diagonal. Both pieces cancel exactly in
  // the four-state conditional-phase combination and in populations, and
  // they center the reachable spectrum around zero so the fixed step can be
  // as large as the physics allows.
  const double mid1 =
      setup.g1.freq - (setup.pulse_g1 ? 0.5 * pulse.amplitude : 0.0);
  const double mid2 =
      setup.g2.freq - (setup.pulse_g1 ? 0.0 : 0.5 * pulse.amplitude);
  const double c1 = 0.5 * (mid1 + mid2);
  double lo = 0.0, hi = 0.0;
  bool first = true;
  for (int n1 = 0; n1 < setup.dims && n1 <= 2; ++n1) {
    for (int n2 = 0; n2 < setup.dims && n1 + n2 <= 2; ++n2) {
      const int i = n1 * setup.dims + n2;
      for (double env : {0.0, 1.0}) {
        const double r =
            p.diag_static[i] + env * p.diag_pulse[i] - c1 * (n1 + n2);
        if (first || r < lo) lo = r;
        if (first || r > hi) hi = r;
        first = false;
      }
    }
  }
  const double c0 = 0.5 * (lo + hi);
  for (int n1 = 0; n1 < setup.dims; ++n1) {
    for (int n2 = 0; n2 < setup.dims; ++n2) {
      p.diag_static[n1 * setup.dims + n2] -= c0 + c1 * (n1 + n2);
    }
  }
  p.fmax = 0.5 * (hi - lo) + 3.0 * setup.j;
  return p;
}

struct DressedBasis {
  Eigen::MatrixXd vectors;      // columns = eigenvectors
  std::vector<int> eig_of_bare; // bare index -> eigenvector column
  std::vector<double> overlap;  // bare index -> assignment overlap
};

DressedBasis dressed_basis(const PairProblem& p) {
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(p.size, p.size);
  for (int i = 0; i < p.size; ++i) h(i, i) = p.diag_static[i];
  for (const auto& c : p.couplings) {
    h(c.row, c.col) = c.value;
    h(c.col, c.row) = c.value;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("simulate_full_pair: idle diagonalization failed");
  }
  DressedBasis basis;
  basis.vectors = solver.eigenvectors();
  basis.eig_of_bare.assign(p.size, -1);
  basis.overlap.assign(p.size, 0.0);
  std::vector<bool> bare_done(p.size, false), eig_done(p.size, false);
  for (int round = 0; round < p.size; ++round) {
    int best_b = -1, best_k = -1;
    double best = -1.0;
    for (int b = 0; b < p.size; ++b) {
      if (bare_done[b]) continue;
      for (int k = 0; k < p.size; ++k) {
        if (eig_done[k]) continue;
        const double w = basis.vectors(b, k) * basis.vectors(b, k);
        if (w > best) {
          best = w;
          best_b = b;
          best_k = k;
        }
      }
    }
    bare_done[best_b] = true;
    eig_done[best_k] = true;
    basis.eig_of_bare[best_b] = best_k;
    basis.overlap[best_b] = best;
  }
  return basis;
}

}  // namespace

double resonance_amplitude(const PairGateSetup& setup) {
  // |11> and |02> are degenerate when freq_g1 = freq_g2 + anh_g2; the pulsed
  // qubit must cover the remaining gap.
  const double gap = setup.g1.freq - setup.g2.freq - setup.g2.anh;
  return setup.pulse_g1 ? gap : -gap;
}

GateOutcome simulate_full_pair(const PairGateSetup& setup,
                               const PulseShape& pulse,
                               double spectator_delta_mhz,
                               const SimOptions& options) {
  if (setup.dims < 3) {
    throw ValidationError("simulate_full_pair: dims must be >= 3");
  }
  if (!(setup.j >= 0.0)) {
    throw ValidationError("simulate_full_pair: j must be >= 0 MHz");
  }
  if (!(pulse.duration > 0.0)) {
    throw ValidationError("simulate_full_pair: pulse duration must be > 0 ns");
  }

  // The pulse must actually tune |11> and |02> through resonance: the bare
  // gap is linear in the envelope, so checking the extremes suffices.
  const double gap_idle =
      setup.g1.freq - setup.g2.freq - setup.g2.anh + spectator_delta_mhz;
  const double excursion = setup.pulse_g1 ? -pulse.amplitude : pulse.amplitude;
  const double gap_plateau = gap_idle + excursion;
  const double j_eff = std::sqrt(2.0) * std::max(setup.j, 1e-9);
  if (setup.j > 0.0 && gap_idle * gap_plateau > 0.0 &&
      std::min(std::abs(gap_idle), std::abs(gap_plateau)) > 5.0 * j_eff) {
    throw NumericalError(
        "simulate_full_pair: pulse does not tune |11> and |02> through "
        "resonance");
  }

  const PairProblem p = make_pair_problem(setup, pulse, spectator_delta_mhz);
  const DressedBasis basis = dressed_basis(p);

  const double pad = 4.0 * pulse.sigma;
  const double t0 = -pad;
  const double t1 = pulse.duration + pad;
  double dt = choose_dt(p.fmax, t1 - t0, options.dt);
  const int steps = std::max(1, int(std::ceil((t1 - t0) / dt)));
  dt = (t1 - t0) / steps;
  const Envelope env(pulse, t0, 0.5 * dt, 2 * steps + 1);

  const cd mi(0.0, -kOmega);
  auto deriv = [&](int half, const std::vector<cd>& x, std::vector<cd>& out) {
    const double e = env.at_half_step(half);
    for (int i = 0; i < p.size; ++i) {
      out[i] = mi * ((p.diag_static[i] + e * p.diag_pulse[i]) * x[i]);
    }
    for (const auto& c : p.couplings) {
      out[c.row] += mi * (c.value * x[c.col]);
      out[c.col] += mi * (c.value * x[c.row]);
    }
  };

  const int dims = setup.dims;
  const int bare00 = 0;
  const int bare01 = 1;
  const int bare10 = dims;
  const int bare11 = dims + 1;
  const int bare02 = 2;

  GateOutcome outcome;
  double phases[4] = {0, 0, 0, 0};
  const int initials[4] = {bare00, bare01, bare10, bare11};
  Trajectory traj;
  if (options.trajectory_stride > 0) {
    for (int n1 = 0; n1 < dims; ++n1)
      for (int n2 = 0; n2 < dims; ++n2)
        traj.labels.push_back(std::to_string(n1) + std::to_string(n2));
  }

  for (int which = 0; which < 4; ++which) {
    const int bare = initials[which];
    std::vector<cd> psi(p.size, cd(0.0, 0.0));
    const int col = basis.eig_of_bare[bare];
    for (int i = 0; i < p.size; ++i) psi[i] = cd(basis.vectors(i, col), 0.0);
    // Fix the eigenvector's sign so the assigned bare component is positive;
    // the reference phase below is then well defined.
    if (basis.vectors(bare, col) < 0.0) {
      for (auto& a : psi) a = -a;
    }

    const bool record = options.trajectory_stride > 0 && bare == bare11;
    if (record) traj.samples.push_back({t0, psi});
    auto recorder = [&](int step, double) {
      if (record &&
          (step % options.trajectory_stride == 0 || step == steps)) {
        traj.samples.push_back({t0 + step * dt, psi});
      }
    };
    rk4_evolve(psi, steps, dt, deriv, recorder);
    double norm_err = 0.0;
    check_norm(norm_of(psi), &norm_err);
    outcome.norm_error = std::max(outcome.norm_error, norm_err);

    cd overlap(0.0, 0.0);
    for (int i = 0; i < p.size; ++i) {
      double v = basis.vectors(i, col);
      if (basis.vectors(bare, col) < 0.0) v = -v;
      overlap += v * psi[i];
    }
    phases[which] = std::arg(overlap);

    if (bare == bare11) {
      const int leak_col = basis.eig_of_bare[bare02];
      cd leak_amp(0.0, 0.0);
      for (int i = 0; i < p.size; ++i) {
        leak_amp += basis.vectors(i, leak_col) * psi[i];
      }
      outcome.pop_leakage = std::norm(leak_amp);
    }
  }

  const double phi_c_rad = phases[3] - phases[2] - phases[1] + phases[0];
  outcome.phi_c = wrap_deg_0_360(phi_c_rad * 180.0 / kPi);
  outcome.leak = 0.5 * outcome.pop_leakage;
  if (options.trajectory_stride > 0) outcome.trajectory = std::move(traj);
  return outcome;
}

PulseShape calibrate_pulse(const PairGateSetup& setup,
                           const CalibrationOptions& options) {
  if (!(setup.j > 0.0)) {
    throw NumericalError(
        "calibrate_pulse: no root exists without coupling (j = 0)");
  }
  const double duration0 = 1.0e3 / (2.0 * std::sqrt(2.0) * setup.j);

  auto within_spec = [&](const GateOutcome& o) {
    return std::abs(wrap_deg_pm180(o.phi_c - 180.0)) <= options.phase_tol_deg &&
           o.leak <= options.leak_tol;
  };

  if (options.seed != nullptr) {
    const GateOutcome o = simulate_full_pair(setup, *options.seed);
    if (within_spec(o)) return *options.seed;
  }

  const double a0 = resonance_amplitude(setup);
  const double kappa = 2.0 * std::sqrt(2.0) * setup.j;

  auto phase_miss = [&](double amplitude, double duration) {
    PulseShape pulse{amplitude, duration, options.sigma};
    const GateOutcome o = simulate_full_pair(setup, pulse);
    return wrap_deg_pm180(o.phi_c - 180.0);
  };
  auto leak_of = [&](double amplitude, double duration) {
    PulseShape pulse{amplitude, duration, options.sigma};
    return simulate_full_pair(setup, pulse).leak;
  };

  // 1-D root find on the amplitude at fixed duration: bisection with a
  // secant-accelerated midpoint.
  auto solve_amplitude = [&](double duration, double lo, double hi) {
    double flo = phase_miss(lo, duration);
    double fhi = phase_miss(hi, duration);
    if (flo * fhi > 0.0) {
      throw NumericalError(
          "calibrate_pulse: no conditional-phase root in the amplitude "
          "search box");
    }
    double a = 0.5 * (lo + hi);
    for (int iter = 0; iter < 30 && (hi - lo) > 1e-6; ++iter) {
      double mid = 0.5 * (lo + hi);
      if (std::abs(fhi - flo) > 1e-12) {
        const double sec = lo - flo * (hi - lo) / (fhi - flo);
        if (sec > lo + 0.05 * (hi - lo) && sec < hi - 0.05 * (hi - lo)) {
          mid = sec;
        }
      }
      const double fmid = phase_miss(mid, duration);
      a = mid;
      if (std::abs(fmid) < 0.02) break;
      if (flo * fmid <= 0.0) {
        hi = mid;
        fhi = fmid;
      } else {
        lo = mid;
        flo = fmid;
      }
    }
    return a;
  };

  const double half_box = 0.75 * kappa;
  double amplitude = solve_amplitude(duration0, a0 - half_box, a0 + half_box);

  // Duration refinement: minimize leakage along the duration axis, then
  // restore the phase root at the refined duration.
  double duration = duration0;
  double best_leak = leak_of(amplitude, duration);
  const double span = 0.12 * duration0;
  for (double step = span / 2.0; step > 0.002 * duration0; step *= 0.5) {
    for (const double cand : {duration - step, duration + step}) {
      if (cand <= 0.0) continue;
      const double l = leak_of(amplitude, cand);
      if (l < best_leak) {
        best_leak = l;
        duration = cand;
      }
    }
  }
  if (duration != duration0) {
    amplitude = solve_amplitude(duration, amplitude - 0.2 * kappa,
                                amplitude + 0.2 * kappa);
  }

  PulseShape pulse{amplitude, duration, options.sigma};
  const GateOutcome check = simulate_full_pair(setup, pulse);
  if (!within_spec(check)) {
    throw NumericalError(
        "calibrate_pulse: targets unattainable (phi_c miss " +
        std::to_string(wrap_deg_pm180(check.phi_c - 180.0)) + " deg, leak " +
        std::to_string(check.leak) + ")");
  }
  return pulse;
}

}  // namespace spectator
