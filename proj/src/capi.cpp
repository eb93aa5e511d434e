#include "spectator/spectator_c.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <vector>

#include "spectator/bench.hpp"
#include "spectator/device.hpp"
#include "spectator/dispersive.hpp"
#include "spectator/dynamics.hpp"
#include "spectator/errors.hpp"
#include "spectator/oracle.hpp"
#include "spectator/table.hpp"
#include "spectator/tomography.hpp"

using namespace spectator;

struct spx_device {
  DeviceTopology topology;
};

struct spx_table {
  ResultTable table;
};

namespace {

thread_local std::string g_last_error;

spx_status fail(spx_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

// Exceptions map onto status codes at the API boundary.
template <typename Fn>
spx_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const ValidationError& e) {
    return fail(SPX_ERR_VALIDATION, e.what());
  } catch (const NumericalError& e) {
    return fail(SPX_ERR_NUMERIC, e.what());
  } catch (const IoError& e) {
    return fail(SPX_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(SPX_ERR_NUMERIC, "out of memory");
  } catch (const std::exception& e) {
    return fail(SPX_ERR_NUMERIC, e.what());
  }
}

spx_status require(bool ok, const char* message) {
  return ok ? SPX_OK : fail(SPX_ERR_USAGE, message);
}

spx_shift_triple to_c(const ShiftTriple& t) {
  spx_shift_triple out;
  out.zeta1_mhz = t.zeta1;
  out.zeta2_mhz = t.zeta2;
  out.zeta12_mhz = t.zeta12;
  out.zeta1_diverged = t.zeta1_diverged ? 1 : 0;
  out.zeta2_diverged = t.zeta2_diverged ? 1 : 0;
  return out;
}

spx_gate_outcome to_c(const GateOutcome& o) {
  spx_gate_outcome out;
  out.phi_c_deg = o.phi_c;
  out.leak = o.leak;
  out.pop_leakage = o.pop_leakage;
  out.norm_error = o.norm_error;
  return out;
}

TransmonSpec to_spec(const spx_pair_qubit& q, const char* id) {
  TransmonSpec s;
  s.id = id;
  s.freq = q.freq_mhz;
  s.anh = q.anh_mhz;
  s.beta = q.beta_mhz;
  return s;
}

PulseShape to_pulse(const spx_pulse& p) {
  return PulseShape{p.amplitude_mhz, p.duration_ns, p.sigma_ns};
}

GateContext to_context(const spx_device* device, const spx_gate_context* ctx) {
  if (ctx == nullptr || ctx->g1 == nullptr || ctx->g2 == nullptr) {
    throw ValidationError("gate context: g1 and g2 are required");
  }
  std::vector<std::string> spectators;
  for (int i = 0; i < ctx->n_spectators; ++i) {
    if (ctx->spectator_ids == nullptr || ctx->spectator_ids[i] == nullptr) {
      throw ValidationError("gate context: null spectator id");
    }
    spectators.emplace_back(ctx->spectator_ids[i]);
  }
  const double t_g = ctx->t_g_ns > 0.0 ? ctx->t_g_ns : 80.0;
  const double t_b = ctx->t_b_ns >= 0.0 ? ctx->t_b_ns : 5.0;
  const double t_s = ctx->t_s_ns >= 0.0 ? ctx->t_s_ns : 53.0;
  return make_gate_context(device->topology, ctx->g1, ctx->g2, spectators,
                           t_g, t_b, t_s, ctx->j_mhz > 0.0 ? ctx->j_mhz : 0.0);
}

Trajectory empty_trajectory() { return Trajectory{}; }

spx_table* table_from_trajectory(const Trajectory& traj) {
  auto* handle = new spx_table;
  ResultTable& t = handle->table;
  const int ct = t.add_column("t_ns");
  std::vector<int> re_cols, im_cols;
  for (const auto& label : traj.labels) {
    re_cols.push_back(t.add_column("re_" + label));
    im_cols.push_back(t.add_column("im_" + label));
  }
  for (const auto& sample : traj.samples) {
    const int row = t.add_row();
    t.set(row, ct, sample.t);
    for (std::size_t i = 0; i < sample.amplitudes.size(); ++i) {
      t.set(row, re_cols[i], sample.amplitudes[i].real());
      t.set(row, im_cols[i], sample.amplitudes[i].imag());
    }
  }
  return handle;
}

}  // namespace

extern "C" {

const char* spx_status_name(spx_status status) {
  switch (status) {
    case SPX_OK: return "ok";
    case SPX_ERR_USAGE: return "usage error";
    case SPX_ERR_VALIDATION: return "validation error";
    case SPX_ERR_NUMERIC: return "numerical failure";
    case SPX_ERR_IO: return "io error";
  }
  return "unknown";
}

const char* spx_last_error(void) { return g_last_error.c_str(); }

spx_status spx_device_load(const char* path, spx_device** out) {
  if (spx_status s = require(path && out, "spx_device_load: null argument");
      s != SPX_OK)
    return s;
  return guarded([&] {
    auto handle = new spx_device{load_device(path)};
    *out = handle;
    return SPX_OK;
  });
}

spx_status spx_device_parse(const char* json_text, spx_device** out) {
  if (spx_status s = require(json_text && out, "spx_device_parse: null argument");
      s != SPX_OK)
    return s;
  return guarded([&] {
    auto handle = new spx_device{parse_device(json_text)};
    *out = handle;
    return SPX_OK;
  });
}

void spx_device_free(spx_device* device) { delete device; }

spx_status spx_device_to_json(const spx_device* device, char** out_text) {
  if (spx_status s =
          require(device && out_text, "spx_device_to_json: null argument");
      s != SPX_OK)
    return s;
  return guarded([&] {
    const std::string text = device_to_json(device->topology);
    char* buf = static_cast<char*>(std::malloc(text.size() + 1));
    if (buf == nullptr) return fail(SPX_ERR_NUMERIC, "out of memory");
    std::memcpy(buf, text.c_str(), text.size() + 1);
    *out_text = buf;
    return SPX_OK;
  });
}

void spx_string_free(char* text) { std::free(text); }

int spx_device_qubit_count(const spx_device* device) {
  return device ? static_cast<int>(device->topology.qubits.size()) : 0;
}

const char* spx_device_qubit_id(const spx_device* device, int index) {
  if (device == nullptr || index < 0 ||
      index >= static_cast<int>(device->topology.qubits.size())) {
    return nullptr;
  }
  return device->topology.qubits[static_cast<std::size_t>(index)].id.c_str();
}

spx_status spx_device_qubit_params(const spx_device* device, const char* id,
                                   double* freq_mhz, double* anh_mhz,
                                   double* beta_mhz) {
  if (spx_status s =
          require(device && id, "spx_device_qubit_params: null argument");
      s != SPX_OK)
    return s;
  return guarded([&] {
    const TransmonSpec& q = device->topology.qubit(id);
    if (freq_mhz) *freq_mhz = q.freq;
    if (anh_mhz) *anh_mhz = q.anh;
    if (beta_mhz) *beta_mhz = q.beta;
    return SPX_OK;
  });
}

spx_status spx_device_coupling_j(const spx_device* device, const char* a,
                                 const char* b, double* j_mhz) {
  if (spx_status s = require(device && a && b && j_mhz,
                             "spx_device_coupling_j: null argument");
      s != SPX_OK)
    return s;
  return guarded([&] {
    const auto j = device->topology.coupling_j(a, b);
    if (!j) {
      return fail(SPX_ERR_VALIDATION,
                  std::string("no coupling between '") + a + "' and '" + b +
                      "'");
    }
    *j_mhz = *j;
    return SPX_OK;
  });
}

spx_status spx_gate_duration_from_j(double j_mhz, double* t_ns) {
  if (spx_status s = require(t_ns, "spx_gate_duration_from_j: null output");
      s != SPX_OK)
    return s;
  return guarded([&] {
    *t_ns = gate_duration_from_j(j_mhz);
    return SPX_OK;
  });
}

spx_status spx_shifts(double freq_g, double anh_g, double beta_g,
                      double freq_s, double anh_s, double beta_s,
                      double j_mhz, double pole_eps_mhz,
                      spx_shift_triple* out) {
  if (spx_status s = require(out, "spx_shifts: null output"); s != SPX_OK)
    return s;
  return guarded([&] {
    const TransmonSpec g{"G", freq_g, anh_g, beta_g};
    const TransmonSpec sp{"S", freq_s, anh_s, beta_s};
    *out = to_c(shifts(g, sp, j_mhz,
                       pole_eps_mhz >= 0.0 ? pole_eps_mhz : kDefaultPoleEps));
    return SPX_OK;
  });
}

spx_status spx_shifts_device(const spx_device* device, const char* gate_id,
                             const char* spectator_id, double pole_eps_mhz,
                             spx_shift_triple* out) {
  if (spx_status s = require(device && gate_id && spectator_id && out,
                             "spx_shifts_device: null argument");
      s != SPX_OK)
    return s;
  return guarded([&] {
    const TransmonSpec& g = device->topology.qubit(gate_id);
    const TransmonSpec& sp = device->topology.qubit(spectator_id);
    const auto j = device->topology.coupling_j(gate_id, spectator_id);
    if (!j) {
      return fail(SPX_ERR_VALIDATION,
                  std::string("no coupling between '") + gate_id + "' and '" +
                      spectator_id + "'");
    }
    *out = to_c(shifts(g, sp, *j,
                       pole_eps_mhz >= 0.0 ? pole_eps_mhz : kDefaultPoleEps));
    return SPX_OK;
  });
}

spx_status spx_exact_shifts(double freq_g, double anh_g, double beta_g,
                            double freq_s, double anh_s, double beta_s,
                            double j_mhz, int dims,
                            spx_exact_shifts_result* out) {
  if (spx_status s = require(out, "spx_exact_shifts: null output"); s != SPX_OK)
    return s;
  return guarded([&] {
    const TransmonSpec g{"G", freq_g, anh_g, beta_g};
    const TransmonSpec sp{"S", freq_s, anh_s, beta_s};
    const ExactShifts ex =
        exact_shifts(build_pair_hamiltonian(g, sp, j_mhz, dims > 0 ? dims : 4));
    out->triple = to_c(ex.triple);
    out->hybridized = ex.hybridized ? 1 : 0;
    out->min_overlap = ex.min_overlap;
    return SPX_OK;
  });
}

spx_status spx_transmon_beta(double freq_mhz, double anh_mhz,
                             double* beta_mhz) {
  if (spx_status s = require(beta_mhz, "spx_transmon_beta: null output");
      s != SPX_OK)
    return s;
  return guarded([&] {
    *beta_mhz = transmon_beta(freq_mhz, anh_mhz);
    return SPX_OK;
  });
}

spx_status spx_conditional_phase_error(double delta_mhz, double j_mhz,
                                       double* deg) {
  if (spx_status s = require(deg, "spx_conditional_phase_error: null output");
      s != SPX_OK)
    return s;
  return guarded([&] {
    *deg = conditional_phase_error(delta_mhz, j_mhz);
    return SPX_OK;
  });
}

spx_status spx_conditional_phase_from_duration(double delta_mhz,
                                               double t_g_ns, double* deg) {
  if (spx_status s =
          require(deg, "spx_conditional_phase_from_duration: null output");
      s != SPX_OK)
    return s;
  *deg = conditional_phase_error_from_duration(delta_mhz, t_g_ns);
  return SPX_OK;
}

spx_status spx_leakage_error(double delta_mhz, double j_mhz, double* leak) {
  if (spx_status s = require(leak, "spx_leakage_error: null output");
      s != SPX_OK)
    return s;
  return guarded([&] {
    *leak = leakage_error(delta_mhz, j_mhz);
    return SPX_OK;
  });
}

spx_status spx_dynamical_phase_error(double zeta1_tot_mhz, double t_g_ns,
                                     double t_b_ns, double t_s_ns,
                                     double* deg) {
  if (spx_status s = require(deg, "spx_dynamical_phase_error: null output");
      s != SPX_OK)
    return s;
  return guarded([&] {
    GateContext ctx;
    ctx.g1 = "G1";
    ctx.g2 = "G2";
    ctx.t_g = t_g_ns;
    ctx.t_b = t_b_ns;
    ctx.t_s = t_s_ns;
    *deg = dynamical_phase_error(zeta1_tot_mhz, ctx);
    return SPX_OK;
  });
}

spx_status spx_spectator_phase_error(spx_spectator_case variant,
                                     double zeta1_mhz, double zeta2_mhz,
                                     double zeta1_idle_mhz, double t_g_ns,
                                     double t_b_ns, double t_s_ns,
                                     double* deg) {
  if (spx_status s = require(deg, "spx_spectator_phase_error: null output");
      s != SPX_OK)
    return s;
  return guarded([&] {
    SpectatorPhaseCase c;
    switch (variant) {
      case SPX_SPECTATOR_COMPUTATIONAL_DISTANT0:
        c = SpectatorPhaseCase::kComputationalDistant0;
        break;
      case SPX_SPECTATOR_COMPUTATIONAL_DISTANT1:
        c = SpectatorPhaseCase::kComputationalDistant1;
        break;
      case SPX_SPECTATOR_LEAKAGE_DISTANT0:
        c = SpectatorPhaseCase::kLeakageDistant0;
        break;
      case SPX_SPECTATOR_LEAKAGE_DISTANT1:
        c = SpectatorPhaseCase::kLeakageDistant1;
        break;
      default:
        return fail(SPX_ERR_USAGE, "spx_spectator_phase_error: unknown variant");
    }
    GateContext ctx;
    ctx.g1 = "G1";
    ctx.g2 = "G2";
    ctx.t_g = t_g_ns;
    ctx.t_b = t_b_ns;
    ctx.t_s = t_s_ns;
    *deg = spectator_phase_error(c, zeta1_mhz, zeta2_mhz, zeta1_idle_mhz, ctx);
    return SPX_OK;
  });
}

spx_status spx_zeta1_total(const double* zeta1_mhz, const int* bits, int n,
                           double* out_mhz) {
  if (spx_status s = require(out_mhz && (n == 0 || (zeta1_mhz && bits)),
                             "spx_zeta1_total: null argument");
      s != SPX_OK)
    return s;
  return guarded([&] {
    std::vector<std::pair<double, int>> entries;
    entries.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) entries.emplace_back(zeta1_mhz[i], bits[i]);
    *out_mhz = zeta1_total(entries);
    return SPX_OK;
  });
}

spx_status spx_simulate_two_level(double j_eff_mhz, double delta_mhz,
                                  spx_pulse pulse, spx_gate_outcome* out) {
  if (spx_status s = require(out, "spx_simulate_two_level: null output");
      s != SPX_OK)
    return s;
  return guarded([&] {
    TwoLevelGateProblem problem{j_eff_mhz, delta_mhz, to_pulse(pulse)};
    *out = to_c(simulate_two_level(problem));
    return SPX_OK;
  });
}

spx_status spx_simulate_two_level_traj(double j_eff_mhz, double delta_mhz,
                                       spx_pulse pulse, int stride,
                                       spx_gate_outcome* out,
                                       spx_table** trajectory) {
  if (spx_status s = require(out && trajectory && stride > 0,
                             "spx_simulate_two_level_traj: bad argument");
      s != SPX_OK)
    return s;
  return guarded([&] {
    TwoLevelGateProblem problem{j_eff_mhz, delta_mhz, to_pulse(pulse)};
    SimOptions options;
    options.trajectory_stride = stride;
    const GateOutcome o = simulate_two_level(problem, options);
    *out = to_c(o);
    *trajectory =
        table_from_trajectory(o.trajectory ? *o.trajectory : empty_trajectory());
    return SPX_OK;
  });
}

spx_status spx_simulate_full_pair(spx_pair_qubit g1, spx_pair_qubit g2,
                                  double j_mhz, spx_pulse pulse,
                                  double spectator_delta_mhz, int dims,
                                  spx_gate_outcome* out) {
  if (spx_status s = require(out, "spx_simulate_full_pair: null output");
      s != SPX_OK)
    return s;
  return guarded([&] {
    PairGateSetup setup{to_spec(g1, "G1"), to_spec(g2, "G2"), j_mhz,
                        dims > 0 ? dims : 4, false};
    *out = to_c(simulate_full_pair(setup, to_pulse(pulse), spectator_delta_mhz));
    return SPX_OK;
  });
}

spx_status spx_calibrate_pulse(spx_pair_qubit g1, spx_pair_qubit g2,
                               double j_mhz, double sigma_ns, int dims,
                               spx_pulse* out) {
  if (spx_status s = require(out, "spx_calibrate_pulse: null output");
      s != SPX_OK)
    return s;
  return guarded([&] {
    PairGateSetup setup{to_spec(g1, "G1"), to_spec(g2, "G2"), j_mhz,
                        dims > 0 ? dims : 4, false};
    CalibrationOptions options;
    options.sigma = sigma_ns;
    const PulseShape pulse = calibrate_pulse(setup, options);
    out->amplitude_mhz = pulse.amplitude;
    out->duration_ns = pulse.duration;
    out->sigma_ns = pulse.sigma;
    return SPX_OK;
  });
}

spx_status spx_cz_error_unitary(double d1_deg, double d2_deg, double dc_deg,
                                double* out_re, double* out_im) {
  if (spx_status s =
          require(out_re && out_im, "spx_cz_error_unitary: null output");
      s != SPX_OK)
    return s;
  const GateUnitary u = cz_error_unitary(d1_deg, d2_deg, dc_deg);
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      out_re[4 * r + c] = u(r, c).real();
      out_im[4 * r + c] = u(r, c).imag();
    }
  }
  return SPX_OK;
}

spx_status spx_process_error(double d1_deg, double d2_deg, double dc_deg,
                             double* eps) {
  if (spx_status s = require(eps, "spx_process_error: null output");
      s != SPX_OK)
    return s;
  return guarded([&] {
    *eps = process_error(d1_deg, d2_deg, dc_deg);
    return SPX_OK;
  });
}

spx_status spx_process_error_quadratic(double d1_deg, double d2_deg,
                                       double dc_deg, double* eps) {
  if (spx_status s = require(eps, "spx_process_error_quadratic: null output");
      s != SPX_OK)
    return s;
  *eps = process_error_quadratic(d1_deg, d2_deg, dc_deg);
  return SPX_OK;
}

spx_status spx_repeated_gate_error_scaling(int n, double d1_deg,
                                           double d2_deg, double dc_deg,
                                           double* eps_n, double* ratio) {
  if (spx_status s = require(eps_n && ratio,
                             "spx_repeated_gate_error_scaling: null output");
      s != SPX_OK)
    return s;
  return guarded([&] {
    const RepeatedGateScaling r =
        repeated_gate_error_scaling(n, d1_deg, d2_deg, dc_deg);
    *eps_n = r.eps_n;
    *ratio = r.ratio;
    return SPX_OK;
  });
}

int spx_table_rows(const spx_table* table) {
  return table ? table->table.rows() : 0;
}

int spx_table_cols(const spx_table* table) {
  return table ? table->table.cols() : 0;
}

const char* spx_table_col_name(const spx_table* table, int col) {
  if (table == nullptr || col < 0 || col >= table->table.cols()) return nullptr;
  return table->table.column_name(col).c_str();
}

int spx_table_cell(const spx_table* table, int row, int col, double* value) {
  if (table == nullptr || row < 0 || row >= table->table.rows() || col < 0 ||
      col >= table->table.cols()) {
    return 0;
  }
  const auto v = table->table.number(row, col);
  if (!v) return 0;
  if (value) *value = *v;
  return 1;
}

const char* spx_table_cell_text(const spx_table* table, int row, int col) {
  if (table == nullptr || row < 0 || row >= table->table.rows() || col < 0 ||
      col >= table->table.cols()) {
    return nullptr;
  }
  const std::string* s = table->table.text(row, col);
  return s ? s->c_str() : nullptr;
}

int spx_table_cell_flag(const spx_table* table, int row, int col) {
  if (table == nullptr || row < 0 || row >= table->table.rows() || col < 0 ||
      col >= table->table.cols()) {
    return -1;
  }
  const auto f = table->table.flag(row, col);
  if (!f) return -1;
  return *f ? 1 : 0;
}

void spx_table_free(spx_table* table) { delete table; }

spx_status spx_table_write_csv(const spx_table* table, const char* path) {
  if (spx_status s =
          require(table && path, "spx_table_write_csv: null argument");
      s != SPX_OK)
    return s;
  return guarded([&] {
    table->table.write_csv(std::filesystem::path(path));
    return SPX_OK;
  });
}

spx_status spx_table_write_svg(const spx_table* table, const char* path,
                               const char* title, int x_col,
                               const int* y_cols, int n_y) {
  if (spx_status s = require(table && path && y_cols && n_y > 0,
                             "spx_table_write_svg: null argument");
      s != SPX_OK)
    return s;
  return guarded([&] {
    SvgChartSpec spec;
    spec.title = title ? title : "";
    spec.x_col = x_col;
    for (int i = 0; i < n_y; ++i) spec.series.push_back({y_cols[i], ""});
    write_svg_chart(table->table, spec, path);
    return SPX_OK;
  });
}

spx_status spx_run_sweep(const spx_device* device,
                         const spx_gate_context* ctx, spx_sweep_param param,
                         const char* swept_spectator, double start,
                         double stop, int points, double pole_eps_mhz,
                         spx_table** out) {
  if (spx_status s =
          require(device && ctx && out, "spx_run_sweep: null argument");
      s != SPX_OK)
    return s;
  return guarded([&] {
    SweepSpec spec;
    switch (param) {
      case SPX_SWEEP_SPECTATOR_DETUNING:
        spec.parameter = SweepParameter::kSpectatorDetuning;
        break;
      case SPX_SWEEP_GATE_DELTA:
        spec.parameter = SweepParameter::kGateDelta;
        break;
      case SPX_SWEEP_ZETA1_TOT:
        spec.parameter = SweepParameter::kZeta1Tot;
        break;
      default:
        return fail(SPX_ERR_USAGE, "spx_run_sweep: unknown parameter");
    }
    spec.start = start;
    spec.stop = stop;
    spec.points = points;
    spec.spectator = swept_spectator ? swept_spectator : "";
    spec.pole_eps = pole_eps_mhz >= 0.0 ? pole_eps_mhz : kDefaultPoleEps;
    auto handle = new spx_table{
        run_sweep(device->topology, to_context(device, ctx), spec)};
    *out = handle;
    return SPX_OK;
  });
}

spx_status spx_run_budget(const spx_device* device,
                          const spx_gate_context* ctx, double pole_eps_mhz,
                          spx_table** out) {
  if (spx_status s =
          require(device && ctx && out, "spx_run_budget: null argument");
      s != SPX_OK)
    return s;
  return guarded([&] {
    const GateContext context = to_context(device, ctx);
    const auto rows =
        run_budget(device->topology, context,
                   pole_eps_mhz >= 0.0 ? pole_eps_mhz : kDefaultPoleEps);
    auto handle = new spx_table{budget_table(context, rows)};
    *out = handle;
    return SPX_OK;
  });
}

spx_status spx_synthesize_ramsey(double phi_c_deg, double contrast,
                                 long shots, uint64_t seed, int phase_points,
                                 spx_table** fringes, double* fitted_diff_deg,
                                 double* fitted_sigma_deg) {
  if (spx_status s = require(fringes, "spx_synthesize_ramsey: null output");
      s != SPX_OK)
    return s;
  return guarded([&] {
    RamseyResult result = synthesize_ramsey(
        phi_c_deg, contrast, shots, seed, phase_points > 0 ? phase_points : 41);
    if (fitted_diff_deg) *fitted_diff_deg = result.fitted_diff_deg;
    if (fitted_sigma_deg) *fitted_sigma_deg = result.fitted_sigma_deg;
    auto handle = new spx_table{std::move(result.fringes)};
    *fringes = handle;
    return SPX_OK;
  });
}

spx_status spx_reproduce_figure(const char* name, const spx_device* device,
                                const char* out_dir, int write_csv,
                                int write_svg) {
  if (spx_status s = require(name && device && out_dir,
                             "spx_reproduce_figure: null argument");
      s != SPX_OK)
    return s;
  return guarded([&] {
    FigureOptions options;
    options.out_dir = out_dir;
    options.csv = write_csv != 0;
    options.svg = write_svg != 0;
    reproduce_figure(name, device->topology, options);
    return SPX_OK;
  });
}

}  // extern "C"
