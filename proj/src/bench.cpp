#include "spectator/bench.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <numeric>
#include <random>
#include <thread>

#include "spectator/errors.hpp"
#include "spectator/tomography.hpp"

namespace spectator {

namespace detail {

void parallel_for(int n, const std::function<void(int)>& fn) {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const int workers = std::min<int>({int(hw), n, 8});
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&]() {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace detail

namespace {

constexpr double kPi = 3.14159265358979323846;

double leak_bound(double j_mhz) { return 0.5 * 2.0 * std::sqrt(2.0) * j_mhz; }

struct SweepRow {
  double x = 0.0;
  std::optional<double> zeta1, zeta2, zeta12, delta, d_phi_c, d_leak, d_phi_d;
  bool diverged = false;
};

// Resolves which gate qubit a spectator role attaches to.
const std::string& gate_of_role(const GateContext& ctx, SpectatorRole role) {
  return role == SpectatorRole::kComputational ? ctx.g1 : ctx.g2;
}

double require_pair_coupling(const DeviceTopology& device,
                             const std::string& spectator,
                             const std::string& gate) {
  const auto j = device.coupling_j(spectator, gate);
  if (!j) {
    throw ValidationError("no coupling between spectator '" + spectator +
                          "' and gate qubit '" + gate + "' in the device");
  }
  return *j;
}

}  // namespace

ResultTable run_sweep(const DeviceTopology& device, const GateContext& ctx,
                      const SweepSpec& spec) {
  validate_gate_context(ctx);
  if (spec.points < 2) throw ValidationError("sweep: points must be >= 2");
  if (spec.start == spec.stop) {
    throw ValidationError("sweep: start and stop must differ");
  }

  // Per-parameter fixed data resolved up front.
  const TransmonSpec* gate_q = nullptr;
  TransmonSpec spectator_template;
  SpectatorRole role = SpectatorRole::kComputational;
  double j_pair = 0.0;
  if (spec.parameter == SweepParameter::kSpectatorDetuning) {
    auto it = std::find_if(
        ctx.spectators.begin(), ctx.spectators.end(),
        [&](const auto& s) { return s.first == spec.spectator; });
    if (it == ctx.spectators.end()) {
      throw ValidationError("sweep: spectator '" + spec.spectator +
                            "' is not part of the gate context");
    }
    role = it->second;
    gate_q = &device.qubit(gate_of_role(ctx, role));
    spectator_template = device.qubit(spec.spectator);
    j_pair = require_pair_coupling(device, spec.spectator, gate_q->id);
  }

  std::vector<SweepRow> rows(spec.points);
  const double step = (spec.stop - spec.start) / (spec.points - 1);

  detail::parallel_for(spec.points, [&](int i) {
    SweepRow& row = rows[static_cast<std::size_t>(i)];
    row.x = spec.start + step * i;
    switch (spec.parameter) {
      case SweepParameter::kSpectatorDetuning: {
        TransmonSpec s = spectator_template;
        s.freq = gate_q->freq + row.x;
        const ShiftTriple t = shifts(*gate_q, s, j_pair, spec.pole_eps);
        if (!t.zeta1_diverged) row.zeta1 = t.zeta1;
        if (!t.zeta2_diverged) row.zeta2 = t.zeta2;
        if (!t.zeta12_diverged()) row.zeta12 = t.zeta12;
        const bool delta_bad = role == SpectatorRole::kComputational
                                   ? t.zeta1_diverged
                                   : t.zeta12_diverged();
        row.diverged = delta_bad;
        if (!delta_bad) {
          const double delta = role == SpectatorRole::kComputational
                                   ? t.zeta1
                                   : -t.zeta12;
          row.delta = delta;
          row.d_phi_c = conditional_phase_error(delta, ctx.j);
          if (std::abs(delta) <= leak_bound(ctx.j)) {
            row.d_leak = leakage_error(delta, ctx.j);
          }
        }
        if (!t.zeta1_diverged) {
          row.d_phi_d = dynamical_phase_error(t.zeta1, ctx);
        }
        break;
      }
      case SweepParameter::kGateDelta: {
        row.delta = row.x;
        row.d_phi_c = conditional_phase_error(row.x, ctx.j);
        if (std::abs(row.x) <= leak_bound(ctx.j)) {
          row.d_leak = leakage_error(row.x, ctx.j);
        }
        break;
      }
      case SweepParameter::kZeta1Tot: {
        row.zeta1 = row.x;
        row.delta = row.x;
        row.d_phi_c = conditional_phase_error_from_duration(row.x, ctx.t_g);
        row.d_phi_d = dynamical_phase_error(row.x, ctx);
        if (std::abs(row.x) <= leak_bound(ctx.j)) {
          row.d_leak = leakage_error(row.x, ctx.j);
        }
        break;
      }
    }
  });

  std::sort(rows.begin(), rows.end(),
            [](const SweepRow& a, const SweepRow& b) { return a.x < b.x; });
  if (std::all_of(rows.begin(), rows.end(),
                  [](const SweepRow& r) { return r.diverged; })) {
    throw NumericalError("sweep: every point diverged");
  }

  const char* x_name = "x_mhz";
  switch (spec.parameter) {
    case SweepParameter::kSpectatorDetuning: x_name = "delta_spectator_mhz"; break;
    case SweepParameter::kGateDelta: x_name = "delta_mhz"; break;
    case SweepParameter::kZeta1Tot: x_name = "zeta1_tot_mhz"; break;
  }

  ResultTable table;
  const int cx = table.add_column(x_name);
  const int c1 = table.add_column("zeta1_mhz");
  const int c2 = table.add_column("zeta2_mhz");
  const int c12 = table.add_column("zeta12_mhz");
  const int cd = table.add_column("delta_11_02_mhz");
  const int cpc = table.add_column("d_phi_c_deg");
  const int cl = table.add_column("d_leak");
  const int cpd = table.add_column("d_phi_d_deg");
  const int cf = table.add_column("diverged", ResultTable::ColumnKind::kFlag);
  for (const SweepRow& r : rows) {
    const int row = table.add_row();
    table.set(row, cx, r.x);
    if (r.zeta1) table.set(row, c1, *r.zeta1);
    if (r.zeta2) table.set(row, c2, *r.zeta2);
    if (r.zeta12) table.set(row, c12, *r.zeta12);
    if (r.delta) table.set(row, cd, *r.delta);
    if (r.d_phi_c) table.set(row, cpc, *r.d_phi_c);
    if (r.d_leak) table.set(row, cl, *r.d_leak);
    if (r.d_phi_d) table.set(row, cpd, *r.d_phi_d);
    table.set_flag(row, cf, r.diverged);
  }
  return table;
}

std::vector<BudgetRow> run_budget(const DeviceTopology& device,
                                  const GateContext& ctx, double pole_eps) {
  validate_gate_context(ctx);
  const int k = static_cast<int>(ctx.spectators.size());
  if (k > 12) {
    throw ValidationError(
        "budget: more than 12 spectators would enumerate over 4096 "
        "configurations");
  }

  struct PerSpectator {
    SpectatorShift shift;
    double d_phi_s = 0.0;
  };
  std::vector<PerSpectator> per(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    const auto& [label, role] = ctx.spectators[static_cast<std::size_t>(i)];
    const TransmonSpec& gate_q = device.qubit(gate_of_role(ctx, role));
    const TransmonSpec& spec_q = device.qubit(label);
    const double j_pair = require_pair_coupling(device, label, gate_q.id);
    const ShiftTriple t = shifts(gate_q, spec_q, j_pair, pole_eps);
    per[static_cast<std::size_t>(i)].shift = {label, role, t};
    // Mutual phase error on the spectator, distant gate qubit in |0>;
    // idle and gate-operation shifts are taken equal at device parameters.
    per[static_cast<std::size_t>(i)].d_phi_s =
        t.any_diverged()
            ? 0.0
            : spectator_phase_error(role == SpectatorRole::kComputational
                                        ? SpectatorPhaseCase::kComputationalDistant0
                                        : SpectatorPhaseCase::kLeakageDistant0,
                                    t.zeta1, t.zeta2, t.zeta1, ctx);
  }

  const int n_rows = 1 << k;
  std::vector<BudgetRow> rows(static_cast<std::size_t>(n_rows));
  detail::parallel_for(n_rows, [&](int index) {
    BudgetRow& out = rows[static_cast<std::size_t>(index)];
    out.bits.resize(static_cast<std::size_t>(k));
    SpectatorConfig config;
    std::vector<SpectatorShift> shift_list;
    shift_list.reserve(static_cast<std::size_t>(k));
    double z_g1 = 0.0, z_g2 = 0.0;
    bool diverged = false;
    for (int i = 0; i < k; ++i) {
      const int bit = (index >> (k - 1 - i)) & 1;  // first spectator = MSB
      out.bits[static_cast<std::size_t>(i)] = bit;
      const auto& s = per[static_cast<std::size_t>(i)].shift;
      config.bits[s.label] = bit;
      shift_list.push_back(s);
      if (bit == 1) {
        diverged = diverged || s.shift.zeta1_diverged;
        if (s.role == SpectatorRole::kComputational) {
          z_g1 += s.shift.zeta1;
        } else {
          z_g2 += s.shift.zeta1;
        }
      }
    }
    const Detuning delta = gate_detuning(shift_list, config);
    PhaseErrorReport& rep = out.report;
    rep.zeta1_tot = z_g1 + z_g2;
    rep.diverged = diverged || delta.diverged;
    rep.d_phi_c = conditional_phase_error_from_duration(delta.mhz, ctx.t_g);
    rep.d_phi_d1 = dynamical_phase_error(z_g1, ctx);
    rep.d_phi_d2 = dynamical_phase_error(z_g2, ctx);
    rep.d_leak = std::abs(delta.mhz) <= leak_bound(ctx.j)
                     ? leakage_error(delta.mhz, ctx.j)
                     : 0.0;
    for (int i = 0; i < k; ++i) {
      rep.d_phi_s.push_back(per[static_cast<std::size_t>(i)].d_phi_s);
    }
    out.eps_cz = process_error(rep.d_phi_d1, rep.d_phi_d2, rep.d_phi_c);
  });
  return rows;
}

ResultTable budget_table(const GateContext& ctx,
                         const std::vector<BudgetRow>& rows) {
  ResultTable table;
  const int cc = table.add_column("config", ResultTable::ColumnKind::kText);
  const int ci = table.add_column("config_index");
  const int cz = table.add_column("zeta1_tot_mhz");
  const int cpc = table.add_column("d_phi_c_deg");
  const int cd1 = table.add_column("d_phi_d1_deg");
  const int cd2 = table.add_column("d_phi_d2_deg");
  const int ce = table.add_column("eps_cz");
  const int cl = table.add_column("d_leak");
  std::vector<int> cs;
  for (const auto& [label, role] : ctx.spectators) {
    (void)role;
    cs.push_back(table.add_column("d_phi_s_" + label + "_deg"));
  }
  const int cf = table.add_column("diverged", ResultTable::ColumnKind::kFlag);

  for (std::size_t r = 0; r < rows.size(); ++r) {
    const BudgetRow& b = rows[r];
    const int row = table.add_row();
    std::string bits;
    for (int bit : b.bits) bits += bit ? '1' : '0';
    table.set_text(row, cc, bits);
    table.set(row, ci, double(r));
    table.set_flag(row, cf, b.report.diverged);
    if (b.report.diverged) continue;
    table.set(row, cz, b.report.zeta1_tot);
    table.set(row, cpc, b.report.d_phi_c);
    table.set(row, cd1, b.report.d_phi_d1);
    table.set(row, cd2, b.report.d_phi_d2);
    table.set(row, ce, b.eps_cz);
    table.set(row, cl, b.report.d_leak);
    for (std::size_t i = 0; i < cs.size(); ++i) {
      table.set(row, cs[i], b.report.d_phi_s[i]);
    }
  }
  return table;
}

namespace {

// Uniform in [0, 1) with fully pinned bit usage so noise realizations are
// reproducible across standard libraries.
double next_uniform(std::mt19937_64& rng) {
  return double(rng() >> 11) * 0x1.0p-53;
}

long binomial_draw(std::mt19937_64& rng, long shots, double p) {
  long k = 0;
  for (long s = 0; s < shots; ++s) {
    if (next_uniform(rng) < p) ++k;
  }
  return k;
}

struct FringeFit {
  double phase_rad = 0.0;
  double var_rad2 = 0.0;
};

FringeFit fit_fringe(const std::vector<double>& phase_rad,
                     const std::vector<double>& value) {
  const std::size_t m = phase_rad.size();
  Eigen::Matrix3d ata = Eigen::Matrix3d::Zero();
  Eigen::Vector3d aty = Eigen::Vector3d::Zero();
  for (std::size_t i = 0; i < m; ++i) {
    const Eigen::Vector3d row(1.0, std::cos(phase_rad[i]),
                              std::sin(phase_rad[i]));
    ata += row * row.transpose();
    aty += row * value[i];
  }
  const Eigen::Vector3d beta = ata.ldlt().solve(aty);
  const double a = beta(1), c = beta(2);
  const double r2 = a * a + c * c;
  if (!(r2 > 1e-16)) {
    throw NumericalError("ramsey fit failure: degenerate fringe data");
  }
  double ssr = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double model =
        beta(0) + a * std::cos(phase_rad[i]) + c * std::sin(phase_rad[i]);
    ssr += (value[i] - model) * (value[i] - model);
  }
  FringeFit fit;
  fit.phase_rad = std::atan2(-c, a);
  const double sigma2 = m > 3 ? ssr / double(m - 3) : 0.0;
  fit.var_rad2 = 2.0 * sigma2 / (double(m) * r2);
  return fit;
}

}  // namespace

RamseyResult synthesize_ramsey(double phi_c_deg, double contrast, long shots,
                               std::uint64_t seed, int phase_points) {
  if (!(contrast > 0.0 && contrast <= 1.0)) {
    throw ValidationError("ramsey: contrast must be in (0, 1]");
  }
  if (phase_points < 5) {
    throw ValidationError("ramsey: need at least 5 phase points");
  }
  if (shots < 0) throw ValidationError("ramsey: shots must be >= 0");

  std::mt19937_64 rng(seed);
  std::vector<double> phase(static_cast<std::size_t>(phase_points));
  std::vector<double> p0(phase.size()), p1(phase.size());
  const double offset0 = 0.0;
  const double offset1 = kPi + phi_c_deg * kPi / 180.0;
  for (std::size_t i = 0; i < phase.size(); ++i) {
    phase[i] = 2.0 * kPi * double(i) / double(phase_points);
    const double ideal0 = 0.5 + 0.5 * contrast * std::cos(phase[i] + offset0);
    const double ideal1 = 0.5 + 0.5 * contrast * std::cos(phase[i] + offset1);
    if (shots > 0) {
      p0[i] = double(binomial_draw(rng, shots, ideal0)) / double(shots);
      p1[i] = double(binomial_draw(rng, shots, ideal1)) / double(shots);
    } else {
      p0[i] = ideal0;
      p1[i] = ideal1;
    }
  }

  const FringeFit f0 = fit_fringe(phase, p0);
  const FringeFit f1 = fit_fringe(phase, p1);

  RamseyResult result;
  double diff_deg = (f1.phase_rad - f0.phase_rad) * 180.0 / kPi;
  diff_deg = std::fmod(diff_deg, 360.0);
  if (diff_deg < 0.0) diff_deg += 360.0;
  result.fitted_diff_deg = diff_deg;
  double phi_c = diff_deg - 180.0;
  if (phi_c > 180.0) phi_c -= 360.0;
  result.fitted_phi_c_deg = phi_c;
  result.fitted_sigma_deg =
      std::sqrt(f0.var_rad2 + f1.var_rad2) * 180.0 / kPi;

  const int cp = result.fringes.add_column("phase_deg");
  const int c0 = result.fringes.add_column("p_control0");
  const int c1 = result.fringes.add_column("p_control1");
  for (std::size_t i = 0; i < phase.size(); ++i) {
    const int row = result.fringes.add_row();
    result.fringes.set(row, cp, phase[i] * 180.0 / kPi);
    result.fringes.set(row, c0, p0[i]);
    result.fringes.set(row, c1, p1[i]);
  }
  return result;
}

namespace {

std::filesystem::path write_outputs(const ResultTable& table,
                                    const FigureOptions& opt,
                                    const std::string& stem,
                                    const SvgChartSpec* chart,
                                    std::vector<std::filesystem::path>& files) {
  std::filesystem::create_directories(opt.out_dir);
  std::filesystem::path csv_path;
  if (opt.csv) {
    csv_path = opt.out_dir / (stem + ".csv");
    table.write_csv(csv_path);
    files.push_back(csv_path);
  }
  if (opt.svg && chart != nullptr) {
    const auto svg_path = opt.out_dir / (stem + ".svg");
    write_svg_chart(table, *chart, svg_path);
    files.push_back(svg_path);
  }
  return csv_path;
}

void require_qubits(const DeviceTopology& device,
                    std::initializer_list<const char*> ids) {
  for (const char* id : ids) device.qubit(id);
}

}  // namespace

std::vector<std::filesystem::path> reproduce_figure(
    std::string_view name, const DeviceTopology& device,
    const FigureOptions& options) {
  std::vector<std::filesystem::path> files;

  if (name == "fig1c") {
    // Shift curves for a generic pair: alpha_G = alpha_S = -300 MHz,
    // J/2pi = 4.5 MHz, no sextic correction.
    TransmonSpec g{"G", 6000.0, -300.0, 0.0};
    TransmonSpec s{"S", 6000.0, -300.0, 0.0};
    ResultTable table;
    const int cx = table.add_column("delta_mhz");
    const int c1 = table.add_column("zeta1_mhz");
    const int c2 = table.add_column("zeta2_mhz");
    const int c12 = table.add_column("zeta12_mhz");
    const int cf = table.add_column("diverged", ResultTable::ColumnKind::kFlag);
    const int points = 1401;
    for (int i = 0; i < points; ++i) {
      const double delta = -700.0 + 1400.0 * double(i) / double(points - 1);
      s.freq = g.freq + delta;
      const ShiftTriple t = shifts(g, s, 4.5);
      const int row = table.add_row();
      table.set(row, cx, delta);
      if (!t.zeta1_diverged) table.set(row, c1, t.zeta1);
      if (!t.zeta2_diverged) table.set(row, c2, t.zeta2);
      if (!t.zeta12_diverged()) table.set(row, c12, t.zeta12);
      table.set_flag(row, cf, t.any_diverged());
    }
    SvgChartSpec chart;
    chart.title = "Dispersive couplings vs detuning (J = 4.5 MHz)";
    chart.x_label = "Delta/2pi (MHz)";
    chart.y_label = "zeta/2pi (MHz)";
    chart.x_col = cx;
    chart.series = {{c1, "zeta1"}, {c2, "zeta2"}, {c12, "zeta12"}};
    write_outputs(table, options, "fig1c", &chart, files);
    return files;
  }

  if (name == "fig2") {
    require_qubits(device, {"Q1", "Q2", "Q3", "Q4"});
    // (c): spectator Q1 on the computational-side gate qubit Q4 of the
    // Q4-Q2 gate.
    {
      const GateContext ctx = make_gate_context(device, "Q4", "Q2", {"Q1"});
      SweepSpec spec;
      spec.parameter = SweepParameter::kSpectatorDetuning;
      spec.spectator = "Q1";
      spec.start = 300.0;
      spec.stop = 800.0;
      spec.points = 251;
      ResultTable table = run_sweep(device, ctx, spec);
      SvgChartSpec chart;
      chart.title = "Conditional phase and leakage error vs spectator detuning";
      chart.x_label = "Delta_Q1,Q4/2pi (MHz)";
      chart.y_label = "d_phi_c (deg)";
      chart.x_col = table.find_column("delta_spectator_mhz");
      chart.series = {{table.find_column("d_phi_c_deg"), "d_phi_c"}};
      write_outputs(table, options, "fig2c", &chart, files);
    }
    // (d): spectator Q3 on the leakage-side gate qubit Q1 of the Q4-Q1 gate.
    {
      const GateContext ctx = make_gate_context(device, "Q4", "Q1", {"Q3"});
      SweepSpec spec;
      spec.parameter = SweepParameter::kSpectatorDetuning;
      spec.spectator = "Q3";
      spec.start = -800.0;
      spec.stop = -200.0;
      spec.points = 301;
      ResultTable table = run_sweep(device, ctx, spec);
      SvgChartSpec chart;
      chart.title = "Conditional phase error vs spectator detuning (leakage side)";
      chart.x_label = "Delta_Q3,Q1/2pi (MHz)";
      chart.y_label = "d_phi_c (deg)";
      chart.x_col = table.find_column("delta_spectator_mhz");
      chart.series = {{table.find_column("d_phi_c_deg"), "d_phi_c"}};
      write_outputs(table, options, "fig2d", &chart, files);
    }
    // (g): both cases collapse onto the single line in the |11>-|02>
    // detuning; emit the line itself.
    {
      const GateContext ctx = make_gate_context(device, "Q4", "Q2", {"Q1"});
      SweepSpec spec;
      spec.parameter = SweepParameter::kGateDelta;
      spec.start = -1.5;
      spec.stop = 1.5;
      spec.points = 301;
      ResultTable table = run_sweep(device, ctx, spec);
      SvgChartSpec chart;
      chart.title = "Conditional phase error vs |11>-|02> detuning";
      chart.x_label = "delta/2pi (MHz)";
      chart.y_label = "d_phi_c (deg)";
      chart.x_col = table.find_column("delta_mhz");
      chart.series = {{table.find_column("d_phi_c_deg"), "d_phi_c"}};
      write_outputs(table, options, "fig2g", &chart, files);
    }
    return files;
  }

  if (name == "fig3" || name == "fig4") {
    require_qubits(device, {"Q1", "Q2", "Q4", "Q6", "Q7"});
    const GateContext ctx =
        make_gate_context(device, "Q4", "Q2", {"Q1", "Q6", "Q7"});
    const auto rows = run_budget(device, ctx);
    ResultTable table = budget_table(ctx, rows);
    if (name == "fig3") {
      SvgChartSpec chart;
      chart.title = "Conditional phase error vs spectator configuration";
      chart.x_label = "configuration index (|Q1 Q6 Q7>)";
      chart.y_label = "d_phi_c (deg)";
      chart.x_col = table.find_column("config_index");
      chart.series = {{table.find_column("d_phi_c_deg"), "calculated"}};
      write_outputs(table, options, "fig3", &chart, files);
      return files;
    }
    // fig4: gate-error increase vs total dispersive shift, with the model
    // curve sampled continuously.
    SvgChartSpec chart;
    chart.title = "CZ gate error increase vs total dispersive shift";
    chart.x_label = "zeta1_tot/2pi (MHz)";
    chart.y_label = "eps_cz";
    chart.x_col = table.find_column("zeta1_tot_mhz");
    chart.series = {{table.find_column("eps_cz"), "configurations"}};
    write_outputs(table, options, "fig4", &chart, files);

    double z_lo = 0.0;
    for (const auto& row : rows) {
      z_lo = std::min(z_lo, row.report.zeta1_tot);
    }
    ResultTable model;
    const int cz = model.add_column("zeta1_tot_mhz");
    const int ce = model.add_column("eps_cz");
    const int points = 241;
    const double z_hi = 0.02;
    for (int i = 0; i < points; ++i) {
      const double z =
          1.1 * z_lo + (z_hi - 1.1 * z_lo) * double(i) / double(points - 1);
      const double d1 = dynamical_phase_error(z, ctx);
      const double dc = conditional_phase_error_from_duration(z, ctx.t_g);
      const int row = model.add_row();
      model.set(row, cz, z);
      model.set(row, ce, process_error(d1, 0.0, dc));
    }
    SvgChartSpec model_chart;
    model_chart.title = "CZ gate error model curve";
    model_chart.x_label = "zeta1_tot/2pi (MHz)";
    model_chart.y_label = "eps_cz";
    model_chart.x_col = cz;
    model_chart.series = {{ce, "phase-error model"}};
    write_outputs(model, options, "fig4_model", &model_chart, files);
    return files;
  }

  throw ValidationError("unknown figure '" + std::string(name) +
                        "' (expected fig1c, fig2, fig3 or fig4)");
}

}  // namespace spectator
