// Command-line front end for the spectator shared library. Everything goes
// through the C API in spectator/spectator_c.h.

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spectator/spectator_c.h"

namespace {

int exit_code_for(spx_status status) {
  switch (status) {
    case SPX_OK: return 0;
    case SPX_ERR_USAGE: return 1;
    case SPX_ERR_VALIDATION: return 2;
    case SPX_ERR_IO: return 2;
    case SPX_ERR_NUMERIC: return 3;
  }
  return 3;
}

// Prints the library's error detail and converts the status to an exit code.
int fail(spx_status status) {
  std::fprintf(stderr, "error (%s): %s\n", spx_status_name(status),
               spx_last_error());
  return exit_code_for(status);
}

struct DeviceHandle {
  spx_device* ptr = nullptr;
  ~DeviceHandle() { spx_device_free(ptr); }
};

struct TableHandle {
  spx_table* ptr = nullptr;
  ~TableHandle() { spx_table_free(ptr); }
};

int load_device_or_fail(const std::string& path, DeviceHandle& device) {
  const spx_status s = spx_device_load(path.c_str(), &device.ptr);
  if (s != SPX_OK) return fail(s);
  return 0;
}

void print_table(const spx_table* table, int max_rows = 20) {
  const int rows = spx_table_rows(table);
  const int cols = spx_table_cols(table);
  for (int c = 0; c < cols; ++c) {
    std::printf("%s%s", c ? "  " : "", spx_table_col_name(table, c));
  }
  std::printf("\n");
  const int shown = rows > max_rows ? max_rows : rows;
  for (int r = 0; r < shown; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (c) std::printf("  ");
      double v = 0.0;
      const char* text = spx_table_cell_text(table, r, c);
      const int flag = spx_table_cell_flag(table, r, c);
      if (text != nullptr) {
        std::printf("%s", text);
      } else if (spx_table_cell(table, r, c, &v)) {
        std::printf("%.6g", v);
      } else if (flag >= 0) {
        std::printf("%s", flag ? "true" : "false");
      } else {
        std::printf("-");
      }
    }
    std::printf("\n");
  }
  if (shown < rows) std::printf("... (%d rows total)\n", rows);
}

int write_table(const spx_table* table, const std::filesystem::path& out_dir,
                const std::string& stem, const std::string& format,
                const std::string& title, const char* x_col_name,
                const std::vector<std::string>& y_col_names) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (format == "csv" || format == "both") {
    const auto path = out_dir / (stem + ".csv");
    const spx_status s = spx_table_write_csv(table, path.string().c_str());
    if (s != SPX_OK) return fail(s);
    std::printf("wrote %s\n", path.string().c_str());
  }
  if (format == "svg" || format == "both") {
    int x_col = 0;
    std::vector<int> y_cols;
    for (int c = 0; c < spx_table_cols(table); ++c) {
      const std::string name = spx_table_col_name(table, c);
      if (name == x_col_name) x_col = c;
      for (const auto& want : y_col_names) {
        if (name == want) y_cols.push_back(c);
      }
    }
    if (!y_cols.empty()) {
      const auto path = out_dir / (stem + ".svg");
      const spx_status s =
          spx_table_write_svg(table, path.string().c_str(), title.c_str(),
                              x_col, y_cols.data(), int(y_cols.size()));
      if (s != SPX_OK) return fail(s);
      std::printf("wrote %s\n", path.string().c_str());
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "spectator-bench: dispersive spectator-qubit error budgets for "
      "controlled-phase gates"};
  app.require_subcommand(1);

  std::string device_path = "data/device7.json";
  std::string out_dir = ".";
  std::string format = "csv";
  std::uint64_t seed = 0;
  int dims = 4;
  double pole_eps = 1.0;
  app.add_option("--device", device_path, "device description JSON file")
      ->capture_default_str();
  app.add_option("--out", out_dir, "output directory")->capture_default_str();
  app.add_option("--seed", seed, "RNG seed for shot noise")
      ->capture_default_str();
  app.add_option("--dims", dims, "oscillator levels per qubit")
      ->capture_default_str();
  app.add_option("--pole-eps", pole_eps,
                 "divergence guard around perturbative poles (MHz)")
      ->capture_default_str();
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"csv", "svg", "both"}))
      ->capture_default_str();

  int rc = 0;

  // shifts: perturbative (and optionally exact) dispersive shifts.
  auto* shifts_cmd = app.add_subcommand(
      "shifts", "dispersive shifts for a gate/spectator pair");
  std::string gate_id = "Q4", spectator_id = "Q1";
  bool exact = false;
  double detuning_override = 0.0;
  bool have_detuning = false;
  shifts_cmd->add_option("--gate", gate_id, "gate qubit id");
  shifts_cmd->add_option("--spectator", spectator_id, "spectator qubit id");
  shifts_cmd->add_flag("--exact", exact, "also diagonalize the pair exactly");
  shifts_cmd
      ->add_option("--detuning", detuning_override,
                   "override the spectator-gate detuning (MHz)")
      ->each([&](const std::string&) { have_detuning = true; });
  shifts_cmd->callback([&] {
    DeviceHandle device;
    if ((rc = load_device_or_fail(device_path, device)) != 0) return;
    double fg, ag, bg, fs, as, bs, j;
    spx_status s = spx_device_qubit_params(device.ptr, gate_id.c_str(), &fg,
                                           &ag, &bg);
    if (s == SPX_OK) {
      s = spx_device_qubit_params(device.ptr, spectator_id.c_str(), &fs, &as,
                                  &bs);
    }
    if (s == SPX_OK) {
      s = spx_device_coupling_j(device.ptr, gate_id.c_str(),
                                spectator_id.c_str(), &j);
    }
    if (s != SPX_OK) {
      rc = fail(s);
      return;
    }
    if (have_detuning) fs = fg + detuning_override;
    spx_shift_triple t;
    s = spx_shifts(fg, ag, bg, fs, as, bs, j, pole_eps, &t);
    if (s != SPX_OK) {
      rc = fail(s);
      return;
    }
    std::printf("pair %s (gate) / %s (spectator): Delta = %.3f MHz, J = %.3f MHz\n",
                gate_id.c_str(), spectator_id.c_str(), fs - fg, j);
    if (t.zeta1_diverged) {
      std::printf("zeta1: diverged (within pole-eps of a pole)\n");
    } else {
      std::printf("zeta1  = %+.6f MHz\n", t.zeta1_mhz);
    }
    if (t.zeta2_diverged) {
      std::printf("zeta2: diverged (within pole-eps of a pole)\n");
    } else {
      std::printf("zeta2  = %+.6f MHz\n", t.zeta2_mhz);
    }
    if (t.zeta1_diverged || t.zeta2_diverged) {
      std::printf("zeta12: diverged\n");
    } else {
      std::printf("zeta12 = %+.6f MHz\n", t.zeta12_mhz);
    }
    if (exact) {
      spx_exact_shifts_result ex;
      s = spx_exact_shifts(fg, ag, bg, fs, as, bs, j, dims, &ex);
      if (s != SPX_OK) {
        rc = fail(s);
        return;
      }
      std::printf("exact (dims = %d): zeta1 = %+.6f, zeta2 = %+.6f, "
                  "zeta12 = %+.6f MHz%s (min overlap %.3f)\n",
                  dims, ex.triple.zeta1_mhz, ex.triple.zeta2_mhz,
                  ex.triple.zeta12_mhz,
                  ex.hybridized ? " [hybridized]" : "", ex.min_overlap);
    }
  });

  // sweep
  auto* sweep_cmd =
      app.add_subcommand("sweep", "parameter sweep of the error model");
  std::string g1 = "Q4", g2 = "Q2";
  std::vector<std::string> spectators;
  std::string sweep_param = "spectator-detuning";
  std::string swept_spectator;
  double start = 300.0, stop = 800.0;
  int points = 200;
  double t_g = 80.0, t_b = 5.0, t_s = 53.0, j_override = 0.0;
  sweep_cmd->add_option("--g1", g1, "computational-side gate qubit");
  sweep_cmd->add_option("--g2", g2, "gate qubit whose |2> participates");
  sweep_cmd->add_option("--spectators", spectators,
                        "spectator qubit ids (comma separated)")
      ->delimiter(',');
  sweep_cmd->add_option("--param", sweep_param, "swept parameter")
      ->check(CLI::IsMember({"spectator-detuning", "gate-delta", "zeta1-tot"}));
  sweep_cmd->add_option("--spectator", swept_spectator,
                        "which spectator to sweep (spectator-detuning)");
  sweep_cmd->add_option("--start", start, "sweep start (MHz)");
  sweep_cmd->add_option("--stop", stop, "sweep stop (MHz)");
  sweep_cmd->add_option("--points", points, "number of sweep points");
  sweep_cmd->add_option("--tg", t_g, "gate duration (ns)");
  sweep_cmd->add_option("--tb", t_b, "buffer time (ns)");
  sweep_cmd->add_option("--ts", t_s, "single-qubit gate duration (ns)");
  sweep_cmd->add_option("--j", j_override, "gate coupling override (MHz)");
  sweep_cmd->callback([&] {
    DeviceHandle device;
    if ((rc = load_device_or_fail(device_path, device)) != 0) return;
    std::vector<const char*> ids;
    for (const auto& s : spectators) ids.push_back(s.c_str());
    spx_gate_context ctx{g1.c_str(), g2.c_str(),
                         ids.empty() ? nullptr : ids.data(), int(ids.size()),
                         t_g, t_b, t_s, j_override};
    spx_sweep_param param = SPX_SWEEP_SPECTATOR_DETUNING;
    if (sweep_param == "gate-delta") param = SPX_SWEEP_GATE_DELTA;
    if (sweep_param == "zeta1-tot") param = SPX_SWEEP_ZETA1_TOT;
    if (param == SPX_SWEEP_SPECTATOR_DETUNING && swept_spectator.empty() &&
        spectators.size() == 1) {
      swept_spectator = spectators[0];
    }
    TableHandle table;
    const spx_status s = spx_run_sweep(device.ptr, &ctx, param,
                                       swept_spectator.c_str(), start, stop,
                                       points, pole_eps, &table.ptr);
    if (s != SPX_OK) {
      rc = fail(s);
      return;
    }
    const char* x_name = param == SPX_SWEEP_SPECTATOR_DETUNING
                             ? "delta_spectator_mhz"
                             : (param == SPX_SWEEP_GATE_DELTA
                                    ? "delta_mhz"
                                    : "zeta1_tot_mhz");
    rc = write_table(table.ptr, out_dir, "sweep", format,
                     "conditional phase error sweep", x_name,
                     {"d_phi_c_deg", "d_phi_d_deg"});
  });

  // budget
  auto* budget_cmd = app.add_subcommand(
      "budget", "error budget over all spectator configurations");
  budget_cmd->add_option("--g1", g1, "computational-side gate qubit");
  budget_cmd->add_option("--g2", g2, "gate qubit whose |2> participates");
  budget_cmd->add_option("--spectators", spectators,
                         "spectator qubit ids (comma separated)")
      ->delimiter(',');
  budget_cmd->add_option("--tg", t_g, "gate duration (ns)");
  budget_cmd->add_option("--tb", t_b, "buffer time (ns)");
  budget_cmd->add_option("--ts", t_s, "single-qubit gate duration (ns)");
  budget_cmd->add_option("--j", j_override, "gate coupling override (MHz)");
  budget_cmd->callback([&] {
    DeviceHandle device;
    if ((rc = load_device_or_fail(device_path, device)) != 0) return;
    std::vector<const char*> ids;
    for (const auto& s : spectators) ids.push_back(s.c_str());
    spx_gate_context ctx{g1.c_str(), g2.c_str(),
                         ids.empty() ? nullptr : ids.data(), int(ids.size()),
                         t_g, t_b, t_s, j_override};
    TableHandle table;
    const spx_status s =
        spx_run_budget(device.ptr, &ctx, pole_eps, &table.ptr);
    if (s != SPX_OK) {
      rc = fail(s);
      return;
    }
    print_table(table.ptr);
    rc = write_table(table.ptr, out_dir, "budget", format,
                     "gate error vs spectator configuration",
                     "zeta1_tot_mhz", {"eps_cz"});
  });

  // simulate
  auto* sim_cmd = app.add_subcommand(
      "simulate", "time-domain simulation of the controlled-phase gate");
  double sim_j = 4.5, sim_delta = 0.0, amplitude = 0.0, duration = 0.0,
         sigma = 0.0, spectator_delta = 0.0;
  bool full = false, calibrate = false;
  double freq_g1 = 5500.0, anh_g1 = -300.0, beta_g1 = 0.0;
  double freq_g2 = 6000.0, anh_g2 = -300.0, beta_g2 = 0.0;
  std::string traj_path;
  int traj_stride = 50;
  sim_cmd->add_option("--j", sim_j, "gate coupling J/2pi (MHz)");
  sim_cmd->add_option("--delta", sim_delta,
                      "static |11>-|02> detuning during the gate (MHz)");
  sim_cmd->add_option("--amplitude", amplitude, "pulse excursion (MHz)");
  sim_cmd->add_option("--duration", duration,
                      "pulse duration (ns; 0 = ideal gate time)");
  sim_cmd->add_option("--sigma", sigma, "Gaussian filter width (ns)");
  sim_cmd->add_flag("--full", full, "simulate the full transmon pair");
  sim_cmd->add_flag("--calibrate", calibrate,
                    "calibrate amplitude and duration first (full mode)");
  sim_cmd->add_option("--spectator-delta", spectator_delta,
                      "spectator-induced detuning (MHz, full mode)");
  sim_cmd->add_option("--freq-g1", freq_g1, "g1 frequency (MHz)");
  sim_cmd->add_option("--anh-g1", anh_g1, "g1 anharmonicity (MHz)");
  sim_cmd->add_option("--beta-g1", beta_g1, "g1 sextic correction (MHz)");
  sim_cmd->add_option("--freq-g2", freq_g2, "g2 frequency (MHz)");
  sim_cmd->add_option("--anh-g2", anh_g2, "g2 anharmonicity (MHz)");
  sim_cmd->add_option("--beta-g2", beta_g2, "g2 sextic correction (MHz)");
  sim_cmd->add_option("--traj", traj_path, "trajectory CSV output path");
  sim_cmd->add_option("--traj-stride", traj_stride,
                      "record every n-th integrator step");
  sim_cmd->callback([&] {
    spx_gate_outcome outcome;
    if (!full) {
      double t_gate = duration;
      if (t_gate <= 0.0) {
        const spx_status s = spx_gate_duration_from_j(sim_j, &t_gate);
        if (s != SPX_OK) {
          rc = fail(s);
          return;
        }
      }
      const double j_eff = 1.4142135623730951 * sim_j;
      spx_pulse pulse{amplitude, t_gate, sigma};
      spx_status s;
      if (!traj_path.empty()) {
        TableHandle traj;
        s = spx_simulate_two_level_traj(j_eff, sim_delta, pulse, traj_stride,
                                        &outcome, &traj.ptr);
        if (s == SPX_OK) {
          s = spx_table_write_csv(traj.ptr, traj_path.c_str());
          if (s == SPX_OK) std::printf("wrote %s\n", traj_path.c_str());
        }
      } else {
        s = spx_simulate_two_level(j_eff, sim_delta, pulse, &outcome);
      }
      if (s != SPX_OK) {
        rc = fail(s);
        return;
      }
    } else {
      spx_pair_qubit q1{freq_g1, anh_g1, beta_g1};
      spx_pair_qubit q2{freq_g2, anh_g2, beta_g2};
      spx_pulse pulse{amplitude, duration, sigma};
      if (calibrate) {
        const spx_status s =
            spx_calibrate_pulse(q1, q2, sim_j, sigma, dims, &pulse);
        if (s != SPX_OK) {
          rc = fail(s);
          return;
        }
        std::printf("calibrated pulse: amplitude = %.4f MHz, duration = %.4f "
                    "ns, sigma = %.2f ns\n",
                    pulse.amplitude_mhz, pulse.duration_ns, pulse.sigma_ns);
      }
      const spx_status s = spx_simulate_full_pair(q1, q2, sim_j, pulse,
                                                  spectator_delta, dims,
                                                  &outcome);
      if (s != SPX_OK) {
        rc = fail(s);
        return;
      }
    }
    std::printf("phi_c      = %.4f deg (error %+0.4f deg)\n", outcome.phi_c_deg,
                outcome.phi_c_deg - 180.0);
    std::printf("leak       = %.3e (benchmark preparation)\n", outcome.leak);
    std::printf("pop(|02>)  = %.3e (prepared in |11>)\n", outcome.pop_leakage);
    std::printf("norm error = %.2e\n", outcome.norm_error);
  });

  // tomo
  auto* tomo_cmd = app.add_subcommand(
      "tomo", "process-tomography error of the phase-error unitary");
  double d1 = 0.0, d2 = 0.0, dc = 0.0;
  int repeats = 1;
  tomo_cmd->add_option("--d1", d1, "dynamical phase error on g1 (deg)");
  tomo_cmd->add_option("--d2", d2, "dynamical phase error on g2 (deg)");
  tomo_cmd->add_option("--dc", dc, "conditional phase error (deg)");
  tomo_cmd->add_option("--n", repeats, "gates in series");
  tomo_cmd->callback([&] {
    double eps = 0.0, quad = 0.0;
    spx_status s = spx_process_error(d1, d2, dc, &eps);
    if (s == SPX_OK) s = spx_process_error_quadratic(d1, d2, dc, &quad);
    double eps_n = eps, ratio = 1.0;
    if (s == SPX_OK && repeats > 1) {
      s = spx_repeated_gate_error_scaling(repeats, d1, d2, dc, &eps_n, &ratio);
    }
    if (s != SPX_OK) {
      rc = fail(s);
      return;
    }
    std::printf("eps_cz (trace)     = %.6e\n", eps);
    std::printf("eps_cz (quadratic) = %.6e\n", quad);
    if (repeats > 1) {
      std::printf("eps_cz (%d gates)   = %.6e, ratio = %.4f\n", repeats, eps_n,
                  ratio);
    }
  });

  // ramsey
  auto* ramsey_cmd = app.add_subcommand(
      "ramsey", "synthesize conditional-phase Ramsey fringes and fit them");
  double phi_c = 0.0, contrast = 1.0;
  long shots = 0;
  int phase_points = 41;
  ramsey_cmd->add_option("--phi-c", phi_c, "injected conditional phase error (deg)");
  ramsey_cmd->add_option("--contrast", contrast, "fringe contrast (0, 1]");
  ramsey_cmd->add_option("--shots", shots,
                         "binomial shots per phase point (0 = noiseless)");
  ramsey_cmd->add_option("--points", phase_points, "phase points per fringe");
  ramsey_cmd->callback([&] {
    TableHandle fringes;
    double diff = 0.0, sigma_fit = 0.0;
    const spx_status s = spx_synthesize_ramsey(
        phi_c, contrast, shots, seed, phase_points, &fringes.ptr, &diff,
        &sigma_fit);
    if (s != SPX_OK) {
      rc = fail(s);
      return;
    }
    std::printf("fitted phase difference = %.4f deg (phi_c error %+0.4f deg, "
                "fit sigma %.4f deg)\n",
                diff, diff - 180.0, sigma_fit);
    rc = write_table(fringes.ptr, out_dir, "ramsey", format,
                     "conditional-phase Ramsey fringes", "phase_deg",
                     {"p_control0", "p_control1"});
  });

  // fig
  auto* fig_cmd =
      app.add_subcommand("fig", "regenerate one of the summary figures");
  std::string fig_name;
  fig_cmd->add_option("name", fig_name, "fig1c, fig2, fig3 or fig4")
      ->required();
  fig_cmd->callback([&] {
    DeviceHandle device;
    if ((rc = load_device_or_fail(device_path, device)) != 0) return;
    const int want_csv = format == "csv" || format == "both";
    const int want_svg = format == "svg" || format == "both";
    const spx_status s = spx_reproduce_figure(
        fig_name.c_str(), device.ptr, out_dir.c_str(), want_csv, want_svg);
    if (s != SPX_OK) {
      rc = fail(s);
      return;
    }
    std::printf("wrote %s outputs to %s\n", fig_name.c_str(), out_dir.c_str());
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }
  return rc;
}
