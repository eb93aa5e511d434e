#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include "spectator/spectator_c.h"

namespace {
const char* kDataDir = SPECTATOR_DATA_DIR;
const std::string kDevicePath = std::string(kDataDir) + "/device7.json";
}  // namespace

TEST_CASE("device handles round-trip through the C API") {
  spx_device* device = nullptr;
  REQUIRE(spx_device_load(kDevicePath.c_str(), &device) == SPX_OK);
  CHECK(spx_device_qubit_count(device) == 7);
  CHECK(std::strcmp(spx_device_qubit_id(device, 0), "Q1") == 0);
  CHECK(spx_device_qubit_id(device, 99) == nullptr);

  double freq = 0, anh = 0, beta = 0;
  REQUIRE(spx_device_qubit_params(device, "Q1", &freq, &anh, &beta) == SPX_OK);
  CHECK(freq == doctest::Approx(5810.0));
  CHECK(anh == doctest::Approx(-289.0));
  CHECK(beta == doctest::Approx(-35.0));
  CHECK(spx_device_qubit_params(device, "Q9", &freq, &anh, &beta) ==
        SPX_ERR_VALIDATION);
  CHECK(std::strlen(spx_last_error()) > 0);

  double j = 0;
  REQUIRE(spx_device_coupling_j(device, "Q4", "Q1", &j) == SPX_OK);
  CHECK(j == doctest::Approx(4.5));
  CHECK(spx_device_coupling_j(device, "Q1", "Q7", &j) == SPX_ERR_VALIDATION);

  char* json = nullptr;
  REQUIRE(spx_device_to_json(device, &json) == SPX_OK);
  spx_device* again = nullptr;
  REQUIRE(spx_device_parse(json, &again) == SPX_OK);
  CHECK(spx_device_qubit_count(again) == 7);
  spx_string_free(json);
  spx_device_free(again);
  spx_device_free(device);
}

TEST_CASE("error paths set a status and a message") {
  spx_device* device = nullptr;
  CHECK(spx_device_load("/nonexistent/device.json", &device) == SPX_ERR_IO);
  CHECK(spx_device_parse("{\"qubits\": [{\"bad\": 1}]}", &device) ==
        SPX_ERR_VALIDATION);
  CHECK(spx_device_load(nullptr, &device) == SPX_ERR_USAGE);
  CHECK(std::strcmp(spx_status_name(SPX_ERR_NUMERIC), "numerical failure") ==
        0);
}

TEST_CASE("scalar formula surface") {
  double t = 0;
  REQUIRE(spx_gate_duration_from_j(4.5, &t) == SPX_OK);
  CHECK(t == doctest::Approx(78.56742013183862));
  CHECK(spx_gate_duration_from_j(0.0, &t) == SPX_ERR_VALIDATION);

  spx_shift_triple triple;
  REQUIRE(spx_shifts(6000, -300, 0, 5500, -300, 0, 4.5, 1.0, &triple) ==
          SPX_OK);
  CHECK(triple.zeta1_mhz == doctest::Approx(-0.151875));
  CHECK(triple.zeta2_mhz == doctest::Approx(0.6075));
  CHECK(triple.zeta12_mhz == doctest::Approx(0.759375));
  CHECK(triple.zeta1_diverged == 0);

  REQUIRE(spx_shifts(6000, -300, 0, 5700, -300, 0, 4.5, 1.0, &triple) ==
          SPX_OK);
  CHECK(triple.zeta1_diverged == 1);  // Delta = alpha_G

  spx_exact_shifts_result exact;
  REQUIRE(spx_exact_shifts(6000, -300, 0, 5500, -300, 0, 4.5, 5, &exact) ==
          SPX_OK);
  CHECK(exact.hybridized == 0);
  CHECK(std::abs(exact.triple.zeta1_mhz - (-0.151875)) <
        0.15 * std::abs(exact.triple.zeta1_mhz));

  double beta = 0;
  REQUIRE(spx_transmon_beta(6000, -289, &beta) == SPX_OK);
  CHECK(beta < -26.0);
  CHECK(beta > -38.0);

  double deg = 0;
  REQUIRE(spx_conditional_phase_error(-0.133, 4.5, &deg) == SPX_OK);
  CHECK(deg == doctest::Approx(-1.881).epsilon(1e-3));
  REQUIRE(spx_conditional_phase_from_duration(-0.204, 80.0, &deg) == SPX_OK);
  CHECK(deg == doctest::Approx(-2.9376));

  double leak = 0;
  REQUIRE(spx_leakage_error(1.0, 4.5, &leak) == SPX_OK);
  CHECK(leak == doctest::Approx(4.7009e-5).epsilon(1e-3));
  CHECK(spx_leakage_error(10.0, 4.5, &leak) == SPX_ERR_VALIDATION);

  REQUIRE(spx_dynamical_phase_error(-0.133, 80, 5, 53, &deg) == SPX_OK);
  CHECK(deg == doctest::Approx(6.84684));

  REQUIRE(spx_spectator_phase_error(SPX_SPECTATOR_COMPUTATIONAL_DISTANT1,
                                    -0.133, 0, 0, 80, 5, 53, &deg) == SPX_OK);
  CHECK(deg == doctest::Approx(4.93164));

  const double zetas[3] = {-0.133, -0.037, -0.034};
  const int bits[3] = {1, 1, 1};
  double tot = 0;
  REQUIRE(spx_zeta1_total(zetas, bits, 3, &tot) == SPX_OK);
  CHECK(tot == doctest::Approx(-0.204));
}

TEST_CASE("two-level simulation through the C API") {
  const double j_eff = std::sqrt(2.0) * 4.5;
  const double t_g = 1.0e3 / (2.0 * std::sqrt(2.0) * 4.5);
  spx_gate_outcome outcome;
  spx_pulse pulse{0.0, t_g, 0.0};
  REQUIRE(spx_simulate_two_level(j_eff, 1.0, pulse, &outcome) == SPX_OK);
  CHECK(outcome.phi_c_deg - 180.0 == doctest::Approx(14.14).epsilon(0.02));
  CHECK(outcome.norm_error < 1e-9);

  spx_table* traj = nullptr;
  REQUIRE(spx_simulate_two_level_traj(j_eff, 1.0, pulse, 1000, &outcome,
                                      &traj) == SPX_OK);
  CHECK(spx_table_rows(traj) > 3);
  CHECK(std::strcmp(spx_table_col_name(traj, 0), "t_ns") == 0);
  spx_table_free(traj);
}

TEST_CASE("tomography through the C API") {
  double re[16], im[16];
  REQUIRE(spx_cz_error_unitary(0, 0, 0, re, im) == SPX_OK);
  CHECK(re[0] == doctest::Approx(1.0));
  CHECK(re[15] == doctest::Approx(-1.0));
  CHECK(im[15] == doctest::Approx(0.0).epsilon(1e-12));

  double eps = 1.0;
  REQUIRE(spx_process_error(0, 0, 0, &eps) == SPX_OK);
  CHECK(eps <= 1e-15);
  double quad = 0.0;
  REQUIRE(spx_process_error_quadratic(10.5, 0, -2.94, &quad) == SPX_OK);
  REQUIRE(spx_process_error(10.5, 0, -2.94, &eps) == SPX_OK);
  CHECK(std::abs(eps - quad) < 5e-4);

  double eps_n = 0, ratio = 0;
  REQUIRE(spx_repeated_gate_error_scaling(3, 2, 0, -1, &eps_n, &ratio) ==
          SPX_OK);
  CHECK(ratio == doctest::Approx(9.0).epsilon(0.02));
}

TEST_CASE("sweeps, budgets and figures through the C API") {
  spx_device* device = nullptr;
  REQUIRE(spx_device_load(kDevicePath.c_str(), &device) == SPX_OK);
  const char* spectators[] = {"Q1", "Q6", "Q7"};
  spx_gate_context ctx{"Q4", "Q2", spectators, 3, 80.0, 5.0, 53.0, 0.0};

  SUBCASE("sweep with table access and CSV export") {
    spx_table* table = nullptr;
    REQUIRE(spx_run_sweep(device, &ctx, SPX_SWEEP_SPECTATOR_DETUNING, "Q1",
                          300.0, 800.0, 26, 1.0, &table) == SPX_OK);
    CHECK(spx_table_rows(table) == 26);
    double v = 0;
    CHECK(spx_table_cell(table, 0, 0, &v) == 1);
    CHECK(v == doctest::Approx(300.0));

    const auto dir = std::filesystem::temp_directory_path() / "spectator_capi";
    std::filesystem::create_directories(dir);
    const auto csv = dir / "sweep.csv";
    REQUIRE(spx_table_write_csv(table, csv.string().c_str()) == SPX_OK);
    CHECK(std::filesystem::file_size(csv) > 100);
    const int y_cols[] = {5};
    const auto svg = dir / "sweep.svg";
    REQUIRE(spx_table_write_svg(table, svg.string().c_str(), "sweep", 0,
                                y_cols, 1) == SPX_OK);
    CHECK(std::filesystem::exists(svg));
    spx_table_free(table);
  }

  SUBCASE("budget table") {
    spx_table* table = nullptr;
    REQUIRE(spx_run_budget(device, &ctx, 1.0, &table) == SPX_OK);
    CHECK(spx_table_rows(table) == 8);
    const char* config = spx_table_cell_text(table, 5, 0);
    REQUIRE(config != nullptr);
    CHECK(std::strcmp(config, "101") == 0);
    CHECK(spx_table_cell_flag(table, 0, spx_table_cols(table) - 1) == 0);
    spx_table_free(table);
  }

  SUBCASE("ramsey") {
    spx_table* fringes = nullptr;
    double diff = 0, sigma = 0;
    REQUIRE(spx_synthesize_ramsey(-6.3, 0.8, 0, 0, 41, &fringes, &diff,
                                  &sigma) == SPX_OK);
    CHECK(diff == doctest::Approx(173.7).epsilon(1e-6));
    CHECK(spx_table_rows(fringes) == 41);
    spx_table_free(fringes);
  }

  SUBCASE("figure reproduction") {
    const auto dir =
        std::filesystem::temp_directory_path() / "spectator_capi_fig";
    std::filesystem::remove_all(dir);
    REQUIRE(spx_reproduce_figure("fig1c", device, dir.string().c_str(), 1,
                                 1) == SPX_OK);
    CHECK(std::filesystem::exists(dir / "fig1c.csv"));
    CHECK(spx_reproduce_figure("fig9", device, dir.string().c_str(), 1, 1) ==
          SPX_ERR_VALIDATION);
  }

  spx_device_free(device);
}
