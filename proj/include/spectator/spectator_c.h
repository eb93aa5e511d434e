/* C API of the spectator library: opaque handles and error codes over the
 * C++ core. All functions return spx_status; results come back through out
 * parameters. spx_last_error() holds a thread-local detail message for the
 * most recent failing call.
 *
 * Units match the core library: MHz for frequencies (omega/2pi), ns for
 * times, degrees for phases.
 */
#ifndef SPECTATOR_C_H
#define SPECTATOR_C_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum spx_status {
  SPX_OK = 0,
  SPX_ERR_USAGE = 1,      /* bad arguments to an API call */
  SPX_ERR_VALIDATION = 2, /* input data violates a documented invariant */
  SPX_ERR_NUMERIC = 3,    /* a numerical procedure failed */
  SPX_ERR_IO = 4          /* filesystem problem */
} spx_status;

const char* spx_status_name(spx_status status);
const char* spx_last_error(void);

/* ---------- device model ---------- */

typedef struct spx_device spx_device; /* opaque, immutable after load */

spx_status spx_device_load(const char* path, spx_device** out);
spx_status spx_device_parse(const char* json_text, spx_device** out);
void spx_device_free(spx_device* device);

/* JSON text allocated with malloc; release with spx_string_free. */
spx_status spx_device_to_json(const spx_device* device, char** out_text);
void spx_string_free(char* text);

int spx_device_qubit_count(const spx_device* device);
/* Returned pointers stay valid for the lifetime of the device handle. */
const char* spx_device_qubit_id(const spx_device* device, int index);
spx_status spx_device_qubit_params(const spx_device* device, const char* id,
                                   double* freq_mhz, double* anh_mhz,
                                   double* beta_mhz);
spx_status spx_device_coupling_j(const spx_device* device, const char* a,
                                 const char* b, double* j_mhz);

spx_status spx_gate_duration_from_j(double j_mhz, double* t_ns);

/* ---------- dispersive shifts and phase errors ---------- */

typedef struct spx_shift_triple {
  double zeta1_mhz;
  double zeta2_mhz;
  double zeta12_mhz;
  int zeta1_diverged;
  int zeta2_diverged;
} spx_shift_triple;

spx_status spx_shifts(double freq_g, double anh_g, double beta_g,
                      double freq_s, double anh_s, double beta_s,
                      double j_mhz, double pole_eps_mhz,
                      spx_shift_triple* out);
spx_status spx_shifts_device(const spx_device* device, const char* gate_id,
                             const char* spectator_id, double pole_eps_mhz,
                             spx_shift_triple* out);

typedef struct spx_exact_shifts_result {
  spx_shift_triple triple;
  int hybridized;
  double min_overlap;
} spx_exact_shifts_result;

spx_status spx_exact_shifts(double freq_g, double anh_g, double beta_g,
                            double freq_s, double anh_s, double beta_s,
                            double j_mhz, int dims,
                            spx_exact_shifts_result* out);

spx_status spx_transmon_beta(double freq_mhz, double anh_mhz,
                             double* beta_mhz);

spx_status spx_conditional_phase_error(double delta_mhz, double j_mhz,
                                       double* deg);
spx_status spx_conditional_phase_from_duration(double delta_mhz,
                                               double t_g_ns, double* deg);
spx_status spx_leakage_error(double delta_mhz, double j_mhz, double* leak);
spx_status spx_dynamical_phase_error(double zeta1_tot_mhz, double t_g_ns,
                                     double t_b_ns, double t_s_ns,
                                     double* deg);

typedef enum spx_spectator_case {
  SPX_SPECTATOR_COMPUTATIONAL_DISTANT0 = 0,
  SPX_SPECTATOR_COMPUTATIONAL_DISTANT1 = 1,
  SPX_SPECTATOR_LEAKAGE_DISTANT0 = 2,
  SPX_SPECTATOR_LEAKAGE_DISTANT1 = 3
} spx_spectator_case;

spx_status spx_spectator_phase_error(spx_spectator_case variant,
                                     double zeta1_mhz, double zeta2_mhz,
                                     double zeta1_idle_mhz, double t_g_ns,
                                     double t_b_ns, double t_s_ns,
                                     double* deg);

spx_status spx_zeta1_total(const double* zeta1_mhz, const int* bits, int n,
                           double* out_mhz);

/* ---------- gate dynamics ---------- */

typedef struct spx_pulse {
  double amplitude_mhz;
  double duration_ns;
  double sigma_ns;
} spx_pulse;

typedef struct spx_gate_outcome {
  double phi_c_deg;
  double leak;         /* benchmark-preparation |02> population */
  double pop_leakage;  /* raw |<02|psi>|^2 from |11> */
  double norm_error;
} spx_gate_outcome;

spx_status spx_simulate_two_level(double j_eff_mhz, double delta_mhz,
                                  spx_pulse pulse, spx_gate_outcome* out);

typedef struct spx_pair_qubit {
  double freq_mhz;
  double anh_mhz;
  double beta_mhz;
} spx_pair_qubit;

spx_status spx_simulate_full_pair(spx_pair_qubit g1, spx_pair_qubit g2,
                                  double j_mhz, spx_pulse pulse,
                                  double spectator_delta_mhz, int dims,
                                  spx_gate_outcome* out);

spx_status spx_calibrate_pulse(spx_pair_qubit g1, spx_pair_qubit g2,
                               double j_mhz, double sigma_ns, int dims,
                               spx_pulse* out);

/* Trajectory variants fill a table with t_ns plus re/im amplitude columns. */
typedef struct spx_table spx_table; /* opaque result table */

spx_status spx_simulate_two_level_traj(double j_eff_mhz, double delta_mhz,
                                       spx_pulse pulse, int stride,
                                       spx_gate_outcome* out,
                                       spx_table** trajectory);

/* ---------- tomography ---------- */

/* 4x4 unitary as row-major re/im arrays of 16 doubles each. */
spx_status spx_cz_error_unitary(double d1_deg, double d2_deg, double dc_deg,
                                double* out_re, double* out_im);
spx_status spx_process_error(double d1_deg, double d2_deg, double dc_deg,
                             double* eps);
spx_status spx_process_error_quadratic(double d1_deg, double d2_deg,
                                       double dc_deg, double* eps);
spx_status spx_repeated_gate_error_scaling(int n, double d1_deg,
                                           double d2_deg, double dc_deg,
                                           double* eps_n, double* ratio);

/* ---------- result tables ---------- */

int spx_table_rows(const spx_table* table);
int spx_table_cols(const spx_table* table);
const char* spx_table_col_name(const spx_table* table, int col);
/* Returns 1 and fills *value when the cell holds a number, 0 otherwise. */
int spx_table_cell(const spx_table* table, int row, int col, double* value);
/* Text cell contents, or NULL for numeric/flag/empty cells. */
const char* spx_table_cell_text(const spx_table* table, int row, int col);
/* Returns 1/0 for set flags, -1 when the cell is not a flag. */
int spx_table_cell_flag(const spx_table* table, int row, int col);
void spx_table_free(spx_table* table);

spx_status spx_table_write_csv(const spx_table* table, const char* path);
/* Line chart of y columns against x_col. */
spx_status spx_table_write_svg(const spx_table* table, const char* path,
                               const char* title, int x_col,
                               const int* y_cols, int n_y);

/* ---------- scenario runners ---------- */

typedef struct spx_gate_context {
  const char* g1;
  const char* g2;
  const char* const* spectator_ids;
  int n_spectators;
  double t_g_ns; /* <= 0: default 80 */
  double t_b_ns; /* <  0: default 5  */
  double t_s_ns; /* <  0: default 53 */
  double j_mhz;  /* <= 0: look up the g1-g2 coupling in the device */
} spx_gate_context;

typedef enum spx_sweep_param {
  SPX_SWEEP_SPECTATOR_DETUNING = 0,
  SPX_SWEEP_GATE_DELTA = 1,
  SPX_SWEEP_ZETA1_TOT = 2
} spx_sweep_param;

spx_status spx_run_sweep(const spx_device* device,
                         const spx_gate_context* ctx, spx_sweep_param param,
                         const char* swept_spectator, double start,
                         double stop, int points, double pole_eps_mhz,
                         spx_table** out);

spx_status spx_run_budget(const spx_device* device,
                          const spx_gate_context* ctx, double pole_eps_mhz,
                          spx_table** out);

spx_status spx_synthesize_ramsey(double phi_c_deg, double contrast,
                                 long shots, uint64_t seed, int phase_points,
                                 spx_table** fringes, double* fitted_diff_deg,
                                 double* fitted_sigma_deg);

/* name: "fig1c", "fig2", "fig3" or "fig4"; writes CSV and/or SVG files into
 * out_dir. */
spx_status spx_reproduce_figure(const char* name, const spx_device* device,
                                const char* out_dir, int write_csv,
                                int write_svg);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SPECTATOR_C_H */
