/*
 * rcns: a numerical laboratory for the relaxed (Maxwell-type) compressible
 * Navier-Stokes system in Lagrangian coordinates.
 *
 * The library builds the viscous-shock + rarefaction composite wave of the
 * gamma-law p-system, evolves perturbed data with a stiff-relaxation
 * finite-volume scheme coupled to the weighted shift ODE, and measures
 * stability and relaxation-limit diagnostics.
 *
 * All entry points return rcns_status; every handle is opaque and owned by
 * the caller through the matching _free function. rcns_last_error() gives a
 * thread-local message for the most recent failure.
 */

#ifndef RCNS_H
#define RCNS_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rcns_status {
  RCNS_OK = 0,
  RCNS_ERR_INVALID_ARGUMENT = 1,
  RCNS_ERR_DOMAIN = 2,
  RCNS_ERR_CONFIG = 3,
  RCNS_ERR_NUMERIC = 4,
  RCNS_ERR_IO = 5,
  RCNS_ERR_UNSUPPORTED = 6
} rcns_status;

const char* rcns_status_name(rcns_status status);

/* Thread-local message describing the most recent error in this thread. */
const char* rcns_last_error(void);

/* ------------------------------------------------------------------ */
/* gamma-law gas model                                                  */
/* ------------------------------------------------------------------ */

typedef struct rcns_model rcns_model;

rcns_status rcns_model_create(double gamma, double mu, double tau, rcns_model** out);
void rcns_model_free(rcns_model* model);

/* d^order/dv^order of p(v) = v^(-gamma), order in 0..3 */
rcns_status rcns_pressure(const rcns_model* model, double v, int order, double* out);

/* relative quantity F(v|w); which is "pressure" or "potential" */
rcns_status rcns_relative_quantity(const rcns_model* model, const char* which, double v, double w,
                                   double* out);

/* lambda1 = -sqrt(-p'(v)), lambda2 = -lambda1, z1 = 1-Riemann invariant */
rcns_status rcns_characteristic_data(const rcns_model* model, double v, double u, double* lambda1,
                                     double* lambda2, double* z1);

/* speeds 0, -s, +s with s = sqrt(mu/tau - p'(v)); requires tau > 0 */
rcns_status rcns_characteristic_speeds(const rcns_model* model, double v, double* s0,
                                       double* s_minus, double* s_plus);

/* ------------------------------------------------------------------ */
/* composite wave                                                       */
/* ------------------------------------------------------------------ */

typedef struct rcns_waves rcns_waves;

/* Builds end states, the viscous shock profile and the approximate
 * rarefaction for 0 < v_minus <= v_m < v_plus. tol controls how close the
 * profile integration approaches the end states (pass 0 for the default). */
rcns_status rcns_waves_create(const rcns_model* model, double v_plus, double u_plus, double v_m,
                              double v_minus, double tol, rcns_waves** out);
void rcns_waves_free(rcns_waves* waves);

typedef struct rcns_end_states {
  double v_minus, u_minus;
  double v_m, u_m;
  double v_plus, u_plus;
  double sigma;
  double delta_S;
  double delta_R;
  double tail_rate;
} rcns_end_states;

rcns_status rcns_waves_end_states(const rcns_waves* waves, rcns_end_states* out);

/* profile values and xi-derivatives at one point: v,u,pi,v_xi,u_xi,pi_xi */
rcns_status rcns_waves_eval_shock(const rcns_waves* waves, double xi, double out[6]);

/* approximate rarefaction at (t, x): v,u,v_x,u_x,u_xx,u_xt */
rcns_status rcns_waves_eval_rarefaction(const rcns_waves* waves, double t, double x,
                                        double out[6]);

/* shifted composite at (t, xi) in the sigma-frame: v,u,pi */
rcns_status rcns_waves_eval_composite(const rcns_waves* waves, double t, double xi, double X,
                                      double out[3]);

/* CSV (header xi,v,u,pi) plus JSON metadata sidecar */
rcns_status rcns_waves_write_profile(const rcns_waves* waves, const char* csv_path,
                                     const char* json_path);

/* ------------------------------------------------------------------ */
/* experiments                                                          */
/* ------------------------------------------------------------------ */

typedef struct rcns_config rcns_config;

rcns_status rcns_config_load(const char* path, rcns_config** out);
rcns_status rcns_config_parse(const char* text, rcns_config** out);
void rcns_config_free(rcns_config* config);

/* Runs the configured experiment (or the forced mode: one of "profile",
 * "simulate", "stability", "relax-sweep", "entropy-check"; pass NULL to use
 * the config's experiment). formats is a comma list of csv,json,svg.
 * On success, *summary_json (if non-NULL) receives a malloc'd copy of the
 * summary document; release it with rcns_string_free. */
rcns_status rcns_experiment_run(const rcns_config* config, const char* out_dir,
                                const char* formats, int jobs, const char* forced_mode,
                                char** summary_json);

void rcns_string_free(char* str);

#ifdef __cplusplus
}
#endif

#endif /* RCNS_H */
