/* C interface of the sglab library.
 *
 * Every function returns an sglab_status; on failure sglab_last_error()
 * holds a message for the calling thread. Objects behind opaque handles are
 * released with the matching *_free function. */
#ifndef SGLAB_H
#define SGLAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(SGLAB_BUILDING_LIBRARY)
#define SGLAB_API __attribute__((visibility("default")))
#else
#define SGLAB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sglab_status {
  SGLAB_OK = 0,
  SGLAB_INVALID_ARGUMENT = 1,
  SGLAB_PRECONDITION_VIOLATION = 2,
  SGLAB_TAIL_NOT_CONVERGED = 3,
  SGLAB_POLE_ERROR = 4,
  SGLAB_DENOMINATOR_ZERO = 5,
  SGLAB_DIVERGENCE = 6,
  SGLAB_CFL_VIOLATION = 7,
  SGLAB_LINEAR_SOLVE = 8,
  SGLAB_GRID_MISMATCH = 9,
  SGLAB_NO_CONVERGENCE = 10,
  SGLAB_DOMAIN_ERROR = 11,
  SGLAB_DEGENERATE_FIT = 12,
  SGLAB_GRID_NOT_CONVERGED = 13,
  SGLAB_IO = 14,
  SGLAB_INTERNAL = 99
} sglab_status;

SGLAB_API const char* sglab_status_name(sglab_status s);
SGLAB_API const char* sglab_last_error(void);

/* model ------------------------------------------------------------------ */

typedef struct sglab_params {
  double ell;
  double alpha;
  double eps;
  double gamma;   /* constant forcing */
  double horizon; /* final time T */
} sglab_params;

typedef struct sglab_policy {
  uint64_t max_modes;
  double tail_tol;
} sglab_policy;

SGLAB_API sglab_params sglab_default_params(void);
SGLAB_API sglab_policy sglab_default_policy(void);

/* for_estimates != 0 also checks 0 < alpha < 1 and 0 < eps < 1 */
SGLAB_API sglab_status sglab_validate_params(const sglab_params* p, int for_estimates);

/* spectral kernel -------------------------------------------------------- */

typedef enum sglab_regime {
  SGLAB_REGIME_HYPERBOLIC = 0,
  SGLAB_REGIME_TRIGONOMETRIC = 1,
  SGLAB_REGIME_DEGENERATE = 2
} sglab_regime;

typedef struct sglab_mode {
  uint64_t n;
  double gamma_n;
  double h_n;
  double disc;
  double freq;
  sglab_regime regime;
} sglab_mode;

typedef struct sglab_split {
  int defined;
  uint64_t n1;
  uint64_t n2;
  double lower;
  double upper;
} sglab_split;

typedef struct sglab_series {
  double value;
  double tail;
  uint64_t modes;
} sglab_series;

typedef struct sglab_decay_point {
  double t;
  double sum_h;
  double tail;
  uint64_t modes;
  double envelope;
  double ratio;
  double envelope_min;
  double ratio_min;
} sglab_decay_point;

SGLAB_API const char* sglab_regime_name(sglab_regime r);
SGLAB_API sglab_status sglab_mode_data(const sglab_params* p, uint64_t n, sglab_mode* out);
SGLAB_API sglab_status sglab_regime_split(const sglab_params* p, sglab_split* out);
SGLAB_API sglab_status sglab_kernel_mode(const sglab_params* p, uint64_t n, double t, double* out);
SGLAB_API sglab_status sglab_tail_start(const sglab_params* p, uint64_t* out);
SGLAB_API sglab_status sglab_tail_bound(const sglab_params* p, uint64_t N, double t, double* out);
SGLAB_API sglab_status sglab_modes_needed(const sglab_params* p, double t,
                                          const sglab_policy* policy, uint64_t* out);
SGLAB_API sglab_status sglab_theta_sum(const sglab_params* p, double x, double xi, double t,
                                       const sglab_policy* policy, sglab_series* out);
SGLAB_API sglab_status sglab_kernel_sum(const sglab_params* p, double t,
                                        const sglab_policy* policy, uint64_t first,
                                        sglab_series* out);
SGLAB_API sglab_status sglab_green(const sglab_params* p, double x, double xi, double t,
                                   const sglab_policy* policy, sglab_series* out);
SGLAB_API sglab_status sglab_envelope_rate(const sglab_params* p, int use_min, double* out);
/* out must hold n points */
SGLAB_API sglab_status sglab_decay_profile(const sglab_params* p, const double* t, size_t n,
                                           const sglab_policy* policy, sglab_decay_point* out);
SGLAB_API sglab_status sglab_circular_difference(const sglab_params* p, uint64_t n, double t,
                                               double* out);

/* exact solutions -------------------------------------------------------- */

typedef enum sglab_family_kind {
  SGLAB_FAMILY_GAMMA0 = 0,
  SGLAB_FAMILY_GAMMA1 = 1,
  SGLAB_FAMILY_BASIC = 2
} sglab_family_kind;

typedef struct sglab_family {
  sglab_family_kind kind;
  double alpha;
  double r0; /* pole position of the GAMMA1 profile, unused otherwise */
} sglab_family;

SGLAB_API const char* sglab_family_name(sglab_family_kind k);
/* accepts "gamma0", "gamma1", "basic" */
SGLAB_API sglab_status sglab_family_parse(const char* name, sglab_family_kind* out);
SGLAB_API sglab_status sglab_family_gamma(sglab_family_kind k, double* out);
SGLAB_API sglab_status sglab_pi_transform(double f, double* out);
SGLAB_API sglab_status sglab_kink_value(const sglab_family* fam, double x, double t, double* out);
SGLAB_API sglab_status sglab_ode_rhs_check(const sglab_family* fam, double xi, double* out);
SGLAB_API sglab_status sglab_u_xxt_basic(double alpha, double x, double t, double* out);
SGLAB_API sglab_status sglab_boundedness_certificate(double alpha, double* out);
/* max |residual| of the family solution on an nx x nt evaluation grid */
SGLAB_API sglab_status sglab_kink_residual(const sglab_family* fam, const sglab_params* p,
                                           double x0, double x1, size_t nx, double t0,
                                           double t1, size_t nt, double h_fd, double* out);

/* fields ----------------------------------------------------------------- */

typedef struct sglab_field sglab_field;

typedef enum sglab_solver {
  SGLAB_SOLVER_PARABOLIC = 0,
  SGLAB_SOLVER_HYPERBOLIC = 1,
  SGLAB_SOLVER_MEMORY = 2
} sglab_solver;

typedef enum sglab_data_kind {
  SGLAB_DATA_KINK = 0,     /* h0, h1, phi0, phi1 taken from the family solution */
  SGLAB_DATA_CONSTANT = 1  /* h0 = value, h1 = phi0 = phi1 = 0 */
} sglab_data_kind;

typedef struct sglab_data {
  sglab_data_kind kind;
  sglab_family family;
  double value;
} sglab_data;

typedef struct sglab_solve_options {
  int enforce_cfl;
  double divergence_limit;
} sglab_solve_options;

SGLAB_API const char* sglab_solver_name(sglab_solver s);
/* accepts "parabolic", "hyperbolic", "memory" */
SGLAB_API sglab_status sglab_solver_parse(const char* name, sglab_solver* out);
SGLAB_API sglab_solve_options sglab_default_solve_options(void);

/* Grid: nx nodes on [0, p->ell], nt steps on [0, p->horizon]. opts may be NULL. */
SGLAB_API sglab_status sglab_solve(const sglab_params* p, const sglab_data* data, size_t nx,
                                   size_t nt, sglab_solver solver,
                                   const sglab_solve_options* opts, sglab_field** out);
SGLAB_API sglab_status sglab_exact_field(const sglab_family* fam, const sglab_params* p,
                                         size_t nx, size_t nt, sglab_field** out);
SGLAB_API sglab_status sglab_corner_defect(const sglab_params* p, const sglab_data* data,
                                           double* out);
/* Picard iteration for the remainder against the Basic kink with alpha = p->alpha.
 * increments may be NULL; otherwise up to capacity values are copied. */
SGLAB_API sglab_status sglab_picard_basic(const sglab_params* p, size_t nx, size_t nt,
                                          const sglab_policy* policy, size_t max_iter,
                                          double tol, sglab_field** out, size_t* iterations,
                                          double* increments, size_t capacity);
SGLAB_API void sglab_field_free(sglab_field* f);

SGLAB_API sglab_status sglab_field_dims(const sglab_field* f, size_t* nx, size_t* nt,
                                        double* dx, double* dt);
SGLAB_API sglab_status sglab_field_value(const sglab_field* f, size_t i, size_t k, double* out);
/* level-major: values[k * nx + i] */
SGLAB_API const double* sglab_field_data(const sglab_field* f);
SGLAB_API sglab_status sglab_remainder(const sglab_field* u, const sglab_field* U,
                                       sglab_field** out);
/* S(t_k) = max_i |f(x_i, t_k)|; out must hold nt + 1 values */
SGLAB_API sglab_status sglab_sup_profile(const sglab_field* f, double* out);
SGLAB_API sglab_status sglab_max_diff_on_coarse(const sglab_field* coarse,
                                                const sglab_field* fine, double* out);
SGLAB_API sglab_status sglab_field_write_csv(const sglab_field* f, const char* path,
                                             size_t save_every);
SGLAB_API sglab_status sglab_field_read_csv(const char* path, sglab_field** out);

/* estimates -------------------------------------------------------------- */

typedef struct sglab_report sglab_report;

SGLAB_API sglab_status sglab_gronwall_bound(double C, double B, double m, double alpha,
                                            double k, double eps, double* out);
SGLAB_API sglab_status sglab_fit_exponent(const double* eps, const double* values, size_t n,
                                          double* out);

/* A NULL list (or n == 0) selects the default sweep or grid. */
typedef struct sglab_sweep_list {
  const double* values;
  size_t n;
} sglab_sweep_list;

SGLAB_API sglab_status sglab_envelope_check(const sglab_params* base, sglab_sweep_list eps,
                                            sglab_sweep_list t_grid, const sglab_policy* policy,
                                            double uniformity_factor, sglab_report** out);

typedef struct sglab_lemma_constants {
  double eta;
  double h;
  double k;
} sglab_lemma_constants;

SGLAB_API sglab_status sglab_lemma_checks(const sglab_params* base, sglab_sweep_list eps,
                                          sglab_sweep_list t_grid,
                                          const sglab_lemma_constants* constants,
                                          uint64_t tail_modes, double uniformity_factor,
                                          sglab_report** out);

typedef struct sglab_sweep_config {
  double k;
  double window_start;
  size_t nx0;
  size_t nx_max;
  double courant;
  double stabilization;
  double ratio_limit;
} sglab_sweep_config;

SGLAB_API sglab_sweep_config sglab_default_sweep_config(void);
SGLAB_API sglab_status sglab_boundary_layer_sweep(const sglab_params* base, sglab_sweep_list eps,
                                                  const sglab_family* fam,
                                                  const sglab_sweep_config* config,
                                                  sglab_report** out);
SGLAB_API sglab_status sglab_memory_experiment(const sglab_params* p, size_t nx, size_t nt,
                                               double amplitude, sglab_report** out);

SGLAB_API int sglab_report_passed(const sglab_report* r);
/* Strings are owned by the report and live until sglab_report_free.
 * indent != 0 selects two-space pretty printing. */
SGLAB_API const char* sglab_report_json(const sglab_report* r, int indent);
SGLAB_API size_t sglab_report_table_count(const sglab_report* r);
SGLAB_API const char* sglab_report_table_name(const sglab_report* r, size_t i);
/* NULL when the report has no such table */
SGLAB_API const char* sglab_report_table(const sglab_report* r, const char* name);
SGLAB_API void sglab_report_free(sglab_report* r);

#ifdef __cplusplus
}
#endif

#endif
