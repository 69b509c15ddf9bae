#ifndef LOGBLOCK_H
#define LOGBLOCK_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes returned by every fallible entry point. */
typedef enum lcf_status {
  LCF_OK = 0,
  LCF_ERR_DOMAIN = 1,           /* singular input: origin, r = 0, zero momentum */
  LCF_ERR_INFEASIBLE = 2,       /* energy below the floor or radius outside the allowed region */
  LCF_ERR_INVALID_ARGUMENT = 3, /* malformed options, unknown enum value, null pointer */
  LCF_ERR_STEP_UNDERFLOW = 4,   /* integrator step size shrank below machine resolution */
  LCF_ERR_MAX_STEPS = 5,        /* step budget exhausted before the requested span */
  LCF_ERR_NONFINITE = 6,        /* non-finite state encountered during integration */
  LCF_ERR_INTERNAL = 7
} lcf_status;

const char *lcf_status_message(lcf_status code);

/* Coordinate charts and their state layout in transform/simulate calls:
 *   cartesian:   qx, qy, px, py
 *   polar:       r, theta, p_r, p_theta
 *   regularized: r, phi, psi, w
 */
typedef enum lcf_chart {
  LCF_CHART_CARTESIAN = 0,
  LCF_CHART_POLAR = 1,
  LCF_CHART_REGULARIZED = 2
} lcf_chart;

/* Adaptive integrator controls.  Initialize with lcf_options_init. */
typedef struct lcf_options {
  double rel_tol;      /* default 1e-12 */
  double abs_tol;      /* default 1e-12 */
  double initial_step; /* 0 = automatic */
  double max_step;     /* 0 = unlimited */
  double max_span;     /* horizon for block-map runs, default 200 */
  long max_steps;      /* default 10000000 */
} lcf_options;

void lcf_options_init(lcf_options *opt);

/* ---- scalar operations ------------------------------------------------ */

lcf_status lcf_energy(const double q[2], const double p[2], double *energy);
lcf_status lcf_angular_momentum(const double q[2], const double p[2], double *c);
lcf_status lcf_h_min(double c, double *h_min);
lcf_status lcf_hill_bounds(double h, double c, double *r_min, double *r_max);
lcf_status lcf_w_from_energy(double r, double h, double *w);
lcf_status lcf_extended_momentum(const double reg_state[4], double *c);
lcf_status lcf_transform(lcf_chart from, lcf_chart to, const double in[4],
                         double out[4]);

/* ---- trajectory simulation --------------------------------------------- */

typedef struct lcf_trajectory lcf_trajectory; /* opaque */

/* Integrates the requested chart over `span` in its own flow parameter
 * (t for cartesian/polar, tau for regularized).  For the regularized chart
 * `h` selects the energy level; pass w = NAN in state[3] to complete the
 * state from the energy relation.  Rows hold the flow parameter, the state,
 * the energy and momentum residuals, and (regularized chart only) the
 * accumulated physical time. */
lcf_status lcf_simulate(lcf_chart chart, const double state[4], double h,
                        double span, const lcf_options *opt,
                        lcf_trajectory **out);

size_t lcf_trajectory_rows(const lcf_trajectory *traj);
size_t lcf_trajectory_cols(const lcf_trajectory *traj);
const char *lcf_trajectory_column(const lcf_trajectory *traj, size_t col);
double lcf_trajectory_value(const lcf_trajectory *traj, size_t row, size_t col);
void lcf_trajectory_free(lcf_trajectory *traj);

/* ---- isolating block --------------------------------------------------- */

typedef enum lcf_exit_status {
  LCF_EXIT_EXITED = 0,
  LCF_EXIT_ASYMPTOTIC = 1,
  LCF_EXIT_HORIZON = 2
} lcf_exit_status;

typedef struct lcf_exit_record {
  double phi0, psi0; /* entry angles on the boundary r = delta */
  double tau_exit;   /* INFINITY for asymptotic entries, NAN past the horizon */
  double phi_exit, psi_exit;
  double drift;    /* accumulated integral of r^2 sin(phi) across the block */
  double momentum; /* extended angular momentum of the orbit */
  int status;      /* lcf_exit_status */
} lcf_exit_record;

lcf_status lcf_block_default_delta(double h, double *delta);
lcf_status lcf_block_check(double h, double delta, double *w_delta);
lcf_status lcf_block_map(double h, double delta, double phi0, double psi0,
                         const lcf_options *opt, lcf_exit_record *out);

/* ---- verification ------------------------------------------------------ */

/* Runs a named check suite ("conservation", "transforms", "wilson_yorke",
 * "block_map", "lemmas" or "all") and returns a JSON report.  The report
 * string is heap-allocated; release it with lcf_string_free.  *all_passed
 * is set to 1 iff every check in the suite passed. */
lcf_status lcf_verify(const char *suite, const lcf_options *opt, int jobs,
                      char **report_json, int *all_passed);
void lcf_string_free(char *s);

#ifdef __cplusplus
}
#endif

#endif /* LOGBLOCK_H */
