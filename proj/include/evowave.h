/* evowave.h — C interface of the evowave shared library.
 *
 * A session holds a parsed configuration, a probe seed and an output
 * directory. Commands write their files into the output directory and leave
 * a human-readable summary retrievable via ew_session_report(). Every entry
 * point returns an ew_status; EW_FAIL means the command ran but its check did
 * not pass, codes >= EW_ERR_ARGUMENT are errors with a message available via
 * ew_session_last_error().
 */
#ifndef EVOWAVE_H
#define EVOWAVE_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ew_status {
  EW_OK = 0,
  EW_FAIL = 1,
  EW_ERR_ARGUMENT = 2,
  EW_ERR_PARSE = 3,
  EW_ERR_CERTIFY = 4,
  EW_ERR_SOLVER = 5,
  EW_ERR_IO = 6,
  EW_ERR_INTERNAL = 7
} ew_status;

typedef struct ew_session ew_session;

const char* ew_version(void);
const char* ew_status_name(ew_status status);

ew_status ew_session_create(ew_session** out);
void ew_session_destroy(ew_session* session);

ew_status ew_session_load_config_file(ew_session* session, const char* path);
ew_status ew_session_load_config_string(ew_session* session, const char* text);
ew_status ew_session_set_seed(ew_session* session, uint64_t seed);
ew_status ew_session_set_output_dir(ew_session* session, const char* dir);

/* Time integration of the configured problem; writes energy.csv, snapshot
 * files, interface_residuals.csv and manifest.txt. */
ew_status ew_session_run(ew_session* session);

/* Adjoint and skew probes over every operator built for the configured grid;
 * writes defects.csv. *max_defect receives the worst defect. */
ew_status ew_session_check_adjoint(ew_session* session, double* max_defect);

/* Positivity certification of the configured material; writes positivity.csv
 * and rho_sweep.csv. *c0 receives the certified constant. */
ew_status ew_session_check_positivity(ew_session* session, double* c0);

/* Dyadic space/time refinement study; writes convergence.csv.
 * *temporal_order receives the observed temporal order. */
ew_status ew_session_convergence(ew_session* session, int levels,
                                 double* temporal_order);

/* Emits the two order-dependent window descendants (dense CSV) and their
 * difference support; needs no configuration. */
ew_status ew_session_demo_order_dependence(ew_session* session, long n);

/* Summary text of the last command; owned by the session. */
const char* ew_session_report(const ew_session* session);

/* Message of the last failing call; owned by the session. */
const char* ew_session_last_error(const ew_session* session);

#ifdef __cplusplus
}
#endif

#endif /* EVOWAVE_H */
