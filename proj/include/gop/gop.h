/* C API for the gop shared library: benchmark problems, optimization runs,
 * and trace access behind opaque handles. All functions returning gop_status
 * report GOP_OK (0) on success; gop_last_error_message() describes the most
 * recent failure on the calling thread. */

#ifndef GOP_GOP_H
#define GOP_GOP_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gop_status {
  GOP_OK = 0,
  GOP_ERR_INVALID_ARGUMENT = 1,
  GOP_ERR_DUPLICATE_POINT = 2,
  GOP_ERR_SINGULAR_SYSTEM = 3,
  GOP_ERR_DEGENERATE_DATA = 4,
  GOP_ERR_NO_NEW_POINT = 5,
  GOP_ERR_NON_FINITE_VALUE = 6,
  GOP_ERR_INTERNAL = 7
} gop_status;

typedef enum gop_run_outcome {
  GOP_RUN_BUDGET_EXHAUSTED = 0,
  GOP_RUN_TARGET_REACHED = 1,
  GOP_RUN_STALLED = 2,
  GOP_RUN_NO_NEW_POINT = 3
} gop_run_outcome;

#define GOP_MAX_DIM 16

typedef struct gop_run_config {
  const char* problem;  /* builtin problem name */
  const char* method;   /* "rbf" | "kriging_pi" | "kriging_ei" */
  const char* kernel;   /* rbf only; "linear" | "cubic" | "thin_plate_spline"
                         * | "multiquadric" | "gaussian" */
  double gamma;         /* gaussian / multiquadric shape parameter */
  int budget;           /* total objective evaluations */
  uint64_t seed;
  int cycle_length;     /* target cycle length N; 0 means default (5) */
  double noise;         /* expfit_inverse data noise amplitude */
} gop_run_config;

typedef struct gop_trace_record {
  int iteration;
  int dim;
  double point[GOP_MAX_DIM];
  double value;
  double best_value;
  int has_target;
  double target;
  double acquisition_score;
  int64_t wall_time_ms;
} gop_trace_record;

/* Opaque handle to a completed run. */
typedef struct gop_run gop_run;

/* --- builtin problems -------------------------------------------------- */

size_t gop_problem_count(void);
/* Returns NULL when index is out of range. The string stays valid for the
 * lifetime of the process. */
const char* gop_problem_name(size_t index);
/* Dimension of the named problem, or 0 when unknown. */
int gop_problem_dim(const char* name);

/* --- runs -------------------------------------------------------------- */

/* Executes a full optimization run. On success *out owns the trace; release
 * with gop_run_free. */
gop_status gop_run_execute(const gop_run_config* config, gop_run** out);
void gop_run_free(gop_run* run);

gop_run_outcome gop_run_result(const gop_run* run);
size_t gop_run_num_records(const gop_run* run);
gop_status gop_run_record(const gop_run* run, size_t index,
                          gop_trace_record* out);
gop_status gop_run_best(const gop_run* run, double* best_value,
                        double* best_point, int* dim, int* evals);
int64_t gop_run_wall_ms(const gop_run* run);

/* Writes the run trace as CSV (header iter,x1..xd,f,best_f,target,acq_score,
 * wall_ms). Byte-identical across runs with identical configuration. */
gop_status gop_run_write_csv(const gop_run* run, const char* path);

/* --- diagnostics ------------------------------------------------------- */

/* Message of the last failure on this thread; empty string when none. */
const char* gop_last_error_message(void);

#ifdef __cplusplus
}
#endif

#endif /* GOP_GOP_H */
