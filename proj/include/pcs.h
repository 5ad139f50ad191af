/* Path-based coflow scheduling toolkit: C API.
 *
 * The library computes an LP lower bound for weighted coflow completion on
 * node-capacitated networks, schedules the flows within a proven factor of
 * that bound, validates schedules, and certifies the guarantees against an
 * exact oracle on small instances.
 *
 * All functions return PCS_OK on success; on failure, pcs_last_error() gives
 * a thread-local description. Strings produced by the library are owned by
 * the caller and must be released with pcs_string_free(). Handles are opaque
 * and freed with their matching *_free function.
 */
#ifndef PCS_H
#define PCS_H

#include <stdint.h>

#if defined(_WIN32)
#  define PCS_API __declspec(dllexport)
#else
#  define PCS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pcs_status {
  PCS_OK = 0,
  PCS_EINVAL = 1,     /* bad argument (null pointer, bad enum value) */
  PCS_EPARSE = 2,     /* malformed document */
  PCS_EVALIDATION = 3,/* instance violates an invariant or precondition */
  PCS_ECAP = 4,       /* a size cap was exceeded */
  PCS_EITER = 5,      /* an iteration cap was hit (numerical trouble) */
  PCS_EIO = 6,        /* file could not be read or written */
  PCS_EINTERNAL = 7   /* broken internal contract */
} pcs_status;

typedef struct pcs_instance pcs_instance;
typedef struct pcs_result pcs_result;

PCS_API const char *pcs_status_name(pcs_status s);
PCS_API const char *pcs_last_error(void);
PCS_API void pcs_string_free(char *s);
PCS_API void pcs_instance_free(pcs_instance *inst);
PCS_API void pcs_result_free(pcs_result *res);

/* --- instances ---------------------------------------------------------- */

/* Parses a JSON instance document. Edge-capacitated documents (an "edges"
 * key with flow paths given as edge-index lists) are converted to the
 * node-capacitated form by splitting every edge. */
PCS_API pcs_status pcs_instance_from_json(const char *text, pcs_instance **out);
PCS_API pcs_status pcs_instance_load(const char *path, pcs_instance **out);
PCS_API pcs_status pcs_instance_to_json(const pcs_instance *inst, char **out);
PCS_API pcs_status pcs_instance_save(const pcs_instance *inst, const char *path);

/* Semantic validation report. *ok is 1 when all invariants hold; *report
 * (optional) receives one violation per line, or an empty string. */
PCS_API pcs_status pcs_instance_validate(const pcs_instance *inst, int *ok,
                                         char **report);

/* Parses and validates a document in one step without constructing a handle;
 * as_json selects the report format. *ok covers parse and validation. */
PCS_API pcs_status pcs_validate_file(const char *path, int as_json,
                                     char **report, int *ok);

/* lambda: most nodes on any flow path; lambda_finite counts only
 * finite-capacity nodes. total_units is the summed demand. */
PCS_API pcs_status pcs_instance_stats(const pcs_instance *inst, int32_t *lambda,
                                      int32_t *lambda_finite,
                                      int64_t *total_units, int32_t *n_coflows,
                                      int32_t *n_nodes);

/* --- generators --------------------------------------------------------- */

PCS_API pcs_status pcs_gen_triangle(pcs_instance **out);
PCS_API pcs_status pcs_gen_quad(pcs_instance **out);
/* graph: k3 | k4 | c5 | petersen */
PCS_API pcs_status pcs_gen_coloring(const char *graph, pcs_instance **out);
PCS_API pcs_status pcs_gen_random(int64_t n_coflows, int64_t n_nodes,
                                  int64_t max_flows, int64_t max_path,
                                  int64_t max_demand, int64_t max_release,
                                  int64_t max_capacity, uint64_t seed,
                                  pcs_instance **out);
PCS_API pcs_status pcs_gen_bipartite(int64_t n_ports, int64_t n_coflows,
                                     double density, int64_t max_demand,
                                     int64_t max_release, uint64_t seed,
                                     pcs_instance **out);

/* --- solving ------------------------------------------------------------ */

typedef struct pcs_solve_options {
  int lp_mode;           /* 0 general, 1 bipartite */
  int deadline_mode;     /* 0 standard, 1 improved */
  int force_general;     /* nonzero: capacity-aware scheduler even for unit caps */
  int with_oracle;       /* nonzero: also compute the exact optimum */
  int oracle_required;   /* nonzero: fail instead of skipping over the cap */
  int64_t oracle_unit_cap; /* 0 = default (12) */
  int64_t expansion_cap;   /* 0 = default (100000) */
  int32_t cut_round_cap;   /* 0 = default (1000) */
  double tolerance;        /* 0 = default (1e-6) */
} pcs_solve_options;

PCS_API void pcs_solve_options_init(pcs_solve_options *opts);

PCS_API pcs_status pcs_solve(const pcs_instance *inst,
                             const pcs_solve_options *opts, pcs_result **out);

PCS_API pcs_status pcs_result_report(const pcs_result *res, int as_json,
                                     char **out);
PCS_API pcs_status pcs_result_schedule_json(const pcs_result *res, char **out);
PCS_API double pcs_result_lp_objective(const pcs_result *res);
PCS_API double pcs_result_objective(const pcs_result *res);
PCS_API double pcs_result_bound(const pcs_result *res);
/* 1 when every bound and feasibility check of the run held. */
PCS_API int pcs_result_checks_ok(const pcs_result *res);

/* --- exact oracle ------------------------------------------------------- */

/* Provably optimal objective for instances with at most unit_cap demand
 * units (0 = default 12). schedule_json (optional) receives the schedule. */
PCS_API pcs_status pcs_oracle(const pcs_instance *inst, int64_t unit_cap,
                              double *objective, char **schedule_json);

/* --- certification ------------------------------------------------------ */

typedef struct pcs_certify_options {
  const char *profile; /* small|capacities|bipartite|examples|reductions|kernels|all */
  uint64_t seed_lo;
  uint64_t seed_hi;
  int deadline_modes;  /* 0 standard, 1 improved, 2 both */
  int64_t oracle_unit_cap; /* 0 = default (12) */
} pcs_certify_options;

PCS_API void pcs_certify_options_init(pcs_certify_options *opts);

/* Generates, solves and cross-checks a batch of instances. *all_passed is 1
 * when every check held; the report lists one line per item. */
PCS_API pcs_status pcs_certify(const pcs_certify_options *opts, int as_json,
                               char **report, int *all_passed);

#ifdef __cplusplus
}
#endif

#endif /* PCS_H */
