/* denmet: metrics on the density space of a finite-dimensional C*-algebra.
 *
 * The library models algebras M_{n_1} (+) ... (+) M_{n_K} with a faithful
 * weighted trace and exposes three metrics on the trace-one positive cone:
 * the C*-norm metric, the Bures metric, and the seminorm-induced
 * Monge-Kantorovich (quantum) metric on commutative shapes.
 *
 * Every function returns DM_OK or an error code; dm_last_error() carries a
 * thread-local description of the most recent failure. Handles are created
 * and released by the matching dm_*_free call.
 */
#ifndef DENMET_H
#define DENMET_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dm_status {
  DM_OK = 0,
  DM_ERR_BAD_ARGUMENT = 1,
  DM_ERR_SHAPE_MISMATCH = 2,
  DM_ERR_NOT_HERMITIAN = 3,
  DM_ERR_NOT_POSITIVE = 4,
  DM_ERR_DEGENERATE = 5,
  DM_ERR_DOMAIN = 6,
  DM_ERR_SEMINORM_RANK = 7,
  DM_ERR_NO_CONVERGENCE = 8,
  DM_ERR_NUMERIC = 9,
  DM_ERR_RESAMPLE = 10,
  DM_ERR_PARSE = 11,
  DM_ERR_IO = 12,
  DM_ERR_INTERNAL = 13
} dm_status;

/* algebra = block dimensions plus strictly positive trace weights */
typedef struct dm_algebra dm_algebra;
/* block-diagonal complex matrix over an algebra's shape */
typedef struct dm_element dm_element;
/* max-of-functionals seminorm on a commutative shape */
typedef struct dm_seminorm dm_seminorm;
/* piecewise polynomial on [0, 1] */
typedef struct dm_pwfunc dm_pwfunc;

const char* dm_version(void);

/* Description of the most recent failure on this thread; never NULL. */
const char* dm_last_error(void);

/* Frees strings returned through char** out-parameters. */
void dm_string_free(char* s);

/* ---- algebra ---------------------------------------------------------- */

dm_status dm_algebra_create(const int32_t* block_dims, size_t block_count,
                            const double* weights, dm_algebra** out);
void dm_algebra_free(dm_algebra* a);
size_t dm_algebra_block_count(const dm_algebra* a);

/* ---- elements --------------------------------------------------------- */

dm_status dm_element_identity(const dm_algebra* a, dm_element** out);
/* One value per diagonal slot across all blocks (n_1 + ... + n_K values). */
dm_status dm_element_diagonal(const dm_algebra* a, const double* entries, size_t count,
                              dm_element** out);
dm_status dm_element_from_json(const dm_algebra* a, const char* json_text, dm_element** out);
dm_status dm_element_to_json(const dm_element* e, char** out_json);
void dm_element_free(dm_element* e);

dm_status dm_element_add(const dm_element* a, const dm_element* b, dm_element** out);
dm_status dm_element_scale(const dm_element* a, double re, double im, dm_element** out);
dm_status dm_element_mul(const dm_element* a, const dm_element* b, dm_element** out);
dm_status dm_element_adjoint(const dm_element* a, dm_element** out);

dm_status dm_cstar_norm(const dm_element* a, double* out);
dm_status dm_cstar_distance(const dm_element* a, const dm_element* b, double* out);
dm_status dm_trace_eval(const dm_algebra* alg, const dm_element* a, double* out_re,
                        double* out_im);
dm_status dm_tau_norm(const dm_algebra* alg, const dm_element* a, double* out);

/* is_positive gets 1 or 0; min_eig carries the certificate either way. */
dm_status dm_check_positive(const dm_element* a, double tolerance, int* is_positive,
                            double* min_eig);

/* sqrt of a positive element / |a| = sqrt(a* a) */
dm_status dm_matrix_sqrt(const dm_element* a, dm_element** out);
dm_status dm_matrix_abs(const dm_element* a, dm_element** out);

/* ---- densities and metrics ------------------------------------------- */

/* Scales a positive element to trace one. */
dm_status dm_normalize_to_density(const dm_algebra* alg, const dm_element* a, dm_element** out);
/* b*b / tau(b*b) for Gaussian b; deterministic in the seed. */
dm_status dm_sample_density(const dm_algebra* alg, uint64_t seed, dm_element** out);

dm_status dm_bures_distance(const dm_algebra* alg, const dm_element* x, const dm_element* y,
                            double* out);
/* Diagonal-case closed form; commutative shapes only. */
dm_status dm_bures_commutative_closed_form(const dm_algebra* alg, const dm_element* x,
                                           const dm_element* y, double* out);

/* functionals: row-major count x n, every row summing to zero */
dm_status dm_seminorm_create(const dm_algebra* alg, const double* functionals, size_t count,
                             dm_seminorm** out);
/* L(x) = |x_1 - x_2| on C^2. */
dm_status dm_seminorm_difference_c2(dm_seminorm** out);
void dm_seminorm_free(dm_seminorm* s);
dm_status dm_seminorm_eval(const dm_seminorm* s, const dm_element* a, double* out);

/* Monge-Kantorovich distance between the states of densities x and y. */
dm_status dm_mk_distance(const dm_algebra* alg, const dm_seminorm* s, const dm_element* x,
                         const dm_element* y, double* out);

/* ---- piecewise functions on [0, 1] ------------------------------------ */

dm_status dm_pwfunc_constant(double value, dm_pwfunc** out);
/* The ramp family member f_n (unit integral, sup-distance 1 from the
 * constant one, Bures distance ~ 1/sqrt(n)). */
dm_status dm_pwfunc_ramp(int32_t n, dm_pwfunc** out);
void dm_pwfunc_free(dm_pwfunc* f);

dm_status dm_pwfunc_eval(const dm_pwfunc* f, double x, double* out);
dm_status dm_pwfunc_lebesgue_trace(const dm_pwfunc* f, double* out);
dm_status dm_pwfunc_uniform_distance(const dm_pwfunc* f, const dm_pwfunc* g, double* out);
/* target_abs_error <= 0 picks the default 1e-10. */
dm_status dm_pwfunc_bures_distance(const dm_pwfunc* f, const dm_pwfunc* g,
                                   double target_abs_error, double* out);

/* ---- experiments ------------------------------------------------------ */

/* Runs a named experiment from a JSON config:
 *   {"experiment": "strict-fineness" | "c2-inequivalence" | "equivalence-suite"
 *                | "property-suites" | "ramp-plot",
 *    "format": "csv"|"json", "seed": u64, "trials": int, "nmax": int,
 *    "kmax": int, "grid": int, "tolerance": double}
 * Only "experiment" is required. The result JSON carries
 *   {"status": "ok"|"assertion_failed"|"usage_error", "exit_code": 0|1|2,
 *    "format": ..., "artifact": <file body>, "messages": [...]}.
 * Returns DM_OK whenever a result was produced, including failed runs. */
dm_status dm_experiment_run(const char* config_json, char** out_result_json);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* DENMET_H */
