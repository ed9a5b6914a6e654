#ifndef NSPSD_NSPSD_H
#define NSPSD_NSPSD_H

/* Non-symmetric PSD Procrustes solver: min ||A X - B||_F over A with A + A^T
 * positive semidefinite (A + A^* for complex data).
 *
 * All objects are opaque handles owned by the caller and released with the
 * matching *_destroy function. Every call that can fail returns an
 * nspsd_status; the message of the most recent failure on the calling thread
 * is available from nspsd_last_error(). */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define NSPSD_API __declspec(dllexport)
#else
#define NSPSD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nspsd_status {
  NSPSD_OK = 0,
  NSPSD_INVALID_ARGUMENT = 1,
  NSPSD_DIMENSION_MISMATCH = 2,
  NSPSD_PARSE_ERROR = 3,
  NSPSD_IO_ERROR = 4,
  NSPSD_FACTORIZATION_FAILURE = 5,
  NSPSD_UNSUPPORTED_SHAPE = 6,
  NSPSD_CONTRACT_VIOLATION = 7,
  NSPSD_DEGENERATE_PROBLEM = 8,
  NSPSD_INTERNAL_ERROR = 9
} nspsd_status;

typedef enum nspsd_init {
  NSPSD_INIT_BLOCK_DIAGONAL = 0,
  NSPSD_INIT_SCALED_IDENTITY = 1,
  NSPSD_INIT_USER = 2
} nspsd_init;

typedef enum nspsd_completion {
  NSPSD_COMPLETION_EXACT_SKEW = 0,
  NSPSD_COMPLETION_EPSILON_FAMILY = 1
} nspsd_completion;

typedef struct nspsd_matrix nspsd_matrix;
typedef struct nspsd_options nspsd_options;
typedef struct nspsd_result nspsd_result;
typedef struct nspsd_bench nspsd_bench;

NSPSD_API const char* nspsd_version(void);
NSPSD_API const char* nspsd_status_string(nspsd_status status);
/* Thread-local; empty when the last call on this thread succeeded. */
NSPSD_API const char* nspsd_last_error(void);

/* ---- matrices ---------------------------------------------------------- */

/* Zero-filled matrix. */
NSPSD_API nspsd_status nspsd_matrix_create(size_t rows, size_t cols, int is_complex,
                                           nspsd_matrix** out);
/* Copies row-major data; imag may be NULL for a real matrix. */
NSPSD_API nspsd_status nspsd_matrix_from_rowmajor(size_t rows, size_t cols, const double* real,
                                                  const double* imag, nspsd_matrix** out);
NSPSD_API void nspsd_matrix_destroy(nspsd_matrix* m);
NSPSD_API size_t nspsd_matrix_rows(const nspsd_matrix* m);
NSPSD_API size_t nspsd_matrix_cols(const nspsd_matrix* m);
NSPSD_API int nspsd_matrix_is_complex(const nspsd_matrix* m);
/* imag may be NULL; it is set to 0 for real matrices. */
NSPSD_API nspsd_status nspsd_matrix_get(const nspsd_matrix* m, size_t i, size_t j, double* real,
                                        double* imag);
NSPSD_API nspsd_status nspsd_matrix_set(nspsd_matrix* m, size_t i, size_t j, double real,
                                        double imag);
/* Matrix Market array format, or CSV when the path ends in ".csv". */
NSPSD_API nspsd_status nspsd_matrix_read(const char* path, nspsd_matrix** out);
NSPSD_API nspsd_status nspsd_matrix_write(const nspsd_matrix* m, const char* path);

/* ---- solver options ---------------------------------------------------- */

NSPSD_API nspsd_status nspsd_options_create(nspsd_options** out);
NSPSD_API void nspsd_options_destroy(nspsd_options* o);
NSPSD_API nspsd_status nspsd_options_set_delta(nspsd_options* o, double delta);
/* Suboptimality budget of the epsilon family; <= 0 selects the default. */
NSPSD_API nspsd_status nspsd_options_set_epsilon(nspsd_options* o, double epsilon);
NSPSD_API nspsd_status nspsd_options_set_max_iterations(nspsd_options* o, size_t n);
/* <= 0 removes the time limit. */
NSPSD_API nspsd_status nspsd_options_set_max_seconds(nspsd_options* o, double seconds);
/* < 0 restores the default numeric-rank rule. */
NSPSD_API nspsd_status nspsd_options_set_rank_tolerance(nspsd_options* o, double tol);
NSPSD_API nspsd_status nspsd_options_set_init(nspsd_options* o, nspsd_init init);
/* Real n x n starting point; selects NSPSD_INIT_USER. */
NSPSD_API nspsd_status nspsd_options_set_initial(nspsd_options* o, const nspsd_matrix* a0);
NSPSD_API nspsd_status nspsd_options_set_completion(nspsd_options* o, nspsd_completion c);
NSPSD_API nspsd_status nspsd_options_set_closed_forms(nspsd_options* o, int enabled);

/* ---- solving ----------------------------------------------------------- */

/* Complex solve when either input is complex. opts may be NULL. */
NSPSD_API nspsd_status nspsd_solve(const nspsd_matrix* x, const nspsd_matrix* b,
                                   const nspsd_options* opts, nspsd_result** out);
NSPSD_API void nspsd_result_destroy(nspsd_result* r);
/* Borrowed; valid until the result is destroyed. */
NSPSD_API const nspsd_matrix* nspsd_result_matrix(const nspsd_result* r);
NSPSD_API double nspsd_result_objective(const nspsd_result* r);
NSPSD_API double nspsd_result_relative_error_percent(const nspsd_result* r);
/* "exact", "epsilon", "shortcut_zero", "rank_one" or "bounded". */
NSPSD_API const char* nspsd_result_attained(const nspsd_result* r);
NSPSD_API int nspsd_result_infimum_attained(const nspsd_result* r);
/* Returns 0 and leaves *epsilon untouched when no epsilon was used. */
NSPSD_API int nspsd_result_epsilon(const nspsd_result* r, double* epsilon);
NSPSD_API size_t nspsd_result_rank(const nspsd_result* r);
NSPSD_API size_t nspsd_result_iterations(const nspsd_result* r);
NSPSD_API double nspsd_result_runtime_seconds(const nspsd_result* r);
/* Returns 0 when the diagnostic is absent. */
NSPSD_API int nspsd_result_diagnostic(const nspsd_result* r, const char* name, double* value);
/* Eigenvalues of A + A^T (A + A^* for complex A), nonincreasing. */
NSPSD_API size_t nspsd_result_eigenvalue_count(const nspsd_result* r);
NSPSD_API double nspsd_result_eigenvalue(const nspsd_result* r, size_t k);
/* JSON report; borrowed, valid until the result is destroyed. */
NSPSD_API const char* nspsd_result_report_json(const nspsd_result* r);
NSPSD_API nspsd_status nspsd_result_write_report(const nspsd_result* r, const char* path);

/* ---- synthetic data and bundled examples ------------------------------- */

/* regime: "well", "ill" or "rankdef"; shape: "square", "wide" or "tall". */
NSPSD_API nspsd_status nspsd_generate(const char* regime, const char* shape, size_t max_dim,
                                      uint64_t seed, uint64_t trial, nspsd_matrix** x,
                                      nspsd_matrix** b);
/* name: "compliance" (real 3 x 12) or "complex" (complex 4 x 4). */
NSPSD_API nspsd_status nspsd_builtin_example(const char* name, nspsd_matrix** x,
                                             nspsd_matrix** b);

/* ---- benchmark --------------------------------------------------------- */

/* scenarios: "all" or a comma-separated list of <regime>_<shape> ids.
 * solvers: "an_fgm", "fgm" or "an_fgm,fgm". opts may be NULL. */
NSPSD_API nspsd_status nspsd_bench_run(const char* scenarios, const char* solvers,
                                       size_t max_dim, size_t trials, uint64_t seed,
                                       size_t threads, const nspsd_options* opts,
                                       nspsd_bench** out);
NSPSD_API void nspsd_bench_destroy(nspsd_bench* b);
NSPSD_API size_t nspsd_bench_row_count(const nspsd_bench* b);
NSPSD_API const char* nspsd_bench_row_scenario(const nspsd_bench* b, size_t row);
NSPSD_API const char* nspsd_bench_row_solver(const nspsd_bench* b, size_t row);
/* Writes rel_err_mean, rel_err_std, time_mean, time_std; any pointer may be NULL. */
NSPSD_API nspsd_status nspsd_bench_row_stats(const nspsd_bench* b, size_t row, double* rel_err_mean,
                                             double* rel_err_std, double* time_mean,
                                             double* time_std);
NSPSD_API size_t nspsd_bench_row_failures(const nspsd_bench* b, size_t row);
/* Borrowed; valid until the bench is destroyed. */
NSPSD_API const char* nspsd_bench_csv(const nspsd_bench* b);
NSPSD_API const char* nspsd_bench_json(const nspsd_bench* b);

#ifdef __cplusplus
}
#endif

#endif /* NSPSD_NSPSD_H */
