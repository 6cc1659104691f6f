/* aqm — autonomous quantum memory simulator, C API.
 *
 * All functions return AQM_OK on success; on failure they return a status
 * code and leave a detail message retrievable with aqm_last_error() (the
 * message is thread-local). Objects are opaque handles released with the
 * matching *_close function. Strings returned through char** outputs are
 * heap-allocated and released with aqm_string_free().
 */
#ifndef AQM_H
#define AQM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define AQM_API __declspec(dllexport)
#else
#define AQM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum aqm_status {
  AQM_OK = 0,
  AQM_ERR_INVALID_ARGUMENT = 1,
  AQM_ERR_UNKNOWN_NAME = 2,
  AQM_ERR_DIMENSION = 3,
  AQM_ERR_RUNTIME = 4
} aqm_status;

AQM_API const char* aqm_version(void);
AQM_API const char* aqm_status_name(aqm_status status);
AQM_API const char* aqm_last_error(void);
AQM_API void aqm_string_free(char* s);

/* ---- stabilizer code catalog -------------------------------------- */

typedef struct aqm_code aqm_code;

/* Comma-separated catalog names. */
AQM_API aqm_status aqm_code_list(char** out);
AQM_API aqm_status aqm_code_open(const char* name, aqm_code** out);
AQM_API void aqm_code_close(aqm_code* code);

AQM_API int aqm_code_n_qubits(const aqm_code* code);
AQM_API int aqm_code_n_stabilizers(const aqm_code* code);
AQM_API int aqm_code_n_gauge(const aqm_code* code);
/* Stabilizer generator in textual Pauli notation; index is 1-based. */
AQM_API aqm_status aqm_code_stabilizer(const aqm_code* code, int index,
                                       char** out);
/* Syndrome of a textual Pauli error: out[i] = ±1 per stabilizer. */
AQM_API aqm_status aqm_code_syndrome(const aqm_code* code, const char* error_op,
                                     int* out);
/* The full 3Q-row table, one row per line: "X1 + + + - - -". */
AQM_API aqm_status aqm_code_syndrome_table(const aqm_code* code, char** out);
/* Classification line for an operator, e.g.
 * "CORRECTABLE  (= Z4 * gauge[Z7Z8])". */
AQM_API aqm_status aqm_code_classify(const aqm_code* code, const char* op,
                                     char** out);

/* ---- probe routing -------------------------------------------------- */

/* Scores a scattering order for stabilizer stab_index (1-based). order is
 * a permutation of the generator support (1-based qubits) of length k, or
 * NULL for the code's naive route. counts_out = {harmless, correctable,
 * uncorrectable}. report receives the per-prefix rendering. */
AQM_API aqm_status aqm_route_score(const aqm_code* code, int stab_index,
                                   const int* order, int k, char** report,
                                   int counts_out[3]);
/* strategy: "exhaustive" or "greedy". order_out must hold up to 16 entries;
 * *k_out receives the support size. */
AQM_API aqm_status aqm_route_optimize(const aqm_code* code, int stab_index,
                                      const char* strategy, int* order_out,
                                      int* k_out, char** report,
                                      int counts_out[3]);

/* ---- model construction --------------------------------------------- */

typedef struct aqm_model aqm_model;

typedef struct aqm_model_params {
  double omega;  /* feedback strength */
  double alpha;  /* probe amplitude */
  double theta;  /* loss per waveguide segment */
  double gamma;  /* register decoherence rate */
  const char* noise; /* "bit_flip", "spontaneous" or "none" */
  double relay_dephasing; /* optional controller noise rate */
} aqm_model_params;

/* routes: "naive", "optimal", or explicit per-stabilizer orders such as
 * "5,4,3,2;5,4,3,1;5,4,2,1;5,3,2,1" (one comma-separated order per
 * stabilizer, in catalog order, separated by ';'). */
AQM_API aqm_status aqm_model_build(const aqm_code* code,
                                   const aqm_model_params* params,
                                   const char* routes, aqm_model** out);
AQM_API void aqm_model_close(aqm_model* model);
AQM_API int aqm_model_dimension_bits(const aqm_model* model);
AQM_API int aqm_model_n_lindblads(const aqm_model* model);
/* Deterministic symbolic serialization of H and every Lindblad operator. */
AQM_API aqm_status aqm_model_dump(const aqm_model* model, char** out);

/* ---- simulation ------------------------------------------------------ */

typedef struct aqm_result aqm_result;

typedef struct aqm_sim_params {
  const char* logical_state; /* "zero", "one", "plus", "minus" */
  double t_final;
  double dt;        /* integrator step; <= 0 selects the rate-bound default */
  double sample_dt; /* metric sampling interval; must divide t_final */
  int n_trajectories;
  uint64_t seed;
  int workers;         /* <= 0: hardware concurrency */
  const char* metrics; /* comma list of "strict", "subsystem" */
  const double* taus;  /* F* windows over the first metric; may be NULL */
  int n_taus;
  int record_jumps; /* only honored for n_trajectories == 1 */
} aqm_sim_params;

AQM_API aqm_status aqm_simulate(const aqm_model* model,
                                const aqm_sim_params* params, aqm_result** out);
AQM_API void aqm_result_close(aqm_result* result);

AQM_API int aqm_result_n_samples(const aqm_result* result);
AQM_API double aqm_result_sample_dt(const aqm_result* result);
AQM_API int aqm_result_n_columns(const aqm_result* result);
AQM_API aqm_status aqm_result_column_name(const aqm_result* result, int column,
                                          char** out);
/* Column length; F* columns are shorter than the sample grid. */
AQM_API int aqm_result_column_length(const aqm_result* result, int column);
AQM_API aqm_status aqm_result_mean(const aqm_result* result, int column,
                                   double* out);
AQM_API aqm_status aqm_result_std_error(const aqm_result* result, int column,
                                        double* out);
AQM_API int aqm_result_n_jumps(const aqm_result* result);
AQM_API aqm_status aqm_result_jumps(const aqm_result* result, double* times,
                                    int* channels);

/* ---- metric helpers -------------------------------------------------- */

/* Sliding-window maximum over [t, t+tau]; out must hold n entries; *out_n
 * receives the (possibly shorter) output length. */
AQM_API aqm_status aqm_fstar(const double* trace, int n, double sample_dt,
                             double tau, double* out, int* out_n);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* AQM_H */
