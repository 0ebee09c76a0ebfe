/* C API for the gmec entanglement-quantification library.
 *
 * Conventions:
 *  - every function returns a gmec_status; GMEC_OK is 0;
 *  - states are opaque gmec_state handles, released with gmec_state_free;
 *  - output parameters are written only on GMEC_OK;
 *  - on failure, gmec_last_error_length / gmec_last_error_message expose a
 *    thread-local description of what went wrong;
 *  - complex arrays are interleaved [re, im, re, im, ...] doubles in
 *    row-major basis-label order (party 1 most significant).
 *
 * This header is maintained by hand against crates/ffi/src/lib.rs; it can be
 * regenerated with cbindgen using the crate's cbindgen.toml.
 */

#ifndef GMEC_H
#define GMEC_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes returned by every entry point. */
typedef enum gmec_status {
  GMEC_OK = 0,
  /* A required pointer argument was null. */
  GMEC_ERR_NULL_ARGUMENT = 1,
  /* Arguments out of range (arity, subsets, labels, parameters, domains). */
  GMEC_ERR_INVALID_ARGUMENT = 2,
  /* A state invariant failed (normalization, Hermiticity, trace,
   * positivity) or a state file was malformed. */
  GMEC_ERR_INVALID_STATE = 3,
  /* Filesystem error. */
  GMEC_ERR_IO = 4,
  /* A string argument was not valid UTF-8. */
  GMEC_ERR_UTF8 = 5,
  /* The noise search found no sign change on [0, 1]. */
  GMEC_ERR_NO_THRESHOLD = 6,
  /* An internal panic was caught at the boundary. */
  GMEC_ERR_PANIC = 7,
} gmec_status;

/* Opaque state handle: a pure state or a density matrix. */
typedef struct gmec_state gmec_state;

/* Search configuration; pass NULL for defaults (20 restarts, 2000
 * evaluations per restart, seed 0, tol 1e-9). */
typedef struct gmec_optimizer_config {
  uint32_t restarts;
  uint32_t max_evals;
  uint64_t seed;
  double tol;
} gmec_optimizer_config;

/* Result of a bound maximization. */
typedef struct gmec_bound_result {
  /* Maximized 2I; negative when nothing was detected. */
  double raw_2i;
  /* max(raw_2i, 0): certified lower bound on the gme-concurrence. */
  double lower_bound;
  /* Total objective evaluations across restarts. */
  uint64_t evaluations;
  /* 1 when the best restart converged within its budget. */
  int32_t converged;
} gmec_bound_result;

/* Number of canonical bipartitions of `parties` parties; 0 when
 * parties < 2. */
size_t gmec_bipartition_count(uint32_t parties);

/* --- state constructors ------------------------------------------------ */

/* GHZ state (|0...0> + |1...1>)/sqrt(2) on `parties` qudits of dimension
 * `dim`. */
gmec_status gmec_state_ghz(uint32_t parties, uint32_t dim, gmec_state **out);

/* W state on `parties` qubits. */
gmec_status gmec_state_w(uint32_t parties, gmec_state **out);

/* Generalized GHZ state alpha |0'...0'> + beta |1'...1'>. With
 * `random_frames` nonzero the local frames are drawn deterministically from
 * `frame_seed`; otherwise the computational frame is used. */
gmec_status gmec_state_gghz(uint32_t parties, uint32_t dim, double alpha_re,
                            double alpha_im, double beta_re, double beta_im,
                            uint64_t frame_seed, int32_t random_frames,
                            gmec_state **out);

/* Three-qubit mixture c1 |GHZ><GHZ| + c2 |W><W| + (1 - c1 - c2)/8 * 1. */
gmec_status gmec_state_ghz_w_mix(double c1, double c2, gmec_state **out);

/* Pure state from 2*D interleaved doubles (re, im per amplitude). */
gmec_status gmec_state_from_amplitudes(const uint32_t *dims, size_t n_parties,
                                       const double *amps, size_t len,
                                       gmec_state **out);

/* Density matrix from 2*D*D interleaved doubles, row-major. */
gmec_status gmec_state_from_density(const uint32_t *dims, size_t n_parties,
                                    const double *mat, size_t len,
                                    gmec_state **out);

/* Load / save the JSON state-file format (see docs/state-format.md). */
gmec_status gmec_state_load(const char *path, gmec_state **out);
gmec_status gmec_state_save(const gmec_state *state, const char *path);

/* Release a state handle. Null is a no-op. */
void gmec_state_free(gmec_state *state);

/* --- state queries ------------------------------------------------------ */

/* 1 when the handle holds a pure state, 0 for a density matrix or null. */
int32_t gmec_state_is_pure(const gmec_state *state);

gmec_status gmec_state_num_parties(const gmec_state *state, size_t *out);
gmec_status gmec_state_total_dim(const gmec_state *state, size_t *out);

/* --- measures and bounds ------------------------------------------------ */

/* gme-concurrence of a pure state. Fails with GMEC_ERR_INVALID_ARGUMENT on
 * mixed handles (use gmec_bound for those). */
gmec_status gmec_pure_gme_concurrence(const gmec_state *state, double *out);

/* Per-bipartition concurrences of a pure state, in canonical enumeration
 * order. `cap` is the capacity of `out_values`; the count written goes to
 * `written`. */
gmec_status gmec_pure_concurrences(const gmec_state *state, double *out_values,
                                   size_t cap, size_t *written);

/* Maximize the biseparability bound. `cfg` may be NULL for defaults. */
gmec_status gmec_bound(const gmec_state *state,
                       const gmec_optimizer_config *cfg,
                       gmec_bound_result *out);

/* 1 when the state is PPT for every bipartition, else 0. */
gmec_status gmec_ppt_all(const gmec_state *state, int32_t *out);

/* Minimum partial-transpose eigenvalue per bipartition, canonical order. */
gmec_status gmec_ppt_min_eigenvalues(const gmec_state *state,
                                     double *out_values, size_t cap,
                                     size_t *written);

/* Critical visibility p* of the GHZ + white-noise family on `parties`
 * qudits of dimension `dim`. Fails with GMEC_ERR_NO_THRESHOLD when the bound
 * never (or always) detects the family. */
gmec_status gmec_ghz_noise_threshold(uint32_t parties, uint32_t dim,
                                     const gmec_optimizer_config *cfg,
                                     double *out_p_star);

/* Run the GHZ/W-mixture grid scan and write the CSV to `path`. */
gmec_status gmec_scan_csv(const char *path, double step,
                          const gmec_optimizer_config *cfg);

/* --- error reporting ---------------------------------------------------- */

/* Byte length (without NUL) of the last error message on this thread. */
size_t gmec_last_error_length(void);

/* Copy the last error message into `buf` (NUL-terminated, truncating);
 * returns the number of bytes written excluding the NUL. */
size_t gmec_last_error_message(char *buf, size_t len);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* GMEC_H */
