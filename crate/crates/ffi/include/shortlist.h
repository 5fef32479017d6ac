#ifndef SHORTLIST_H
#define SHORTLIST_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Result of one matching request.
typedef enum SlOutcome {
  SL_OUTCOME_MATCHED = 0,
  SL_OUTCOME_DISCARDED = 1,
  SL_OUTCOME_DUPLICATE_IGNORED = 2,
} SlOutcome;

// Status codes returned by every fallible call.
typedef enum SlStatus {
  SL_STATUS_OK = 0,
  SL_STATUS_NULL_ARGUMENT = 1,
  SL_STATUS_INVALID_ARGUMENT = 2,
  SL_STATUS_INVALID_UTF8 = 3,
  SL_STATUS_PARSE_ERROR = 4,
  SL_STATUS_BUILD_FAILED = 5,
  SL_STATUS_OUTSIDE_UNIVERSE = 6,
  SL_STATUS_PANIC = 7,
} SlStatus;

// A toy standard machine with its `H_k` family.
typedef struct SlMachine SlMachine;

// An online matching session over a pipeline's `H_k`.
typedef struct SlMatch SlMatch;

// A built and certified `H_k` with its sub-graphs.
typedef struct SlPipeline SlPipeline;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread; empty after success.
// Valid until the next call on the same thread.
const char *sl_last_error(void);

// Library version, static storage.
const char *sl_version(void);

void sl_string_free(char *s);

// Build `H_k` with the random provider. `cap = 0` selects the default
// `min(2^k, k + 3)`.
enum SlStatus sl_pipeline_build(uint32_t k,
                                uint64_t c,
                                uint32_t cap,
                                uint64_t seed,
                                struct SlPipeline **out);

// Build from a JSON pipeline config, such as the `config` field of a
// manifest.
enum SlStatus sl_pipeline_build_json(const char *config_json, struct SlPipeline **out);

void sl_pipeline_free(struct SlPipeline *p);

// Pipeline manifest as pretty JSON.
enum SlStatus sl_pipeline_manifest_json(const struct SlPipeline *p, char **out);

// Whether the `(ceil(K/c^2), K)` certificate passed, and whether it is
// definitive (exhaustive).
enum SlStatus sl_pipeline_certificate(const struct SlPipeline *p, bool *pass, bool *definitive);

// Neighbors of `x` in `H_k`, newline-separated in oracle order.
enum SlStatus sl_pipeline_neighbors(const struct SlPipeline *p, const char *x, char **out);

// Fresh matching session over the pipeline's `H_k`. The session keeps the
// graph alive; the pipeline may be freed first.
enum SlStatus sl_match_new(const struct SlPipeline *p, struct SlMatch **out);

// Submit one request. On `SL_OUTCOME_MATCHED`, `right` (if not null)
// receives the matched right label; otherwise it is set to null.
enum SlStatus sl_match_request(struct SlMatch *s,
                               const char *x,
                               enum SlOutcome *outcome,
                               char **right);

enum SlStatus sl_match_counts(const struct SlMatch *s, uint64_t *matched, uint64_t *discarded);

void sl_match_free(struct SlMatch *s);

// Machine from table text (`<program>\t<output>\t<steps>` lines). With
// `complete_family` every `H_k` is complete; otherwise levels `2..=k_max`
// are built pipelines seeded by `seed`. `step_budget = 0` selects the
// default.
enum SlStatus sl_machine_new(const char *table_text,
                             uint32_t k_max,
                             uint64_t c,
                             uint64_t seed,
                             bool complete_family,
                             uint64_t step_budget,
                             struct SlMachine **out);

void sl_machine_free(struct SlMachine *m);

// Run `U(program)`. `halted` is false on divergence and `output` is then
// set to null.
enum SlStatus sl_machine_eval(const struct SlMachine *m,
                              const char *program,
                              bool *halted,
                              char **output);

// `f(x)`, newline-separated.
enum SlStatus sl_machine_shortlist(const struct SlMachine *m, const char *x, char **out);

// Brute-force complexity of `x` over programs up to `max_len` bits;
// `-1` when none produces `x`.
enum SlStatus sl_machine_complexity(const struct SlMachine *m,
                                    const char *x,
                                    uint32_t max_len,
                                    int64_t *c_u);

// Per-string report as JSON; `max_len = 0` selects `|x| + 3`.
enum SlStatus sl_machine_report_json(const struct SlMachine *m,
                                     const char *x,
                                     uint32_t max_len,
                                     char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SHORTLIST_H */
