#ifndef TSA_H
#define TSA_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes; the first four match the exit codes of the `tsa` binary.
 */
typedef enum TsaStatus {
  TSA_STATUS_OK = 0,
  /**
   * Inequivalent automata or a failed verification.
   */
  TSA_STATUS_SEMANTIC_FAILURE = 1,
  TSA_STATUS_INPUT_ERROR = 2,
  /**
   * A cap was exceeded or the request is not supported.
   */
  TSA_STATUS_CAP_EXCEEDED = 3,
  TSA_STATUS_NULL_POINTER = 4,
  TSA_STATUS_PANIC = 5,
} TsaStatus;

/**
 * An automaton document of any kind.
 */
typedef struct TsaAutomaton TsaAutomaton;

/**
 * Options for [`tsa_minimize`]. Null strings and zero numbers select the
 * defaults: strategy `fast`, field `rational`, the default cap, and no
 * verification.
 */
typedef struct TsaMinimizeOptions {
  const char *monad;
  const char *strategy;
  const char *field;
  /**
   * Group document (JSON), required for the group monad on
   * deterministic input.
   */
  const char *group_json;
  size_t cap;
  size_t verify_depth;
} TsaMinimizeOptions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message of the last failure on this thread, or null. The pointer
 * stays valid until the next library call on this thread.
 */
const char *tsa_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void tsa_string_free(char *s);

/**
 * Parses a JSON automaton document.
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
enum TsaStatus tsa_automaton_from_json(const char *json, struct TsaAutomaton **out);

/**
 * # Safety
 * `a` must be null or a handle from this library, not yet freed.
 */
void tsa_automaton_free(struct TsaAutomaton *a);

/**
 * Canonical JSON of the automaton.
 *
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
enum TsaStatus tsa_automaton_to_json(const struct TsaAutomaton *a, char **out);

/**
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
enum TsaStatus tsa_automaton_state_count(const struct TsaAutomaton *a, size_t *out);

/**
 * Output of the automaton on `word`, rendered as the CLI prints it.
 *
 * # Safety
 * `a` must be a live handle, `word` a nul-terminated string and `out`
 * writable.
 */
enum TsaStatus tsa_automaton_run(const struct TsaAutomaton *a, const char *word, char **out);

/**
 * Minimizes `a` into a new handle. `summary` may be null; otherwise it
 * receives the `states_in=.. carrier=.. generators=..` line. A failed
 * verification returns `SEMANTIC_FAILURE` and no handle.
 *
 * # Safety
 * `a` and `options` must be valid; `out` must be writable; string fields
 * of `options` must be null or nul-terminated.
 */
enum TsaStatus tsa_minimize(const struct TsaAutomaton *a,
                            const struct TsaMinimizeOptions *options,
                            struct TsaAutomaton **out,
                            char **summary);

/**
 * Deterministic machine of the reachable configurations of `a`.
 *
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
enum TsaStatus tsa_determinize(const struct TsaAutomaton *a,
                               size_t cap,
                               bool then_minimize,
                               struct TsaAutomaton **out);

/**
 * Compares two automata: exactly when `max_len` is negative, otherwise on
 * all words up to `max_len`. Returns `OK` when equal and
 * `SEMANTIC_FAILURE` otherwise; `counterexample` (may be null) then
 * receives the distinguishing word.
 *
 * # Safety
 * `a` and `b` must be live handles; `counterexample` must be null or
 * writable.
 */
enum TsaStatus tsa_equiv(const struct TsaAutomaton *a,
                         const struct TsaAutomaton *b,
                         ptrdiff_t max_len,
                         size_t cap,
                         char **counterexample);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TSA_H */
