/* C interface to the hypercop library. Generated by cbindgen; do not edit. */

#ifndef HYPERCOP_H
#define HYPERCOP_H

#pragma once

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Robber policy selectors for `hypercop_play`.
 */
#define HYPERCOP_ROBBER_GREEDY 0

/**
 * Uniform random placement and moves (seeded).
 */
#define HYPERCOP_ROBBER_RANDOM 1

/**
 * Greedy placement, then never moves.
 */
#define HYPERCOP_ROBBER_STAY 2

/**
 * Status code of every fallible call; 0 is success.
 */
typedef enum {
  HYPERCOP_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  HYPERCOP_STATUS_NULL_ARGUMENT = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  HYPERCOP_STATUS_UTF8 = 2,
  /**
   * Mathematically invalid input (see `hypercop_last_error`).
   */
  HYPERCOP_STATUS_DOMAIN = 3,
  /**
   * Malformed input text.
   */
  HYPERCOP_STATUS_FORMAT = 4,
  /**
   * Malformed input text, with a line number in the message.
   */
  HYPERCOP_STATUS_PARSE = 5,
  /**
   * A stated resource budget would be exceeded.
   */
  HYPERCOP_STATUS_RESOURCE = 6,
  /**
   * An illegal game move.
   */
  HYPERCOP_STATUS_PROTOCOL = 7,
  /**
   * Operating-system I/O failure.
   */
  HYPERCOP_STATUS_IO = 8,
  /**
   * Strategy synthesis exhausted its retries without success.
   */
  HYPERCOP_STATUS_SYNTH_EXHAUSTED = 9,
  /**
   * Internal invariant failure caught at the boundary.
   */
  HYPERCOP_STATUS_PANIC = 10,
} HypercopStatus;

/**
 * Opaque hypergraph handle.
 */
typedef struct HypercopGraph HypercopGraph;

/**
 * Opaque cop-strategy handle.
 */
typedef struct HypercopStrategy HypercopStrategy;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the most recent failure on this thread (empty if none).
 * The pointer stays valid until the next hypercop call on this thread.
 */
const char *hypercop_last_error(void);

/**
 * Library version as a static string; never freed.
 */
const char *hypercop_version(void);

/**
 * Releases a string returned by this library. Null is a no-op.
 *
 * # Safety
 * `s` must come from a hypercop call and not have been freed already.
 */
void hypercop_string_free(char *s);

/**
 * Parses the canonical text format (`n k m` header, one edge per line).
 *
 * # Safety
 * `text` must be a valid NUL-terminated string; `out` a valid pointer.
 */
HypercopStatus hypercop_graph_parse(const char *text, HypercopGraph **out);

/**
 * Samples the binomial model: every k-subset of `0..n` is an edge
 * independently with probability `p`, deterministically in `seed`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
HypercopStatus hypercop_graph_sample(size_t n,
                                     size_t k,
                                     double p,
                                     uint64_t seed,
                                     HypercopGraph **out);

/**
 * Samples the binomial model with `p` solved from the degree parameter:
 * p = dhat / (k·C(n−1, k−1)).
 *
 * # Safety
 * `out` must be a valid pointer.
 */
HypercopStatus hypercop_graph_sample_degree(size_t n,
                                            size_t k,
                                            double dhat,
                                            uint64_t seed,
                                            HypercopGraph **out);

/**
 * Releases a graph handle. Null is a no-op.
 *
 * # Safety
 * `g` must come from this library and not have been freed already.
 */
void hypercop_graph_free(HypercopGraph *g);

/**
 * Vertex count (0 for a null handle).
 *
 * # Safety
 * `g` must be a live handle or null.
 */
size_t hypercop_graph_n(const HypercopGraph *g);

/**
 * Edge size (0 for a null handle).
 *
 * # Safety
 * `g` must be a live handle or null.
 */
size_t hypercop_graph_k(const HypercopGraph *g);

/**
 * Edge count (0 for a null handle).
 *
 * # Safety
 * `g` must be a live handle or null.
 */
size_t hypercop_graph_m(const HypercopGraph *g);

/**
 * Writes 1 to `out` iff the graph is connected.
 *
 * # Safety
 * `g` must be a live handle; `out` a valid pointer.
 */
HypercopStatus hypercop_graph_is_connected(const HypercopGraph *g, bool *out);

/**
 * Renders the canonical text format; release with `hypercop_string_free`.
 *
 * # Safety
 * `g` must be a live handle; `out` a valid pointer.
 */
HypercopStatus hypercop_graph_to_text(const HypercopGraph *g, char **out);

/**
 * Exact cop number by backward induction. `budget` caps the position count
 * (0 selects the default of 100000000); exceeding it fails with
 * `HYPERCOP_STATUS_RESOURCE`.
 *
 * # Safety
 * `g` must be a live handle; `out` a valid pointer.
 */
HypercopStatus hypercop_cop_number(const HypercopGraph *g, uint64_t budget, size_t *out);

/**
 * Least winning cop count among 1..=max_m, or −1 when every count fails.
 *
 * # Safety
 * `g` must be a live handle; `out` a valid pointer.
 */
HypercopStatus hypercop_cop_number_within(const HypercopGraph *g,
                                          size_t max_m,
                                          uint64_t budget,
                                          int64_t *out);

/**
 * Samples cop sets at density `q` until one surrounds every robber start
 * (`retries` fresh samples after the first). `mode_edge` selects the
 * edge-surrounding construction (capture by round j+1) over the
 * vertex-surrounding one (round j). Exhaustion returns
 * `HYPERCOP_STATUS_SYNTH_EXHAUSTED` with details in the error string.
 *
 * # Safety
 * `g` must be a live handle; `out` a valid pointer.
 */
HypercopStatus hypercop_synthesize(const HypercopGraph *g,
                                   bool mode_edge,
                                   uint32_t j,
                                   double q,
                                   uint32_t retries,
                                   uint64_t seed,
                                   HypercopStrategy **out);

/**
 * Parses a strategy file produced by `hypercop_strategy_to_text` (or the
 * CLI): `mode j` header, cop starts, one `v target cop path…` line each.
 *
 * # Safety
 * `text` must be a valid NUL-terminated string; `out` a valid pointer.
 */
HypercopStatus hypercop_strategy_parse(const char *text, HypercopStrategy **out);

/**
 * Renders the strategy file text; release with `hypercop_string_free`.
 *
 * # Safety
 * `s` must be a live handle; `out` a valid pointer.
 */
HypercopStatus hypercop_strategy_to_text(const HypercopStrategy *s, char **out);

/**
 * Number of cops the strategy places (0 for a null handle).
 *
 * # Safety
 * `s` must be a live handle or null.
 */
size_t hypercop_strategy_size(const HypercopStrategy *s);

/**
 * Surrounding depth j (0 for a null handle).
 *
 * # Safety
 * `s` must be a live handle or null.
 */
uint32_t hypercop_strategy_j(const HypercopStrategy *s);

/**
 * 1 iff the strategy is edge-surrounding (capture schedule j+1).
 *
 * # Safety
 * `s` must be a live handle or null.
 */
bool hypercop_strategy_mode_edge(const HypercopStrategy *s);

/**
 * Releases a strategy handle. Null is a no-op.
 *
 * # Safety
 * `s` must come from this library and not have been freed already.
 */
void hypercop_strategy_free(HypercopStrategy *s);

/**
 * Plays the strategy against a built-in robber policy
 * (`HYPERCOP_ROBBER_GREEDY` / `_RANDOM` / `_STAY`; `seed` feeds the random
 * one). Writes the capture round to `out_captured_round` (−1 if the robber
 * survived all `max_rounds`). `out_transcript_csv` may be null; otherwise
 * it receives the transcript (release with `hypercop_string_free`).
 *
 * # Safety
 * `g` and `s` must be live handles; out-pointers valid (transcript may be
 * null).
 */
HypercopStatus hypercop_play(const HypercopGraph *g,
                             const HypercopStrategy *s,
                             uint32_t robber,
                             uint64_t seed,
                             uint32_t max_rounds,
                             int64_t *out_captured_round,
                             char **out_transcript_csv);

/**
 * Plays the strategy against a scripted robber: `script[0]` is the
 * placement, `script[t]` the t-th move (staying put once exhausted).
 * Illegal scripted moves fail with `HYPERCOP_STATUS_PROTOCOL`.
 *
 * # Safety
 * `g` and `s` must be live handles; `script` must point to `script_len`
 * readable u32s; out-pointers as in `hypercop_play`.
 */
HypercopStatus hypercop_play_scripted(const HypercopGraph *g,
                                      const HypercopStrategy *s,
                                      const uint32_t *script,
                                      size_t script_len,
                                      uint32_t max_rounds,
                                      int64_t *out_captured_round,
                                      char **out_transcript_csv);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* HYPERCOP_H */
