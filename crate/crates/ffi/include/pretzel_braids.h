#ifndef PRETZEL_BRAIDS_H
#define PRETZEL_BRAIDS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Call status. Anything but `PB_STATUS_OK` leaves a message readable via
 * `pb_last_error_message`.
 */
typedef enum {
  PB_STATUS_OK = 0,
  PB_STATUS_NULL_POINTER = 1,
  PB_STATUS_INVALID_UTF8 = 2,
  PB_STATUS_PARSE_ERROR = 3,
  PB_STATUS_INVALID_ARGUMENT = 4,
  PB_STATUS_RESOURCE_LIMIT = 5,
  PB_STATUS_INTERNAL = 6,
} PbStatus;

/**
 * Which synthesis template produced a word.
 */
typedef enum {
  PB_CASE_SINGLE = 0,
  PB_CASE_PAIR = 1,
  PB_CASE_THREE_EVEN_CENTER = 2,
  PB_CASE_THREE_ALL_ODD = 3,
  PB_CASE_EVEN_N = 4,
  PB_CASE_ODD_N_EVEN_ENTRY = 5,
  PB_CASE_ODD_N_ALL_ODD = 6,
} PbCase;

/**
 * Verdict of `pb_verify`.
 */
typedef enum {
  PB_VERDICT_PASS = 0,
  PB_VERDICT_FAIL = 1,
  /**
   * The instance exceeds the oracle caps; nothing was checked.
   */
  PB_VERDICT_SKIPPED = 2,
} PbVerdict;

/**
 * Opaque pretzel-link specification.
 */
typedef struct PbPretzel PbPretzel;

/**
 * Opaque synthesis result: braid word, counts, and case.
 */
typedef struct PbSynthesis PbSynthesis;

/**
 * Oracle resource limits; see `pb_caps_default` for the defaults.
 */
typedef struct {
  size_t max_crossings;
  size_t max_strands;
} PbCaps;

/**
 * Result of `pb_verify`. `framing_exponent` is meaningful only when
 * `framing_found` is true.
 */
typedef struct {
  PbVerdict verdict;
  bool counts_match;
  bool components_match;
  size_t components_pretzel;
  size_t components_closure;
  bool framing_found;
  int64_t framing_exponent;
} PbVerifyReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *pb_last_error_message(void);

/**
 * Default oracle caps: 22 state-sum crossings, 10 transfer strands.
 */
PbCaps pb_caps_default(void);

/**
 * Parses a pretzel specification such as `"P(-2,3,7)"` or `"1 2 1"`.
 *
 * # Safety
 * `text` must be a valid NUL-terminated string and `out` a valid pointer.
 */
PbStatus pb_pretzel_parse(const char *text, PbPretzel **out);

/**
 * Builds a pretzel from `len` nonzero entries.
 *
 * # Safety
 * `entries` must point to `len` readable values; `out` must be valid.
 */
PbStatus pb_pretzel_from_entries(const int64_t *entries, size_t len, PbPretzel **out);

/**
 * # Safety
 * `p` must come from this library and not be freed twice.
 */
void pb_pretzel_free(PbPretzel *p);

/**
 * # Safety
 * `p` must be a live handle from this library.
 */
size_t pb_pretzel_len(const PbPretzel *p);

/**
 * Entry at `index`, or 0 when out of range.
 *
 * # Safety
 * `p` must be a live handle from this library.
 */
int64_t pb_pretzel_entry(const PbPretzel *p, size_t index);

/**
 * Synthesizes the braid word for a pretzel.
 *
 * # Safety
 * `p` must be a live handle and `out` a valid pointer.
 */
PbStatus pb_synthesize(const PbPretzel *p, PbSynthesis **out);

/**
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void pb_synthesis_free(PbSynthesis *s);

/**
 * # Safety
 * `s` must be a live handle from this library.
 */
PbCase pb_synthesis_case(const PbSynthesis *s);

/**
 * # Safety
 * `s` must be a live handle from this library.
 */
size_t pb_synthesis_letter_count(const PbSynthesis *s);

/**
 * # Safety
 * `s` must be a live handle from this library.
 */
size_t pb_synthesis_strands(const PbSynthesis *s);

/**
 * Copies up to `cap` letters into `buf` and returns the full letter
 * count (call once with `cap = 0` to size the buffer).
 *
 * # Safety
 * `s` must be a live handle; `buf` must hold `cap` writable values.
 */
size_t pb_synthesis_letters(const PbSynthesis *s, int64_t *buf, size_t cap);

/**
 * Runs the verification certificate for a pretzel under the given caps.
 *
 * # Safety
 * `p` must be a live handle and `out` a valid pointer.
 */
PbStatus pb_verify(const PbPretzel *p, PbCaps caps, PbVerifyReport *out);

/**
 * Renders the synthesized word as an SVG document. Returns NULL on
 * failure; release the string with `pb_string_free`.
 *
 * # Safety
 * `s` must be a live handle from this library.
 */
char *pb_synthesis_svg(const PbSynthesis *s);

/**
 * The synthesized word in sequence form, e.g. `"(1,-2,1,-2)"`. Release
 * with `pb_string_free`.
 *
 * # Safety
 * `s` must be a live handle from this library.
 */
char *pb_synthesis_word_seq(const PbSynthesis *s);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must have been returned by this library and not freed already.
 */
void pb_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PRETZEL_BRAIDS_H */
