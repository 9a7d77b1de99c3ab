#ifndef HIRZEBRUCH_H
#define HIRZEBRUCH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. Zero is success.
 */
typedef enum HhStatus {
  HH_STATUS_OK = 0,
  HH_STATUS_NULL_POINTER = 1,
  HH_STATUS_INVALID_ARGUMENT = 2,
  HH_STATUS_PARSE_ERROR = 3,
  /**
   * The diagram admits no further reduction.
   */
  HH_STATUS_NOT_REDUCIBLE = 4,
  /**
   * Tail enumeration met a diagram that stays too long.
   */
  HH_STATUS_ENUM_ERROR = 5,
  HH_STATUS_IO_ERROR = 6,
  /**
   * An internal invariant failed; the message has details.
   */
  HH_STATUS_INTERNAL = 7,
} HhStatus;

/**
 * Opaque diagram handle.
 */
typedef struct HhDiagram HhDiagram;

/**
 * Opaque handle to an ordered set of diagrams.
 */
typedef struct HhDiagramSet HhDiagramSet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *hh_last_error_message(void);

/**
 * Frees a string returned by this library.
 */
void hh_string_free(char *s);

/**
 * Builds a diagram from `len` layers; trailing zeros are dropped.
 */
enum HhStatus hh_diagram_new(const uint32_t *layers, uintptr_t len, struct HhDiagram **out);

/**
 * Parses the text form, e.g. `"5,5,4,2"` or `""` for the empty diagram.
 */
enum HhStatus hh_diagram_parse(const char *text, struct HhDiagram **out);

void hh_diagram_free(struct HhDiagram *d);

/**
 * Number of stored layers.
 */
uintptr_t hh_diagram_len(const struct HhDiagram *d);

/**
 * Total number of cells.
 */
uint64_t hh_diagram_size(const struct HhDiagram *d);

/**
 * Copies up to `cap` layers into `buf`; `*len` receives the full count.
 */
enum HhStatus hh_diagram_layers(const struct HhDiagram *d,
                                uint32_t *buf,
                                uintptr_t cap,
                                uintptr_t *len);

/**
 * Text form of the diagram; free with `hh_string_free`.
 */
char *hh_diagram_to_string(const struct HhDiagram *d);

/**
 * One m-reduction step.
 */
enum HhStatus hh_reduce(uint32_t m, const struct HhDiagram *d, struct HhDiagram **out);

/**
 * `k` successive m-reductions.
 */
enum HhStatus hh_sequence_reduce(uint32_t m,
                                 uint32_t k,
                                 const struct HhDiagram *d,
                                 struct HhDiagram **out);

/**
 * Reduces until no further m-reduction applies.
 */
enum HhStatus hh_top_reduce(uint32_t m, const struct HhDiagram *d, struct HhDiagram **out);

struct HhDiagramSet *hh_set_new(void);

void hh_set_free(struct HhDiagramSet *s);

uintptr_t hh_set_len(const struct HhDiagramSet *s);

/**
 * Inserts a copy of `d`; `*inserted` is 1 when it was new.
 */
enum HhStatus hh_set_insert(struct HhDiagramSet *s, const struct HhDiagram *d, int32_t *inserted);

/**
 * Copy of the `index`-th member in set order.
 */
enum HhStatus hh_set_get(const struct HhDiagramSet *s, uintptr_t index, struct HhDiagram **out);

/**
 * Reads a diagram file.
 */
enum HhStatus hh_set_read(const char *path, struct HhDiagramSet **out);

/**
 * Writes a diagram file.
 */
enum HhStatus hh_set_write(const struct HhDiagramSet *s, const char *path);

/**
 * h-D-admissible tails of `seed`; `entries` (nullable) receives the
 * number of reduction steps taken.
 */
enum HhStatus hh_h_tails(uint32_t m,
                         uint32_t h,
                         const struct HhDiagram *seed,
                         struct HhDiagramSet **out,
                         uintptr_t *entries);

/**
 * All admissible tails of the layers of `d` followed by `m - 1` free ones.
 */
enum HhStatus hh_tails_enum(uint32_t m,
                            const struct HhDiagram *d,
                            struct HhDiagramSet **out,
                            uintptr_t *entries);

/**
 * Runs a set generator by its batch name (`"setbign"`, `"setpb"`, ...).
 */
enum HhStatus hh_generate(const char *name,
                          const uint32_t *params,
                          uintptr_t len,
                          struct HhDiagramSet **out);

/**
 * Randomized non-speciality test of `L(D; m^r)`; `*non_special` is 1 on
 * success and 0 when not decided.
 */
enum HhStatus hh_ns(uint32_t m,
                    uint64_t r,
                    const struct HhDiagram *d,
                    uint32_t tries,
                    uint64_t prime,
                    uint64_t seed,
                    int32_t *non_special);

/**
 * Members of `set` that pass the check at `r` and `r + 1`.
 */
enum HhStatus hh_check(uint32_t m,
                       const struct HhDiagramSet *set,
                       uint32_t tries,
                       uint64_t prime,
                       uint64_t seed,
                       struct HhDiagramSet **kept);

/**
 * Two-phase reduce-and-check campaign; `*ok` is 1 when every member is
 * certified.
 */
enum HhStatus hh_ch(uint32_t m,
                    const struct HhDiagramSet *set,
                    uint32_t u,
                    uint32_t v,
                    uint64_t prime,
                    uint64_t seed,
                    int32_t *ok);

/**
 * Values of `r` not certified for `L_n(a, b; m^r)`. Up to `cap` values go
 * to `buf`; `*len` receives the full count.
 */
enum HhStatus hh_finalnba(uint32_t m,
                          uint32_t n,
                          uint32_t a,
                          uint32_t b,
                          uint64_t prime,
                          uint64_t seed,
                          uint64_t *buf,
                          uintptr_t cap,
                          uintptr_t *len);

/**
 * Expected dimension of `L_n(a, b; m^r)`, at least -1.
 */
int64_t hh_edim(uint32_t m, uint32_t n, uint32_t a, uint32_t b, uint32_t r);

/**
 * (-1)-speciality test via Cremona reduction. `*special` is 1 when the
 * system is shown (-1)-special and 0 when no shift exhibits it.
 */
enum HhStatus hh_spec_check(uint32_t m,
                            uint32_t n,
                            uint32_t a,
                            uint32_t b,
                            uint32_t r,
                            int32_t *special);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HIRZEBRUCH_H */
