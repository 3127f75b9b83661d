#ifndef VKNOT_H
#define VKNOT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Which module invariant [`vk_gauss_module_invariant`] computes.
 */
typedef enum VkModuleInvariant {
  /**
   * Sum over 0-smoothings, in unoriented flat knots.
   */
  VK_MODULE_INVARIANT_F = 0,
  /**
   * Sum over 1-smoothings, in flat two-component links.
   */
  VK_MODULE_INVARIANT_L = 1,
} VkModuleInvariant;

/**
 * Result codes.
 */
typedef enum VkStatus {
  VK_STATUS_OK = 0,
  VK_STATUS_NULL_POINTER = 1,
  VK_STATUS_INVALID_UTF8 = 2,
  VK_STATUS_PARSE = 3,
  VK_STATUS_UNKNOWN_CHORD = 4,
  VK_STATUS_INVALID_ARGUMENT = 5,
  VK_STATUS_BUFFER_TOO_SMALL = 6,
  VK_STATUS_INTERNAL = 7,
} VkStatus;

/**
 * Outcome of [`vk_flat_compare`].
 */
typedef enum VkVerdict {
  VK_VERDICT_EQUAL = 0,
  VK_VERDICT_DISTINCT = 1,
  VK_VERDICT_UNKNOWN = 2,
} VkVerdict;

/**
 * Opaque oriented flat diagram.
 */
typedef struct VkFlatDiagram VkFlatDiagram;

/**
 * Opaque signed Gauss diagram.
 */
typedef struct VkGaussDiagram VkGaussDiagram;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *vk_version(void);

/**
 * Message of the last failure on this thread.
 *
 * # Safety
 * `buf` must point to `len` writable bytes or be null; `needed` must be
 * null or writable.
 */
enum VkStatus vk_last_error(char *buf, size_t len, size_t *needed);

/**
 * Parses a signed Gauss code such as `O1+O2+U1+U2+`.
 *
 * # Safety
 * `code` must be a NUL-terminated string; `out_diagram` must be writable.
 */
enum VkStatus vk_gauss_parse(const char *code, struct VkGaussDiagram **out_diagram);

/**
 * Releases a diagram; null is ignored.
 *
 * # Safety
 * `d` must come from this library and not be used afterwards.
 */
void vk_gauss_free(struct VkGaussDiagram *d);

/**
 * Normalized Gauss code.
 *
 * # Safety
 * See [`vk_last_error`] for the buffer contract; `d` must be a live handle.
 */
enum VkStatus vk_gauss_code(const struct VkGaussDiagram *d, char *buf, size_t len, size_t *needed);

/**
 * Number of chords.
 *
 * # Safety
 * `d` must be a live handle; `out_count` must be writable.
 */
enum VkStatus vk_gauss_chord_count(const struct VkGaussDiagram *d, size_t *out_count);

/**
 * Sum of the crossing signs.
 *
 * # Safety
 * `d` must be a live handle; `out_writhe` must be writable.
 */
enum VkStatus vk_gauss_writhe(const struct VkGaussDiagram *d, int64_t *out_writhe);

/**
 * Index of the chord labeled `chord` in the parsed code.
 *
 * # Safety
 * `d` must be a live handle; `out_index` must be writable.
 */
enum VkStatus vk_gauss_index(const struct VkGaussDiagram *d, uint32_t chord, int64_t *out_index);

/**
 * Writhe polynomial as text, for example `t^-1 - 2 + t`.
 *
 * # Safety
 * See [`vk_gauss_code`].
 */
enum VkStatus vk_gauss_writhe_polynomial(const struct VkGaussDiagram *d,
                                         char *buf,
                                         size_t len,
                                         size_t *needed);

/**
 * Module-valued invariant as text, for example `2*[O1|U1] - 2*[|]`. A zero
 * budget field selects the default.
 *
 * # Safety
 * See [`vk_gauss_code`].
 */
enum VkStatus vk_gauss_module_invariant(const struct VkGaussDiagram *d,
                                        enum VkModuleInvariant which,
                                        size_t max_nodes,
                                        size_t max_extra,
                                        char *buf,
                                        size_t len,
                                        size_t *needed);

/**
 * Parses a flat Gauss code such as `O1O2U1U2`.
 *
 * # Safety
 * `code` must be a NUL-terminated string; `out_diagram` must be writable.
 */
enum VkStatus vk_flat_parse(const char *code, struct VkFlatDiagram **out_diagram);

/**
 * The lattice flat diagram with `p` horizontal and `q` vertical chords.
 *
 * # Safety
 * `out_diagram` must be writable.
 */
enum VkStatus vk_lattice(size_t p, size_t q, struct VkFlatDiagram **out_diagram);

/**
 * Releases a flat diagram; null is ignored.
 *
 * # Safety
 * `d` must come from this library and not be used afterwards.
 */
void vk_flat_free(struct VkFlatDiagram *d);

/**
 * Canonical code of a flat diagram.
 *
 * # Safety
 * See [`vk_gauss_code`].
 */
enum VkStatus vk_flat_canonical_code(const struct VkFlatDiagram *d,
                                     char *buf,
                                     size_t len,
                                     size_t *needed);

/**
 * Sum of the flat signs of the chords.
 *
 * # Safety
 * `d` must be a live handle; `out_writhe` must be writable.
 */
enum VkStatus vk_flat_writhe(const struct VkFlatDiagram *d, int64_t *out_writhe);

/**
 * Index of a flat chord.
 *
 * # Safety
 * `d` must be a live handle; `out_index` must be writable.
 */
enum VkStatus vk_flat_index(const struct VkFlatDiagram *d, uint32_t chord, int64_t *out_index);

/**
 * Genus of the surface carrying the diagram.
 *
 * # Safety
 * `d` must be a live handle; `out_genus` must be writable.
 */
enum VkStatus vk_flat_carter_genus(const struct VkFlatDiagram *d, size_t *out_genus);

/**
 * Sign-weighted sum of the oriented 0-smoothings, as text.
 *
 * # Safety
 * See [`vk_gauss_code`].
 */
enum VkStatus vk_flat_smoothing_invariant(const struct VkFlatDiagram *d,
                                          size_t max_nodes,
                                          size_t max_extra,
                                          char *buf,
                                          size_t len,
                                          size_t *needed);

/**
 * Compares two flat diagrams as oriented classes, or up to reversal when
 * `unoriented` is nonzero.
 *
 * # Safety
 * `a` and `b` must be live handles; `out_verdict` must be writable.
 */
enum VkStatus vk_flat_compare(const struct VkFlatDiagram *a,
                              const struct VkFlatDiagram *b,
                              int32_t unoriented,
                              size_t max_nodes,
                              size_t max_extra,
                              enum VkVerdict *out_verdict);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* VKNOT_H */
