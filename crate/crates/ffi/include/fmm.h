#ifndef FMM_H
#define FMM_H

/* Generated by cbindgen from crates/ffi. Do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum FmmStatus {
  FMM_STATUS_OK = 0,
  FMM_STATUS_NULL_POINTER = 1,
  FMM_STATUS_INVALID_MODULUS = 2,
  FMM_STATUS_INVALID_GEOMETRY = 3,
  FMM_STATUS_FORMAT = 4,
  FMM_STATUS_TRUNCATED = 5,
  FMM_STATUS_CORRUPT = 6,
  FMM_STATUS_RANGE = 7,
  FMM_STATUS_PARSE = 8,
  FMM_STATUS_MISMATCH = 9,
  FMM_STATUS_DOMAIN = 10,
  FMM_STATUS_PANIC = 11,
} FmmStatus;

/**
 * Opaque owned byte buffer.
 */
typedef struct FmmBuffer FmmBuffer;

/**
 * Opaque image handle.
 */
typedef struct FmmImage FmmImage;

/**
 * Fields of a container header.
 */
typedef struct FmmHeaderInfo {
  uint32_t modulus;
  uint32_t width;
  uint32_t height;
  uint32_t channels;
} FmmHeaderInfo;

/**
 * Quality measures of a reconstructed image against its original.
 */
typedef struct FmmQuality {
  double mse;
  double rmse;
  /**
   * Undefined (zero) when `lossless` is set.
   */
  double psnr_db;
  bool lossless;
} FmmQuality;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static description of a status code. Never null.
 */
const char *fmm_status_message(enum FmmStatus status);

/**
 * Message for the last failure on this thread, or null. Valid until the next
 * failing call on the same thread.
 */
const char *fmm_last_error_message(void);

bool fmm_modulus_is_valid(uint32_t modulus);

/**
 * # Safety
 * `out` must be null or point to writable memory for one byte.
 */
enum FmmStatus fmm_quantize_sample(uint8_t value, uint32_t modulus, uint8_t *out);

/**
 * Copies `len` interleaved samples into a new image.
 *
 * # Safety
 * `samples` must be valid for `len` bytes; `out` must be a valid pointer.
 */
enum FmmStatus fmm_image_new(uint32_t width,
                             uint32_t height,
                             uint32_t channels,
                             const uint8_t *samples,
                             size_t len,
                             struct FmmImage **out);

/**
 * # Safety
 * `img` must be null or a handle from this library not yet freed.
 */
void fmm_image_free(struct FmmImage *img);

/**
 * # Safety
 * `img` must be null or a live handle.
 */
uint32_t fmm_image_width(const struct FmmImage *img);

/**
 * # Safety
 * `img` must be null or a live handle.
 */
uint32_t fmm_image_height(const struct FmmImage *img);

/**
 * # Safety
 * `img` must be null or a live handle.
 */
uint32_t fmm_image_channels(const struct FmmImage *img);

/**
 * Borrowed view of the interleaved samples, valid while `img` lives.
 *
 * # Safety
 * `img` must be null or a live handle; `len` must be null or writable.
 */
const uint8_t *fmm_image_samples(const struct FmmImage *img, size_t *len);

/**
 * # Safety
 * `data` must be valid for `len` bytes; `out` must be a valid pointer.
 */
enum FmmStatus fmm_image_read_netpbm(const uint8_t *data, size_t len, struct FmmImage **out);

/**
 * # Safety
 * `img` must be a live handle; `out` must be a valid pointer.
 */
enum FmmStatus fmm_image_write_netpbm(const struct FmmImage *img, struct FmmBuffer **out);

/**
 * Compresses `img` into a `.fmm` container.
 *
 * # Safety
 * `img` must be a live handle; `out` must be a valid pointer.
 */
enum FmmStatus fmm_compress(const struct FmmImage *img, uint32_t modulus, struct FmmBuffer **out);

/**
 * Decodes a `.fmm` container.
 *
 * # Safety
 * `data` must be valid for `len` bytes; `out` must be a valid pointer.
 */
enum FmmStatus fmm_decompress(const uint8_t *data, size_t len, struct FmmImage **out);

/**
 * Reads only the 15-byte header of a container.
 *
 * # Safety
 * `data` must be valid for `len` bytes; `out` must be a valid pointer.
 */
enum FmmStatus fmm_read_header(const uint8_t *data, size_t len, struct FmmHeaderInfo *out);

/**
 * # Safety
 * Both handles must be live; `out` must be a valid pointer.
 */
enum FmmStatus fmm_quality(const struct FmmImage *original,
                           const struct FmmImage *reconstructed,
                           struct FmmQuality *out);

/**
 * # Safety
 * `out` must be a valid pointer.
 */
enum FmmStatus fmm_compression_ratio(uint64_t original_bytes,
                                     uint64_t compressed_bytes,
                                     double *out);

/**
 * # Safety
 * `buf` must be null or a live handle.
 */
const uint8_t *fmm_buffer_data(const struct FmmBuffer *buf);

/**
 * # Safety
 * `buf` must be null or a live handle.
 */
size_t fmm_buffer_len(const struct FmmBuffer *buf);

/**
 * # Safety
 * `buf` must be null or a handle from this library not yet freed.
 */
void fmm_buffer_free(struct FmmBuffer *buf);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FMM_H */
