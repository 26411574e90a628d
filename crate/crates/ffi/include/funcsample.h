#ifndef FUNCSAMPLE_H
#define FUNCSAMPLE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum FsStatus {
  FS_STATUS_OK = 0,
  FS_STATUS_NULL_POINTER = 1,
  FS_STATUS_INVALID_ARGUMENT = 2,
  FS_STATUS_DEGENERATE_GRAPH = 3,
  FS_STATUS_INFEASIBLE = 4,
  FS_STATUS_NUMERICAL = 5,
  FS_STATUS_IO = 6,
  FS_STATUS_PARSE = 7,
  /**
   * The requested value exists but is undefined (e.g. zero-variance assortativity).
   */
  FS_STATUS_UNDEFINED = 8,
  FS_STATUS_INTERNAL = 9,
} FsStatus;

typedef struct FsGraph FsGraph;

typedef struct FsReport FsReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the calling thread's last error message into `buf` (NUL
 * terminated, truncated to `len`). Returns the full message length in
 * bytes, or 0 when there is none.
 *
 * # Safety
 * `buf` must be null or point to `len` writable bytes.
 */
size_t fs_last_error_message(char *buf, size_t len);

/**
 * Builds a directed graph from `m` edges `src[k] -> dst[k]`.
 *
 * # Safety
 * `src` and `dst` must point to `m` readable values (or be null when
 * `m == 0`); `out` must be writable.
 */
enum FsStatus fs_graph_from_edges(size_t n,
                                  const size_t *src,
                                  const size_t *dst,
                                  size_t m,
                                  struct FsGraph **out);

/**
 * Reads a graph in the text edge-list format.
 *
 * # Safety
 * `path` must be a NUL-terminated string; `out` must be writable.
 */
enum FsStatus fs_graph_load(const char *path, struct FsGraph **out);

/**
 * Generates a spatial network in the unit semi-sphere.
 *
 * # Safety
 * `out` must be writable.
 */
enum FsStatus fs_spatial_generate(size_t n,
                                  double alpha,
                                  double beta,
                                  uint64_t seed,
                                  struct FsGraph **out);

/**
 * # Safety
 * `g` must be null or a handle from this library that has not been freed.
 */
void fs_graph_free(struct FsGraph *g);

/**
 * # Safety
 * `g` must be a live handle or null (which yields 0).
 */
size_t fs_graph_node_count(const struct FsGraph *g);

/**
 * # Safety
 * `g` must be a live handle or null (which yields 0).
 */
size_t fs_graph_edge_count(const struct FsGraph *g);

/**
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum FsStatus fs_graph_density(const struct FsGraph *g, double *out);

/**
 * Evaluates the full metric catalog.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum FsStatus fs_measure(const struct FsGraph *g, struct FsReport **out);

/**
 * # Safety
 * `r` must be null or a handle from this library that has not been freed.
 */
void fs_report_free(struct FsReport *r);

/**
 * Number of metrics in the catalog; report indices run from 0 to this - 1.
 */
size_t fs_metric_count(void);

/**
 * Static name of catalog entry `index`, or null when out of range.
 */
const char *fs_metric_name(size_t index);

/**
 * Value of catalog entry `index`. Returns `FS_STATUS_UNDEFINED` (and
 * writes NaN) for undefined values.
 *
 * # Safety
 * `r` must be a live handle; `out` must be writable.
 */
enum FsStatus fs_report_value(const struct FsReport *r, size_t index, double *out);

/**
 * Two-sided Welch t-test.
 *
 * # Safety
 * `a` and `b` must point to `na` and `nb` readable values; `t` and `p`
 * must be writable.
 */
enum FsStatus fs_welch_t_test(const double *a,
                              size_t na,
                              const double *b,
                              size_t nb,
                              double *t,
                              double *p);

/**
 * Alpha-function synaptic kernel `(x / mu) exp(1 - x / mu)`, 0 for `x < 0`.
 */
double fs_alpha_kernel(double x, double mu);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FUNCSAMPLE_H */
