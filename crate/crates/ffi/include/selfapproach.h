#ifndef SELFAPPROACH_H
#define SELFAPPROACH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>

// Result codes. Zero is success.
typedef enum SaStatus {
  SA_STATUS_OK = 0,
  SA_STATUS_NULL_POINTER = 1,
  SA_STATUS_INVALID_POLYGON = 2,
  SA_STATUS_INVALID_ARGUMENT = 3,
  SA_STATUS_OUTSIDE_POLYGON = 4,
  // No self-approaching path exists; the witness is available as JSON.
  SA_STATUS_NOT_REACHABLE = 5,
  SA_STATUS_SOLVER_FAILURE = 6,
  SA_STATUS_INVALID_JSON = 7,
  // A Rust panic was caught at the boundary.
  SA_STATUS_INTERNAL = 8,
} SaStatus;

// Opaque path.
typedef struct SaPath SaPath;

// Opaque validated polygon.
typedef struct SaPolygon SaPolygon;

// Description of the last failure on this thread; empty after a success.
// The pointer stays valid until the next call on the same thread.
const char *sa_last_error_message(void);

// Static name of a status code.
const char *sa_status_name(enum SaStatus status);

// Builds a polygon from `n` points given as `xy[2i], xy[2i+1]`.
//
// # Safety
// `xy` must point to `2 n` doubles and `out` to writable storage.
enum SaStatus sa_polygon_new(const double *xy, size_t n, struct SaPolygon **out);

// Releases a polygon; null is ignored.
//
// # Safety
// `p` must come from [`sa_polygon_new`] and not be used afterwards.
void sa_polygon_free(struct SaPolygon *p);

// Number of vertices after normalization (collinear runs removed).
//
// # Safety
// `p` must be a live polygon handle or null.
size_t sa_polygon_vertex_count(const struct SaPolygon *p);

// Decides whether the polygon is self-approaching. `out_tests`, when not
// null, receives the number of intersection tests the sweep made.
//
// # Safety
// `p` must be a live polygon handle; outputs must be writable or null.
enum SaStatus sa_polygon_is_self_approaching(const struct SaPolygon *p,
                                             bool *out_yes,
                                             size_t *out_tests);

// Shortest self-approaching path from `(sx, sy)` to `(tx, ty)`.
//
// On `Ok`, `*out_path` receives a path handle. On `NotReachable`, the
// path is null and `*out_json` (when not null) receives the witness as
// JSON; on `Ok` it receives the path JSON.
//
// # Safety
// `p` must be a live polygon handle; outputs must be writable or null.
enum SaStatus sa_shortest_path(const struct SaPolygon *p,
                               double sx,
                               double sy,
                               double tx,
                               double ty,
                               struct SaPath **out_path,
                               char **out_json);

// Parses a path from its JSON form.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum SaStatus sa_path_from_json(const char *json, struct SaPath **out);

// Serializes a path; release the string with [`sa_string_free`].
//
// # Safety
// `p` must be a live path handle; `out` must be writable.
enum SaStatus sa_path_to_json(const struct SaPath *p, char **out);

// Number of pieces (segments and involute pieces).
//
// # Safety
// `p` must be a live path handle or null.
size_t sa_path_piece_count(const struct SaPath *p);

// Total arc length.
//
// # Safety
// `p` must be a live path handle; `out` must be writable.
enum SaStatus sa_path_length(const struct SaPath *p, double *out);

// Point at arc length `s` from the source.
//
// # Safety
// `p` must be a live path handle; outputs must be writable.
enum SaStatus sa_path_eval(const struct SaPath *p, double s, double *out_x, double *out_y);

// Checks the self-approaching property (normal and triple tests) and,
// when `poly` is not null, containment.
//
// # Safety
// `p` must be a live path handle, `poly` a live polygon handle or null,
// and `out_pass` writable.
enum SaStatus sa_path_verify(const struct SaPath *p,
                             const struct SaPolygon *poly,
                             size_t samples_per_piece,
                             double tol,
                             bool *out_pass);

// Releases a path; null is ignored.
//
// # Safety
// `p` must come from this library and not be used afterwards.
void sa_path_free(struct SaPath *p);

// Releases a string returned by this library; null is ignored.
//
// # Safety
// `s` must come from this library and not be used afterwards.
void sa_string_free(char *s);

#endif  /* SELFAPPROACH_H */
