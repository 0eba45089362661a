/* C interface to the mimo3way library. All handles are opaque; every call
 * that can fail returns an m3w_status and leaves details in m3w_last_error(). */
#ifndef MIMO3WAY_H
#define MIMO3WAY_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(MIMO3WAY_BUILDING_LIBRARY)
#    define M3W_API __declspec(dllexport)
#  else
#    define M3W_API __declspec(dllimport)
#  endif
#else
#  define M3W_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  M3W_OK = 0,
  M3W_ERR_INVALID_INPUT = 1,
  M3W_ERR_REGIME_MISMATCH = 2,
  M3W_ERR_PRECONDITION = 3,
  M3W_ERR_VALIDATION = 4,
  M3W_ERR_INTERNAL = 5,
  M3W_ERR_NULL_ARGUMENT = 6
} m3w_status;

typedef struct {
  int64_t num;
  int64_t den; /* always >= 1 */
} m3w_rational;

typedef enum { M3W_MSGS_UNICAST = 0, M3W_MSGS_BROADCAST = 1 } m3w_messages;

typedef enum {
  M3W_ALLOC_CLOSED_FORM = 0,
  M3W_ALLOC_ENUMERATED = 1,
  M3W_ALLOC_BRUTEFORCE = 2
} m3w_alloc_method;

typedef enum { M3W_SCHEME_UNI_A = 0, M3W_SCHEME_UNI_B = 1, M3W_SCHEME_BCAST = 2 } m3w_scheme;

typedef enum { M3W_FORMAT_JSON = 0, M3W_FORMAT_CSV = 1, M3W_FORMAT_TABLE = 2 } m3w_format;

typedef enum { M3W_FIT_TWO_POINT = 0, M3W_FIT_LEAST_SQUARES = 1 } m3w_fit;

/* Result of one operation, renderable in every m3w_format. */
typedef struct m3w_report m3w_report;

M3W_API const char* m3w_version(void);

/* Stable name of a status, e.g. "invalid-input". */
M3W_API const char* m3w_status_string(m3w_status status);

/* Message of the last failing call on this thread; "" if none. */
M3W_API const char* m3w_last_error(void);

/* Antenna counts m[3] must satisfy m[0] >= m[1] >= m[2] >= 0. */

/* Bounds for an explicit split. */
M3W_API m3w_status m3w_bounds(const m3w_rational mt[3], const m3w_rational mr[3], m3w_messages msgs,
                              m3w_report** out);

/* Bounds at the optimal split of m; the report includes the allocation. */
M3W_API m3w_status m3w_bounds_allocated(const int64_t m[3], m3w_messages msgs, m3w_report** out);

/* denominator is used by M3W_ALLOC_BRUTEFORCE only. Broadcast allocation
 * ignores method. */
M3W_API m3w_status m3w_allocate(const int64_t m[3], m3w_messages msgs, m3w_alloc_method method,
                                int64_t denominator, m3w_report** out);

M3W_API m3w_status m3w_optimal_dof(const int64_t m[3], m3w_messages msgs, m3w_rational* dof);

/* Builds the scheme on channels drawn from seed and verifies it. *valid is
 * set to 1 or 0; an invalid scheme is not an error. */
M3W_API m3w_status m3w_verify_scheme(const int64_t m[3], m3w_scheme scheme, uint64_t seed, m3w_report** out,
                                     int* valid);

/* threads = 0 picks the hardware concurrency. slope, theoretical and out may
 * be NULL. */
M3W_API m3w_status m3w_estimate_dof(const int64_t m[3], m3w_scheme scheme, const double* snr_db, size_t n_snr,
                                    size_t trials, uint64_t seed, m3w_fit fit, unsigned threads, double* slope,
                                    m3w_rational* theoretical, m3w_report** out);

/* Normalized optimum over every config with m3 <= M2 <= M1 <= m_max. */
M3W_API m3w_status m3w_sweep(int64_t m3, int64_t m_max, m3w_messages msgs, m3w_report** out);

/* *text stays valid until the report is freed. */
M3W_API m3w_status m3w_report_render(m3w_report* report, m3w_format format, const char** text);

M3W_API void m3w_report_free(m3w_report* report);

#ifdef __cplusplus
}
#endif

#endif /* MIMO3WAY_H */
