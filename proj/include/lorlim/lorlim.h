/* C interface of the lorlim library. All handles are opaque; every call
 * returns a status and leaves a thread-local message for lorlim_last_error(). */
#ifndef LORLIM_H
#define LORLIM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(LORLIM_BUILDING)
#define LORLIM_API __declspec(dllexport)
#else
#define LORLIM_API __declspec(dllimport)
#endif
#else
#define LORLIM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lorlim_status {
  LORLIM_OK = 0,
  LORLIM_ERR_INVALID_ARGUMENT = 1,
  LORLIM_ERR_CONFIG = 2,
  LORLIM_ERR_SIGNATURE = 3,
  LORLIM_ERR_DOMAIN = 4,
  LORLIM_ERR_EXCLUDED_POINT = 5,
  LORLIM_ERR_CAUSALITY = 6,
  LORLIM_ERR_DIVERGENCE = 7,
  LORLIM_ERR_MONOTONICITY = 8,
  LORLIM_ERR_ACAUSALITY = 9,
  LORLIM_ERR_REGULARITY = 10,
  LORLIM_ERR_MARGIN = 11,
  LORLIM_ERR_DISCONNECTED = 12,
  LORLIM_ERR_START_POINT = 13,
  LORLIM_ERR_EXTRACTION = 14,
  LORLIM_ERR_BUFFER_TOO_SMALL = 15,
  LORLIM_ERR_INTERNAL = 99
} lorlim_status;

typedef struct lorlim_spacetime lorlim_spacetime;   /* config + metric + causal lattice */
typedef struct lorlim_time_field lorlim_time_field; /* time function sampled on the lattice */
typedef struct lorlim_zigzag lorlim_zigzag;         /* null-distance graph of a time field */
typedef struct lorlim_result lorlim_result;         /* checks and artifacts of a command */

/* Vector classification (lorlim_classify_vector). */
enum { LORLIM_TIMELIKE = 0, LORLIM_NULL = 1, LORLIM_SPACELIKE = 2 };
enum { LORLIM_FUTURE = 0, LORLIM_PAST = 1, LORLIM_NO_DIRECTION = 2 };

typedef struct lorlim_run_options {
  uint64_t seed;
  const double* ladder; /* may be NULL */
  size_t ladder_len;
  double tol;                      /* <= 0 selects the default 0.02 */
  const lorlim_spacetime* config;  /* may be NULL */
} lorlim_run_options;

LORLIM_API const char* lorlim_version(void);
LORLIM_API const char* lorlim_last_error(void);
LORLIM_API const char* lorlim_status_name(lorlim_status status);

/* Spacetimes */
LORLIM_API lorlim_status lorlim_spacetime_load(const char* path, lorlim_spacetime** out);
LORLIM_API lorlim_status lorlim_spacetime_parse(const char* yaml_text, lorlim_spacetime** out);
LORLIM_API void lorlim_spacetime_free(lorlim_spacetime* st);
LORLIM_API lorlim_status lorlim_spacetime_info(const lorlim_spacetime* st, size_t* nodes, size_t* edges,
                                               double* spacing);
/* domain[4] = x_min, x_max, y_min, y_max */
LORLIM_API lorlim_status lorlim_spacetime_domain(const lorlim_spacetime* st, double domain[4]);
LORLIM_API lorlim_status lorlim_classify_vector(const lorlim_spacetime* st, double px, double py, double vx,
                                                double vy, double tol, int* kind, int* direction);
/* Lorentzian length of the polyline xy[0..2n) with parameters 0, 1, ..., n-1. */
LORLIM_API lorlim_status lorlim_lorentzian_length(const lorlim_spacetime* st, const double* xy, size_t n,
                                                  double* value);

/* Time fields */
LORLIM_API lorlim_status lorlim_time_field_build(const lorlim_spacetime* st, lorlim_time_field** out);
LORLIM_API void lorlim_time_field_free(lorlim_time_field* tf);
LORLIM_API lorlim_status lorlim_time_field_eval(const lorlim_time_field* tf, double x, double y, double* value);
/* Number of lattice edges along which the field fails to increase strictly. */
LORLIM_API lorlim_status lorlim_time_field_violations(const lorlim_time_field* tf, size_t* count);
LORLIM_API lorlim_status lorlim_time_field_warnings(const lorlim_time_field* tf, size_t* count);
LORLIM_API lorlim_status lorlim_time_field_write(const lorlim_time_field* tf, const char* csv_path,
                                                const char* plot_path);
/* Central-difference gradient over [x_min,x_max]x[y_min,y_max]; csv_path may be NULL. */
LORLIM_API lorlim_status lorlim_gradient_report(const lorlim_time_field* tf, double x_min, double x_max,
                                                double y_min, double y_max, double* worst_gnorm, double* b,
                                                const char* csv_path);

/* Null distance */
LORLIM_API lorlim_status lorlim_zigzag_build(const lorlim_time_field* tf, lorlim_zigzag** out);
LORLIM_API void lorlim_zigzag_free(lorlim_zigzag* zz);
/* Points snap to their nearest lattice nodes. The witness is written as
 * x,y pairs into path_xy (capacity in points); path_len receives the number
 * of points even when the buffer is too small. path_xy may be NULL. */
LORLIM_API lorlim_status lorlim_null_distance(const lorlim_zigzag* zz, double x0, double y0, double x1, double y1,
                                              double* value, double* path_xy, size_t path_capacity,
                                              size_t* path_len);

/* Commands */
LORLIM_API lorlim_status lorlim_reproduce_example(const char* which, lorlim_result** out);
LORLIM_API lorlim_status lorlim_run_suite(const char* suite, const lorlim_run_options* options,
                                          lorlim_result** out);
LORLIM_API lorlim_status lorlim_extract(const lorlim_spacetime* st, lorlim_result** out);
LORLIM_API void lorlim_result_free(lorlim_result* r);
LORLIM_API int lorlim_result_pass(const lorlim_result* r);
LORLIM_API size_t lorlim_result_check_count(const lorlim_result* r);
LORLIM_API lorlim_status lorlim_result_check(const lorlim_result* r, size_t index, const char** name,
                                             double* value, const char** threshold, int* pass);
/* Writes every artifact under out_dir/<command>/ plus summary.csv. */
LORLIM_API lorlim_status lorlim_result_write(const lorlim_result* r, const char* out_dir);

#ifdef __cplusplus
}
#endif

#endif /* LORLIM_H */
