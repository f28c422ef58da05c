/*
 * simsemi C API.
 *
 * Every object is an opaque handle owned by the caller and released with the
 * matching *_free function. Functions that can fail return a simsemi_status;
 * on failure, simsemi_last_error() describes the problem (the message is
 * per-thread and valid until the next failing call on that thread).
 * Strings returned through char** out-parameters are released with
 * simsemi_string_free.
 */
#ifndef SIMSEMI_H
#define SIMSEMI_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(SIMSEMI_BUILDING_LIBRARY)
#    define SIMSEMI_API __declspec(dllexport)
#  else
#    define SIMSEMI_API __declspec(dllimport)
#  endif
#else
#  define SIMSEMI_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum simsemi_status {
  SIMSEMI_OK = 0,
  SIMSEMI_ERR_PARSE = 1,
  SIMSEMI_ERR_INVALID_ARGUMENT = 2,
  SIMSEMI_ERR_DIMENSION_MISMATCH = 3,
  SIMSEMI_ERR_FIELD_MISMATCH = 4,
  SIMSEMI_ERR_INVALID_FIELD = 5,
  SIMSEMI_ERR_SINGULAR_MATRIX = 6,
  SIMSEMI_ERR_NOT_NILPOTENT = 7,
  SIMSEMI_ERR_NOT_SEMISIMPLE_AT_ZERO = 8,
  SIMSEMI_ERR_NOT_IDEMPOTENT = 9,
  SIMSEMI_ERR_RANK_MISMATCH = 10,
  SIMSEMI_ERR_INVALID_RANK = 11,
  SIMSEMI_ERR_RANK_TOO_HIGH = 12,
  SIMSEMI_ERR_NOT_SINGULAR = 13,
  SIMSEMI_ERR_FIELD_NOT_FINITE = 14,
  SIMSEMI_ERR_TOO_LARGE = 15,
  SIMSEMI_ERR_DEGREE_ZERO = 16,
  SIMSEMI_ERR_CERTIFICATE_MISMATCH = 17,
  SIMSEMI_ERR_IO = 18,
  SIMSEMI_ERR_INTERNAL = 19
} simsemi_status;

typedef struct simsemi_field simsemi_field;
typedef struct simsemi_matrix simsemi_matrix;
typedef struct simsemi_certificate simsemi_certificate;
typedef struct simsemi_trace simsemi_trace;
typedef struct simsemi_closure_report simsemi_closure_report;
typedef struct simsemi_sweep simsemi_sweep;

SIMSEMI_API const char* simsemi_last_error(void);
SIMSEMI_API const char* simsemi_status_name(simsemi_status status);
SIMSEMI_API void simsemi_string_free(char* s);

/* Fields: "rational" or "gf:<p>". */
SIMSEMI_API simsemi_status simsemi_field_parse(const char* spec, simsemi_field** out);
SIMSEMI_API int simsemi_field_is_finite(const simsemi_field* field);
SIMSEMI_API void simsemi_field_free(simsemi_field* field);

/* Matrices in the text format: "<rows> <cols>" then one line per row. */
SIMSEMI_API simsemi_status simsemi_matrix_parse(const simsemi_field* field, const char* text,
                                                simsemi_matrix** out);
SIMSEMI_API simsemi_status simsemi_matrix_read_file(const simsemi_field* field, const char* path,
                                                    simsemi_matrix** out);
SIMSEMI_API simsemi_status simsemi_matrix_format(const simsemi_matrix* m, char** out);
SIMSEMI_API size_t simsemi_matrix_rows(const simsemi_matrix* m);
SIMSEMI_API size_t simsemi_matrix_cols(const simsemi_matrix* m);
SIMSEMI_API simsemi_status simsemi_matrix_rank(const simsemi_matrix* m, size_t* out);
SIMSEMI_API void simsemi_matrix_free(simsemi_matrix* m);

/* Invariant factors, Fitting blocks, rank and semisimplicity of 0. */
SIMSEMI_API simsemi_status simsemi_canon_report(const simsemi_matrix* m, char** out);

/* Factor target as a product of conjugates of base. Either output pointer
 * may be NULL when the caller does not want it. */
SIMSEMI_API simsemi_status simsemi_factor(const simsemi_matrix* base, const simsemi_matrix* target,
                                          simsemi_certificate** cert, simsemi_trace** trace);
SIMSEMI_API simsemi_status simsemi_trace_format(const simsemi_trace* trace, int detailed, char** out);
SIMSEMI_API void simsemi_trace_free(simsemi_trace* trace);

SIMSEMI_API size_t simsemi_certificate_length(const simsemi_certificate* cert);
SIMSEMI_API simsemi_status simsemi_certificate_serialize(const simsemi_certificate* cert, char** out);
SIMSEMI_API simsemi_status simsemi_certificate_parse(const char* text, simsemi_certificate** out);
SIMSEMI_API simsemi_status simsemi_certificate_read_file(const char* path, simsemi_certificate** out);
SIMSEMI_API simsemi_status simsemi_certificate_write_file(const simsemi_certificate* cert, const char* path);
SIMSEMI_API void simsemi_certificate_free(simsemi_certificate* cert);

typedef struct simsemi_verification {
  int valid;
  size_t factor_count;
  /* -1 when the failure is not tied to a single factor (or there is none). */
  ptrdiff_t failing_index;
} simsemi_verification;

/* Fills *out; *reason (optional) receives the failure reason or NULL. */
SIMSEMI_API simsemi_status simsemi_verify(const simsemi_certificate* cert, simsemi_verification* out,
                                          char** reason);

typedef struct simsemi_closure_options {
  unsigned jobs;
  uint64_t max_universe;
} simsemi_closure_options;

SIMSEMI_API void simsemi_closure_options_init(simsemi_closure_options* options);
SIMSEMI_API simsemi_status simsemi_closure_check(const simsemi_matrix* m,
                                                 const simsemi_closure_options* options,
                                                 simsemi_closure_report** out);
SIMSEMI_API simsemi_status simsemi_closure_sweep(const simsemi_field* field, size_t n,
                                                 const simsemi_closure_options* options,
                                                 simsemi_sweep** out);
SIMSEMI_API size_t simsemi_sweep_count(const simsemi_sweep* sweep);
/* Borrowed pointer, valid while the sweep lives. */
SIMSEMI_API const simsemi_closure_report* simsemi_sweep_at(const simsemi_sweep* sweep, size_t index);
SIMSEMI_API void simsemi_sweep_free(simsemi_sweep* sweep);

SIMSEMI_API int simsemi_closure_report_equal(const simsemi_closure_report* r);
SIMSEMI_API size_t simsemi_closure_report_class_size(const simsemi_closure_report* r);
SIMSEMI_API size_t simsemi_closure_report_closure_size(const simsemi_closure_report* r);
SIMSEMI_API size_t simsemi_closure_report_s_p_size(const simsemi_closure_report* r);
SIMSEMI_API size_t simsemi_closure_report_rank(const simsemi_closure_report* r);
SIMSEMI_API simsemi_status simsemi_closure_report_format(const simsemi_closure_report* r, char** out);
SIMSEMI_API simsemi_status simsemi_closure_report_json(const simsemi_closure_report* r, char** out);
SIMSEMI_API void simsemi_closure_report_free(simsemi_closure_report* r);

#ifdef __cplusplus
}
#endif

#endif /* SIMSEMI_H */
