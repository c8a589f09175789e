#ifndef MVERIFY_MVERIFY_H
#define MVERIFY_MVERIFY_H

/* C interface to the verification checks and the newform file reader.
   Strings returned by the library stay valid until the owning handle is
   freed, or for mv_last_error until the next call on the same thread. */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define MV_API __declspec(dllexport)
#else
#define MV_API __attribute__((visibility("default")))
#endif

typedef enum mv_status {
  MV_OK = 0,
  MV_CHECK_FAILED = 1,
  MV_ERR_USAGE = 2,
  MV_ERR_DATA = 3,
  MV_ERR_INTERNAL = 4
} mv_status;

typedef struct mv_context mv_context;
typedef struct mv_report mv_report;
typedef struct mv_newform mv_newform;

MV_API const char* mv_version(void);
/* Message for the last non-OK status on this thread. */
MV_API const char* mv_last_error(void);

MV_API mv_status mv_context_new(mv_context** out);
MV_API void mv_context_free(mv_context* ctx);
/* Defaults to $MVERIFY_DATA or the source-tree fixture directory. */
MV_API mv_status mv_context_set_data_dir(mv_context* ctx, const char* dir);
MV_API const char* mv_context_data_dir(const mv_context* ctx);
MV_API mv_status mv_context_set_order(mv_context* ctx, int order);
MV_API mv_status mv_context_set_tol(mv_context* ctx, double tol);

MV_API size_t mv_check_count(void);
MV_API const char* mv_check_name(size_t i);
MV_API const char* mv_check_summary(size_t i);
/* JSON object of parameter defaults. */
MV_API const char* mv_check_defaults(size_t i);

/* params_json may be NULL or a JSON object such as {"N": 2}. On MV_OK or
   MV_CHECK_FAILED *out holds the report. */
MV_API mv_status mv_run_check(const mv_context* ctx, const char* name, const char* params_json,
                              mv_report** out);
MV_API void mv_report_free(mv_report* r);
MV_API int mv_report_pass(const mv_report* r);
MV_API const char* mv_report_name(const mv_report* r);
MV_API const char* mv_report_value(const mv_report* r);
MV_API double mv_report_error_bound(const mv_report* r);
MV_API double mv_report_runtime_ms(const mv_report* r);
MV_API const char* mv_report_json(const mv_report* r);

/* Reads and validates a newform file; failures are listed in mv_last_error. */
MV_API mv_status mv_newform_read(const char* path, mv_newform** out);
/* Level 2, weights with a one-dimensional rational new space. */
MV_API mv_status mv_newform_level2(int weight, int order, mv_newform** out);
MV_API mv_status mv_newform_write(const mv_newform* f, const char* path);
MV_API void mv_newform_free(mv_newform* f);
MV_API int mv_newform_weight(const mv_newform* f);
MV_API int mv_newform_level(const mv_newform* f);
MV_API int mv_newform_order(const mv_newform* f);
MV_API int mv_newform_is_exact(const mv_newform* f);
MV_API const char* mv_newform_label(const mv_newform* f);
/* Coefficient as a decimal or "p/q" string; NULL when n is out of range. */
MV_API const char* mv_newform_coeff(const mv_newform* f, int n);

#ifdef __cplusplus
}
#endif

#endif
