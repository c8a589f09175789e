/* Exercises the C interface from C. */
#include "mverify/mverify.h"

#include <stdio.h>
#include <string.h>

static int failures = 0;

#define EXPECT(cond)                                               \
  do {                                                             \
    if (!(cond)) {                                                 \
      fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                  \
    }                                                              \
  } while (0)

int main(void) {
  mv_context* ctx = NULL;
  mv_report* rep = NULL;
  mv_newform* f = NULL;
  size_t i;
  int found = 0;

  EXPECT(mv_context_new(&ctx) == MV_OK);
  EXPECT(mv_context_set_data_dir(ctx, MVERIFY_TEST_DATA_DIR) == MV_OK);
  EXPECT(strcmp(mv_context_data_dir(ctx), MVERIFY_TEST_DATA_DIR) == 0);
  EXPECT(mv_context_set_order(ctx, 0) == MV_ERR_USAGE);

  for (i = 0; i < mv_check_count(); ++i)
    if (strcmp(mv_check_name(i), "theta-e8") == 0) found = 1;
  EXPECT(found);
  EXPECT(mv_check_name(mv_check_count()) == NULL);

  EXPECT(mv_run_check(ctx, "theta-e8", NULL, &rep) == MV_OK);
  EXPECT(rep != NULL && mv_report_pass(rep) == 1);
  EXPECT(rep != NULL && strcmp(mv_report_name(rep), "theta-e8") == 0);
  EXPECT(rep != NULL && strstr(mv_report_json(rep), "\"pass\":true") != NULL);
  mv_report_free(rep);

  EXPECT(mv_run_check(ctx, "eisenstein-n", "{\"N\": 2, \"tol\": 1e-30}", &rep) == MV_CHECK_FAILED);
  EXPECT(rep != NULL && mv_report_pass(rep) == 0);
  mv_report_free(rep);

  EXPECT(mv_run_check(ctx, "no-such-check", NULL, &rep) == MV_ERR_USAGE);
  EXPECT(rep == NULL);
  EXPECT(strstr(mv_last_error(), "unknown check") != NULL);
  EXPECT(mv_run_check(ctx, "theta-e8", "{not json", &rep) == MV_ERR_USAGE);

  EXPECT(mv_newform_read(MVERIFY_TEST_DATA_DIR "/newform_2_8.tsv", &f) == MV_OK);
  EXPECT(mv_newform_weight(f) == 8 && mv_newform_level(f) == 2 && mv_newform_is_exact(f));
  EXPECT(strcmp(mv_newform_coeff(f, 2), "-8") == 0);
  EXPECT(mv_newform_coeff(f, mv_newform_order(f) + 1) == NULL);
  mv_newform_free(f);
  EXPECT(mv_newform_read("/nonexistent.tsv", &f) == MV_ERR_DATA);

  mv_context_free(ctx);
  if (failures == 0) printf("C API: all expectations met\n");
  return failures == 0 ? 0 : 1;
}
