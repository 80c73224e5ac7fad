#ifndef CONDLAB_H
#define CONDLAB_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes mirror the process exit codes of the bundled CLI. */
typedef enum condlab_status {
  CONDLAB_OK = 0,               /* run finished and every configured check passed */
  CONDLAB_PREDICATE_FAILED = 1, /* run finished but at least one check failed */
  CONDLAB_INVALID_CONFIG = 2,   /* the config document was rejected */
  CONDLAB_RUNTIME_ERROR = 3,    /* I/O failure or internal error mid-run */
  CONDLAB_BAD_ARGUMENT = 4      /* misuse of this API (null handle, bad enum name) */
} condlab_status;

typedef struct condlab_run condlab_run;

const char* condlab_version(void);

/* Both constructors accept the document as-is and defer all validation, so
 * they only return NULL on allocation failure.  Errors in the text or the
 * file surface from condlab_run_validate / condlab_run_execute. */
condlab_run* condlab_run_create(const char* config_json);
condlab_run* condlab_run_create_from_file(const char* path);
void condlab_run_destroy(condlab_run* run);

/* Overrides applied on top of the config document. */
condlab_status condlab_run_set_out_dir(condlab_run* run, const char* dir);
condlab_status condlab_run_set_seed(condlab_run* run, uint64_t seed);
condlab_status condlab_run_set_threads(condlab_run* run, int threads);
condlab_status condlab_run_set_format(condlab_run* run, const char* format); /* "csv"|"json" */

/* Pins the experiment kind.  If the document already names a different kind
 * the mismatch is reported by validate/execute, not here. */
condlab_status condlab_run_set_kind(condlab_run* run, const char* kind);

/* Checks the document without running it.  *diagnostics_json receives a JSON
 * array of messages (empty when the config is valid); free it with
 * condlab_string_free.  Pass NULL to skip the report. */
condlab_status condlab_run_validate(condlab_run* run, char** diagnostics_json);

/* Parses, runs, and writes the artifact files.  After a completed run the
 * summary document is available whether or not the checks passed. */
condlab_status condlab_run_execute(condlab_run* run);

/* Owned by the handle; valid until the next execute or destroy.  NULL before
 * the first completed run. */
const char* condlab_run_summary_json(const condlab_run* run);

/* Message for the most recent failed call, or NULL if it succeeded. */
const char* condlab_run_error(const condlab_run* run);

void condlab_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
