#ifndef HEIS_H
#define HEIS_H

/* C interface to the heis library. Every call returns a status; on failure
 * heis_last_error() describes it (per thread, valid until the next call). */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define HEIS_API __declspec(dllexport)
#else
#define HEIS_API __attribute__((visibility("default")))
#endif

typedef enum heis_status {
    HEIS_OK = 0,
    HEIS_VERIFY_FAILED = 1,
    HEIS_PARSE_ERROR = 2,
    HEIS_HYPOTHESIS = 3, /* (H) fails for the substitution */
    HEIS_IO_ERROR = 4,
    HEIS_INVALID_ARGUMENT = 5,
    HEIS_INTERNAL = 6
} heis_status;

typedef struct heis_report heis_report;
typedef struct heis_substitution heis_substitution;

HEIS_API const char* heis_version(void);
HEIS_API const char* heis_last_error(void);

/* Runs analyze | orbit | broken-line | induce | verify | equidistribution.
 * config_json may be NULL or "" for defaults. The report is returned even
 * when verification fails (status HEIS_VERIFY_FAILED). */
HEIS_API heis_status heis_run(const char* command, const char* config_json, heis_report** out);

/* Report JSON, owned by the report. */
HEIS_API const char* heis_report_json(const heis_report* report);
HEIS_API int heis_report_passed(const heis_report* report);
/* Writes the report and its tables into dir. format: "csv" or "jsonl", NULL
 * for the configured one. */
HEIS_API heis_status heis_report_write(const heis_report* report, const char* dir, const char* format);
HEIS_API void heis_report_free(heis_report* report);

/* "a->ab;b->a" */
HEIS_API heis_status heis_substitution_parse(const char* text, heis_substitution** out);
/* Abelianization, row-major {A, B, C, D}. */
HEIS_API heis_status heis_substitution_matrix(const heis_substitution* s, long long out[4]);
/* Writes the length-n prefix of the fixed word plus a terminating NUL into
 * buf (capacity cap >= n + 1). */
HEIS_API heis_status heis_substitution_fixed_prefix(const heis_substitution* s, size_t n, char* buf, size_t cap);
HEIS_API void heis_substitution_free(heis_substitution* s);

#ifdef __cplusplus
}
#endif

#endif
