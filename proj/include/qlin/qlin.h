#ifndef QLIN_QLIN_H
#define QLIN_QLIN_H

/* C interface to the queue linearizability checker and the array-queue
 * explorer. Every function returning qlin_status leaves a description of the
 * failure in qlin_last_error() (per thread). Strings handed out by the
 * library are released with qlin_string_free. */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define QLIN_API __declspec(dllexport)
#else
#define QLIN_API __attribute__((visibility("default")))
#endif

typedef enum qlin_status {
  QLIN_OK = 0,
  QLIN_ERR_PARSE = 1,
  QLIN_ERR_IO = 2,
  QLIN_ERR_BOUND = 3,
  QLIN_ERR_INVALID_ARGUMENT = 4,
  QLIN_ERR_INTERNAL = 5
} qlin_status;

typedef enum qlin_outcome {
  QLIN_LINEARIZABLE = 0,
  QLIN_VIOLATION = 1,
  QLIN_INDETERMINATE = 2
} qlin_outcome;

typedef enum qlin_format {
  QLIN_FORMAT_TEXT = 0,
  QLIN_FORMAT_LINES = 1
} qlin_format;

/* Flags for qlin_check. */
#define QLIN_CHECK_ALL 0x1u     /* report every violation, not only the first */
#define QLIN_CHECK_WITNESS 0x2u /* include the linearization */

typedef struct qlin_history qlin_history;
typedef struct qlin_result qlin_result;

QLIN_API const char* qlin_status_string(qlin_status s);
QLIN_API const char* qlin_last_error(void);
QLIN_API void qlin_string_free(char* s);

/* Histories. `line`, when not NULL, receives the failing line of a parse error. */
QLIN_API qlin_status qlin_history_parse(const char* text, size_t len, qlin_history** out, size_t* line);
QLIN_API qlin_status qlin_history_load(const char* path, qlin_history** out, size_t* line);
QLIN_API void qlin_history_free(qlin_history* h);
QLIN_API qlin_status qlin_history_serialize(const qlin_history* h, char** out);
QLIN_API size_t qlin_history_event_count(const qlin_history* h);
QLIN_API int qlin_history_is_complete(const qlin_history* h);

/* Verdicts and reports. The report is the text a command-line run prints. */
QLIN_API qlin_outcome qlin_result_outcome(const qlin_result* r);
QLIN_API const char* qlin_result_report(const qlin_result* r);
/* Violations found (check) or distinct violating histories (explore). */
QLIN_API size_t qlin_result_violation_count(const qlin_result* r);
/* "VIOLATION <kind> <uids>"; NULL when i is out of range. */
QLIN_API const char* qlin_result_violation(const qlin_result* r, size_t i);
/* Linearization in history file format, or NULL. */
QLIN_API const char* qlin_result_witness(const qlin_result* r);
QLIN_API void qlin_result_free(qlin_result* r);

QLIN_API qlin_status qlin_check(const qlin_history* h, unsigned flags, qlin_format format, qlin_result** out);

/* Brute-force search; QLIN_ERR_BOUND when the history has more than max_events events. */
QLIN_API qlin_status qlin_oracle(const qlin_history* h, size_t max_events, qlin_format format, qlin_result** out);

typedef struct qlin_explore_params {
  size_t n_enq;
  size_t n_deq;
  const uint64_t* values; /* n_enq values, or NULL for 1..n_enq */
  size_t n_values;
  const char* mutant;     /* NULL or "none" for the unmodified queue */
  size_t capacity;        /* 0: default */
  uint32_t loop_bound;    /* 0: default */
  int dedup;
  int run_oracle;
  int check_purity;
  size_t max_states;      /* 0: default */
} qlin_explore_params;

QLIN_API void qlin_explore_params_init(qlin_explore_params* p);

/* Outcome: linearizable when clean, violation when something was found,
 * indeterminate when the state cap stopped the search. */
QLIN_API qlin_status qlin_explore(const qlin_explore_params* p, qlin_format format, qlin_result** out);

typedef struct qlin_divergence_params {
  const char* harness; /* "vrepet" or "vord" */
  uint64_t v;          /* vrepet: the value */
  size_t m;            /* vrepet: deq(v) threads, at least 2 */
  size_t k;            /* choice threads */
  uint64_t v1, v2;     /* vord */
  const char* mutant;
  size_t capacity;     /* 0: one slot per enqueuing thread */
  uint32_t loop_bound; /* 0: default */
  size_t max_states;   /* 0: default */
} qlin_divergence_params;

QLIN_API void qlin_divergence_params_init(qlin_divergence_params* p);

/* Outcome: linearizable on pass, violation on a counterexample, indeterminate
 * when the state cap stopped the search. */
QLIN_API qlin_status qlin_divergence(const qlin_divergence_params* p, qlin_format format, qlin_result** out);

/* Random complete differentiated history in file format. */
QLIN_API qlin_status qlin_generate(uint64_t seed, size_t n_enq, size_t n_deq, char** out);

#ifdef __cplusplus
}
#endif

#endif
