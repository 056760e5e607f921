#ifndef FRAISSE_FRAISSE_H
#define FRAISSE_FRAISSE_H

#include <stddef.h>
#include <stdint.h>

#if defined(FRAISSE_BUILDING_LIBRARY)
#define FR_API __attribute__((visibility("default")))
#else
#define FR_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Every call returns one of these. On anything but FR_OK (and FR_VIOLATION,
 * which still fills its report) fr_last_error() describes the problem. */
typedef enum fr_status {
  FR_OK = 0,
  FR_VIOLATION = 1,     /* a certified property failure; the report carries the witness */
  FR_INVALID_INPUT = 2, /* malformed JSON, unknown labels, wrong shapes */
  FR_PRECONDITION = 3,  /* well-formed inputs an operation cannot accept */
  FR_SIZE_LIMIT = 4,
  FR_INTERNAL = 5
} fr_status;

typedef enum fr_kind {
  FR_KIND_UNKNOWN = 0,
  FR_KIND_DIVERSITY = 1,
  FR_KIND_PROCESS = 2,
  FR_KIND_METRIC = 3,
  FR_KIND_CUTS = 4
} fr_kind;

typedef enum fr_oracle { FR_ORACLE_EXACT = 0, FR_ORACLE_NOISE = 1 } fr_oracle;

typedef struct fr_diversity fr_diversity;
typedef struct fr_process fr_process;
typedef struct fr_metric fr_metric;
typedef struct fr_cuts fr_cuts;

FR_API const char* fr_version(void);

/* Message for the last failed call on this thread; empty after success. */
FR_API const char* fr_last_error(void);

/* Frees any char* the library hands out. */
FR_API void fr_string_free(char* s);

/* `source` names the input in error messages and may be NULL. */
FR_API fr_status fr_detect_kind(const char* json, const char* source, fr_kind* out);

/* Parses and validates any structure. FR_OK with {"valid": true, ...} or
 * FR_VIOLATION with {"valid": false, "witness": {...}}. */
FR_API fr_status fr_check(const char* json, const char* source, char** report);

/* Diversities */
FR_API fr_status fr_diversity_parse(const char* json, const char* source, fr_diversity** out);
FR_API void fr_diversity_free(fr_diversity* d);
FR_API fr_status fr_diversity_to_json(const fr_diversity* d, char** out);
FR_API size_t fr_diversity_size(const fr_diversity* d);
FR_API fr_status fr_diversity_label(const fr_diversity* d, size_t i, char** out);
FR_API fr_status fr_diversity_value(const fr_diversity* d, uint32_t set, char** out);
FR_API fr_status fr_diversity_induced_metric(const fr_diversity* d, fr_metric** out);
/* Shared labels form the base; each input has one more point. */
FR_API fr_status fr_diversity_amalgamate(const fr_diversity* d1, const fr_diversity* d2, fr_diversity** out);
FR_API fr_status fr_diversity_join(const fr_diversity* d1, const fr_diversity* d2, fr_diversity** out);
FR_API fr_status fr_diversity_quotient(const fr_diversity* d, fr_diversity** out);
/* FR_VIOLATION with a NotL1 witness in `report`; FR_OK fills `out`. */
FR_API fr_status fr_diversity_decompose(const fr_diversity* d, size_t anchor, fr_cuts** out, char** report);
FR_API fr_status fr_diversity_l1_amalgamate(const fr_diversity* d1, const fr_diversity* d2, size_t anchor,
                                            char** report);
/* Tuples are index arrays of equal length `n`. Report holds d_inf, lower,
 * upper and the joint embedding. */
FR_API fr_status fr_diversity_tuples(const fr_diversity* a, const size_t* ia, const fr_diversity* b,
                                     const size_t* ib, size_t n, char** report);
FR_API fr_status fr_diversity_chain(const fr_diversity* ambient, const size_t* base, size_t base_len,
                                    const fr_diversity* patch, fr_oracle oracle, uint64_t seed, size_t steps,
                                    char** report);
FR_API fr_status fr_diversity_build_rich(const fr_diversity* start, const fr_diversity* const* catalog,
                                         size_t count, size_t rounds, const char* epsilon, uint64_t seed,
                                         char** report);

/* Processes */
FR_API fr_status fr_process_parse(const char* json, const char* source, fr_process** out);
FR_API void fr_process_free(fr_process* p);
FR_API fr_status fr_process_to_json(const fr_process* p, char** out);
FR_API size_t fr_process_size(const fr_process* p);
FR_API fr_status fr_process_label(const fr_process* p, size_t i, char** out);
FR_API fr_status fr_process_induced_metric(const fr_process* p, fr_metric** out);
/* Report holds the joint and the distance, weighted_tv, half_l1, bound chain. */
FR_API fr_status fr_process_amalgamate(const fr_process* p1, const fr_process* p2, char** report);
FR_API fr_status fr_process_join(const fr_process* p1, const fr_process* p2, fr_process** out);
/* Optimal coupling of the two whole joint laws (same index size and states). */
FR_API fr_status fr_process_couple(const fr_process* p1, const fr_process* p2, char** report);
FR_API fr_status fr_process_tuples(const fr_process* a, const size_t* ia, const fr_process* b, const size_t* ib,
                                   size_t n, char** report);
FR_API fr_status fr_process_chain(const fr_process* ambient, const size_t* base, size_t base_len,
                                  const fr_process* patch, fr_oracle oracle, uint64_t seed, size_t steps,
                                  char** report);
FR_API fr_status fr_process_build_rich(const fr_process* start, const fr_process* const* catalog, size_t count,
                                       size_t rounds, const char* epsilon, uint64_t seed, char** report);

/* Metrics */
FR_API fr_status fr_metric_parse(const char* json, const char* source, fr_metric** out);
FR_API void fr_metric_free(fr_metric* m);
FR_API fr_status fr_metric_to_json(const fr_metric* m, char** out);
/* FR_OK with cut weights, FR_VIOLATION when outside the cut cone. Up to 6 points. */
FR_API fr_status fr_metric_is_l1(const fr_metric* m, fr_cuts** out);
/* Searches every 3+2 selection; FR_VIOLATION with the worst one. */
FR_API fr_status fr_metric_pentagonal(const fr_metric* m, char** report);

/* Cut weights */
FR_API fr_status fr_cuts_parse(const char* json, const char* source, fr_cuts** out);
FR_API void fr_cuts_free(fr_cuts* w);
FR_API fr_status fr_cuts_to_json(const fr_cuts* w, char** out);
FR_API fr_status fr_cuts_diversity(const fr_cuts* w, fr_diversity** out);

/* The five-point pair whose amalgams all violate the pentagonal inequality.
 * FR_OK when every part of the report is certified. */
FR_API fr_status fr_k23_report(char** report);

#ifdef __cplusplus
}
#endif

#endif
