#ifndef AUTALG_H
#define AUTALG_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes double as CLI exit codes. */
typedef enum {
    AUTALG_OK = 0,
    AUTALG_USAGE = 1,
    AUTALG_PARSE = 2,
    AUTALG_PRECONDITION = 3,
    AUTALG_INTERNAL = 4
} autalg_status;

typedef enum { AUTALG_DUALIZABLE = 0, AUTALG_NON_DUALIZABLE = 1, AUTALG_UNKNOWN = 2 } autalg_outcome;

typedef struct autalg_algebra autalg_algebra;

/* Message and error kind of the last failure on this thread. */
const char* autalg_last_error(void);
const char* autalg_last_error_kind(void);

/* Strings returned through char** are owned by the caller. */
void autalg_string_free(char* s);

autalg_status autalg_parse(const char* text, autalg_algebra** out);
autalg_status autalg_catalog(const char* name, const long* params, size_t nparams, autalg_algebra** out);
autalg_status autalg_gen_chain(int n, autalg_algebra** out);
void autalg_free(autalg_algebra* m);

autalg_status autalg_emit(const autalg_algebra* m, char** out);
autalg_status autalg_size(const autalg_algebra* m, int* states, int* letters);

/* json != 0: verdict JSON; otherwise a text report. outcome may be NULL. */
autalg_status autalg_classify(const autalg_algebra* m, int json, char** out, autalg_outcome* outcome);
autalg_status autalg_analyze(const autalg_algebra* m, char** out);
/* Reduction steps, then the normalized algebra file. */
autalg_status autalg_normalize(const autalg_algebra* m, char** out);
/* "lhs = rhs" or "p1 = q1 & p2 = q2 => l = r" */
autalg_status autalg_check_equation(const autalg_algebra* m, const char* expr, int* holds, char** out);
/* Injective homomorphism from a into b. */
autalg_status autalg_embed(const autalg_algebra* a, const autalg_algebra* b, size_t max_elements, int* found,
                           char** out);
autalg_status autalg_verify_certificate(const autalg_algebra* m, const char* cert_json, int* ok, char** out);

/* Truncation report; kernel analysis runs when |A| <= max_elements.
   base may be NULL (default base algebra of the construction). */
autalg_status autalg_witness(const char* name, const char* const* params, size_t nparams, int size,
                             const autalg_algebra* base, size_t max_elements, char** out);
/* Local evaluation probe on (F_0, F_0) or (N_0, the N_0^2 probe algebra). */
autalg_status autalg_local_probe(const char* which, int k, char** out);

/* Seeded random suite: classify, re-verify, cross-check. */
autalg_status autalg_random_suite(uint64_t seed, int count, char** out);

#ifdef __cplusplus
}
#endif

#endif
