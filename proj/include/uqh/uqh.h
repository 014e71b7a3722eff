#ifndef UQH_H
#define UQH_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define UQH_API __declspec(dllexport)
#else
#define UQH_API __attribute__((visibility("default")))
#endif

/* status codes; the nonzero ones follow the library's error kinds */
typedef enum {
    UQH_OK = 0,
    UQH_INVALID_ORDER = 1,
    UQH_DIVISION_BY_ZERO,
    UQH_CONTEXT_MISMATCH,
    UQH_FIELD_RESOLUTION,
    UQH_DEGENERATE_PARAMETER,
    UQH_INVALID_ARGUMENT,
    UQH_GRADING_VIOLATION,
    UQH_UNSUPPORTED,
    UQH_RESOURCE_LIMIT,
    UQH_INVARIANT_VIOLATION,
    UQH_INTERNAL
} uqh_status;

typedef enum { UQH_FORMAT_JSON = 0, UQH_FORMAT_TEXT = 1 } uqh_format;

typedef struct uqh_session uqh_session;
typedef struct uqh_module uqh_module;

/* Message of the last failed call on this thread, "" if none. */
UQH_API const char* uqh_last_error(void);
UQH_API const char* uqh_status_name(uqh_status s);

/* A session fixes (type, rank, ell) and a cyclotomic field.  Weights are strings like
   "1/3,2" (values lambda(H_i)).  denom_bound = 0 sizes the field for the listed weights,
   weights may be NULL when n_weights = 0. */
UQH_API uqh_status uqh_session_create(char type, int rank, int ell, long denom_bound, const char* const* weights,
                                      size_t n_weights, uqh_session** out);
UQH_API void uqh_session_free(uqh_session* s);
UQH_API int uqh_session_order(const uqh_session* s); /* N, q = zeta_N^{N/ell} */
UQH_API long uqh_session_pbw_dimension(const uqh_session* s);

UQH_API uqh_status uqh_verma(const uqh_session* s, const char* weight, uqh_module** out);
UQH_API uqh_status uqh_simple(const uqh_session* s, const char* weight, uqh_module** out);
UQH_API uqh_status uqh_tensor(const uqh_module* a, const uqh_module* b, uqh_module** out);
/* kind 0: M*, kind 1: the character-preserving dual */
UQH_API uqh_status uqh_dual(const uqh_module* m, int kind, uqh_module** out);
UQH_API void uqh_module_free(uqh_module* m);
UQH_API int uqh_module_dim(const uqh_module* m);
/* JSON object {weight: multiplicity}; release with uqh_string_free */
UQH_API uqh_status uqh_module_character(const uqh_module* m, char** out);
/* "" when every structural check passes, else one violation per line */
UQH_API uqh_status uqh_module_violations(const uqh_module* m, char** out);

typedef struct {
    const char* command; /* describe, verma, gram, typical, tensor, ribbon, cover, bgg, selfdual, suite */
    char type;
    int rank;
    int ell;
    const char* weight;  /* may be NULL */
    const char* weight2; /* may be NULL */
    const char* eta;     /* may be NULL */
    long denom_bound;    /* 0: sized from the weights */
} uqh_request;

/* Runs one report.  *violation is set to 1 when a checked identity failed. */
UQH_API uqh_status uqh_report(const uqh_request* req, uqh_format fmt, char** out, int* violation);
UQH_API void uqh_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
