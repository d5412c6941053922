#ifndef FREESL_H
#define FREESL_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(FREESL_BUILDING)
#define FREESL_API __attribute__((visibility("default")))
#else
#define FREESL_API
#endif

typedef enum freesl_status {
    FREESL_OK = 0,
    FREESL_ERR_INPUT = 1,    /* malformed JSON, invalid parameters, dimension mismatch */
    FREESL_ERR_GUARD = 2,    /* truncation below the oracle guard band */
    FREESL_ERR_INTERNAL = 3, /* consistency assertion failed */
    FREESL_ERR_NULL = 4      /* required pointer argument was NULL */
} freesl_status;

typedef struct freesl_spec freesl_spec;
typedef struct freesl_module freesl_module;

/* Message for the most recent failing call on this thread; never NULL. */
FREESL_API const char* freesl_last_error(void);
FREESL_API const char* freesl_version(void);

/* Strings returned through char** out-parameters are owned by the caller. */
FREESL_API void freesl_string_free(char* s);

FREESL_API freesl_status freesl_spec_parse(const char* json, freesl_spec** out);
FREESL_API freesl_status freesl_spec_to_json(const freesl_spec* spec, char** out);
FREESL_API void freesl_spec_free(freesl_spec* spec);

/* Accepts module JSON, or spec JSON which is realized first. */
FREESL_API freesl_status freesl_module_parse(const char* json, freesl_module** out);
FREESL_API freesl_status freesl_module_to_json(const freesl_module* mod, char** out);
FREESL_API void freesl_module_free(freesl_module* mod);

FREESL_API freesl_status freesl_realize(const freesl_spec* spec, freesl_module** out);
FREESL_API freesl_status freesl_dual(const freesl_module* mod, freesl_module** out);

/* Each report call sets *ok to 1 for a clean verdict and 0 for a mathematical failure. */
FREESL_API freesl_status freesl_verify(const freesl_module* mod, char** report, int* ok);
FREESL_API freesl_status freesl_decompose(const freesl_spec* spec, char** report, int* ok);
FREESL_API freesl_status freesl_endo(const freesl_spec* spec, unsigned degree, char** report, int* ok);
FREESL_API freesl_status freesl_iso(const freesl_spec* x, const freesl_spec* y, unsigned degree, uint64_t seed,
                                   char** report, int* ok);
/* trunc == 0 selects the default truncation for the spec's rank. */
FREESL_API freesl_status freesl_oracle(const freesl_spec* spec, unsigned trunc, char** report, int* ok);
/* specs_json is a JSON list of specs sharing m and k. */
FREESL_API freesl_status freesl_classify(const char* specs_json, char** report, int* ok);

#ifdef __cplusplus
}
#endif

#endif
