/* C API for the jones library: exact and approximate Jones polynomial
 * evaluation for braid closures, weighted path sampling, and braid-to-circuit
 * synthesis. All functions return a jones_status; outputs are written through
 * pointers. Handles are opaque and freed with the matching *_free call.
 * Strings returned through char** are heap-allocated; release them with
 * jones_string_free. On failure jones_last_error() describes the problem for
 * the calling thread. */

#ifndef JONES_H
#define JONES_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum jones_status {
    JONES_OK = 0,
    JONES_EINVAL = 1,   /* invalid argument or malformed input */
    JONES_ELIMIT = 2,   /* configured size budget exceeded */
    JONES_EINTERNAL = 3 /* internal invariant violated */
} jones_status;

enum { JONES_CLOSURE_TRACE = 0, JONES_CLOSURE_PLAT = 1 };
enum { JONES_MODE_EXACT = 0, JONES_MODE_SAMPLED = 1 };
enum { JONES_PART_RE = 0, JONES_PART_IM = 1 };

typedef struct jones_braid jones_braid;
typedef struct jones_poly jones_poly;

const char* jones_version(void);
/* fixed conventions (crossing chirality, the value of A, orientation rule)
 * as a JSON object; static storage, do not free */
const char* jones_conventions_json(void);
const char* jones_status_name(jones_status s);
/* thread-local description of the most recent failure */
const char* jones_last_error(void);

void jones_string_free(char* s);

/* --- braid words ------------------------------------------------------- */

/* text is "n: g1 g2 ... gm" or {"strands": n, "word": [...]} */
jones_status jones_braid_parse(const char* text, jones_braid** out);
jones_status jones_braid_create(int strands, const int* word, size_t len, jones_braid** out);
void jones_braid_free(jones_braid* b);
int jones_braid_strands(const jones_braid* b);
size_t jones_braid_length(const jones_braid* b);
jones_status jones_braid_word(const jones_braid* b, int* out, size_t cap);
int jones_braid_exponent_sum(const jones_braid* b);
jones_status jones_braid_writhe(const jones_braid* b, int closure, int* writhe, int* components);

/* --- exact polynomials (pass 0 for the default size caps) --------------- */

jones_status jones_bracket_poly(const jones_braid* b, int closure, int max_crossings,
                                jones_poly** out);
jones_status jones_exact_poly(const jones_braid* b, int closure, int max_crossings,
                              jones_poly** out);
jones_status jones_tl_poly(const jones_braid* b, int closure, int max_strands, jones_poly** out);

void jones_poly_free(jones_poly* p);
int jones_poly_equal(const jones_poly* p, const jones_poly* q);
jones_status jones_poly_str(const jones_poly* p, char** out);
/* {"exponent": "coefficient", ...} with exponents descending */
jones_status jones_poly_json(const jones_poly* p, char** out);
/* evaluate at A = i*exp(-i*pi/(2k)), i.e. t = exp(2*pi*i/k) */
jones_status jones_poly_eval_unit_root(const jones_poly* p, int k, double* re, double* im);
jones_status jones_poly_eval(const jones_poly* p, double a_re, double a_im, double* re,
                             double* im);

/* --- path space diagnostics and sampling -------------------------------- */

jones_status jones_path_space_dims(int n, int k, int* dim, double* normalization);
/* fills up to cap occupied endpoint blocks; *count receives the total */
jones_status jones_path_blocks(int n, int k, int cap, int* ells, int* dims, double* lambdas,
                               int* count);
/* the weighted draw produced by stream (seed, index); buf gets the 0/1 string */
jones_status jones_sample_path(int n, int k, uint64_t seed, uint64_t index, char* buf,
                               size_t cap, int* endpoint);

/* --- randomized approximation ------------------------------------------- */

typedef struct jones_approx_opts {
    int k;
    int closure;        /* JONES_CLOSURE_* */
    int mode;           /* JONES_MODE_* */
    double epsilon;     /* target additive accuracy of the raw average r */
    double delta;       /* failure probability */
    uint64_t seed;
    int with_reference; /* also compute the deterministic reference value */
} jones_approx_opts;

typedef struct jones_approx_result {
    double estimate_re, estimate_im;
    double mean_re, mean_im;       /* raw per-part averages */
    double rescale_re, rescale_im; /* estimate = rescale * (mean_re + i mean_im) */
    double envelope;               /* epsilon * |rescale| */
    uint64_t samples_per_part;     /* 0 in exact mode */
    int writhe;
    int has_reference;
    double reference_re, reference_im;
} jones_approx_result;

jones_status jones_approx(const jones_braid* b, const jones_approx_opts* opts,
                          jones_approx_result* out);
/* deterministic path-model value (the estimator's exact-mode output) */
jones_status jones_exact_value(const jones_braid* b, int closure, int k, double* re, double* im);

/* --- circuit synthesis --------------------------------------------------- */

jones_status jones_circuit_text(const jones_braid* b, int k, char** out);
/* input_path is an n-character 0/1 string; part is JONES_PART_* */
jones_status jones_hadamard_circuit_text(const jones_braid* b, int k, const char* input_path,
                                         int part, char** out);

/* --- invariant suite ------------------------------------------------------ */

/* level is "quick" or "full"; report is a JSON array of check objects */
jones_status jones_verify(const char* level, uint64_t seed, char** report_json, int* all_ok);

#ifdef __cplusplus
}
#endif

#endif /* JONES_H */
