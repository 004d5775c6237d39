/* epsq - exact computer algebra for order-two formal group laws over
 * characteristic-2 rings: total operations, Steenrod squares, and the
 * finite covering calculus.
 *
 * All objects are reached through opaque handles. Functions return
 * EPSQ_OK or an error status; epsq_last_error() describes the most
 * recent failure on the calling thread. Strings returned through
 * `char**` are heap-allocated and released with epsq_free_string().
 */
#ifndef EPSQ_H
#define EPSQ_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum epsq_status {
    EPSQ_OK = 0,
    EPSQ_INVALID_ARGUMENT = 1,
    EPSQ_PARSE_ERROR = 2,
    EPSQ_RING_MISMATCH = 3,
    EPSQ_NOT_A_SQUARE = 4,
    EPSQ_ORDER_TWO_REQUIRED = 5,
    EPSQ_SOLVER_INCONSISTENT = 6,
    EPSQ_NOT_COMPATIBLE = 7,
    EPSQ_NON_HOMOGENEOUS = 8,
    EPSQ_NON_ADDITIVE_MODEL = 9,
    EPSQ_MISSING_COEFFICIENT_ACTION = 10,
    EPSQ_NON_CONSTANT_SHEETS = 11,
    EPSQ_COMPATIBILITY_VIOLATED = 12,
    EPSQ_VALIDATION_FAILED = 13,
    EPSQ_INTERNAL_ERROR = 99
} epsq_status;

typedef struct epsq_ring epsq_ring;     /* graded characteristic-2 coefficient ring */
typedef struct epsq_series epsq_series; /* sparse truncated multivariate series */
typedef struct epsq_fgl epsq_fgl;       /* validated formal group law */
typedef struct epsq_twist epsq_twist;   /* twist solve result */
typedef struct epsq_dring epsq_dring;   /* model ring with a total operation */
typedef struct epsq_cover epsq_cover;   /* finite covering */

const char* epsq_last_error(void);
void epsq_free_string(char* s);

void epsq_ring_free(epsq_ring*);
void epsq_series_free(epsq_series*);
void epsq_fgl_free(epsq_fgl*);
void epsq_twist_free(epsq_twist*);
void epsq_dring_free(epsq_dring*);
void epsq_cover_free(epsq_cover*);

/* ---- coefficient rings -------------------------------------------------- */

/* generators listed as parallel name/degree arrays; degrees may be negative;
 * monomials of |weighted degree| > truncation are identified with zero */
epsq_status epsq_ring_new(const char* const* names, const int* degrees, size_t count,
                          int truncation, epsq_ring** out);

/* ---- series -------------------------------------------------------------- */

/* text grammar: identifiers are the declared variables or ring generators;
 * operators +, * and ^ with non-negative integer exponents. var_degrees may
 * be NULL, giving every variable degree 1. */
epsq_status epsq_series_parse(const epsq_ring* ring, const char* const* var_names,
                              const int* var_degrees, size_t var_count, const char* text,
                              epsq_series** out);
epsq_status epsq_series_add(const epsq_series* a, const epsq_series* b, epsq_series** out);
epsq_status epsq_series_mul(const epsq_series* a, const epsq_series* b, epsq_series** out);
epsq_status epsq_series_pow(const epsq_series* a, uint32_t k, epsq_series** out);
epsq_status epsq_series_substitute(const epsq_series* f, const char* const* vars,
                                   const epsq_series* const* images, size_t count,
                                   epsq_series** out);
/* coefficient of the variable-exponent vector, rendered as ring-element text */
epsq_status epsq_series_coefficient(const epsq_series* f, const uint32_t* exps, size_t count,
                                    char** out_text);
epsq_status epsq_series_frobenius_sqrt(const epsq_series* f, epsq_series** out);
epsq_status epsq_series_truncate(const epsq_series* f, int degree, epsq_series** out);
epsq_status epsq_series_equal(const epsq_series* a, const epsq_series* b, int* out);
epsq_status epsq_series_text(const epsq_series* f, char** out);
epsq_status epsq_series_json(const epsq_series* f, char** out);

/* ---- formal group laws --------------------------------------------------- */

/* full identity report as JSON; EPSQ_OK even when identities fail */
epsq_status epsq_fgl_check_json(const epsq_series* f, int degree, char** out_json);
/* validating constructor; EPSQ_VALIDATION_FAILED carries the witness */
epsq_status epsq_fgl_new(const epsq_series* f, int degree, epsq_fgl** out);
epsq_status epsq_fgl_series(const epsq_fgl* f, epsq_series** out);
epsq_status epsq_fgl_order_two(const epsq_fgl* f, int* out);
epsq_status epsq_fgl_json(const epsq_fgl* f, char** out);

/* universal order-two law to the given total degree; out_fresh_json lists the
 * fresh generators as [{"name","degree","i","j"}] */
epsq_status epsq_fgl_universal(int max_degree, epsq_fgl** out, char** out_fresh_json);

/* unique law F_t with h_t(x) = x F(x,t) a morphism F -> F_t; degree <= 0
 * solves at the law's own degree */
epsq_status epsq_fgl_twist(const epsq_fgl* f, int degree, epsq_twist** out);
epsq_status epsq_twist_law(const epsq_twist* t, epsq_fgl** out);
epsq_status epsq_twist_solved_degree(const epsq_twist* t, int* out);

epsq_status epsq_fgl_square_compose(const epsq_fgl* f, uint32_t a, epsq_fgl** out);
epsq_status epsq_fgl_descend(const epsq_fgl* f, uint32_t a, epsq_fgl** out);
/* h substitutes `hvar`; ok=1 when h(F(x,y)) = G(h(x),h(y)) to `degree` */
epsq_status epsq_fgl_is_morphism(const epsq_series* h, const char* hvar, const epsq_fgl* F,
                                 const epsq_fgl* G, int degree, int* out_ok,
                                 char** out_witness);

/* ---- model rings with a total operation ---------------------------------- */

/* F_2[vars]/(t^order) with the additive law */
epsq_status epsq_dring_additive(const char* const* var_names, const uint32_t* orders,
                                size_t count, int degree, epsq_dring** out);
/* model over the universal order-two law with the twist coefficient action */
epsq_status epsq_dring_universal(int max_degree, const char* const* var_names,
                                 const uint32_t* orders, size_t count, epsq_dring** out);
/* general model: carrier orders are grade * n_i; a twist is required when the
 * coefficient ring has generators */
epsq_status epsq_dring_make(const epsq_fgl* law, int grade, const char* const* var_names,
                            const uint32_t* n, size_t count, const epsq_twist* coeff_action,
                            epsq_dring** out);

epsq_status epsq_dring_apply_total(const epsq_dring* d, const char* element, char** out_text);
/* axiom is "D1", "D2", "D3" or "hom"; samples are the default seeded set */
epsq_status epsq_dring_check_json(const epsq_dring* d, const char* axiom, uint64_t seed,
                                  char** out_json, int* out_passed);
/* all four checks plus euler identities; out_passed = 1 iff nothing failed */
epsq_status epsq_dring_verify_json(const epsq_dring* d, uint64_t seed, char** out_json,
                                   int* out_passed);
epsq_status epsq_dring_euler(const epsq_dring* d, const char* var, char** out_text);

/* ---- Steenrod operations -------------------------------------------------- */

/* word grammar: whitespace-separated Sq^j and q_i labels, rightmost first */
epsq_status epsq_op_eval(const epsq_dring* d, const char* word, const char* element,
                         char** out_text);
epsq_status epsq_op_eval_json(const epsq_dring* d, const char* word, const char* element,
                              char** out_json);
epsq_status epsq_adem_normalize(const char* word, char** out_text);
epsq_status epsq_adem_normalize_json(const char* word, char** out_json);
epsq_status epsq_cartan_check_json(const epsq_dring* d, uint64_t seed, char** out_json,
                                   int* out_passed);

/* ---- finite coverings ------------------------------------------------------ */

/* {"base":["b1","b2"],"fibers":{"b1":2,"b2":3}} */
epsq_status epsq_cover_parse(const char* json, epsq_cover** out);
epsq_status epsq_cover_json(const epsq_cover* p, char** out);
epsq_status epsq_cover_derivative(const epsq_cover* p, epsq_cover** out);
epsq_status epsq_cover_sum(const epsq_cover* p, const epsq_cover* q, epsq_cover** out);
epsq_status epsq_cover_product(const epsq_cover* p, const epsq_cover* q, epsq_cover** out);
epsq_status epsq_cover_compose(const epsq_cover* p, const epsq_cover* q, epsq_cover** out);
epsq_status epsq_cover_extended_power(const epsq_cover* p, const char* const* labels,
                                      size_t count, epsq_cover** out);
epsq_status epsq_cover_iso(const epsq_cover* p, const epsq_cover* q, int* out);
/* polynomial shadow as a coefficient list [c0, c1, ...] */
epsq_status epsq_cover_poly_json(const epsq_cover* p, char** out);
/* calculus battery over one covering or a pair: shadows, derivative rules,
 * composite bijection, frames quotient */
epsq_status epsq_cover_report_json(const epsq_cover* p, const epsq_cover* q_or_null,
                                   uint64_t seed, char** out_json, int* out_passed);

#ifdef __cplusplus
}
#endif

#endif /* EPSQ_H */
