/*
 * hkd.h - C interface to the Hilbert-Kunz density library.
 *
 * All objects are opaque handles owned by the caller and released with the
 * matching *_free function. Every call returns an hkd_status; on failure the
 * thread-local message from hkd_last_error() describes the problem. Rational
 * numbers cross the boundary as canonical strings "p/q" or "p". Strings
 * returned through char** out-parameters are allocated by the library and
 * released with hkd_string_free().
 */
#ifndef HKD_HKD_H
#define HKD_HKD_H

#include <stddef.h>
#include <stdint.h>

#if defined(HKD_BUILDING_LIBRARY)
#define HKD_API __attribute__((visibility("default")))
#else
#define HKD_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hkd_status {
  HKD_OK = 0,
  HKD_ERR_INVALID_ARGUMENT = 1,
  HKD_ERR_PARSE = 2,
  HKD_ERR_SCHEMA = 3,
  HKD_ERR_NOT_M_PRIMARY = 4,
  HKD_ERR_VALIDATION = 5,
  HKD_ERR_NOT_REDUCED = 6,
  HKD_ERR_UNSUPPORTED = 7,
  HKD_ERR_OVERFLOW = 8,
  HKD_ERR_INTERNAL = 9
} hkd_status;

typedef struct hkd_piecewise hkd_piecewise;
typedef struct hkd_ring hkd_ring;
typedef struct hkd_ideal hkd_ideal;
typedef struct hkd_density hkd_density;
typedef struct hkd_report hkd_report;

/* Errors and memory */
HKD_API const char* hkd_last_error(void);
/* Stable machine-readable name, e.g. "not_m_primary". */
HKD_API const char* hkd_status_name(hkd_status status);
HKD_API void hkd_string_free(char* s);

/* Rational helpers on canonical strings. */
/* *sign is -1, 0 or 1 as a < b, a == b, a > b. */
HKD_API hkd_status hkd_rational_compare(const char* a, const char* b, int* sign);
/* |a - b| */
HKD_API hkd_status hkd_rational_distance(const char* a, const char* b, char** out);

/* Piecewise polynomials */
HKD_API hkd_status hkd_piecewise_from_json(const char* json, hkd_piecewise** out);
HKD_API hkd_status hkd_piecewise_to_json(const hkd_piecewise* f, char** out);
HKD_API hkd_status hkd_piecewise_eval(const hkd_piecewise* f, const char* x, char** out);
HKD_API hkd_status hkd_piecewise_add(const hkd_piecewise* f, const hkd_piecewise* g,
                                     hkd_piecewise** out);
HKD_API hkd_status hkd_piecewise_mul(const hkd_piecewise* f, const hkd_piecewise* g,
                                     hkd_piecewise** out);
HKD_API hkd_status hkd_piecewise_scale(const hkd_piecewise* f, const char* c, hkd_piecewise** out);
HKD_API hkd_status hkd_piecewise_integrate(const hkd_piecewise* f, char** out);
/* Support [begin, end) of the canonical form; both NULL for the zero function. */
HKD_API hkd_status hkd_piecewise_support(const hkd_piecewise* f, char** begin, char** end);
HKD_API hkd_status hkd_piecewise_sup_diff_sampled(const hkd_piecewise* f, const hkd_piecewise* g,
                                                  uint64_t grid_denominator, char** out);
/* CSV x_rational,f_rational,f_decimal20 on multiples of 1/grid. */
HKD_API hkd_status hkd_piecewise_sample_csv(const hkd_piecewise* f, uint64_t grid, char** out);
HKD_API void hkd_piecewise_free(hkd_piecewise* f);

/* Rings and ideals */
HKD_API hkd_status hkd_ring_from_json(const char* json, hkd_ring** out);
HKD_API hkd_status hkd_ring_to_json(const hkd_ring* ring, char** out);
HKD_API hkd_status hkd_ring_krull_dimension(const hkd_ring* ring, uint64_t* out);
HKD_API hkd_status hkd_ring_hilbert_len(const hkd_ring* ring, uint64_t m, uint64_t* out);
/* JSON list of variable-index lists. */
HKD_API hkd_status hkd_ring_minimal_primes(const hkd_ring* ring, char** out);
HKD_API void hkd_ring_free(hkd_ring* ring);

HKD_API hkd_status hkd_ideal_from_json(const hkd_ring* ring, const char* json, hkd_ideal** out);
HKD_API hkd_status hkd_ideal_maximal(const hkd_ring* ring, hkd_ideal** out);
HKD_API hkd_status hkd_ideal_to_json(const hkd_ideal* ideal, char** out);
HKD_API hkd_status hkd_frobenius_power(const hkd_ideal* ideal, uint64_t q, hkd_ideal** out);
HKD_API void hkd_ideal_free(hkd_ideal* ideal);

HKD_API hkd_status hkd_graded_colength_piece(const hkd_ring* ring, const hkd_ideal* ideal, uint64_t q,
                                             uint64_t m, uint64_t* out);
HKD_API hkd_status hkd_total_colength(const hkd_ring* ring, const hkd_ideal* ideal, uint64_t q,
                                      uint64_t* out);
HKD_API hkd_status hkd_nilpotency_n0(const hkd_ring* ring, const hkd_ideal* ideal, uint64_t* out);

/* Limit construction */
HKD_API hkd_status hkd_f_n_eval(const hkd_ring* ring, const hkd_ideal* ideal, uint64_t p, uint64_t n,
                                const char* x, char** out);
HKD_API hkd_status hkd_g_n_eval(const hkd_ring* ring, const hkd_ideal* ideal, uint64_t p, uint64_t n,
                                const char* x, char** out);
HKD_API hkd_status hkd_g_n_as_piecewise(const hkd_ring* ring, const hkd_ideal* ideal, uint64_t p,
                                        uint64_t n, hkd_piecewise** out);
HKD_API hkd_status hkd_ehk_riemann(const hkd_ring* ring, const hkd_ideal* ideal, uint64_t p, uint64_t n,
                                   char** out);
/* CSV m,x,value,value_decimal of the f_n node values. */
HKD_API hkd_status hkd_density_sample_csv(const hkd_ring* ring, const hkd_ideal* ideal, uint64_t p,
                                          uint64_t n, char** out);
HKD_API hkd_status hkd_density_estimate(const hkd_ring* ring, const hkd_ideal* ideal, uint64_t p,
                                        uint64_t n_max, const char* tol, uint64_t grid,
                                        hkd_report** out);
HKD_API hkd_status hkd_report_to_json(const hkd_report* report, char** out);
HKD_API hkd_status hkd_report_final_n(const hkd_report* report, uint64_t* out);
HKD_API hkd_status hkd_report_final_density(const hkd_report* report, hkd_piecewise** out);
/* Last entry of the ehk_riemann series. */
HKD_API hkd_status hkd_report_final_ehk(const hkd_report* report, char** out);
HKD_API void hkd_report_free(hkd_report* report);

/* Closed forms. Densities carry an exact e_HK and a provenance tag. */
HKD_API hkd_status hkd_projective_space(uint32_t d, hkd_density** out);
HKD_API hkd_status hkd_hsd(uint64_t e0, uint32_t dim, const char* cutoff, hkd_piecewise** out);
/* strata_json: [[rank, slope], ...] with slopes as rational strings or integers. */
HKD_API hkd_status hkd_curve(uint64_t d, const char* strata_json, int check_degree_sum,
                             hkd_density** out);
HKD_API hkd_status hkd_ehk_curve(uint64_t d, const char* strata_json, char** out);
HKD_API hkd_status hkd_segre_combine(const hkd_piecewise* const* hsds,
                                     const hkd_piecewise* const* densities, size_t count,
                                     hkd_density** out);
HKD_API hkd_status hkd_multiplicative_identity_check(const hkd_piecewise* hsd_r, const hkd_piecewise* f,
                                                     const hkd_piecewise* hsd_s, const hkd_piecewise* g,
                                                     const hkd_piecewise* hsd_rs, const hkd_piecewise* h,
                                                     int* holds);
HKD_API hkd_status hkd_additivity_closed_form(const hkd_ring* ring, const hkd_ideal* ideal,
                                              hkd_density** out);
/* HKD_ERR_UNSUPPORTED when no closed form is known for the pair. */
HKD_API hkd_status hkd_closed_form_for(const hkd_ring* ring, const hkd_ideal* ideal, hkd_density** out);
HKD_API hkd_status hkd_dim1_density(const hkd_ring* ring, const hkd_ideal* ideal, uint64_t p,
                                    hkd_density** out);

HKD_API hkd_status hkd_density_to_json(const hkd_density* density, char** out);
HKD_API hkd_status hkd_density_ehk(const hkd_density* density, char** out);
HKD_API hkd_status hkd_density_function(const hkd_density* density, hkd_piecewise** out);
HKD_API void hkd_density_free(hkd_density* density);

#ifdef __cplusplus
}
#endif

#endif /* HKD_HKD_H */
