#include "hkd/hkd.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "hkd/closedform.hpp"
#include "hkd/density.hpp"
#include "hkd/error.hpp"
#include "hkd/json_io.hpp"
#include "hkd/piecewise.hpp"
#include "hkd/rings.hpp"

struct hkd_piecewise {
  hkd::PiecewisePoly value;
};
struct hkd_ring {
  hkd::RingSpec value;
};
struct hkd_ideal {
  hkd::Ideal value;
};
struct hkd_density {
  hkd::HKDensity value;
};
struct hkd_report {
  hkd::ConvergenceReport value;
};

namespace {

thread_local std::string last_error;

hkd_status status_of(hkd::ErrorCode code) {
  using hkd::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return HKD_ERR_INVALID_ARGUMENT;
    case ErrorCode::Parse: return HKD_ERR_PARSE;
    case ErrorCode::Schema: return HKD_ERR_SCHEMA;
    case ErrorCode::NotMPrimary: return HKD_ERR_NOT_M_PRIMARY;
    case ErrorCode::Validation: return HKD_ERR_VALIDATION;
    case ErrorCode::NotReduced: return HKD_ERR_NOT_REDUCED;
    case ErrorCode::Unsupported: return HKD_ERR_UNSUPPORTED;
    case ErrorCode::Overflow: return HKD_ERR_OVERFLOW;
    case ErrorCode::Internal: return HKD_ERR_INTERNAL;
  }
  return HKD_ERR_INTERNAL;
}

// Runs body, translating exceptions into status codes.
template <class Body>
hkd_status guarded(Body&& body) {
  try {
    last_error.clear();
    body();
    return HKD_OK;
  } catch (const hkd::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const nlohmann::json::exception& e) {
    last_error = e.what();
    return HKD_ERR_SCHEMA;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return HKD_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return HKD_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (!p) throw hkd::Error(hkd::ErrorCode::InvalidArgument, std::string("null argument: ") + what);
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

hkd::Rational rational_arg(const char* text, const char* what) {
  require(text, what);
  return hkd::parse_rational(text);
}

std::vector<hkd::HNStratum> strata_from_json(const char* text) {
  require(text, "strata_json");
  const auto j = hkd::parse_json_text(text);
  if (!j.is_array()) throw hkd::Error(hkd::ErrorCode::Schema, "strata must be a list of [rank, slope] pairs");
  std::vector<hkd::HNStratum> out;
  for (const auto& s : j) {
    if (!s.is_array() || s.size() != 2 || !s[0].is_number_integer() || s[0].get<long long>() <= 0)
      throw hkd::Error(hkd::ErrorCode::Schema, "each stratum must be [positive rank, slope]");
    out.push_back({s[0].get<std::uint64_t>(), hkd::rational_from_json(s[1])});
  }
  return out;
}

}  // namespace

extern "C" {

const char* hkd_last_error(void) { return last_error.c_str(); }

const char* hkd_status_name(hkd_status status) {
  switch (status) {
    case HKD_OK: return "ok";
    case HKD_ERR_INVALID_ARGUMENT: return hkd::error_code_name(hkd::ErrorCode::InvalidArgument);
    case HKD_ERR_PARSE: return hkd::error_code_name(hkd::ErrorCode::Parse);
    case HKD_ERR_SCHEMA: return hkd::error_code_name(hkd::ErrorCode::Schema);
    case HKD_ERR_NOT_M_PRIMARY: return hkd::error_code_name(hkd::ErrorCode::NotMPrimary);
    case HKD_ERR_VALIDATION: return hkd::error_code_name(hkd::ErrorCode::Validation);
    case HKD_ERR_NOT_REDUCED: return hkd::error_code_name(hkd::ErrorCode::NotReduced);
    case HKD_ERR_UNSUPPORTED: return hkd::error_code_name(hkd::ErrorCode::Unsupported);
    case HKD_ERR_OVERFLOW: return hkd::error_code_name(hkd::ErrorCode::Overflow);
    case HKD_ERR_INTERNAL: return hkd::error_code_name(hkd::ErrorCode::Internal);
  }
  return "unknown";
}

void hkd_string_free(char* s) { std::free(s); }

hkd_status hkd_rational_compare(const char* a, const char* b, int* sign) {
  return guarded([&] {
    require(sign, "sign");
    const int c = cmp(rational_arg(a, "a"), rational_arg(b, "b"));
    *sign = (c > 0) - (c < 0);
  });
}

hkd_status hkd_rational_distance(const char* a, const char* b, char** out) {
  return guarded([&] {
    require(out, "out");
    const hkd::Rational d = rational_arg(a, "a") - rational_arg(b, "b");
    *out = dup_string(hkd::to_string(hkd::abs(d)));
  });
}

// ---- piecewise -----------------------------------------------------------

hkd_status hkd_piecewise_support(const hkd_piecewise* f, char** begin, char** end) {
  return guarded([&] {
    require(f, "f");
    require(begin, "begin");
    require(end, "end");
    *begin = nullptr;
    *end = nullptr;
    if (f->value.is_zero()) return;
    char* b = dup_string(hkd::to_string(*f->value.support_begin()));
    try {
      *end = dup_string(hkd::to_string(*f->value.support_end()));
    } catch (...) {
      std::free(b);
      throw;
    }
    *begin = b;
  });
}

hkd_status hkd_piecewise_from_json(const char* json, hkd_piecewise** out) {
  return guarded([&] {
    require(json, "json");
    require(out, "out");
    *out = new hkd_piecewise{hkd::pp_from_json(json)};
  });
}

hkd_status hkd_piecewise_to_json(const hkd_piecewise* f, char** out) {
  return guarded([&] {
    require(f, "f");
    require(out, "out");
    *out = dup_string(hkd::pp_to_json(f->value));
  });
}

hkd_status hkd_piecewise_eval(const hkd_piecewise* f, const char* x, char** out) {
  return guarded([&] {
    require(f, "f");
    require(out, "out");
    *out = dup_string(hkd::to_string(hkd::pp_eval(f->value, rational_arg(x, "x"))));
  });
}

hkd_status hkd_piecewise_add(const hkd_piecewise* f, const hkd_piecewise* g, hkd_piecewise** out) {
  return guarded([&] {
    require(f, "f");
    require(g, "g");
    require(out, "out");
    *out = new hkd_piecewise{hkd::pp_add(f->value, g->value)};
  });
}

hkd_status hkd_piecewise_mul(const hkd_piecewise* f, const hkd_piecewise* g, hkd_piecewise** out) {
  return guarded([&] {
    require(f, "f");
    require(g, "g");
    require(out, "out");
    *out = new hkd_piecewise{hkd::pp_mul(f->value, g->value)};
  });
}

hkd_status hkd_piecewise_scale(const hkd_piecewise* f, const char* c, hkd_piecewise** out) {
  return guarded([&] {
    require(f, "f");
    require(out, "out");
    *out = new hkd_piecewise{hkd::pp_scale(f->value, rational_arg(c, "c"))};
  });
}

hkd_status hkd_piecewise_integrate(const hkd_piecewise* f, char** out) {
  return guarded([&] {
    require(f, "f");
    require(out, "out");
    *out = dup_string(hkd::to_string(hkd::pp_integrate(f->value)));
  });
}

hkd_status hkd_piecewise_sup_diff_sampled(const hkd_piecewise* f, const hkd_piecewise* g,
                                          uint64_t grid_denominator, char** out) {
  return guarded([&] {
    require(f, "f");
    require(g, "g");
    require(out, "out");
    *out = dup_string(hkd::to_string(hkd::pp_sup_diff_sampled(f->value, g->value, grid_denominator)));
  });
}

hkd_status hkd_piecewise_sample_csv(const hkd_piecewise* f, uint64_t grid, char** out) {
  return guarded([&] {
    require(f, "f");
    require(out, "out");
    *out = dup_string(hkd::pp_sample_csv(f->value, grid));
  });
}

void hkd_piecewise_free(hkd_piecewise* f) { delete f; }

// ---- rings and ideals ----------------------------------------------------

hkd_status hkd_ring_from_json(const char* json, hkd_ring** out) {
  return guarded([&] {
    require(json, "json");
    require(out, "out");
    *out = new hkd_ring{hkd::ring_from_json(hkd::parse_json_text(json))};
  });
}

hkd_status hkd_ring_to_json(const hkd_ring* ring, char** out) {
  return guarded([&] {
    require(ring, "ring");
    require(out, "out");
    *out = dup_string(hkd::ring_to_json(ring->value).dump());
  });
}

hkd_status hkd_ring_krull_dimension(const hkd_ring* ring, uint64_t* out) {
  return guarded([&] {
    require(ring, "ring");
    require(out, "out");
    *out = hkd::krull_dimension(ring->value);
  });
}

hkd_status hkd_ring_hilbert_len(const hkd_ring* ring, uint64_t m, uint64_t* out) {
  return guarded([&] {
    require(ring, "ring");
    require(out, "out");
    *out = hkd::hilbert_len(ring->value, m);
  });
}

hkd_status hkd_ring_minimal_primes(const hkd_ring* ring, char** out) {
  return guarded([&] {
    require(ring, "ring");
    require(out, "out");
    nlohmann::json j = hkd::minimal_primes(ring->value);
    *out = dup_string(j.dump());
  });
}

void hkd_ring_free(hkd_ring* ring) { delete ring; }

hkd_status hkd_ideal_from_json(const hkd_ring* ring, const char* json, hkd_ideal** out) {
  return guarded([&] {
    require(ring, "ring");
    require(json, "json");
    require(out, "out");
    *out = new hkd_ideal{hkd::ideal_from_json(ring->value, hkd::parse_json_text(json))};
  });
}

hkd_status hkd_ideal_maximal(const hkd_ring* ring, hkd_ideal** out) {
  return guarded([&] {
    require(ring, "ring");
    require(out, "out");
    *out = new hkd_ideal{hkd::Ideal::maximal(ring->value)};
  });
}

hkd_status hkd_ideal_to_json(const hkd_ideal* ideal, char** out) {
  return guarded([&] {
    require(ideal, "ideal");
    require(out, "out");
    *out = dup_string(hkd::ideal_to_json(ideal->value).dump());
  });
}

hkd_status hkd_frobenius_power(const hkd_ideal* ideal, uint64_t q, hkd_ideal** out) {
  return guarded([&] {
    require(ideal, "ideal");
    require(out, "out");
    *out = new hkd_ideal{hkd::frobenius_power(ideal->value, q)};
  });
}

void hkd_ideal_free(hkd_ideal* ideal) { delete ideal; }

hkd_status hkd_graded_colength_piece(const hkd_ring* ring, const hkd_ideal* ideal, uint64_t q, uint64_t m,
                                     uint64_t* out) {
  return guarded([&] {
    require(ring, "ring");
    require(ideal, "ideal");
    require(out, "out");
    *out = hkd::graded_colength_piece(ring->value, ideal->value, q, m);
  });
}

hkd_status hkd_total_colength(const hkd_ring* ring, const hkd_ideal* ideal, uint64_t q, uint64_t* out) {
  return guarded([&] {
    require(ring, "ring");
    require(ideal, "ideal");
    require(out, "out");
    *out = hkd::total_colength(ring->value, ideal->value, q);
  });
}

hkd_status hkd_nilpotency_n0(const hkd_ring* ring, const hkd_ideal* ideal, uint64_t* out) {
  return guarded([&] {
    require(ring, "ring");
    require(ideal, "ideal");
    require(out, "out");
    *out = hkd::nilpotency_n0(ring->value, ideal->value);
  });
}

// ---- limit construction --------------------------------------------------

hkd_status hkd_f_n_eval(const hkd_ring* ring, const hkd_ideal* ideal, uint64_t p, uint64_t n, const char* x,
                        char** out) {
  return guarded([&] {
    require(ring, "ring");
    require(ideal, "ideal");
    require(out, "out");
    *out = dup_string(hkd::to_string(hkd::f_n_eval(ring->value, ideal->value, p, n, rational_arg(x, "x"))));
  });
}

hkd_status hkd_g_n_eval(const hkd_ring* ring, const hkd_ideal* ideal, uint64_t p, uint64_t n, const char* x,
                        char** out) {
  return guarded([&] {
    require(ring, "ring");
    require(ideal, "ideal");
    require(out, "out");
    *out = dup_string(hkd::to_string(hkd::g_n_eval(ring->value, ideal->value, p, n, rational_arg(x, "x"))));
  });
}

hkd_status hkd_g_n_as_piecewise(const hkd_ring* ring, const hkd_ideal* ideal, uint64_t p, uint64_t n,
                                hkd_piecewise** out) {
  return guarded([&] {
    require(ring, "ring");
    require(ideal, "ideal");
    require(out, "out");
    *out = new hkd_piecewise{hkd::g_n_as_piecewise(ring->value, ideal->value, p, n)};
  });
}

hkd_status hkd_ehk_riemann(const hkd_ring* ring, const hkd_ideal* ideal, uint64_t p, uint64_t n, char** out) {
  return guarded([&] {
    require(ring, "ring");
    require(ideal, "ideal");
    require(out, "out");
    *out = dup_string(hkd::to_string(hkd::ehk_riemann(ring->value, ideal->value, p, n)));
  });
}

hkd_status hkd_density_sample_csv(const hkd_ring* ring, const hkd_ideal* ideal, uint64_t p, uint64_t n,
                                  char** out) {
  return guarded([&] {
    require(ring, "ring");
    require(ideal, "ideal");
    require(out, "out");
    *out = dup_string(hkd::density_sample_csv(hkd::density_sample(ring->value, ideal->value, p, n)));
  });
}

hkd_status hkd_density_estimate(const hkd_ring* ring, const hkd_ideal* ideal, uint64_t p, uint64_t n_max,
                                const char* tol, uint64_t grid, hkd_report** out) {
  return guarded([&] {
    require(ring, "ring");
    require(ideal, "ideal");
    require(out, "out");
    *out = new hkd_report{
        hkd::density_estimate(ring->value, ideal->value, p, n_max, rational_arg(tol, "tol"), grid)};
  });
}

hkd_status hkd_report_to_json(const hkd_report* report, char** out) {
  return guarded([&] {
    require(report, "report");
    require(out, "out");
    *out = dup_string(hkd::convergence_report_json(report->value));
  });
}

hkd_status hkd_report_final_n(const hkd_report* report, uint64_t* out) {
  return guarded([&] {
    require(report, "report");
    require(out, "out");
    *out = report->value.final_n;
  });
}

hkd_status hkd_report_final_density(const hkd_report* report, hkd_piecewise** out) {
  return guarded([&] {
    require(report, "report");
    require(out, "out");
    *out = new hkd_piecewise{report->value.density};
  });
}

hkd_status hkd_report_final_ehk(const hkd_report* report, char** out) {
  return guarded([&] {
    require(report, "report");
    require(out, "out");
    if (report->value.ehk_riemann.empty()) throw hkd::Error(hkd::ErrorCode::Internal, "empty report");
    *out = dup_string(hkd::to_string(report->value.ehk_riemann.back().second));
  });
}

void hkd_report_free(hkd_report* report) { delete report; }

// ---- closed forms --------------------------------------------------------

hkd_status hkd_projective_space(uint32_t d, hkd_density** out) {
  return guarded([&] {
    require(out, "out");
    *out = new hkd_density{hkd::hkd_projective_space(d)};
  });
}

hkd_status hkd_hsd(uint64_t e0, uint32_t dim, const char* cutoff, hkd_piecewise** out) {
  return guarded([&] {
    require(out, "out");
    *out = new hkd_piecewise{hkd::hsd(e0, dim, rational_arg(cutoff, "cutoff"))};
  });
}

hkd_status hkd_curve(uint64_t d, const char* strata_json, int check_degree_sum, hkd_density** out) {
  return guarded([&] {
    require(out, "out");
    const hkd::CurveHN hn(d, strata_from_json(strata_json), check_degree_sum != 0);
    *out = new hkd_density{hkd::hkd_curve(hn)};
  });
}

hkd_status hkd_ehk_curve(uint64_t d, const char* strata_json, char** out) {
  return guarded([&] {
    require(out, "out");
    const hkd::CurveHN hn(d, strata_from_json(strata_json));
    *out = dup_string(hkd::to_string(hkd::ehk_curve(hn)));
  });
}

hkd_status hkd_segre_combine(const hkd_piecewise* const* hsds, const hkd_piecewise* const* densities,
                             size_t count, hkd_density** out) {
  return guarded([&] {
    require(out, "out");
    if (count > 0) {
      require(hsds, "hsds");
      require(densities, "densities");
    }
    std::vector<hkd::SegreFactor> factors;
    for (size_t i = 0; i < count; ++i) {
      require(hsds[i], "hsds[i]");
      require(densities[i], "densities[i]");
      factors.push_back({hsds[i]->value, densities[i]->value});
    }
    *out = new hkd_density{hkd::segre_combine(factors)};
  });
}

hkd_status hkd_multiplicative_identity_check(const hkd_piecewise* hsd_r, const hkd_piecewise* f,
                                             const hkd_piecewise* hsd_s, const hkd_piecewise* g,
                                             const hkd_piecewise* hsd_rs, const hkd_piecewise* h, int* holds) {
  return guarded([&] {
    for (const void* p : {static_cast<const void*>(hsd_r), static_cast<const void*>(f),
                          static_cast<const void*>(hsd_s), static_cast<const void*>(g),
                          static_cast<const void*>(hsd_rs), static_cast<const void*>(h),
                          static_cast<const void*>(holds)})
      require(p, "argument");
    *holds = hkd::multiplicative_identity_check(hsd_r->value, f->value, hsd_s->value, g->value, hsd_rs->value,
                                                h->value)
                 ? 1
                 : 0;
  });
}

hkd_status hkd_additivity_closed_form(const hkd_ring* ring, const hkd_ideal* ideal, hkd_density** out) {
  return guarded([&] {
    require(ring, "ring");
    require(ideal, "ideal");
    require(out, "out");
    *out = new hkd_density{hkd::additivity_closed_form(ring->value, ideal->value)};
  });
}

hkd_status hkd_closed_form_for(const hkd_ring* ring, const hkd_ideal* ideal, hkd_density** out) {
  return guarded([&] {
    require(ring, "ring");
    require(ideal, "ideal");
    require(out, "out");
    auto cf = hkd::closed_form_for(ring->value, ideal->value);
    if (!cf) throw hkd::Error(hkd::ErrorCode::Unsupported, "no closed form known for this ring and ideal");
    *out = new hkd_density{std::move(*cf)};
  });
}

hkd_status hkd_dim1_density(const hkd_ring* ring, const hkd_ideal* ideal, uint64_t p, hkd_density** out) {
  return guarded([&] {
    require(ring, "ring");
    require(ideal, "ideal");
    require(out, "out");
    auto d1 = hkd::dim1_density(ring->value, ideal->value, p);
    *out = new hkd_density{{std::move(d1.density), d1.ehk, hkd::Provenance::ClosedForm}};
  });
}

hkd_status hkd_density_to_json(const hkd_density* density, char** out) {
  return guarded([&] {
    require(density, "density");
    require(out, "out");
    *out = dup_string(hkd::hk_density_json(density->value));
  });
}

hkd_status hkd_density_ehk(const hkd_density* density, char** out) {
  return guarded([&] {
    require(density, "density");
    require(out, "out");
    *out = dup_string(hkd::to_string(density->value.ehk));
  });
}

hkd_status hkd_density_function(const hkd_density* density, hkd_piecewise** out) {
  return guarded([&] {
    require(density, "density");
    require(out, "out");
    *out = new hkd_piecewise{density->value.density};
  });
}

void hkd_density_free(hkd_density* density) { delete density; }

}  // extern "C"
