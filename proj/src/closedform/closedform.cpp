#include "hkd/closedform.hpp"

#include <algorithm>
#include <set>

#include "hkd/error.hpp"

namespace hkd {

namespace {

Rational factorial(unsigned k) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), k);
  return Rational(f);
}

Rational binomial(unsigned n, unsigned k) {
  Integer b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return Rational(b);
}

Rational max_support_end(std::span<const SegreFactor> factors) {
  Rational end(0);
  for (const auto& f : factors)
    if (auto e = f.density.support_end(); e && *e > end) end = *e;
  return end;
}

bool is_maximal_ideal(const RingSpec& ring, const Ideal& ideal) {
  if (!(ideal.ring() == ring)) return false;
  const Ideal m = Ideal::maximal(ring);
  if (const auto* s = std::get_if<SegreIdeal>(&ideal.kind())) {
    const auto& sr = std::get<SegreRing>(ring.kind());
    return is_maximal_ideal(*sr.left, *s->left) && is_maximal_ideal(*sr.right, *s->right);
  }
  const auto& gens = std::get<MonomialIdeal>(ideal.kind()).generators;
  const auto& want = std::get<MonomialIdeal>(m.kind()).generators;
  return std::set<Exponent>(gens.begin(), gens.end()) == std::set<Exponent>(want.begin(), want.end());
}

struct ClosedFormFactor {
  Poly hsd;  // unbounded HSd polynomial
  HKDensity density;
};

std::optional<ClosedFormFactor> closed_form_factor(const RingSpec& ring, const Ideal& ideal) {
  if (!is_maximal_ideal(ring, ideal)) return std::nullopt;
  if (const auto* s = std::get_if<SegreRing>(&ring.kind())) {
    const auto& si = std::get<SegreIdeal>(ideal.kind());
    auto left = closed_form_factor(*s->left, *si.left);
    auto right = closed_form_factor(*s->right, *si.right);
    if (!left || !right) return std::nullopt;
    Rational cutoff(0);
    for (const auto* f : {&left->density.density, &right->density.density})
      if (auto e = f->support_end(); e && *e > cutoff) cutoff = *e;
    const std::vector<SegreFactor> factors{
        {PiecewisePoly::on_interval(0, cutoff, left->hsd), left->density.density},
        {PiecewisePoly::on_interval(0, cutoff, right->hsd), right->density.density}};
    return ClosedFormFactor{left->hsd * right->hsd, segre_combine(factors)};
  }
  if (std::holds_alternative<BinomialRewriteRing>(ring.kind())) return std::nullopt;
  const std::size_t dim = krull_dimension(ring);
  if (dim < 2) return std::nullopt;
  HKDensity density;
  Rational e0(0);
  if (std::holds_alternative<PolynomialRing>(ring.kind())) {
    density = hkd_projective_space(static_cast<unsigned>(dim - 1));
    e0 = 1;
  } else {
    try {
      density = additivity_closed_form(ring, ideal);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::NotReduced) return std::nullopt;
      throw;
    }
    e0 = from_u64(minimal_primes(ring).size());
  }
  return ClosedFormFactor{Poly::monomial(e0 / factorial(static_cast<unsigned>(dim - 1)), static_cast<unsigned>(dim - 1)),
                          std::move(density)};
}

}  // namespace

const char* provenance_name(Provenance p) {
  switch (p) {
    case Provenance::ClosedForm: return "closed_form";
    case Provenance::SegreCombined: return "segre_combined";
    case Provenance::Estimated: return "estimated";
  }
  return "unknown";
}

CurveHN::CurveHN(std::uint64_t degree, std::vector<HNStratum> strata, bool check_degree_sum)
    : degree_(degree), strata_(std::move(strata)) {
  if (degree_ == 0) throw Error(ErrorCode::Validation, "curve degree must be positive");
  if (strata_.empty()) throw Error(ErrorCode::Validation, "HN data needs at least one stratum");
  for (std::size_t i = 0; i < strata_.size(); ++i) {
    if (strata_[i].rank == 0) throw Error(ErrorCode::Validation, "HN ranks must be positive");
    if (strata_[i].slope > 0) throw Error(ErrorCode::Validation, "HN slopes must be <= 0");
    if (i > 0 && !(strata_[i].slope < strata_[i - 1].slope))
      throw Error(ErrorCode::Validation, "HN slopes must be strictly decreasing");
  }
  if (check_degree_sum) {
    Rational sum(0);
    for (const auto& s : strata_) sum += from_u64(s.rank) * s.slope;
    if (sum != -from_u64(degree_))
      throw Error(ErrorCode::Validation, "sum of r_i a_i must equal -d, got " + to_string(sum));
  }
}

Poly projective_space_deficit(unsigned d, unsigned i) {
  Poly acc;
  for (unsigned j = 1; j <= i; ++j) {
    const Rational sign = j % 2 == 1 ? Rational(1) : Rational(-1);
    acc += Poly::x_minus(Rational(j)).pow(d) * Rational(sign * binomial(d + 1, j));
  }
  return acc * Rational(1 / factorial(d));
}

HKDensity hkd_projective_space(unsigned d) {
  if (d == 0) throw Error(ErrorCode::InvalidArgument, "hkd_projective_space needs d >= 1");
  const Poly top = Poly::monomial(1 / factorial(d), d);
  std::vector<Rational> breaks;
  std::vector<Poly> pieces;
  for (unsigned i = 0; i <= d + 1; ++i) breaks.emplace_back(i);
  for (unsigned i = 0; i <= d; ++i) pieces.push_back(top - projective_space_deficit(d, i));
  HKDensity out;
  out.density = PiecewisePoly(std::move(breaks), std::move(pieces));
  out.ehk = pp_integrate(out.density);
  out.provenance = Provenance::ClosedForm;
  return out;
}

PiecewisePoly hsd(std::uint64_t e0, unsigned dim, const Rational& cutoff) {
  if (dim < 2) throw Error(ErrorCode::InvalidArgument, "hsd needs dim >= 2");
  if (!(cutoff > 0)) throw Error(ErrorCode::InvalidArgument, "hsd cutoff must be positive");
  return PiecewisePoly::on_interval(0, cutoff, Poly::monomial(from_u64(e0) / factorial(dim - 1), dim - 1));
}

HKDensity hkd_curve(const CurveHN& hn) {
  const Rational d = from_u64(hn.degree());
  const auto& strata = hn.strata();
  // Term j is -(a_j r_j + r_j d (x - 1)); it is active on [1, 1 - a_j/d).
  std::vector<Poly> terms;
  for (const auto& s : strata) {
    const Rational r = from_u64(s.rank);
    terms.push_back(Poly{Rational(-(s.slope * r) + r * d), Rational(-(r * d))});
  }
  std::vector<Rational> breaks{Rational(0), Rational(1)};
  std::vector<Poly> pieces{Poly{Rational(0), d}};
  Rational left(1);
  for (std::size_t i = 0; i < strata.size(); ++i) {
    const Rational right = 1 - strata[i].slope / d;
    if (right > left) {
      Poly sum;
      for (std::size_t j = i; j < strata.size(); ++j) sum += terms[j];
      pieces.push_back(std::move(sum));
      breaks.push_back(right);
      left = right;
    }
  }
  HKDensity out;
  out.density = PiecewisePoly(std::move(breaks), std::move(pieces));
  out.ehk = pp_integrate(out.density);
  out.provenance = Provenance::ClosedForm;
  return out;
}

Rational ehk_curve(const CurveHN& hn) {
  const Rational d = from_u64(hn.degree());
  Rational out = d / 2;
  for (const auto& s : hn.strata()) out += from_u64(s.rank) * s.slope * s.slope / (2 * d);
  return out;
}

HKDensity segre_combine(std::span<const SegreFactor> factors) {
  if (factors.empty()) throw Error(ErrorCode::InvalidArgument, "segre_combine needs at least one factor");
  if (factors.size() == 1) {
    HKDensity out{factors[0].density, pp_integrate(factors[0].density), Provenance::SegreCombined};
    return out;
  }
  const Rational end = max_support_end(factors);
  for (const auto& f : factors) {
    const auto cutoff = f.hsd.support_end();
    if (!cutoff || *cutoff < end)
      throw Error(ErrorCode::Validation, "HSd cutoff " + (cutoff ? to_string(*cutoff) : std::string("(empty)")) +
                                             " is below the density support end " + to_string(end));
  }
  PiecewisePoly all = factors[0].hsd;
  PiecewisePoly deficit = pp_sub(factors[0].hsd, factors[0].density);
  for (std::size_t i = 1; i < factors.size(); ++i) {
    all = pp_mul(all, factors[i].hsd);
    deficit = pp_mul(deficit, pp_sub(factors[i].hsd, factors[i].density));
  }
  HKDensity out;
  out.density = pp_sub(all, deficit);
  out.ehk = pp_integrate(out.density);
  out.provenance = Provenance::SegreCombined;
  return out;
}

bool multiplicative_identity_check(const PiecewisePoly& hsd_r, const PiecewisePoly& f,
                                   const PiecewisePoly& hsd_s, const PiecewisePoly& g,
                                   const PiecewisePoly& hsd_rs, const PiecewisePoly& h) {
  Rational common(0);
  bool first = true;
  for (const auto* F : {&hsd_r, &hsd_s, &hsd_rs}) {
    const auto e = F->support_end();
    if (!e) throw Error(ErrorCode::Validation, "HSd function is identically zero");
    if (first || *e < common) common = *e;
    first = false;
  }
  if (!(pp_restrict(hsd_rs, 0, common) == pp_restrict(pp_mul(hsd_r, hsd_s), 0, common)))
    throw Error(ErrorCode::Validation, "F_RS must equal F_R * F_S on the common support");
  const PiecewisePoly lhs = pp_restrict(pp_sub(hsd_rs, h), 0, common);
  const PiecewisePoly rhs = pp_restrict(pp_mul(pp_sub(hsd_r, f), pp_sub(hsd_s, g)), 0, common);
  return lhs == rhs;
}

HKDensity additivity_closed_form(const RingSpec& ring, const Ideal& ideal) {
  if (!std::holds_alternative<PolynomialRing>(ring.kind()) &&
      !std::holds_alternative<MonomialQuotientRing>(ring.kind()))
    throw Error(ErrorCode::Unsupported, "additivity closed form needs a monomial quotient ring");
  if (!is_maximal_ideal(ring, ideal))
    throw Error(ErrorCode::Unsupported, "additivity closed form is implemented for I = m only");
  const auto primes = minimal_primes(ring);
  const std::size_t n = ring.num_vars();
  PiecewisePoly sum;
  for (const auto& prime : primes) {
    const std::size_t k = n - prime.size();
    if (k < 2) throw Error(ErrorCode::Unsupported, "additivity closed form needs components of dimension >= 2");
    sum = pp_add(sum, hkd_projective_space(static_cast<unsigned>(k - 1)).density);
  }
  HKDensity out;
  out.density = std::move(sum);
  out.ehk = pp_integrate(out.density);
  out.provenance = Provenance::ClosedForm;
  return out;
}

std::optional<HKDensity> closed_form_for(const RingSpec& ring, const Ideal& ideal) {
  auto factor = closed_form_factor(ring, ideal);
  if (!factor) return std::nullopt;
  return std::move(factor->density);
}

}  // namespace hkd
