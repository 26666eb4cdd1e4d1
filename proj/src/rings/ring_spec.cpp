#include <algorithm>
#include <numeric>
#include <string>

#include "hkd/error.hpp"
#include "hkd/rings.hpp"

namespace hkd {

std::uint64_t total_degree(const Exponent& e) {
  return std::accumulate(e.begin(), e.end(), std::uint64_t{0});
}

bool divides(const Exponent& b, const Exponent& a) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (b[i] > a[i]) return false;
  return true;
}

namespace {

void check_shape(const Exponent& e, std::size_t num_vars, const char* what) {
  if (e.size() != num_vars)
    throw Error(ErrorCode::Schema, std::string(what) + ": exponent vector has length " +
                                       std::to_string(e.size()) + ", expected " +
                                       std::to_string(num_vars));
}

void check_num_vars(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::Schema, "ring needs at least one variable");
}

}  // namespace

RingSpec RingSpec::polynomial(std::size_t num_vars) {
  check_num_vars(num_vars);
  return RingSpec(PolynomialRing{num_vars});
}

RingSpec RingSpec::monomial_quotient(std::size_t num_vars, std::vector<Exponent> relations) {
  check_num_vars(num_vars);
  for (const auto& r : relations) {
    check_shape(r, num_vars, "relation");
    if (total_degree(r) == 0) throw Error(ErrorCode::Schema, "relation of degree 0 kills the ring");
  }
  return RingSpec(MonomialQuotientRing{num_vars, std::move(relations)});
}

RingSpec RingSpec::binomial_rewrite(std::size_t num_vars, Exponent lhs, Exponent rhs) {
  check_num_vars(num_vars);
  check_shape(lhs, num_vars, "lhs");
  check_shape(rhs, num_vars, "rhs");
  if (total_degree(lhs) != total_degree(rhs))
    throw Error(ErrorCode::Schema, "binomial rewrite: lhs and rhs must have equal degree");
  if (lhs == rhs) throw Error(ErrorCode::Schema, "binomial rewrite: lhs equals rhs");
  // Equal degrees and lhs != rhs give lhs_i > rhs_i for some i; lex order with
  // x_i first then has lhs > rhs, so the single rule terminates. One rule has
  // no nontrivial overlaps, so it is also confluent.
  return RingSpec(BinomialRewriteRing{num_vars, std::move(lhs), std::move(rhs)});
}

RingSpec RingSpec::segre(RingSpec left, RingSpec right) {
  return RingSpec(SegreRing{std::make_shared<const RingSpec>(std::move(left)),
                            std::make_shared<const RingSpec>(std::move(right))});
}

std::size_t RingSpec::num_vars() const {
  return std::visit(
      [](const auto& r) -> std::size_t {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, SegreRing>)
          throw Error(ErrorCode::Unsupported, "Segre ring has no single variable set");
        else
          return r.num_vars;
      },
      kind_);
}

bool operator==(const RingSpec& a, const RingSpec& b) {
  if (a.kind_.index() != b.kind_.index()) return false;
  return std::visit(
      [&](const auto& ra) {
        using T = std::decay_t<decltype(ra)>;
        const auto& rb = std::get<T>(b.kind_);
        if constexpr (std::is_same_v<T, PolynomialRing>)
          return ra.num_vars == rb.num_vars;
        else if constexpr (std::is_same_v<T, MonomialQuotientRing>)
          return ra.num_vars == rb.num_vars && ra.relations == rb.relations;
        else if constexpr (std::is_same_v<T, BinomialRewriteRing>)
          return ra.num_vars == rb.num_vars && ra.lhs == rb.lhs && ra.rhs == rb.rhs;
        else
          return *ra.left == *rb.left && *ra.right == *rb.right;
      },
      a.kind_);
}

Ideal Ideal::monomial(RingSpec ring, std::vector<Exponent> generators) {
  if (ring.is_segre())
    throw Error(ErrorCode::Schema, "ideals of a Segre ring are given as a pair of factor ideals");
  const std::size_t n = ring.num_vars();
  for (const auto& g : generators) {
    check_shape(g, n, "generator");
    if (total_degree(g) == 0) throw Error(ErrorCode::Schema, "generators must have positive degree");
  }
  std::stable_sort(generators.begin(), generators.end(), [](const Exponent& a, const Exponent& b) {
    return total_degree(a) < total_degree(b);
  });
  return Ideal(MonomialIdeal{std::move(ring), std::move(generators)});
}

Ideal Ideal::segre(Ideal left, Ideal right) {
  return Ideal(SegreIdeal{std::make_shared<const Ideal>(std::move(left)),
                          std::make_shared<const Ideal>(std::move(right))});
}

Ideal Ideal::maximal(const RingSpec& ring) {
  if (const auto* s = std::get_if<SegreRing>(&ring.kind()))
    return segre(maximal(*s->left), maximal(*s->right));
  const std::size_t n = ring.num_vars();
  std::vector<Exponent> gens;
  for (std::size_t i = 0; i < n; ++i) {
    Exponent e(n, 0);
    e[i] = 1;
    gens.push_back(std::move(e));
  }
  return monomial(ring, std::move(gens));
}

RingSpec Ideal::ring() const {
  if (const auto* m = std::get_if<MonomialIdeal>(&kind_)) return m->ring;
  const auto& s = std::get<SegreIdeal>(kind_);
  return RingSpec::segre(s.left->ring(), s.right->ring());
}

std::size_t Ideal::generator_count() const {
  if (const auto* m = std::get_if<MonomialIdeal>(&kind_)) return m->generators.size();
  const auto& s = std::get<SegreIdeal>(kind_);
  return std::max(s.left->generator_count(), s.right->generator_count());
}

Ideal frobenius_power(const Ideal& ideal, std::uint64_t q) {
  if (q == 0) throw Error(ErrorCode::InvalidArgument, "frobenius_power: q must be >= 1");
  if (const auto* s = std::get_if<SegreIdeal>(&ideal.kind()))
    return Ideal::segre(frobenius_power(*s->left, q), frobenius_power(*s->right, q));
  const auto& m = std::get<MonomialIdeal>(ideal.kind());
  std::vector<Exponent> gens = m.generators;
  for (auto& g : gens)
    for (auto& e : g) {
      const std::uint64_t scaled = static_cast<std::uint64_t>(e) * q;
      if (scaled > UINT32_MAX) throw Error(ErrorCode::Overflow, "frobenius_power: exponent overflow");
      e = static_cast<std::uint32_t>(scaled);
    }
  return Ideal::monomial(m.ring, std::move(gens));
}

}  // namespace hkd
