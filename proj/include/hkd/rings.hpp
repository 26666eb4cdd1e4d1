#pragma once

// Desk-scale standard graded rings over a field, monomial ideals and their
// Frobenius powers, and exact graded colength counting.
//
// All lengths are monomial counts, so they do not depend on the field: the
// characteristic only enters through q = p^n.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <variant>
#include <vector>

namespace hkd {

using Exponent = std::vector<std::uint32_t>;

std::uint64_t total_degree(const Exponent& e);
/// True when b divides a (componentwise b <= a).
bool divides(const Exponent& b, const Exponent& a);

class RingSpec;

struct PolynomialRing {
  std::size_t num_vars = 0;
};

struct MonomialQuotientRing {
  std::size_t num_vars = 0;
  std::vector<Exponent> relations;
};

/// k[x]/(lhs - rhs), presented by the single rewrite rule lhs -> rhs.
struct BinomialRewriteRing {
  std::size_t num_vars = 0;
  Exponent lhs;
  Exponent rhs;
};

struct SegreRing {
  std::shared_ptr<const RingSpec> left;
  std::shared_ptr<const RingSpec> right;
};

class RingSpec {
 public:
  using Kind = std::variant<PolynomialRing, MonomialQuotientRing, BinomialRewriteRing, SegreRing>;

  static RingSpec polynomial(std::size_t num_vars);
  static RingSpec monomial_quotient(std::size_t num_vars, std::vector<Exponent> relations);
  static RingSpec binomial_rewrite(std::size_t num_vars, Exponent lhs, Exponent rhs);
  static RingSpec segre(RingSpec left, RingSpec right);

  const Kind& kind() const { return kind_; }
  bool is_segre() const { return std::holds_alternative<SegreRing>(kind_); }
  /// Number of variables; throws Error{Unsupported} for Segre rings.
  std::size_t num_vars() const;

  friend bool operator==(const RingSpec& a, const RingSpec& b);

 private:
  explicit RingSpec(Kind kind) : kind_(std::move(kind)) {}
  Kind kind_;
};

class Ideal;

/// Homogeneous monomial ideal of a non-Segre ring. Generators are kept
/// ordered by total degree.
struct MonomialIdeal {
  RingSpec ring;
  std::vector<Exponent> generators;
};

/// I # J inside a Segre product. Its graded colength is defined through the
/// product length identity (see graded_colength_piece).
struct SegreIdeal {
  std::shared_ptr<const Ideal> left;
  std::shared_ptr<const Ideal> right;
};

class Ideal {
 public:
  using Kind = std::variant<MonomialIdeal, SegreIdeal>;

  /// Validates shapes and positive generator degrees (Error{Schema}).
  static Ideal monomial(RingSpec ring, std::vector<Exponent> generators);
  static Ideal segre(Ideal left, Ideal right);
  /// The graded maximal ideal (all variables; m # m for Segre rings).
  static Ideal maximal(const RingSpec& ring);

  const Kind& kind() const { return kind_; }
  RingSpec ring() const;
  /// mu: the number of supplied generators (max over Segre factors).
  std::size_t generator_count() const;

 private:
  explicit Ideal(Kind kind) : kind_(std::move(kind)) {}
  Kind kind_;
};

/// Hilbert function of k[x_1..x_n]/J for a monomial ideal J: entry m counts
/// the degree-m monomials divisible by no generator, for m = 0..max_degree.
std::vector<std::uint64_t> count_standard_monomials(std::size_t num_vars,
                                                    const std::vector<Exponent>& generators,
                                                    std::size_t max_degree);

/// Normal form of a monomial under lhs -> rhs.
Exponent rewrite_normal_form(const BinomialRewriteRing& ring, Exponent monomial);

std::size_t krull_dimension(const RingSpec& ring);

/// Degree from which l(R_m) agrees with the Hilbert polynomial.
std::uint64_t stabilization_degree(const RingSpec& ring);

std::uint64_t hilbert_len(const RingSpec& ring, std::uint64_t m);
std::vector<std::uint64_t> hilbert_series(const RingSpec& ring, std::size_t max_degree);

Ideal frobenius_power(const Ideal& ideal, std::uint64_t q);

/// Smallest n0 >= 1 with every degree-n0 normal monomial in the ideal.
/// Throws Error{NotMPrimary} when the ideal has infinite colength.
std::uint64_t nilpotency_n0(const RingSpec& ring, const Ideal& ideal);

/// n0 * mu * q + stabilization_degree(ring): every colength piece at or above
/// this degree vanishes.
std::uint64_t support_bound(const RingSpec& ring, const Ideal& ideal, std::uint64_t q);

/// l(R / I^[q])_m.
std::uint64_t graded_colength_piece(const RingSpec& ring, const Ideal& ideal, std::uint64_t q,
                                    std::uint64_t m);

/// Pieces l(R/I^[q])_m for m = 0..E-1 where E is the first degree with a zero
/// piece (all later pieces vanish too). Checked against support_bound.
std::vector<std::uint64_t> colength_series(const RingSpec& ring, const Ideal& ideal,
                                           std::uint64_t q);

/// l(R / I^[q]).
std::uint64_t total_colength(const RingSpec& ring, const Ideal& ideal, std::uint64_t q);

/// Minimal primes P of a reduced monomial quotient with dim R/P = dim R, each
/// given as the sorted list of variable indices generating P.
/// Throws Error{NotReduced} for non-squarefree relations.
std::vector<std::vector<std::size_t>> minimal_primes(const RingSpec& ring);

}  // namespace hkd
