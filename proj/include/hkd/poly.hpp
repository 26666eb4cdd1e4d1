#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "hkd/rational.hpp"

namespace hkd {

/// Dense univariate polynomial over the rationals, lowest degree first.
/// Trailing zero coefficients are always stripped; the zero polynomial has no
/// coefficients.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rational> coefficients);
  Poly(std::initializer_list<Rational> coefficients);

  static Poly constant(const Rational& c);
  /// The linear polynomial x - root.
  static Poly x_minus(const Rational& root);
  /// c * x^k
  static Poly monomial(const Rational& c, unsigned k);

  const std::vector<Rational>& coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

  Rational operator()(const Rational& x) const;

  Poly antiderivative() const;
  /// Exact definite integral over [a, b].
  Rational integrate(const Rational& a, const Rational& b) const;
  Poly pow(unsigned k) const;

  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Rational& c);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator-(Poly a) { return a *= Rational(-1); }

  friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

}  // namespace hkd
