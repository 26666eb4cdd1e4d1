#include "hkd/poly.hpp"

#include <algorithm>
#include <utility>

namespace hkd {

Poly::Poly(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

Poly::Poly(std::initializer_list<Rational> coefficients) : coeffs_(coefficients) { trim(); }

Poly Poly::constant(const Rational& c) { return Poly(std::vector<Rational>{c}); }

Poly Poly::x_minus(const Rational& root) {
  return Poly(std::vector<Rational>{Rational(-root), Rational(1)});
}

Poly Poly::monomial(const Rational& c, unsigned k) {
  std::vector<Rational> coeffs(k + 1);
  coeffs[k] = c;
  return Poly(std::move(coeffs));
}

void Poly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational Poly::operator()(const Rational& x) const {
  Rational acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  return acc;
}

Poly Poly::antiderivative() const {
  std::vector<Rational> out(coeffs_.size() + 1);
  for (std::size_t k = 0; k < coeffs_.size(); ++k)
    out[k + 1] = coeffs_[k] / Rational(static_cast<long>(k + 1));
  return Poly(std::move(out));
}

Rational Poly::integrate(const Rational& a, const Rational& b) const {
  const Poly anti = antiderivative();
  return anti(b) - anti(a);
}

Poly Poly::pow(unsigned k) const {
  Poly out = constant(Rational(1));
  for (unsigned i = 0; i < k; ++i) out = out * *this;
  return out;
}

Poly& Poly::operator+=(const Poly& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
  trim();
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& x : coeffs_) x *= c;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Poly(std::move(out));
}

}  // namespace hkd
