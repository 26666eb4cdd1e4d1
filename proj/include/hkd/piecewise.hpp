#pragma once

// Compactly supported piecewise polynomial functions with exact rational
// breakpoints. Piece j lives on the half-open interval
// [breakpoints[j], breakpoints[j+1]); the function is 0 elsewhere, including
// at the last breakpoint.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hkd/poly.hpp"
#include "hkd/rational.hpp"

namespace hkd {

class PiecewisePoly {
 public:
  /// The zero function.
  PiecewisePoly() = default;

  /// Requires breakpoints strictly increasing and
  /// pieces.size() + 1 == breakpoints.size() (or both empty). The result is
  /// canonicalized. Throws Error{Validation} otherwise.
  PiecewisePoly(std::vector<Rational> breakpoints, std::vector<Poly> pieces);

  /// A single polynomial restricted to [lo, hi).
  static PiecewisePoly on_interval(const Rational& lo, const Rational& hi, Poly p);

  const std::vector<Rational>& breakpoints() const { return breaks_; }
  const std::vector<Poly>& pieces() const { return pieces_; }
  bool is_zero() const { return pieces_.empty(); }

  /// Support bounds [front, back) of the canonical form; nullopt for zero.
  std::optional<Rational> support_begin() const;
  std::optional<Rational> support_end() const;

  /// Polynomial in force at x (zero polynomial outside the support).
  const Poly& piece_at(const Rational& x) const;

  Rational operator()(const Rational& x) const;

  friend bool operator==(const PiecewisePoly& a, const PiecewisePoly& b) {
    return a.breaks_ == b.breaks_ && a.pieces_ == b.pieces_;
  }

 private:
  void canonicalize();

  std::vector<Rational> breaks_;
  std::vector<Poly> pieces_;
};

Rational pp_eval(const PiecewisePoly& f, const Rational& x);
PiecewisePoly pp_add(const PiecewisePoly& f, const PiecewisePoly& g);
PiecewisePoly pp_sub(const PiecewisePoly& f, const PiecewisePoly& g);
PiecewisePoly pp_mul(const PiecewisePoly& f, const PiecewisePoly& g);
PiecewisePoly pp_scale(const PiecewisePoly& f, const Rational& c);
/// f restricted to [lo, hi).
PiecewisePoly pp_restrict(const PiecewisePoly& f, const Rational& lo, const Rational& hi);
Rational pp_integrate(const PiecewisePoly& f);

/// Max of |f - g| over the grid points j / grid_denominator lying in the union
/// of the two supports, together with every breakpoint of either function.
/// This is a lower bound on the true sup-norm.
Rational pp_sup_diff_sampled(const PiecewisePoly& f, const PiecewisePoly& g,
                             std::uint64_t grid_denominator);

/// Step function taking value values[m] on [m/q, (m+1)/q).
PiecewisePoly pp_step(std::span<const Rational> values, std::uint64_t q);

/// Continuous piecewise-linear interpolation of nodes (m/q, values[m]) over
/// [0, (values.size()-1)/q); zero outside.
PiecewisePoly pp_linear_interpolant(std::span<const Rational> values, std::uint64_t q);

// JSON: {"breakpoints": ["0","1","2"], "pieces": [["0","1"],["2","-1"]]}
std::string pp_to_json(const PiecewisePoly& f);
PiecewisePoly pp_from_json(const std::string& text);

/// CSV with header x_rational,f_rational,f_decimal20 sampled at j/grid over the
/// support (endpoints included).
std::string pp_sample_csv(const PiecewisePoly& f, std::uint64_t grid);

}  // namespace hkd
