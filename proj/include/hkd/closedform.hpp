#pragma once

// Closed-form Hilbert-Kunz density functions: projective spaces, curves from
// Harder-Narasimhan data, Segre products, and reduced monomial quotients via
// additivity over top-dimensional components.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hkd/piecewise.hpp"
#include "hkd/rational.hpp"
#include "hkd/rings.hpp"

namespace hkd {

enum class Provenance { ClosedForm, SegreCombined, Estimated };

const char* provenance_name(Provenance p);

struct HKDensity {
  PiecewisePoly density;
  Rational ehk;
  Provenance provenance = Provenance::ClosedForm;
};

struct HNStratum {
  std::uint64_t rank = 0;
  Rational slope;  // normalized slope a_i
};

/// Harder-Narasimhan data (d, {r_i}, {a_i}) of the syzygy bundle of a curve.
class CurveHN {
 public:
  /// Validates ranks > 0, slopes <= 0 and strictly decreasing. With
  /// check_degree_sum, also sum r_i a_i == -d (degree-one generators of m).
  /// Throws Error{Validation}.
  CurveHN(std::uint64_t degree, std::vector<HNStratum> strata, bool check_degree_sum = false);

  std::uint64_t degree() const { return degree_; }
  const std::vector<HNStratum>& strata() const { return strata_; }

 private:
  std::uint64_t degree_;
  std::vector<HNStratum> strata_;
};

/// A_i^d(x) = (1/d!) sum_{j=1}^{i} (-1)^(j+1) C(d+1, j) (x - j)^d.
Poly projective_space_deficit(unsigned d, unsigned i);

/// HKd(P^d): x^d/d! - A_i^d(x) on [i, i+1) for 0 <= i <= d, zero from d+1.
HKDensity hkd_projective_space(unsigned d);

/// e0 x^(dim-1) / (dim-1)! on [0, cutoff).
PiecewisePoly hsd(std::uint64_t e0, unsigned dim, const Rational& cutoff);

HKDensity hkd_curve(const CurveHN& hn);
/// d/2 + sum r_i a_i^2 / (2d).
Rational ehk_curve(const CurveHN& hn);

struct SegreFactor {
  PiecewisePoly hsd;      // F_i, cut off at or beyond every density's support end
  PiecewisePoly density;  // f_i
};

/// prod F_i - prod (F_i - f_i). Throws Error{Validation} when some F_i is cut
/// off before the largest support end of the f_i.
HKDensity segre_combine(std::span<const SegreFactor> factors);

/// F_RS - h == (F_R - f)(F_S - g) exactly, compared on the common support of
/// the HSd functions. h is the density claimed for the Segre product.
/// Throws Error{Validation} unless F_RS == F_R F_S there.
bool multiplicative_identity_check(const PiecewisePoly& hsd_r, const PiecewisePoly& f,
                                   const PiecewisePoly& hsd_s, const PiecewisePoly& g,
                                   const PiecewisePoly& hsd_rs, const PiecewisePoly& h);

/// Sum of HKd(P^(k-1)) over the top-dimensional components k[complement] of a
/// reduced monomial quotient, for I = m.
HKDensity additivity_closed_form(const RingSpec& ring, const Ideal& ideal);

/// Closed form for (ring, ideal) when one exists: polynomial rings and reduced
/// monomial quotients with I = m, and Segre products of those.
std::optional<HKDensity> closed_form_for(const RingSpec& ring, const Ideal& ideal);

/// Piecewise JSON extended with "ehk" and "provenance".
std::string hk_density_json(const HKDensity& density);

}  // namespace hkd
