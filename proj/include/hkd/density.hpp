#pragma once

// The limit construction: f_n / g_n built from graded colengths of Frobenius
// powers, convergence monitoring, the exact Riemann identity, and the
// pointwise-stable step density of one-dimensional reduced rings.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hkd/piecewise.hpp"
#include "hkd/rational.hpp"
#include "hkd/rings.hpp"

namespace hkd {

/// Node values of f_n: values[m] = l(R/I^[q])_m / q^(d-1) for m = 0..max_degree.
/// (For m < q this is l(R_m) / q^(d-1): I^[q] has nothing below degree q.)
struct DensitySample {
  std::uint64_t p = 0;
  std::uint64_t n = 0;
  std::uint64_t q = 0;
  std::size_t dim = 0;
  std::uint64_t max_degree = 0;  // support cutoff n0 * mu * q + margin
  std::vector<Rational> values;
};

bool is_prime(std::uint64_t p);
/// p^n, throwing Error{Overflow} beyond 64 bits.
std::uint64_t prime_power(std::uint64_t p, std::uint64_t n);

DensitySample density_sample(const RingSpec& ring, const Ideal& ideal, std::uint64_t p,
                             std::uint64_t n);

Rational f_n_eval(const RingSpec& ring, const Ideal& ideal, std::uint64_t p, std::uint64_t n,
                  const Rational& x);
Rational g_n_eval(const RingSpec& ring, const Ideal& ideal, std::uint64_t p, std::uint64_t n,
                  const Rational& x);

Rational f_n_eval(const DensitySample& sample, const Rational& x);
Rational g_n_eval(const DensitySample& sample, const Rational& x);

/// f_n as a step function on the lattice m/q.
PiecewisePoly f_n_as_step(const DensitySample& sample);
/// g_n as a piecewise-linear function on breakpoints m/q, 0 <= m <= max_degree.
PiecewisePoly g_n_as_piecewise(const DensitySample& sample);
PiecewisePoly g_n_as_piecewise(const RingSpec& ring, const Ideal& ideal, std::uint64_t p,
                               std::uint64_t n);

/// total_colength / q^d, cross-checked against the integral of f_n.
Rational ehk_riemann(const RingSpec& ring, const Ideal& ideal, std::uint64_t p, std::uint64_t n);
Rational ehk_riemann(const DensitySample& sample);

struct ConvergenceReport {
  std::uint64_t p = 0;
  std::uint64_t grid = 0;
  /// (n, sampled sup |g_n - g_{n-1}|) for n = 1..final_n.
  std::vector<std::pair<std::uint64_t, Rational>> sup_diffs;
  std::vector<std::pair<std::uint64_t, Rational>> ehk_riemann;
  std::uint64_t final_n = 0;
  PiecewisePoly density;  // g_{final_n}
};

/// Computes g_n for n = 1..n_max, stopping early once sup |g_n - g_{n-1}|
/// (sampled on multiples of 1/grid plus breakpoints) is <= tol.
ConvergenceReport density_estimate(const RingSpec& ring, const Ideal& ideal, std::uint64_t p,
                                   std::uint64_t n_max, const Rational& tol, std::uint64_t grid);

struct Dim1Density {
  PiecewisePoly density;  // step function
  Rational ehk;
  std::uint64_t n = 0;    // level whose f_n values were read
};

/// Exact pointwise limit for reduced one-dimensional rings; chooses the
/// smallest n at which every interval midpoint has stabilized.
Dim1Density dim1_density(const RingSpec& ring, const Ideal& ideal, std::uint64_t p);
/// Same construction read off f_n at a caller-chosen level n.
Dim1Density dim1_density_at(const RingSpec& ring, const Ideal& ideal, std::uint64_t p,
                             std::uint64_t n);

/// CSV: m,x,value,value_decimal (x and value as exact rationals).
std::string density_sample_csv(const DensitySample& sample);
/// {"p":..,"final_n":..,"grid":..,"sup_diffs":[["1","..."],..],"ehk_riemann":[..],"density":{..}}
std::string convergence_report_json(const ConvergenceReport& report);

}  // namespace hkd
