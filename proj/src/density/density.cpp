#include "hkd/density.hpp"

#include <algorithm>
#include <set>

#include "hkd/error.hpp"

namespace hkd {

namespace {

Rational u64(std::uint64_t v) { return from_u64(v); }

void check_p(std::uint64_t p) {
  if (!is_prime(p)) throw Error(ErrorCode::InvalidArgument, "p must be prime, got " + std::to_string(p));
}

}  // namespace

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::uint64_t prime_power(std::uint64_t p, std::uint64_t n) {
  std::uint64_t q = 1;
  for (std::uint64_t i = 0; i < n; ++i)
    if (__builtin_mul_overflow(q, p, &q)) throw Error(ErrorCode::Overflow, "p^n overflows 64 bits");
  return q;
}

DensitySample density_sample(const RingSpec& ring, const Ideal& ideal, std::uint64_t p, std::uint64_t n) {
  check_p(p);
  DensitySample s;
  s.p = p;
  s.n = n;
  s.q = prime_power(p, n);
  s.dim = krull_dimension(ring);
  if (s.dim == 0) throw Error(ErrorCode::Unsupported, "ring of dimension 0 has no density function");
  s.max_degree = support_bound(ring, ideal, s.q);
  const auto pieces = colength_series(ring, ideal, s.q);
  const Rational scale = pow(u64(s.q), static_cast<unsigned>(s.dim - 1));
  s.values.assign(s.max_degree + 1, Rational(0));
  for (std::size_t m = 0; m < pieces.size(); ++m) s.values[m] = u64(pieces[m]) / scale;
  return s;
}

Rational f_n_eval(const DensitySample& s, const Rational& x) {
  if (x < 0) return Rational(0);
  const Integer m = floor(Rational(x * u64(s.q)));
  if (m >= Integer(std::to_string(s.values.size()))) return Rational(0);
  return s.values[m.get_ui()];
}

Rational g_n_eval(const DensitySample& s, const Rational& x) {
  if (x < 0) return Rational(0);
  const Rational xq = x * u64(s.q);
  const Integer m = floor(xq);
  if (m >= Integer(std::to_string(s.values.size()))) return Rational(0);
  const std::size_t i = m.get_ui();
  const Rational t = xq - Rational(m);
  const Rational next = i + 1 < s.values.size() ? s.values[i + 1] : Rational(0);
  return (Rational(1) - t) * s.values[i] + t * next;
}

Rational f_n_eval(const RingSpec& ring, const Ideal& ideal, std::uint64_t p, std::uint64_t n,
                  const Rational& x) {
  return f_n_eval(density_sample(ring, ideal, p, n), x);
}

Rational g_n_eval(const RingSpec& ring, const Ideal& ideal, std::uint64_t p, std::uint64_t n,
                  const Rational& x) {
  return g_n_eval(density_sample(ring, ideal, p, n), x);
}

PiecewisePoly f_n_as_step(const DensitySample& s) { return pp_step(s.values, s.q); }

PiecewisePoly g_n_as_piecewise(const DensitySample& s) { return pp_linear_interpolant(s.values, s.q); }

PiecewisePoly g_n_as_piecewise(const RingSpec& ring, const Ideal& ideal, std::uint64_t p, std::uint64_t n) {
  return g_n_as_piecewise(density_sample(ring, ideal, p, n));
}

Rational ehk_riemann(const DensitySample& s) {
  Rational total(0);
  for (const auto& v : s.values) total += v;
  // sum_m l_m / q^(d-1) * (1/q) = l(R/I^[q]) / q^d
  total /= u64(s.q);
  const Rational integral = pp_integrate(f_n_as_step(s));
  if (integral != total) throw Error(ErrorCode::Internal, "Riemann identity failed: colength/q^d != integral of f_n");
  return total;
}

Rational ehk_riemann(const RingSpec& ring, const Ideal& ideal, std::uint64_t p, std::uint64_t n) {
  const DensitySample s = density_sample(ring, ideal, p, n);
  const Rational via_sample = ehk_riemann(s);
  const Rational direct = u64(total_colength(ring, ideal, s.q)) / pow(u64(s.q), static_cast<unsigned>(s.dim));
  if (direct != via_sample) throw Error(ErrorCode::Internal, "Riemann identity failed: total colength mismatch");
  return direct;
}

ConvergenceReport density_estimate(const RingSpec& ring, const Ideal& ideal, std::uint64_t p,
                                   std::uint64_t n_max, const Rational& tol, std::uint64_t grid) {
  if (n_max < 1) throw Error(ErrorCode::InvalidArgument, "n_max must be >= 1");
  if (grid < 1) throw Error(ErrorCode::InvalidArgument, "grid must be >= 1");
  if (tol < 0) throw Error(ErrorCode::InvalidArgument, "tolerance must be >= 0");
  ConvergenceReport report;
  report.p = p;
  report.grid = grid;
  PiecewisePoly previous = g_n_as_piecewise(density_sample(ring, ideal, p, 0));
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    const DensitySample s = density_sample(ring, ideal, p, n);
    PiecewisePoly current = g_n_as_piecewise(s);
    const Rational diff = pp_sup_diff_sampled(current, previous, grid);
    report.sup_diffs.emplace_back(n, diff);
    report.ehk_riemann.emplace_back(n, ehk_riemann(s));
    report.final_n = n;
    previous = std::move(current);
    if (diff <= tol) break;
  }
  report.density = std::move(previous);
  return report;
}

namespace {

void check_dim1_ring(const RingSpec& ring) {
  if (const auto* poly = std::get_if<PolynomialRing>(&ring.kind())) {
    if (poly->num_vars != 1) throw Error(ErrorCode::Validation, "dim1_density needs a ring of dimension 1");
    return;
  }
  const auto* mq = std::get_if<MonomialQuotientRing>(&ring.kind());
  if (!mq) throw Error(ErrorCode::Unsupported, "dim1_density supports k[t] and reduced monomial quotients");
  for (const auto& r : mq->relations)
    for (auto e : r)
      if (e > 1) throw Error(ErrorCode::NotReduced, "dim1_density requires a reduced ring");
  if (krull_dimension(ring) != 1) throw Error(ErrorCode::Validation, "dim1_density needs a ring of dimension 1");
}

// Breakpoints {0, d_1, ..., d_mu} plus the support end when it lies further out.
std::vector<Rational> dim1_points(const RingSpec& ring, const Ideal& ideal) {
  const std::uint64_t end = nilpotency_n0(ring, ideal) * ideal.generator_count();
  const auto& gens = std::get<MonomialIdeal>(ideal.kind()).generators;
  std::set<std::uint64_t> degrees{0};
  for (const auto& g : gens) degrees.insert(total_degree(g));
  if (end > *degrees.rbegin()) degrees.insert(end);
  std::vector<Rational> pts;
  for (auto d : degrees) pts.push_back(from_u64(d));
  return pts;
}

}  // namespace

Dim1Density dim1_density_at(const RingSpec& ring, const Ideal& ideal, std::uint64_t p, std::uint64_t n) {
  check_dim1_ring(ring);
  const auto pts = dim1_points(ring, ideal);
  const DensitySample s = density_sample(ring, ideal, p, n);
  std::vector<Poly> pieces;
  for (std::size_t j = 0; j + 1 < pts.size(); ++j) {
    const Rational mid = (pts[j] + pts[j + 1]) / 2;
    pieces.push_back(Poly::constant(f_n_eval(s, mid)));
  }
  Dim1Density out;
  out.density = PiecewisePoly(pts, std::move(pieces));
  out.ehk = pp_integrate(out.density);
  out.n = n;
  return out;
}

Dim1Density dim1_density(const RingSpec& ring, const Ideal& ideal, std::uint64_t p) {
  check_p(p);
  check_dim1_ring(ring);
  const auto pts = dim1_points(ring, ideal);
  // l(R_m) is constant from m0 on.
  const std::uint64_t m0 = std::max<std::uint64_t>(1, stabilization_degree(ring));
  Rational gap = pts.size() > 1 ? Rational(pts[1] - pts[0]) : Rational(1);
  for (std::size_t j = 1; j + 1 < pts.size(); ++j) gap = std::min(gap, Rational(pts[j + 1] - pts[j]));
  // Midpoints sit gap/2 past each generator degree; they avoid the unstable
  // windows (d_j, d_j + m0/q] once m0/q < gap/2.
  std::uint64_t n = 0;
  while (!(from_u64(m0) / from_u64(prime_power(p, n)) < gap / 2)) ++n;
  return dim1_density_at(ring, ideal, p, n);
}

}  // namespace hkd
