#include <algorithm>
#include <atomic>
#include <set>
#include <string>

#include "hkd/error.hpp"
#include "hkd/parallel.hpp"
#include "hkd/rational.hpp"
#include "hkd/rings.hpp"

namespace hkd {

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out;
  if (__builtin_add_overflow(a, b, &out)) throw Error(ErrorCode::Overflow, "monomial count overflows 64 bits");
  return out;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw Error(ErrorCode::Overflow, "monomial count overflows 64 bits");
  return out;
}

std::uint64_t to_u64(const Integer& z) {
  if (z < 0 || mpz_sizeinbase(z.get_mpz_t(), 2) > 64)
    throw Error(ErrorCode::Overflow, "value does not fit in 64 bits");
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, z.get_mpz_t());
  return out;
}

/// Drops generators divisible by another generator; keeps one copy of duplicates.
std::vector<Exponent> minimalize(std::vector<Exponent> gens) {
  std::sort(gens.begin(), gens.end(), [](const Exponent& a, const Exponent& b) {
    const auto da = total_degree(a), db = total_degree(b);
    return da != db ? da < db : a < b;
  });
  std::vector<Exponent> kept;
  for (auto& g : gens) {
    const bool redundant = std::any_of(kept.begin(), kept.end(), [&](const Exponent& k) { return divides(k, g); });
    if (!redundant) kept.push_back(std::move(g));
  }
  return kept;
}

std::vector<std::uint64_t> free_counts(std::size_t num_vars, std::size_t max_degree) {
  // C(m + n - 1, n - 1)
  std::vector<std::uint64_t> out(max_degree + 1);
  Integer c;
  for (std::size_t m = 0; m <= max_degree; ++m) {
    mpz_bin_uiui(c.get_mpz_t(), m + num_vars - 1, num_vars - 1);
    out[m] = to_u64(c);
  }
  return out;
}

// Splits on the exponent of the last variable. For e in [s_k, s_{k+1}) the
// colon ideal (J : x_n^e) restricted to x_n = 0 is fixed, so its Hilbert
// function is convolved with the indicator of that range via prefix sums.
std::vector<std::uint64_t> count_recursive(std::size_t num_vars, std::vector<Exponent> gens,
                                           std::size_t max_degree) {
  gens = minimalize(std::move(gens));
  if (!gens.empty() && total_degree(gens.front()) == 0) return std::vector<std::uint64_t>(max_degree + 1, 0);
  if (num_vars == 0) {
    std::vector<std::uint64_t> out(max_degree + 1, 0);
    out[0] = 1;
    return out;
  }
  if (gens.empty()) return free_counts(num_vars, max_degree);

  const std::size_t last = num_vars - 1;
  std::vector<std::uint64_t> cuts{0};
  for (const auto& g : gens) cuts.push_back(g[last]);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<std::uint64_t> out(max_degree + 1, 0);
  for (std::size_t k = 0; k < cuts.size(); ++k) {
    const std::uint64_t lo = cuts[k];
    if (lo > max_degree) break;
    const std::uint64_t hi = k + 1 < cuts.size() ? cuts[k + 1] : max_degree + 1;  // exclusive
    std::vector<Exponent> sub;
    for (const auto& g : gens)
      if (g[last] <= lo) sub.emplace_back(g.begin(), g.begin() + static_cast<std::ptrdiff_t>(last));
    const auto h = count_recursive(last, std::move(sub), max_degree - lo);
    std::vector<std::uint64_t> prefix(h.size() + 1, 0);
    for (std::size_t j = 0; j < h.size(); ++j) prefix[j + 1] = checked_add(prefix[j], h[j]);
    for (std::uint64_t d = lo; d <= max_degree; ++d) {
      // sum_{e=lo}^{min(hi-1, d)} h[d - e]
      const std::uint64_t top = d - lo;
      const std::uint64_t bottom = d + 1 >= hi ? d + 1 - hi : 0;
      out[d] = checked_add(out[d], prefix[top + 1] - prefix[bottom]);
    }
  }
  return out;
}

template <class Fn>
void compositions(Exponent& e, std::size_t i, std::uint64_t remaining, Fn& fn) {
  if (i + 1 == e.size()) {
    e[i] = static_cast<std::uint32_t>(remaining);
    fn(static_cast<const Exponent&>(e));
    return;
  }
  for (std::uint64_t v = remaining + 1; v-- > 0;) {
    e[i] = static_cast<std::uint32_t>(v);
    compositions(e, i + 1, remaining - v, fn);
  }
}

/// Calls fn(e) for every exponent vector with sum `degree` in num_vars variables.
template <class Fn>
void for_each_monomial(std::size_t num_vars, std::uint64_t degree, Fn&& fn) {
  Exponent e(num_vars, 0);
  if (num_vars == 0) {
    if (degree == 0) fn(static_cast<const Exponent&>(e));
    return;
  }
  compositions(e, 0, degree, fn);
}

// l(R/I^[q])_m for a binomial rewrite ring: hilbert_len minus the number of
// distinct normal forms of g * mu over generators g of I^[q] and normal
// monomials mu of complementary degree.
std::uint64_t binomial_piece(const BinomialRewriteRing& ring, const std::vector<Exponent>& gens,
                             std::uint64_t m) {
  const std::size_t n = ring.num_vars;
  const std::uint64_t total = count_recursive(n, {ring.lhs}, m)[m];

  // Pack monomials of degree m into 64-bit keys when (m+1)^n fits.
  bool packable = true;
  {
    unsigned __int128 span = 1;
    for (std::size_t i = 0; i < n && packable; ++i) {
      span *= static_cast<unsigned __int128>(m + 1);
      if (span > static_cast<unsigned __int128>(UINT64_MAX)) packable = false;
    }
  }
  std::vector<std::uint64_t> keys;
  std::set<Exponent> wide;
  for (const auto& g : gens) {
    const std::uint64_t dg = total_degree(g);
    if (dg > m) continue;
    for_each_monomial(n, m - dg, [&](const Exponent& mu) {
      if (divides(ring.lhs, mu)) return;
      Exponent prod(n);
      for (std::size_t i = 0; i < n; ++i) prod[i] = g[i] + mu[i];
      prod = rewrite_normal_form(ring, std::move(prod));
      if (packable) {
        std::uint64_t key = 0;
        for (std::size_t i = 0; i < n; ++i) key = key * (m + 1) + prod[i];
        keys.push_back(key);
      } else {
        wide.insert(std::move(prod));
      }
    });
  }
  std::uint64_t in_ideal = wide.size();
  if (packable) {
    std::sort(keys.begin(), keys.end());
    in_ideal = static_cast<std::uint64_t>(std::unique(keys.begin(), keys.end()) - keys.begin());
  }
  if (in_ideal > total) throw Error(ErrorCode::Internal, "binomial piece: ideal part exceeds ring part");
  return total - in_ideal;
}

const std::vector<Exponent>& monomial_generators(const Ideal& ideal) {
  const auto* m = std::get_if<MonomialIdeal>(&ideal.kind());
  if (!m) throw Error(ErrorCode::Schema, "expected a monomial ideal, got a Segre ideal");
  return m->generators;
}

void check_ideal_ring(const RingSpec& ring, const Ideal& ideal) {
  if (!(ideal.ring() == ring)) throw Error(ErrorCode::Schema, "ideal does not belong to the given ring");
}

// Colength pieces for m = 0..max_m (no m-primary check, no early stop).
std::vector<std::uint64_t> pieces_up_to(const RingSpec& ring, const Ideal& ideal, std::uint64_t q,
                                        std::uint64_t max_m) {
  const Ideal frob = frobenius_power(ideal, q);
  return std::visit(
      [&](const auto& r) -> std::vector<std::uint64_t> {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, PolynomialRing>) {
          return count_recursive(r.num_vars, monomial_generators(frob), max_m);
        } else if constexpr (std::is_same_v<T, MonomialQuotientRing>) {
          auto gens = r.relations;
          const auto& ig = monomial_generators(frob);
          gens.insert(gens.end(), ig.begin(), ig.end());
          return count_recursive(r.num_vars, std::move(gens), max_m);
        } else if constexpr (std::is_same_v<T, BinomialRewriteRing>) {
          const auto& gens = monomial_generators(frob);
          std::vector<std::uint64_t> out(max_m + 1);
          parallel_for(max_m + 1, [&](std::size_t m) { out[m] = binomial_piece(r, gens, m); });
          return out;
        } else {
          const auto& s = std::get<SegreIdeal>(ideal.kind());
          const auto cl = pieces_up_to(*r.left, *s.left, q, max_m);
          const auto cr = pieces_up_to(*r.right, *s.right, q, max_m);
          const auto hl = hilbert_series(*r.left, max_m);
          const auto hr = hilbert_series(*r.right, max_m);
          std::vector<std::uint64_t> out(max_m + 1);
          for (std::size_t m = 0; m <= max_m; ++m) {
            // l(R_m) l(S_m) - [l(R_m) - l_R] [l(S_m) - l_S]
            const std::uint64_t full = checked_mul(hl[m], hr[m]);
            out[m] = full - checked_mul(hl[m] - cl[m], hr[m] - cr[m]);
          }
          return out;
        }
      },
      ring.kind());
}

// Generators J with l(R_m) = #{degree-m monomials outside J} for the
// non-Segre ring kinds.
std::vector<Exponent> normal_basis_relations(const RingSpec& ring) {
  return std::visit(
      [](const auto& r) -> std::vector<Exponent> {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, PolynomialRing>)
          return {};
        else if constexpr (std::is_same_v<T, MonomialQuotientRing>)
          return r.relations;
        else if constexpr (std::is_same_v<T, BinomialRewriteRing>)
          return {r.lhs};
        else
          throw Error(ErrorCode::Internal, "normal_basis_relations on Segre ring");
      },
      ring.kind());
}

struct GrowthData {
  std::size_t dimension;
  std::uint64_t stabilization;
};

// Reads off the Hilbert polynomial degree from finite differences. The
// Hilbert series of k[x]/J has numerator degree <= deg lcm(J), so the Hilbert
// function is polynomial from deg lcm(J) - n + 1 on.
GrowthData growth(const RingSpec& ring) {
  const std::size_t n = ring.num_vars();
  const auto rels = normal_basis_relations(ring);
  std::uint64_t lcm_degree = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t mx = 0;
    for (const auto& r : rels) mx = std::max(mx, r[i]);
    lcm_degree += mx;
  }
  const std::size_t start = lcm_degree;
  const std::size_t horizon = start + 3 * n + 4;
  const auto h = count_recursive(n, rels, horizon);

  std::vector<Integer> diff(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) diff[i] = Integer(std::to_string(h[i]));
  for (std::size_t k = 0; k <= n; ++k) {
    // diff holds Delta^k h on [0, horizon - k].
    const std::size_t valid = h.size() - k;
    bool vanishes = true;
    for (std::size_t m = start; m < valid; ++m)
      if (diff[m] != 0) vanishes = false;
    if (vanishes) {
      std::size_t stab = std::min(start, valid);
      while (stab > 0 && diff[stab - 1] == 0) --stab;
      return {k, stab};
    }
    for (std::size_t m = 0; m + 1 < valid; ++m) diff[m] = diff[m + 1] - diff[m];
  }
  throw Error(ErrorCode::Internal, "Hilbert function growth exceeds the number of variables");
}

}  // namespace

std::vector<std::uint64_t> count_standard_monomials(std::size_t num_vars,
                                                    const std::vector<Exponent>& generators,
                                                    std::size_t max_degree) {
  for (const auto& g : generators)
    if (g.size() != num_vars) throw Error(ErrorCode::Schema, "generator length mismatch");
  return count_recursive(num_vars, generators, max_degree);
}

Exponent rewrite_normal_form(const BinomialRewriteRing& ring, Exponent u) {
  while (true) {
    std::uint64_t t = UINT64_MAX;
    for (std::size_t i = 0; i < u.size(); ++i)
      if (ring.lhs[i] > 0) t = std::min<std::uint64_t>(t, u[i] / ring.lhs[i]);
    if (t == 0 || t == UINT64_MAX) return u;
    for (std::size_t i = 0; i < u.size(); ++i)
      u[i] = static_cast<std::uint32_t>(u[i] - t * ring.lhs[i] + t * ring.rhs[i]);
  }
}

std::size_t krull_dimension(const RingSpec& ring) {
  return std::visit(
      [&](const auto& r) -> std::size_t {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, PolynomialRing>)
          return r.num_vars;
        else if constexpr (std::is_same_v<T, SegreRing>) {
          const std::size_t dl = krull_dimension(*r.left), dr = krull_dimension(*r.right);
          if (dl == 0 || dr == 0) return 0;
          return dl + dr - 1;
        } else
          return growth(ring).dimension;
      },
      ring.kind());
}

std::uint64_t stabilization_degree(const RingSpec& ring) {
  return std::visit(
      [&](const auto& r) -> std::uint64_t {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, PolynomialRing>)
          return 0;
        else if constexpr (std::is_same_v<T, SegreRing>)
          return std::max(stabilization_degree(*r.left), stabilization_degree(*r.right));
        else
          return growth(ring).stabilization;
      },
      ring.kind());
}

std::vector<std::uint64_t> hilbert_series(const RingSpec& ring, std::size_t max_degree) {
  if (const auto* s = std::get_if<SegreRing>(&ring.kind())) {
    const auto hl = hilbert_series(*s->left, max_degree);
    const auto hr = hilbert_series(*s->right, max_degree);
    std::vector<std::uint64_t> out(max_degree + 1);
    for (std::size_t m = 0; m <= max_degree; ++m) out[m] = checked_mul(hl[m], hr[m]);
    return out;
  }
  return count_recursive(ring.num_vars(), normal_basis_relations(ring), max_degree);
}

std::uint64_t hilbert_len(const RingSpec& ring, std::uint64_t m) { return hilbert_series(ring, m)[m]; }

std::uint64_t nilpotency_n0(const RingSpec& ring, const Ideal& ideal) {
  check_ideal_ring(ring, ideal);
  if (const auto* s = std::get_if<SegreRing>(&ring.kind())) {
    const auto& si = std::get<SegreIdeal>(ideal.kind());
    return std::max(nilpotency_n0(*s->left, *si.left), nilpotency_n0(*s->right, *si.right));
  }
  const std::size_t n = ring.num_vars();
  const auto& gens = monomial_generators(ideal);
  std::vector<Exponent> killers = gens;
  if (const auto* mq = std::get_if<MonomialQuotientRing>(&ring.kind()))
    killers.insert(killers.end(), mq->relations.begin(), mq->relations.end());

  // Smallest pure power x_i^{e_i} lying in I (or vanishing in R).
  std::uint64_t bound = 0;
  std::uint64_t max_gen_degree = 1;
  for (const auto& g : gens) max_gen_degree = std::max(max_gen_degree, total_degree(g));
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t best = 0;
    if (const auto* br = std::get_if<BinomialRewriteRing>(&ring.kind())) {
      // Membership of x_i^e: its normal form must be among the normal forms
      // of g * mu at degree e.
      const std::uint64_t cap = 64 * std::max<std::uint64_t>(max_gen_degree, total_degree(br->lhs));
      for (std::uint64_t e = 1; e <= cap && best == 0; ++e) {
        Exponent pure(n, 0);
        pure[i] = static_cast<std::uint32_t>(e);
        pure = rewrite_normal_form(*br, pure);
        for (const auto& g : gens) {
          const std::uint64_t dg = total_degree(g);
          if (dg > e) continue;
          bool found = false;
          for_each_monomial(n, e - dg, [&](const Exponent& mu) {
            if (found) return;
            Exponent prod(n);
            for (std::size_t v = 0; v < n; ++v) prod[v] = g[v] + mu[v];
            if (rewrite_normal_form(*br, std::move(prod)) == pure) found = true;
          });
          if (found) {
            best = e;
            break;
          }
        }
      }
    } else {
      for (const auto& g : killers) {
        const std::uint64_t deg = total_degree(g);
        if (g[i] != deg) continue;
        if (best == 0 || deg < best) best = deg;
      }
    }
    if (best == 0)
      throw Error(ErrorCode::NotMPrimary, "not m-primary: no power of variable " + std::to_string(i) +
                                              " lies in the ideal");
    bound += best;
  }
  const auto pieces = pieces_up_to(ring, ideal, 1, bound);
  for (std::uint64_t m = 1; m <= bound; ++m)
    if (pieces[m] == 0) return m;
  throw Error(ErrorCode::NotMPrimary, "not m-primary: m^n0 not contained in I up to the pure-power bound");
}

std::uint64_t support_bound(const RingSpec& ring, const Ideal& ideal, std::uint64_t q) {
  const std::uint64_t n0 = nilpotency_n0(ring, ideal);
  return checked_add(checked_mul(checked_mul(n0, ideal.generator_count()), q), stabilization_degree(ring));
}

std::uint64_t graded_colength_piece(const RingSpec& ring, const Ideal& ideal, std::uint64_t q,
                                    std::uint64_t m) {
  if (q == 0) throw Error(ErrorCode::InvalidArgument, "q must be >= 1");
  nilpotency_n0(ring, ideal);
  if (const auto* br = std::get_if<BinomialRewriteRing>(&ring.kind()))
    return binomial_piece(*br, monomial_generators(frobenius_power(ideal, q)), m);
  return pieces_up_to(ring, ideal, q, m)[m];
}

std::vector<std::uint64_t> colength_series(const RingSpec& ring, const Ideal& ideal, std::uint64_t q) {
  if (q == 0) throw Error(ErrorCode::InvalidArgument, "q must be >= 1");
  const std::uint64_t bound = support_bound(ring, ideal, q);

  if (const auto* br = std::get_if<BinomialRewriteRing>(&ring.kind())) {
    // Pieces are costly here; work in parallel batches and stop at the first
    // zero (in a standard graded ring a zero piece stays zero).
    const auto gens = monomial_generators(frobenius_power(ideal, q));
    std::vector<std::uint64_t> out;
    const std::size_t batch = std::max<std::size_t>(1, max_threads());
    for (std::uint64_t base = 0; base <= bound; base += batch) {
      const std::size_t count = static_cast<std::size_t>(std::min<std::uint64_t>(batch, bound + 1 - base));
      std::vector<std::uint64_t> vals(count);
      parallel_for(count, [&](std::size_t j) { vals[j] = binomial_piece(*br, gens, base + j); });
      for (auto v : vals) {
        if (v == 0) return out;
        out.push_back(v);
      }
    }
    throw Error(ErrorCode::Internal, "colength piece nonzero at the support bound");
  }

  const auto all = pieces_up_to(ring, ideal, q, bound);
  std::size_t end = 0;
  while (end < all.size() && all[end] != 0) ++end;
  for (std::size_t m = end; m < all.size(); ++m)
    if (all[m] != 0) throw Error(ErrorCode::Internal, "colength pieces vanish and then reappear");
  if (end == all.size()) throw Error(ErrorCode::Internal, "colength piece nonzero at the support bound");
  return {all.begin(), all.begin() + static_cast<std::ptrdiff_t>(end)};
}

std::uint64_t total_colength(const RingSpec& ring, const Ideal& ideal, std::uint64_t q) {
  std::uint64_t total = 0;
  for (auto v : colength_series(ring, ideal, q)) total = checked_add(total, v);
  return total;
}

}  // namespace hkd
