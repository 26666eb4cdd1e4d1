#include <algorithm>
#include <cstdint>

#include "hkd/error.hpp"
#include "hkd/rings.hpp"

namespace hkd {

// Minimal primes of a squarefree monomial ideal are generated by the minimal
// hitting sets (vertex covers) of the relation supports.
std::vector<std::vector<std::size_t>> minimal_primes(const RingSpec& ring) {
  std::size_t n = 0;
  std::vector<Exponent> relations;
  if (const auto* p = std::get_if<PolynomialRing>(&ring.kind())) {
    n = p->num_vars;
  } else if (const auto* mq = std::get_if<MonomialQuotientRing>(&ring.kind())) {
    n = mq->num_vars;
    relations = mq->relations;
  } else {
    throw Error(ErrorCode::Unsupported, "minimal_primes needs a monomial quotient ring");
  }
  for (const auto& r : relations)
    for (auto e : r)
      if (e > 1) throw Error(ErrorCode::NotReduced, "additivity oracle requires reduced ring");
  if (n > 24) throw Error(ErrorCode::Unsupported, "minimal_primes: too many variables for subset search");

  std::vector<std::uint32_t> supports;
  for (const auto& r : relations) {
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (r[i] != 0) mask |= 1u << i;
    supports.push_back(mask);
  }
  auto hits = [&](std::uint32_t s) {
    return std::all_of(supports.begin(), supports.end(), [&](std::uint32_t r) { return (r & s) != 0; });
  };

  const std::size_t dim = krull_dimension(ring);
  std::vector<std::vector<std::size_t>> out;
  for (std::uint32_t s = 0; s < (1u << n); ++s) {
    if (!hits(s)) continue;
    bool minimal = true;
    for (std::size_t i = 0; i < n && minimal; ++i)
      if ((s >> i & 1u) && hits(s & ~(1u << i))) minimal = false;
    if (!minimal) continue;
    std::vector<std::size_t> vars;
    for (std::size_t i = 0; i < n; ++i)
      if (s >> i & 1u) vars.push_back(i);
    if (n - vars.size() != dim) continue;
    out.push_back(std::move(vars));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace hkd
