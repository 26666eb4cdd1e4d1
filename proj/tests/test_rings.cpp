#include <doctest.h>

#include "hkd/error.hpp"
#include "hkd/json_io.hpp"
#include "hkd/rings.hpp"
#include "oracles.hpp"

using namespace hkd;

namespace {

RingSpec quadric() { return RingSpec::binomial_rewrite(4, {1, 0, 0, 1}, {0, 1, 1, 0}); }
RingSpec conic() { return RingSpec::binomial_rewrite(3, {0, 2, 0}, {1, 0, 1}); }
RingSpec p1xp1() { return RingSpec::segre(RingSpec::polynomial(2), RingSpec::polynomial(2)); }
RingSpec xy_plane() { return RingSpec::monomial_quotient(3, {{1, 1, 0}}); }

}  // namespace

TEST_CASE("hilbert_len") {
  CHECK(hilbert_len(RingSpec::polynomial(3), 2) == 6);
  CHECK(hilbert_len(quadric(), 2) == 9);
  CHECK(hilbert_len(p1xp1(), 3) == 16);
  for (std::uint64_t m = 0; m <= 64; ++m) CHECK(hilbert_len(quadric(), m) == (m + 1) * (m + 1));
  for (std::uint64_t m = 0; m <= 20; ++m) {
    CHECK(hilbert_len(conic(), m) == 2 * m + 1);
    CHECK(hilbert_len(xy_plane(), m) == oracle::count_outside(3, m, {{1, 1, 0}}));
  }
  CHECK(hilbert_series(RingSpec::polynomial(1), 4) == std::vector<std::uint64_t>{1, 1, 1, 1, 1});
}

TEST_CASE("dimension and stabilization") {
  CHECK(krull_dimension(RingSpec::polynomial(3)) == 3);
  CHECK(krull_dimension(quadric()) == 3);
  CHECK(krull_dimension(conic()) == 2);
  CHECK(krull_dimension(p1xp1()) == 3);
  CHECK(krull_dimension(xy_plane()) == 2);
  CHECK(krull_dimension(RingSpec::monomial_quotient(2, {{1, 1}})) == 1);
  CHECK(stabilization_degree(RingSpec::polynomial(3)) == 0);
  // k[x,y]/(xy): 1, 2, 2, ... reaches the constant 2 at degree 1.
  CHECK(stabilization_degree(RingSpec::monomial_quotient(2, {{1, 1}})) == 1);
}

TEST_CASE("frobenius_power") {
  const auto r2 = RingSpec::polynomial(2);
  const auto m = Ideal::maximal(r2);
  CHECK(ideal_to_json(frobenius_power(m, 1)) == ideal_to_json(m));
  CHECK(ideal_to_json(frobenius_power(m, 2)) == nlohmann::json::parse(R"({"generators":[[2,0],[0,2]]})"));
  const auto xy = Ideal::monomial(RingSpec::polynomial(3), {{1, 1, 0}});
  CHECK(ideal_to_json(frobenius_power(xy, 4)) == nlohmann::json::parse(R"({"generators":[[4,4,0]]})"));
  const auto i = Ideal::monomial(RingSpec::polynomial(3), {{2, 0, 1}, {0, 3, 0}, {1, 1, 1}});
  for (std::uint64_t q : {1, 2, 3, 5})
    for (std::uint64_t q2 : {1, 2, 4, 7})
      CHECK(ideal_to_json(frobenius_power(frobenius_power(i, q), q2)) == ideal_to_json(frobenius_power(i, q * q2)));
  CHECK_THROWS_AS(frobenius_power(m, 0), Error);
}

TEST_CASE("graded_colength_piece examples") {
  const auto r2 = RingSpec::polynomial(2);
  CHECK(graded_colength_piece(r2, Ideal::maximal(r2), 2, 2) == 1);
  for (const auto& ring : {r2, quadric(), conic(), p1xp1(), xy_plane()})
    for (std::uint64_t q : {1, 2, 3, 8}) CHECK(graded_colength_piece(ring, Ideal::maximal(ring), q, 0) == 1);
  CHECK(graded_colength_piece(quadric(), Ideal::maximal(quadric()), 2, 2) == 5);
  CHECK(graded_colength_piece(p1xp1(), Ideal::maximal(p1xp1()), 2, 2) == 5);
}

TEST_CASE("quadric rewrite agrees with the Segre product identity") {
  const auto qr = quadric();
  const auto sg = p1xp1();
  const auto mq = Ideal::maximal(qr);
  const auto ms = Ideal::maximal(sg);
  for (std::uint64_t q = 1; q <= 16; ++q) {
    for (std::uint64_t m = 0; m <= 2 * q + 2; ++m) {
      const auto a = graded_colength_piece(qr, mq, q, m);
      CHECK(a == graded_colength_piece(sg, ms, q, m));
      CHECK(a == oracle::quadric_piece(q, m));
    }
    CHECK(total_colength(qr, mq, q) == oracle::total([&](std::uint64_t m) { return oracle::quadric_piece(q, m); }));
  }
  CHECK(total_colength(qr, mq, 2) == 10);
  CHECK(total_colength(qr, mq, 4) == 84);
  CHECK(total_colength(qr, mq, 8) == 680);
}

TEST_CASE("conic rewrite agrees with the Veronese model") {
  const auto c = conic();
  const auto m = Ideal::maximal(c);
  for (std::uint64_t q = 1; q <= 16; ++q)
    for (std::uint64_t d = 0; d <= 2 * q + 2; ++d) CHECK(graded_colength_piece(c, m, q, d) == oracle::conic_piece(q, d));
}

TEST_CASE("monomial pieces agree with enumeration") {
  struct Case {
    std::size_t n;
    std::vector<Exponent> relations;
    std::vector<Exponent> gens;
  };
  const std::vector<Case> cases{
      {3, {}, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}},
      {3, {{1, 1, 0}}, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}},
      {2, {}, {{2, 0}, {0, 1}}},
      {3, {}, {{2, 0, 0}, {1, 1, 0}, {0, 3, 0}, {0, 0, 2}, {1, 0, 1}}},
      {4, {{1, 0, 1, 0}, {1, 0, 0, 1}, {0, 1, 1, 0}, {0, 1, 0, 1}}, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}},
      {3, {{2, 0, 0}}, {{1, 0, 0}, {0, 2, 0}, {0, 1, 1}, {0, 0, 3}}},
  };
  for (const auto& c : cases) {
    const auto ring = c.relations.empty() ? RingSpec::polynomial(c.n) : RingSpec::monomial_quotient(c.n, c.relations);
    const auto ideal = Ideal::monomial(ring, c.gens);
    for (std::uint32_t q : {1u, 2u, 3u, 5u}) {
      std::uint64_t sum = 0;
      for (std::uint64_t m = 0; m <= 12 * q; ++m) {
        const auto v = oracle::monomial_piece(c.n, c.relations, c.gens, q, m);
        CHECK(graded_colength_piece(ring, ideal, q, m) == v);
        sum += v;
      }
      CHECK(total_colength(ring, ideal, q) == sum);
    }
  }
}

TEST_CASE("count_standard_monomials matches enumeration") {
  const std::vector<Exponent> gens{{3, 0, 0, 1}, {0, 2, 2, 0}, {1, 1, 1, 1}, {0, 0, 0, 5}};
  const auto h = count_standard_monomials(4, gens, 14);
  for (std::size_t m = 0; m <= 14; ++m) CHECK(h[m] == oracle::count_outside(4, m, gens));
}

TEST_CASE("total_colength") {
  const auto p2 = RingSpec::polynomial(3);
  CHECK(total_colength(p2, Ideal::maximal(p2), 4) == 64);
  CHECK(total_colength(xy_plane(), Ideal::maximal(xy_plane()), 8) == 120);
  for (const auto& ring : {p2, quadric(), conic(), p1xp1(), xy_plane()})
    CHECK(total_colength(ring, Ideal::maximal(ring), 1) == 1);
  for (std::uint64_t q = 1; q <= 12; ++q) {
    CHECK(total_colength(p2, Ideal::maximal(p2), q) == q * q * q);
    CHECK(total_colength(RingSpec::polynomial(4), Ideal::maximal(RingSpec::polynomial(4)), q) == q * q * q * q);
  }
}

TEST_CASE("nilpotency_n0") {
  const auto r2 = RingSpec::polynomial(2);
  CHECK(nilpotency_n0(r2, Ideal::maximal(r2)) == 1);
  CHECK(nilpotency_n0(r2, Ideal::monomial(r2, {{2, 0}, {0, 1}})) == 2);
  const auto xy = RingSpec::monomial_quotient(2, {{1, 1}});
  CHECK(nilpotency_n0(xy, Ideal::monomial(xy, {{1, 0}, {0, 2}})) == 2);
  CHECK(nilpotency_n0(quadric(), Ideal::maximal(quadric())) == 1);
  CHECK(nilpotency_n0(p1xp1(), Ideal::maximal(p1xp1())) == 1);
}

TEST_CASE("support bound holds for every computed piece") {
  const auto r3 = RingSpec::polynomial(3);
  const auto i = Ideal::monomial(r3, {{2, 0, 0}, {0, 3, 0}, {0, 0, 1}});
  for (std::uint64_t q : {1, 2, 4}) {
    const auto bound = support_bound(r3, i, q);
    const auto series = colength_series(r3, i, q);
    CHECK(series.size() <= bound);
    for (std::uint64_t m = series.size(); m < bound + 5; ++m) CHECK(graded_colength_piece(r3, i, q, m) == 0);
  }
}

TEST_CASE("infinite colength is rejected") {
  const auto r3 = RingSpec::polynomial(3);
  const auto xy = Ideal::monomial(r3, {{1, 1, 0}});
  CHECK_THROWS_AS(nilpotency_n0(r3, xy), Error);
  try {
    total_colength(r3, xy, 2);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotMPrimary);
  }
  const auto partial = Ideal::monomial(r3, {{1, 0, 0}, {0, 1, 0}});
  CHECK_THROWS_AS(graded_colength_piece(r3, partial, 2, 3), Error);
  // z is nilpotent mod nothing in k[x,y,z]/(xy) without a z-power.
  CHECK_THROWS_AS(nilpotency_n0(xy_plane(), Ideal::monomial(xy_plane(), {{1, 0, 0}, {0, 1, 0}})), Error);
}

TEST_CASE("minimal_primes") {
  using V = std::vector<std::vector<std::size_t>>;
  CHECK(minimal_primes(xy_plane()) == V{{0}, {1}});
  CHECK(minimal_primes(RingSpec::polynomial(2)) == V{{}});
  CHECK(minimal_primes(RingSpec::monomial_quotient(4, {{1, 0, 1, 0}, {1, 0, 0, 1}, {0, 1, 1, 0}, {0, 1, 0, 1}})) ==
        V{{0, 1}, {2, 3}});
  // Lower-dimensional components are dropped: (xy, xz) has components (x) and (y,z).
  CHECK(minimal_primes(RingSpec::monomial_quotient(3, {{1, 1, 0}, {1, 0, 1}})) == V{{0}});
  try {
    minimal_primes(RingSpec::monomial_quotient(2, {{2, 0}}));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotReduced);
    CHECK(std::string(e.what()).find("reduced") != std::string::npos);
  }
}

TEST_CASE("rewrite normal form") {
  const BinomialRewriteRing q{4, {1, 0, 0, 1}, {0, 1, 1, 0}};
  CHECK(rewrite_normal_form(q, {2, 0, 0, 3}) == Exponent{0, 2, 2, 1});
  CHECK(rewrite_normal_form(q, {0, 1, 1, 0}) == Exponent{0, 1, 1, 0});
  const BinomialRewriteRing c{3, {0, 2, 0}, {1, 0, 1}};
  CHECK(rewrite_normal_form(c, {0, 5, 0}) == Exponent{2, 1, 2});
}

TEST_CASE("ring and ideal JSON") {
  const auto text = R"({"type":"segre","left":{"type":"polynomial","vars":2},"right":{"type":"binomial_rewrite","vars":4,"lhs":[1,0,0,1],"rhs":[0,1,1,0]}})";
  const auto ring = ring_from_json(nlohmann::json::parse(text));
  CHECK(ring_to_json(ring) == nlohmann::json::parse(text));
  CHECK(ring == RingSpec::segre(RingSpec::polynomial(2), quadric()));
  const auto ideal = ideal_from_json(xy_plane(), nlohmann::json::parse(R"({"generators":[[1,0,0],[0,1,0],[0,0,1]]})"));
  CHECK(total_colength(xy_plane(), ideal, 8) == 120);
  CHECK_THROWS_AS(ring_from_json(nlohmann::json::parse(R"({"type":"torus"})")), Error);
  CHECK_THROWS_AS(ring_from_json(nlohmann::json::parse(R"({"type":"polynomial","vars":-1})")), Error);
  CHECK_THROWS_AS(ideal_from_json(xy_plane(), nlohmann::json::parse(R"({"generators":[[1,0]]})")), Error);
  CHECK_THROWS_AS(ideal_from_json(xy_plane(), nlohmann::json::parse(R"({"generators":[[0,0,0]]})")), Error);
  CHECK_THROWS_AS(parse_json_text("{nope"), Error);
  // Binomial rules must be homogeneous.
  CHECK_THROWS_AS(RingSpec::binomial_rewrite(3, {2, 0, 0}, {0, 1, 0}), Error);
}
