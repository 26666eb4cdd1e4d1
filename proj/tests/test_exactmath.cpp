#include <doctest.h>

#include <random>

#include "hkd/error.hpp"
#include "hkd/piecewise.hpp"
#include "oracles.hpp"

using namespace hkd;

namespace {

Rational R(const char* s) { return parse_rational(s); }

PiecewisePoly tent() { return PiecewisePoly({R("0"), R("1"), R("2")}, {Poly{R("0"), R("1")}, Poly{R("2"), R("-1")}}); }

}  // namespace

TEST_CASE("rational parsing and printing") {
  CHECK(to_string(R("6/4")) == "3/2");
  CHECK(to_string(R("-6/3")) == "-2");
  CHECK(to_string(R("+5")) == "5");
  CHECK(to_string(R("0/7")) == "0");
  CHECK_THROWS_AS(R("1/0"), Error);
  CHECK_THROWS_AS(R("1.5"), Error);
  CHECK_THROWS_AS(R(""), Error);
  CHECK_THROWS_AS(R("1/-2"), Error);
  CHECK(floor(R("-1/2")) == -1);
  CHECK(floor(R("7/2")) == 3);
  CHECK(to_decimal(R("1/3"), 20) == "0.33333333333333333333");
  CHECK(to_decimal(R("3/2"), 20) == "1.5");
  CHECK(from_u64(UINT64_MAX) == Rational(Integer("18446744073709551615")));
}

TEST_CASE("poly arithmetic") {
  const Poly p{R("1"), R("2")};   // 1 + 2x
  const Poly q{R("0"), R("0"), R("3")};  // 3x^2
  CHECK((p * q).coefficients() == std::vector<Rational>{R("0"), R("0"), R("3"), R("6")});
  CHECK((p - p).is_zero());
  CHECK(Poly{R("1"), R("0"), R("0")}.degree() == 0);
  CHECK(Poly::x_minus(R("2")).pow(2)(R("5")) == 9);
  CHECK(q.integrate(R("0"), R("1")) == 1);
  CHECK(Poly().degree() == -1);
}

TEST_CASE("pp_eval") {
  const auto f = tent();
  CHECK(pp_eval(f, R("1/2")) == R("1/2"));
  CHECK(pp_eval(f, R("2")) == 0);  // half-open: right end is outside
  CHECK(pp_eval(f, R("3/2")) == R("1/2"));
  CHECK(pp_eval(f, R("-1")) == 0);
  CHECK(pp_eval(f, R("0")) == 0);
  CHECK(pp_eval(f, R("1")) == 1);
  CHECK(pp_eval(PiecewisePoly(), R("1")) == 0);
}

TEST_CASE("pp_add") {
  const auto f = tent();
  CHECK(pp_add(f, PiecewisePoly()) == f);
  const PiecewisePoly doubled({R("0"), R("1"), R("2")}, {Poly{R("0"), R("2")}, Poly{R("4"), R("-2")}});
  CHECK(pp_add(f, f) == doubled);
  CHECK(pp_add(f, pp_scale(f, R("-1"))).is_zero());
  CHECK(pp_add(f, pp_scale(f, R("-1"))).breakpoints().empty());
}

TEST_CASE("pp_mul") {
  const auto f = tent();
  const auto sq = pp_mul(f, f);
  CHECK(sq.piece_at(R("1/2")) == Poly{R("0"), R("0"), R("1")});
  CHECK(sq.piece_at(R("3/2")) == Poly{R("4"), R("-4"), R("1")});
  CHECK(pp_mul(f, PiecewisePoly()).is_zero());
  // Support is the intersection of supports.
  const auto g = PiecewisePoly::on_interval(R("3/2"), R("5"), Poly::constant(R("1")));
  const auto fg = pp_mul(f, g);
  CHECK(*fg.support_begin() == R("3/2"));
  CHECK(*fg.support_end() == R("2"));
}

TEST_CASE("pp_scale") {
  const auto f = tent();
  CHECK(pp_scale(f, R("1")) == f);
  CHECK(pp_scale(f, R("0")).is_zero());
  CHECK(pp_scale(f, R("2")) == PiecewisePoly({R("0"), R("1"), R("2")}, {Poly{R("0"), R("2")}, Poly{R("4"), R("-2")}}));
}

TEST_CASE("pp_integrate") {
  CHECK(pp_integrate(tent()) == 1);
  CHECK(pp_integrate(PiecewisePoly()) == 0);
  const PiecewisePoly quadric({R("0"), R("1"), R("2")}, {Poly{R("0"), R("0"), R("1")}, Poly{R("-4"), R("8"), R("-3")}});
  CHECK(pp_integrate(quadric) == R("4/3"));
}

TEST_CASE("pp_sup_diff_sampled") {
  const auto f = tent();
  CHECK(pp_sup_diff_sampled(f, f, 7) == 0);
  CHECK(pp_sup_diff_sampled(f, PiecewisePoly(), 2) == 1);
  CHECK(pp_sup_diff_sampled(f, pp_scale(f, R("2")), 4) == 1);
  CHECK(pp_sup_diff_sampled(PiecewisePoly(), PiecewisePoly(), 3) == 0);
  CHECK_THROWS_AS(pp_sup_diff_sampled(f, f, 0), Error);
  // Breakpoints are always sampled even when off-grid.
  const auto spike = PiecewisePoly::on_interval(R("1/3"), R("2/5"), Poly::constant(R("5")));
  CHECK(pp_sup_diff_sampled(spike, PiecewisePoly(), 1) == 5);
}

TEST_CASE("construction is validated and canonical") {
  CHECK_THROWS_AS(PiecewisePoly({R("0"), R("0")}, {Poly()}), Error);
  CHECK_THROWS_AS(PiecewisePoly({R("0"), R("1")}, {}), Error);
  // Equal neighbours merge, zero ends trim, interior zero gaps survive.
  const PiecewisePoly f({R("-1"), R("0"), R("1"), R("2"), R("3"), R("4")},
                        {Poly(), Poly::constant(R("1")), Poly::constant(R("1")), Poly(), Poly::constant(R("2"))});
  CHECK(f.breakpoints() == std::vector<Rational>{R("0"), R("2"), R("3"), R("4")});
  CHECK(f.pieces().size() == 3);
  CHECK(f.pieces()[1].is_zero());
}

TEST_CASE("pointwise properties over random inputs") {
  std::mt19937_64 rng(20241015);
  for (int trial = 0; trial < 200; ++trial) {
    const auto f = oracle::random_piecewise(rng);
    const auto g = oracle::random_piecewise(rng);
    const auto c = oracle::random_rational(rng);
    const auto sum = pp_add(f, g);
    const auto prod = pp_mul(f, g);
    for (int k = 0; k < 10; ++k) {
      const auto x = oracle::random_rational(rng, 14, 4);
      CHECK(pp_eval(sum, x) == pp_eval(f, x) + pp_eval(g, x));
      CHECK(pp_eval(prod, x) == pp_eval(f, x) * pp_eval(g, x));
    }
    // Every breakpoint too, where half-open conventions matter.
    for (const auto& x : sum.breakpoints()) CHECK(pp_eval(sum, x) == pp_eval(f, x) + pp_eval(g, x));
    CHECK(pp_integrate(pp_add(f, pp_scale(g, c))) == pp_integrate(f) + c * pp_integrate(g));
    // Canonicalization is idempotent.
    CHECK(PiecewisePoly(f.breakpoints(), f.pieces()) == f);
  }
}

TEST_CASE("canonicalization preserves evaluation") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const auto f = oracle::random_piecewise(rng);
    if (f.is_zero()) continue;
    // Split every piece at its midpoint and pad with zero pieces.
    std::vector<Rational> breaks{*f.support_begin() - 1};
    std::vector<Poly> pieces{Poly()};
    for (std::size_t j = 0; j < f.pieces().size(); ++j) {
      const auto& b = f.breakpoints();
      breaks.push_back(b[j]);
      pieces.push_back(f.pieces()[j]);
      breaks.push_back((b[j] + b[j + 1]) / 2);
      pieces.push_back(f.pieces()[j]);
    }
    breaks.push_back(*f.support_end());
    const PiecewisePoly split(breaks, pieces);
    CHECK(split == f);
    for (int k = 0; k < 10; ++k) {
      const auto x = oracle::random_rational(rng, 14, 4);
      CHECK(pp_eval(split, x) == pp_eval(f, x));
    }
  }
}

TEST_CASE("piecewise JSON") {
  const auto f = tent();
  CHECK(pp_to_json(f) == R"({"breakpoints":["0","1","2"],"pieces":[["0","1"],["2","-1"]]})");
  CHECK(pp_to_json(PiecewisePoly()) == R"({"breakpoints":[],"pieces":[]})");
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = oracle::random_piecewise(rng);
    const auto text = pp_to_json(g);
    CHECK(pp_from_json(text) == g);
    CHECK(pp_to_json(pp_from_json(text)) == text);
  }
  // Integers are accepted in place of strings.
  CHECK(pp_from_json(R"({"breakpoints":[0,1,2],"pieces":[[0,1],["2","-1"]]})") == f);
  CHECK_THROWS_AS(pp_from_json("{"), Error);
  CHECK_THROWS_AS(pp_from_json(R"({"breakpoints":["0"]})"), Error);
  CHECK_THROWS_AS(pp_from_json(R"({"breakpoints":["1","0"],"pieces":[["1"]]})"), Error);
  CHECK_THROWS_AS(pp_from_json(R"({"breakpoints":["0","1"],"pieces":[["x"]]})"), Error);
}

TEST_CASE("step and interpolant builders") {
  const std::vector<Rational> v{R("1"), R("2"), R("1"), R("0")};
  const auto step = pp_step(v, 2);
  CHECK(pp_eval(step, R("3/4")) == 2);
  CHECK(pp_integrate(step) == 2);
  const auto lin = pp_linear_interpolant(v, 2);
  CHECK(pp_eval(lin, R("1/4")) == R("3/2"));
  CHECK(pp_eval(lin, R("3/2")) == 0);
  CHECK(*lin.support_end() == R("3/2"));
}

TEST_CASE("sample CSV") {
  const auto csv = pp_sample_csv(tent(), 2);
  CHECK(csv ==
        "x_rational,f_rational,f_decimal20\n0,0,0\n1/2,1/2,0.5\n1,1,1\n3/2,1/2,0.5\n2,0,0\n");
}
