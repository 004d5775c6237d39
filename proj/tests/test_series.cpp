#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "series.hpp"

using namespace epsq;

namespace {

std::vector<Variable> xy() { return {{"x", 1}, {"y", 1}}; }

MultiSeries parse_xy(const RingPtr& ring, const std::string& text) {
    return parse_series(ring, xy(), text);
}

// small random series generator for property tests
MultiSeries random_series(std::mt19937_64& rng, const RingPtr& ring,
                          const std::vector<Variable>& vars, int trunc) {
    MultiSeries s = MultiSeries::zero(ring, vars, trunc);
    size_t terms = 1 + rng() % 5;
    for (size_t t = 0; t < terms; ++t) {
        VarExp e(vars.size(), 0);
        for (auto& v : e) v = static_cast<uint32_t>(rng() % 3);
        GenExp g(ring->gen_count(), 0);
        for (auto& v : g) v = static_cast<uint32_t>(rng() % 2);
        s.insert_term(e, RingElem::monomial(ring, g));
    }
    return s;
}

} // namespace

TEST_CASE("make_ring basics") {
    auto f2 = CoeffRing::make({}, 10);
    CHECK(f2->gen_count() == 0);
    // only elements 0 and 1
    CHECK(RingElem::one(f2) + RingElem::one(f2) == RingElem::zero(f2));

    auto r = CoeffRing::make({{"c", -2}}, 8);
    RingElem c = RingElem::generator(r, "c");
    CHECK(c.pow(4).terms().size() == 1);  // degree -8 kept
    CHECK(c.pow(5).is_zero());            // degree -10 dropped

    // two-generator ring: degree arithmetic by direct monomial-weight summation
    auto r2 = CoeffRing::make({{"a21", -2}, {"a31", -3}}, 6);
    RingElem a21 = RingElem::generator(r2, "a21");
    RingElem prod = a21 * a21;
    REQUIRE(prod.terms().size() == 1);
    long weight = 0;
    for (size_t i = 0; i < prod.terms()[0].size(); ++i)
        weight += static_cast<long>(prod.terms()[0][i]) * r2->gen(i).degree;
    CHECK(weight == -4);
    CHECK(prod.degree() == -4);
    CHECK((a21 * RingElem::generator(r2, "a31") * a21).is_zero()); // degree -7 dropped

    CHECK_THROWS_AS(CoeffRing::make({{"a", 1}, {"a", 2}}, 4), Error);
}

TEST_CASE("add mul pow examples") {
    auto f2 = CoeffRing::f2(4);
    MultiSeries x = MultiSeries::variable(f2, xy(), "x");
    MultiSeries y = MultiSeries::variable(f2, xy(), "y");

    CHECK((x + x).is_zero());
    CHECK(((x + y) * (x + y)).equal_values(parse_xy(f2, "x^2 + y^2")));

    std::vector<Variable> tu{{"t", 1}, {"u", 1}};
    MultiSeries f = parse_series(f2, tu, "t^2 + t*u");
    CHECK(f.pow(2).equal_values(parse_series(f2, tu, "t^4 + t^2*u^2")));
}

TEST_CASE("substitute examples") {
    auto f2 = CoeffRing::f2(4);
    MultiSeries x = MultiSeries::variable(f2, xy(), "x");
    MultiSeries zero = MultiSeries::zero(f2, xy());

    MultiSeries s = parse_xy(f2, "x + y");
    CHECK(s.substitute({{"x", x}, {"y", zero}}).equal_values(x));

    std::vector<Variable> uv{{"u", 1}, {"v", 1}};
    MultiSeries img_x = parse_series(f2, uv, "u + v");
    MultiSeries img_y = parse_series(f2, uv, "u");
    MultiSeries xy_prod = parse_xy(f2, "x*y");
    CHECK(xy_prod.substitute({{"x", img_x}, {"y", img_y}})
              .equal_values(parse_series(f2, uv, "u^2 + u*v")));

    std::vector<Variable> xt{{"x", 1}, {"t", 1}};
    MultiSeries sq = parse_series(f2, xt, "x^2");
    MultiSeries image = parse_series(f2, xt, "x^2 + t*x");
    CHECK(sq.substitute({{"x", image}}).equal_values(parse_series(f2, xt, "x^4 + t^2*x^2")));

    // substitution of the identity assignment returns f
    MultiSeries f = parse_xy(f2, "x + y + x^2*y");
    MultiSeries y = MultiSeries::variable(f2, xy(), "y");
    CHECK(f.substitute({{"x", x}, {"y", y}}).equal_values(f));

    // nonzero constant term is rejected
    MultiSeries one = MultiSeries::constant(RingElem::one(f2), xy());
    CHECK_THROWS_AS(f.substitute({{"x", one}}), Error);
    CHECK_THROWS_AS(f.substitute({{"w", x}}), Error);
}

TEST_CASE("coefficient examples") {
    auto f2 = CoeffRing::f2(0);
    std::vector<Variable> tu{{"t", 1}, {"u", 1}};
    MultiSeries f = parse_series(f2, tu, "t^2 + t*u");
    CHECK(f.coefficient({1, 1}).is_one());
    CHECK(f.coefficient({0, 2}).is_zero());
    // binomial(3,2) mod 2 = 1
    CHECK(f.pow(3).coefficient({4, 2}).is_one());
    CHECK_THROWS_AS(f.coefficient({1, 1, 0}), Error);
}

TEST_CASE("frobenius_sqrt examples") {
    auto f2 = CoeffRing::f2(0);
    CHECK(parse_xy(f2, "x^4*y^2").frobenius_sqrt().equal_values(parse_xy(f2, "x^2*y")));
    CHECK(parse_xy(f2, "x^2 + y^2").frobenius_sqrt().equal_values(parse_xy(f2, "x + y")));
    CHECK_THROWS_AS(parse_xy(f2, "x^3").frobenius_sqrt(), Error);

    auto r = CoeffRing::make({{"c", -1}}, 16);
    MultiSeries s = parse_series(r, xy(), "c^2*x^2");
    CHECK(s.frobenius_sqrt().equal_values(parse_series(r, xy(), "c*x")));
    CHECK_THROWS_AS(parse_series(r, xy(), "c*x^2").frobenius_sqrt(), Error);
}

TEST_CASE("ring and series algebra properties") {
    auto ring = CoeffRing::make({{"a", -1}, {"b", -2}}, 24);
    std::vector<Variable> vars{{"x", 1}, {"y", 1}, {"t", 1}};
    std::mt19937_64 rng(20240901);
    for (int iter = 0; iter < 60; ++iter) {
        MultiSeries f = random_series(rng, ring, vars, 8);
        MultiSeries g = random_series(rng, ring, vars, 8);
        MultiSeries h = random_series(rng, ring, vars, 8);
        CHECK((f + g).equal_values(g + f));
        CHECK((f * g).equal_values(g * f));
        CHECK((f * (g + h)).equal_values(f * g + f * h));
        CHECK((f + f).is_zero());
        // squaring is additive in characteristic 2
        CHECK((f + g).pow(2).equal_values(f.pow(2) + g.pow(2)));
        // sqrt of a square returns the argument
        CHECK(f.pow(2).frobenius_sqrt().equal_values(f));
    }
}

TEST_CASE("substitution is associative") {
    auto f2 = CoeffRing::f2(0);
    std::vector<Variable> vars{{"x", 1}, {"y", 1}};
    std::mt19937_64 rng(7);
    for (int iter = 0; iter < 40; ++iter) {
        MultiSeries f = random_series(rng, f2, vars, 6);
        // sigma: x -> x + y^2, y -> x*y ; tau: x -> x^2, y -> x + y
        MultiSeries sx = parse_series(f2, vars, "x + y^2");
        MultiSeries sy = parse_series(f2, vars, "x*y");
        MultiSeries tx = parse_series(f2, vars, "x^2");
        MultiSeries ty = parse_series(f2, vars, "x + y");
        std::map<std::string, MultiSeries> sigma{{"x", sx}, {"y", sy}};
        std::map<std::string, MultiSeries> tau{{"x", tx}, {"y", ty}};
        MultiSeries lhs = f.substitute(sigma);
        lhs = lhs.truncate_to(6).substitute(tau).truncate_to(6);
        std::map<std::string, MultiSeries> composed{{"x", sx.substitute(tau).truncate_to(6)},
                                                    {"y", sy.substitute(tau).truncate_to(6)}};
        MultiSeries rhs = f.substitute(composed).truncate_to(6);
        CHECK(lhs.equal_values(rhs));
    }
}

TEST_CASE("truncation convention") {
    auto f2 = CoeffRing::f2(0);
    MultiSeries a = parse_xy(f2, "x + y").truncate_to(5);
    MultiSeries b = parse_xy(f2, "x^2").truncate_to(3);
    CHECK((a * b).truncation() == 3);
    CHECK((a + b).truncation() == 3);
    // exact operands stay exact
    MultiSeries c = parse_xy(f2, "x");
    CHECK((c * c).exact());
}

TEST_CASE("parse and render") {
    auto ring = CoeffRing::make({{"a21", -2}}, 16);
    MultiSeries s = parse_series(ring, xy(), " x + y+ a21*x^2*y ");
    CHECK(s.terms().size() == 3);
    CHECK(s.to_text() == "x + y + a21*x^2*y");
    CHECK(parse_series(ring, xy(), s.to_text()).equal_values(s));

    CHECK(parse_series(ring, xy(), "0").is_zero());
    CHECK(parse_series(ring, xy(), "1 + x + x").equal_values(
        MultiSeries::constant(RingElem::one(ring), xy())));
    CHECK_THROWS_AS(parse_series(ring, xy(), "x + unknown"), Error);
    CHECK_THROWS_AS(parse_series(ring, xy(), "x ++ y"), Error);
    CHECK_THROWS_AS(parse_series(ring, xy(), ""), Error);

    auto ids = scan_identifiers("x + y + a21*x^2*y");
    CHECK(ids == std::vector<std::string>{"x", "y", "a21"});
}

TEST_CASE("canonical json") {
    auto ring = CoeffRing::make({{"g", -2}}, 16);
    MultiSeries s = parse_series(ring, xy(), "x + y + g*x^2*y");
    CHECK(s.json_text() ==
          R"({"terms":[{"coeff":[{"gexp":[0]}],"exp":[0,1]},{"coeff":[{"gexp":[0]}],"exp":[1,0]},{"coeff":[{"gexp":[1]}],"exp":[2,1]}],"vars":[{"deg":1,"name":"x"},{"deg":1,"name":"y"}]})");
}

TEST_CASE("ring identity") {
    // structurally equal rings interoperate; different rings are rejected
    auto r1 = CoeffRing::make({{"g", -2}}, 16);
    auto r2 = CoeffRing::make({{"g", -2}}, 16);
    MultiSeries a = parse_series(r1, xy(), "g*x");
    MultiSeries b = parse_series(r2, xy(), "g*x");
    CHECK((a + b).is_zero());

    auto other = CoeffRing::make({{"h", -2}}, 16);
    MultiSeries c = parse_series(other, xy(), "h*x");
    CHECK_THROWS_AS(a + c, Error);
    CHECK_THROWS_AS(a * c, Error);
    try {
        a* c;
    } catch (const Error& e) {
        CHECK(e.code() == ErrCode::RingMismatch);
    }
}

TEST_CASE("homogeneous degree bookkeeping") {
    auto ring = CoeffRing::make({{"g", -2}}, 16);
    MultiSeries s = parse_series(ring, xy(), "x + y + g*x^2*y");
    CHECK(s.homogeneous_degree() == 1);
    MultiSeries t = parse_series(ring, xy(), "x + x^2");
    CHECK(!t.homogeneous_degree().has_value());
    CHECK(RingElem::generator(ring, "g").degree() == -2);
}
