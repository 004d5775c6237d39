#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <set>
#include <algorithm>
#include <numeric>
#include <doctest.h>

#include "covering.hpp"

using namespace epsq;

TEST_CASE("extended power cardinalities") {
    // trivial 2-sheet cover over one point: p(X) = X^2
    Covering p2 = Covering::from_sizes({{"b", 2}});
    Covering px = p2.extended_power({"x1", "x2", "x3"});
    CHECK(px.total().size() == 9);

    Covering p = Covering::from_sizes({{"b1", 2}, {"b2", 3}});
    CHECK(p.extended_power({"x", "y"}).total().size() == 4 + 8);

    // empty X: only base points with empty fibers carry the empty function
    Covering withempty = Covering::from_sizes({{"b1", 0}, {"b2", 2}});
    Covering pe = withempty.extended_power({});
    CHECK(pe.total().size() == 1);
    CHECK(pe.total()[0] == "(b1|)");
}

TEST_CASE("frames") {
    Covering p2 = Covering::from_sizes({{"b", 2}});
    CHECK(p2.frames().size() == 2);

    Covering p = Covering::from_sizes({{"b1", 3}, {"b2", 3}});
    CHECK(p.frames().size() == 12);

    Covering uneven = Covering::from_sizes({{"b1", 2}, {"b2", 3}});
    CHECK_THROWS_AS(uneven.frames(), Error);

    // the symmetric group acts freely: every orbit on the frames has size n!
    Covering p3 = Covering::from_sizes({{"b1", 3}, {"b2", 3}});
    auto frames = p3.frames();
    for (const auto& fr : frames) {
        std::vector<size_t> perm{0, 1, 2};
        std::set<std::vector<size_t>> orbit;
        do {
            std::vector<size_t> permuted(3);
            for (size_t i = 0; i < 3; ++i) permuted[i] = fr.images[perm[i]];
            orbit.insert(permuted);
        } while (std::next_permutation(perm.begin(), perm.end()));
        CHECK(orbit.size() == 6);
    }

    // quotient check: (E(p) x X^n)/S_n = p(X) for |X| <= 3, n <= 3
    for (uint32_t n = 1; n <= 3; ++n) {
        Covering c = Covering::from_sizes({{"b1", n}, {"b2", n}});
        for (size_t nx = 0; nx <= 3; ++nx) {
            std::vector<std::string> X;
            for (size_t i = 0; i < nx; ++i) X.push_back("x" + std::to_string(i + 1));
            CHECK(frames_quotient_check(c, X));
        }
    }
}

TEST_CASE("derivative examples") {
    // trivial n-sheet over a point: derivative is the (n-1)-sheet over n points
    Covering p4 = Covering::from_sizes({{"b", 4}});
    Covering d4 = p4.derivative();
    CHECK(d4.base().size() == 4);
    CHECK(d4.fiber_sizes_sorted() == std::vector<uint32_t>{3, 3, 3, 3});

    // derivative of a single sheet: empty fiber over one point, poly x -> 1
    Covering p1 = Covering::from_sizes({{"b", 1}});
    Covering d1 = p1.derivative();
    CHECK(d1.base().size() == 1);
    CHECK(d1.poly() == std::vector<long long>{1});

    Covering p = Covering::from_sizes({{"b1", 2}, {"b2", 3}});
    Covering dp = p.derivative();
    CHECK(dp.fiber_sizes_sorted() == std::vector<uint32_t>{1, 1, 2, 2, 2});
    CHECK(dp.poly() == std::vector<long long>{0, 2, 3}); // 2x + 3x^2
}

TEST_CASE("sum product compose and polynomial shadows") {
    Covering p = Covering::from_sizes({{"a1", 2}, {"a2", 0}});
    Covering q = Covering::from_sizes({{"b1", 1}, {"b2", 2}});

    CHECK(p.sum(q).poly() == poly_add(p.poly(), q.poly()));
    CHECK(p.product(q).poly() == poly_mul(p.poly(), q.poly()));
    CHECK(p.compose(q).poly() == poly_compose(p.poly(), q.poly()));
    CHECK(p.derivative().poly() == poly_derivative(p.poly()));

    // evaluation agreement at small arguments, by enumeration
    for (long long m = 0; m <= 4; ++m) {
        std::vector<std::string> X;
        for (long long i = 0; i < m; ++i) X.push_back("x" + std::to_string(i + 1));
        CHECK(p.extended_power(X).total().size() == static_cast<size_t>(p.poly_eval(m)));
        CHECK(p.sum(q).poly_eval(m) == p.poly_eval(m) + q.poly_eval(m));
        CHECK(p.product(q).poly_eval(m) == p.poly_eval(m) * q.poly_eval(m));
        CHECK(p.compose(q).poly_eval(m) == poly_eval(p.poly(), q.poly_eval(m)));
    }

    // worked composite: p with fibers (2), q with fibers (1,2)
    Covering p2 = Covering::from_sizes({{"a", 2}});
    CHECK(p2.compose(q).base().size() == 4); // |q(1)|^2
    for (long long m = 0; m <= 3; ++m) {
        long long qx = q.poly_eval(m);
        CHECK(p2.compose(q).poly_eval(m) == qx * qx);
    }

    // unit laws
    Covering empty = Covering::from_sizes({});
    CHECK(p.sum(empty).iso(p));
    Covering point = Covering::from_sizes({{"pt", 0}});
    CHECK(p.product(point).iso(p));
}

TEST_CASE("iso examples") {
    Covering a = Covering::from_sizes({{"b1", 2}, {"b2", 3}});
    Covering b = Covering::from_sizes({{"c1", 3}, {"c2", 2}});
    CHECK(a.iso(b));
    Covering c = Covering::from_sizes({{"b1", 2}, {"b2", 2}});
    Covering d = Covering::from_sizes({{"b", 4}});
    CHECK(!c.iso(d));
}

TEST_CASE("calculus identities on seeded random pairs") {
    std::mt19937_64 rng(20240717);
    for (int trial = 0; trial < 40; ++trial) {
        Covering p = random_covering(rng, 3, 4, "a");
        Covering q = random_covering(rng, 3, 4, "b");
        CHECK(p.sum(q).derivative().iso(p.derivative().sum(q.derivative())));
        CHECK(p.product(q).derivative().iso(
            p.derivative().product(q).sum(p.product(q.derivative()))));
        CHECK(p.compose(q).derivative().iso(p.derivative().compose(q).product(q.derivative())));
    }
}

TEST_CASE("compose bijection element-wise") {
    Covering p = Covering::from_sizes({{"a1", 2}, {"a2", 1}});
    Covering q = Covering::from_sizes({{"b1", 1}, {"b2", 2}});
    for (size_t nx = 0; nx <= 3; ++nx) {
        std::vector<std::string> X;
        for (size_t i = 0; i < nx; ++i) X.push_back("x" + std::to_string(i + 1));
        CHECK(compose_bijection_check(p, q, X));
    }
    // with empty fibers on both sides
    Covering pe = Covering::from_sizes({{"a1", 2}, {"a2", 0}});
    Covering qe = Covering::from_sizes({{"b1", 0}, {"b2", 2}});
    CHECK(compose_bijection_check(pe, qe, {"x", "y"}));
}

TEST_CASE("functoriality") {
    Covering p = Covering::from_sizes({{"b1", 2}, {"b2", 1}});
    std::vector<std::string> X{"x1", "x2"};
    std::vector<std::string> Y{"y1", "y2", "y3"};
    std::map<std::string, std::string> f{{"x1", "y2"}, {"x2", "y3"}};
    CHECK(functoriality_check(p, X, Y, f));

    // p(g o f) = p(g) o p(f) on labels
    std::vector<std::string> Z{"z1", "z2"};
    std::map<std::string, std::string> g{{"y1", "z1"}, {"y2", "z1"}, {"y3", "z2"}};
    std::map<std::string, std::string> gf;
    for (const auto& [k, v] : f) gf[k] = g.at(v);
    auto one_step = extended_power_map(p, X, Z, gf);
    // two steps: reindex through Y
    auto first = extended_power_map(p, X, Y, f);
    Covering py = p.extended_power(Y);
    std::map<std::string, size_t> yindex;
    for (size_t i = 0; i < py.total().size(); ++i) yindex[py.total()[i]] = i;
    auto second_all = extended_power_map(p, Y, Z, g);
    std::vector<std::string> two_step;
    for (const auto& label : first) two_step.push_back(second_all[yindex.at(label)]);
    CHECK(one_step == two_step);
}

TEST_CASE("json round trip") {
    Covering p = Covering::parse_json(R"({"base":["b1","b2"],"fibers":{"b1":2,"b2":3}})");
    CHECK(p.base().size() == 2);
    CHECK(p.fiber_sizes() == std::vector<uint32_t>{2, 3});
    CHECK(p.json_text() == R"({"base":["b1","b2"],"fibers":{"b1":2,"b2":3}})");
    CHECK_THROWS_AS(Covering::parse_json("{"), Error);
    CHECK_THROWS_AS(Covering::parse_json(R"({"base":["b"],"fibers":{}})"), Error);
}
