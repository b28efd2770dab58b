#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "heis/group.hpp"
#include "support.hpp"

using namespace heis;
using heis::testing::random_quadratic;
using heis::testing::random_rational;
using R = Rational;
using G = GroupPoint<Rational>;
using V = AlgebraVector<Rational>;

namespace {

G rp(std::mt19937_64& rng) { return {random_rational(rng), random_rational(rng), random_rational(rng)}; }
V rv(std::mt19937_64& rng) { return {random_rational(rng), random_rational(rng), random_rational(rng)}; }
R r(long a, long b = 1) { return {a, b}; }

}  // namespace

TEST_CASE("group law examples") {
    CHECK(mul(G{1, 0, 0}, G{0, 1, 0}) == G{1, 1, 1});
    CHECK(inv(G{1, 2, 3}) == G{-1, -2, -1});
    CHECK(commutator(G{1, 0, 0}, G{0, 1, 0}) == G{0, 0, 1});
    CHECK(exp(V{1, 1, 0}) == G{1, 1, r(1, 2)});
    CHECK(log(G{1, 1, 1}) == V{1, 1, r(1, 2)});
    CHECK(exp(V{0, 0, r(7, 3)}) == G{0, 0, r(7, 3)});
    CHECK(bracket(V{1, 0, 0}, V{0, 1, 0}) == V{0, 0, r(1, 2)});
    CHECK(mul(exp(V{1, 1, 0}), exp(V{0, 0, r(1, 2)})) == G{1, 1, 1});
    CHECK(mul(exp(V{1, 0, 0}), exp(V{0, 1, 0})) == G{1, 1, 1});
    CHECK(norm4(G{0, 0, 1}) == R(1));
    CHECK(norm4(G{1, 1, r(1, 2)}) == R(4));
    CHECK(norm4(G{1, 2, 3}) == R(29));
    CHECK(norm4(G{-1, -2, -1}) == R(29));
    CHECK(dilate(R(2), G{1, 1, 1}) == G{2, 2, 4});
    CHECK(norm4(dilate(R(3), G{1, 2, 3})) == R(81 * 29));
    CHECK(lift<Rational>(LatticePoint{1, 2, 3}) == G{1, 2, 3});
}

TEST_CASE("fibonacci flow at time one") {
    const QuadraticNumber l = phi();
    const AlgebraVector<QuadraticNumber> v{l - QuadraticNumber(1), QuadraticNumber(2) - l,
                                            l - QuadraticNumber(Rational(3, 2))};
    const auto g = flow(v, QuadraticNumber(1), identity<QuadraticNumber>());
    CHECK(g.x == phi_pow(-1));
    CHECK(g.y == phi_pow(-2));
    CHECK(g.z == phi_pow(-3));
}

TEST_CASE("canonicalize") {
    const auto c = canonicalize(G{r(3, 2), r(-1, 4), 2});
    CHECK(c.rep == G{r(1, 2), r(3, 4), r(1, 2)});
    CHECK(c.witness == LatticePoint{-1, 1, -3});
    CHECK(canonicalize(G{0, 0, 0}).rep == G{0, 0, 0});
    CHECK(coset_eq(G{0, 0, 0}, G{1, 1, 1}));
    CHECK_FALSE(coset_eq(G{0, 0, 0}, G{r(1, 2), 0, 0}));

    std::mt19937_64 rng(7);
    for (int i = 0; i < 500; ++i) {
        const G g = rp(rng);
        const auto c1 = canonicalize(g);
        REQUIRE(mul(g, lift<Rational>(c1.witness)) == c1.rep);
        for (const R* v : {&c1.rep.x, &c1.rep.y, &c1.rep.z}) {
            REQUIRE(*v >= R(0));
            REQUIRE(*v < R(1));
        }
        REQUIRE(canonicalize(c1.rep).rep == c1.rep);
        std::uniform_int_distribution<long long> k(-9, 9);
        const LatticePoint gamma{k(rng), k(rng), k(rng)};
        REQUIRE(canonicalize(mul(g, lift<Rational>(gamma))).rep == c1.rep);
    }
}

TEST_CASE("canonicalize over the quadratic field") {
    std::mt19937_64 rng(8);
    const auto ctx = QuadraticContext::golden();
    for (int i = 0; i < 200; ++i) {
        const GroupPoint<QuadraticNumber> g{random_quadratic(rng, ctx), random_quadratic(rng, ctx),
                                            random_quadratic(rng, ctx)};
        const auto c = canonicalize(g);
        REQUIRE(c.rep.x.floor() == 0);
        REQUIRE(c.rep.y.floor() == 0);
        REQUIRE(c.rep.z.floor() == 0);
        REQUIRE(mul(g, lift<QuadraticNumber>(c.witness)) == c.rep);
    }
}

TEST_CASE("group and algebra properties") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 1000; ++i) {
        const G a = rp(rng), b = rp(rng), c = rp(rng);
        REQUIRE(mul(mul(a, b), c) == mul(a, mul(b, c)));
        REQUIRE(mul(a, inv(a)) == identity<Rational>());
        REQUIRE(mul(inv(a), a) == identity<Rational>());
        REQUIRE(exp(log(a)) == a);
        REQUIRE(norm4(a) == norm4(inv(a)));
        const G central{0, 0, a.z};
        REQUIRE(commutator(central, b) == identity<Rational>());
        const V u = rv(rng), w = rv(rng);
        REQUIRE(log(exp(u)) == u);
        REQUIRE(mul(exp(u + w), exp(bracket(u, w))) == mul(exp(u), exp(w)));
        REQUIRE(bracket(u, u) == V{0, 0, 0});
        const R t = random_rational(rng, 10, 7), s = random_rational(rng, 10, 7);
        REQUIRE(flow(u, t, flow(u, s, a)) == flow(u, t + s, a));
        REQUIRE(flow(u, R(0), a) == a);
        REQUIRE(translate(u, a) == flow(u, R(1), a));
        REQUIRE(norm4(dilate(t, a)) == t * t * t * t * norm4(a));
        REQUIRE(dist(a, c) <= dist(a, b) + dist(b, c) + 1e-9);
    }
}

TEST_CASE("flows commute up to the central flow") {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 100; ++i) {
        const V v = rv(rng), vp = rv(rng);
        const R t = random_rational(rng, 10, 5), s = random_rational(rng, 10, 5);
        const G g = rp(rng);
        const R delta = v.beta * vp.alpha - vp.beta * v.alpha;
        const G lhs = flow(vp, s, flow(v, t, g));
        const G rhs = flow(v, t, flow(vp, s, central_flow(delta * t * s, g)));
        REQUIRE(lhs == rhs);
        REQUIRE(central_flow(s, flow(v, t, g)) == flow(v, t, central_flow(s, g)));
    }
}

TEST_CASE("parse group point") {
    const auto ctx = QuadraticContext::golden();
    const auto g = parse_group_point("[1/2, l, 2*l-1]", ctx);
    CHECK(g.x == QuadraticNumber(Rational(1, 2)));
    CHECK(g.y == phi());
    CHECK_THROWS_AS(parse_group_point("[1, 2]", ctx), ScalarError);
    CHECK_THROWS_AS(parse_group_point("1, 2, 3", ctx), ScalarError);
}
