#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "heis/factorization.hpp"
#include "support.hpp"

using namespace heis;
using heis::testing::random_rational;

namespace {

const QuadraticContext kGolden = QuadraticContext::golden();
const Q L = Q::generator(kGolden);
Q q(long a, long b) { return {Rational(a), Rational(b), kGolden}; }
Q r(long a, long b = 1) { return Q(Rational(a, b)); }

HeisenbergEndo tau_endo() { return factor(parse_substitution("a->ab;b->a")); }

GroupPoint<Rational> random_point(std::mt19937_64& rng) {
    return {random_rational(rng), random_rational(rng), random_rational(rng)};
}

GroupPoint<Q> random_qpoint(std::mt19937_64& rng, const QuadraticContext& ctx) {
    return {heis::testing::random_quadratic(rng, ctx, 5, 4), heis::testing::random_quadratic(rng, ctx, 5, 4),
            heis::testing::random_quadratic(rng, ctx, 5, 4)};
}

}  // namespace

TEST_CASE("fibonacci factorization") {
    const HeisenbergEndo t = tau_endo();
    CHECK(t == HeisenbergEndo{1, 1, 1, 0, 1, 0});
    CHECK(t.det() == -1);
    // z-row -z + x(x+1)/2 + xy, checked as a polynomial identity on a grid.
    for (long i = -4; i <= 4; ++i)
        for (long j = -4; j <= 4; ++j)
            for (long k = -2; k <= 2; ++k) {
                const Rational x(i, 3), y(j, 2), z(k, 5);
                const auto img = t.apply(GroupPoint<Rational>{x, y, z});
                REQUIRE(img.z == -z + x * (x + Rational(1)) / Rational(2) + x * y);
                REQUIRE(img.x == x + y);
                REQUIRE(img.y == x);
            }
    CHECK(t.apply(GroupPoint<Rational>{1, 1, 1}) == GroupPoint<Rational>{2, 1, 1});
    CHECK(factor(generator_substitution(5)).apply(LatticePoint{1, 0, 0}) == LatticePoint{1, 0, 1});
    CHECK(factor(generator_substitution(6)).apply(LatticePoint{0, 1, 0}) == LatticePoint{0, 1, -1});
    CHECK(factor(Endomorphism::identity()) == HeisenbergEndo::identity());
}

TEST_CASE("endomorphism algebra") {
    std::mt19937_64 rng(5);
    const HeisenbergEndo t = tau_endo();
    const HeisenbergEndo ti = invert(t);
    for (int i = 0; i < 100; ++i) {
        const auto g = random_point(rng), h = random_point(rng);
        REQUIRE(ti.apply(t.apply(g)) == g);
        REQUIRE(t.apply(mul(g, h)) == mul(t.apply(g), t.apply(h)));
    }
    CHECK(t.apply(identity<Rational>()) == identity<Rational>());
    CHECK_THROWS_AS(invert(HeisenbergEndo{2, 0, 0, 1, 0, 0}), FactorizationError);

    std::uniform_int_distribution<int> gen(1, 6), len(1, 6);
    for (int i = 0; i < 200; ++i) {
        Endomorphism s = Endomorphism::identity(), p = Endomorphism::identity();
        for (int k = len(rng); k > 0; --k) s = compose(s, generator_substitution(gen(rng)));
        for (int k = len(rng); k > 0; --k) p = compose(p, generator_substitution(gen(rng)));
        const HeisenbergEndo fs = factor(s), fp = factor(p);
        REQUIRE(factor(compose(s, p)) == compose(fs, fp));
        REQUIRE(fs.apply(LatticePoint{0, 0, 1}) == LatticePoint{0, 0, fs.det()});
        REQUIRE(compose(fs, invert(fs)) == HeisenbergEndo::identity());
    }
}

TEST_CASE("hypothesis (H)") {
    const auto fib = check_hypothesis_H(HeisenbergEndo{1, 1, 1, 0, 0, 0});
    CHECK(fib.passed);
    CHECK(*fib.context == kGolden);
    const auto para = check_hypothesis_H(HeisenbergEndo{1, 1, 0, 1, 0, 0});
    CHECK_FALSE(para.passed);
    const auto cat = check_hypothesis_H(HeisenbergEndo{2, 1, 1, 1, 0, 0});
    CHECK(cat.passed);
    CHECK(cat.context->trace() == 3);
    CHECK_FALSE(check_hypothesis_H(HeisenbergEndo{2, 0, 0, 1, 0, 0}).passed);
    CHECK_FALSE(check_hypothesis_H(HeisenbergEndo{0, -1, 1, 0, 0, 0}).passed);  // rotation
    const auto neg = check_hypothesis_H(HeisenbergEndo{-2, 1, 1, -1, 0, 0});
    CHECK(neg.passed);
    CHECK(neg.negative_dominant);
    CHECK_THROWS_AS(eigen_data(HeisenbergEndo{1, 1, 0, 1, 0, 0}), FactorizationError);
}

TEST_CASE("fibonacci eigendata") {
    const EigenData E = eigen_data(tau_endo());
    CHECK(E.lambda == L);
    CHECK(E.lambda_p == q(1, -1));
    CHECK(E.alpha == q(-1, 1));
    CHECK(E.beta == q(2, -1));
    CHECK(E.alpha_p == Q(1));
    CHECK(E.beta_p == -L);
    CHECK(E.delta == q(-3, 1));
    CHECK(E.t_a == Q(Rational(1, 5)) + Q(Rational(3, 5)) * L);
    CHECK(E.t_b == Q(Rational(2, 5)) + Q(Rational(1, 5)) * L);
    CHECK(E.s_a == (L - Q(3)) / Q(5));
    CHECK(E.s_b == (Q(2) * L - Q(1)) / Q(5));
    CHECK(E.t_a.to_double() == doctest::Approx(1.17082).epsilon(1e-5));
    CHECK(E.t_b.to_double() == doctest::Approx(0.72361).epsilon(1e-5));
    CHECK((E.t_a * E.alpha - Q(1)) * E.beta_p == E.t_a * E.beta * E.alpha_p);
    CHECK(E.gamma == L - r(3, 2));
    CHECK(E.gamma == phi_pow(-3) / Q(2));
    CHECK(section_admissible(E));
    // Contracting eigenvector scaled as (1/phi^2, -1/phi).
    const Q gp = gamma_for(E.endo, E.lambda_p, phi_pow(-2), -phi_pow(-1));
    CHECK(gp == r(1, 2));
    // Renormalization grid value at (n, m) = (0, 0).
    CHECK(gamma_for(E.endo, E.lambda, E.alpha, E.beta, Q(0), Q(0)) == r(3, 2) - L);
    const auto v = flow_of(E, Eigen::dominant);
    CHECK(v.gamma == L - r(3, 2));
}

TEST_CASE("eigenflow conjugation") {
    std::mt19937_64 rng(17);
    std::vector<HeisenbergEndo> endos{tau_endo()};
    for (int i = 0; i < 10; ++i) endos.push_back(random_hyperbolic(rng, 4).endo);
    endos.push_back(HeisenbergEndo{2, 1, 1, 1, 3, -2});
    endos.push_back(HeisenbergEndo{-2, 1, 1, -1, 1, 1});  // negative dominant eigenvalue
    for (const auto& l : endos) {
        CAPTURE(l.to_string());
        const EigenData E = eigen_data(l);
        CHECK(conjugation_holds(E, Eigen::dominant, Q(1), identity<Q>()));
        CHECK(conjugation_holds(E, Eigen::contracting, Q(1), identity<Q>()));
        for (int i = 0; i < 100; ++i) {
            const Q t(random_rational(rng, 20, 7));
            const auto g = random_qpoint(rng, E.context);
            REQUIRE(conjugation_holds(E, Eigen::dominant, t, g));
            REQUIRE(conjugation_holds(E, Eigen::contracting, t, g));
        }
        const auto g = random_qpoint(rng, E.context);
        CHECK(l.apply(flow(flow_of(E, Eigen::dominant), Q(0), g)) == l.apply(g));
    }
}

TEST_CASE("surface quadric") {
    const EigenData E = eigen_data(tau_endo());
    const SurfaceQuadric Qs = surface_quadric(E);
    CHECK(Qs(Q(0), Q(0)) == Q(0));
    CHECK(Qs.c == Q(0));
    CHECK(Qs(phi_pow(-1), phi_pow(-2)) == phi_pow(-3));
    CHECK(Qs(Q(1), -L) == r(1, 2));

    std::mt19937_64 rng(23);
    std::vector<HeisenbergEndo> endos{tau_endo()};
    for (int i = 0; i < 4; ++i) endos.push_back(random_hyperbolic(rng, 4).endo);
    for (const auto& l : endos) {
        const EigenData F = eigen_data(l);
        const SurfaceQuadric S = surface_quadric(F);
        for (int i = 0; i < 250; ++i) {
            const Q t(random_rational(rng, 20, 9)), s(random_rational(rng, 20, 9));
            const auto p = surface_point(F, t, s);
            REQUIRE(p.z == S(p.x, p.y));
            const auto ts = surface_params(F, p.x, p.y);
            REQUIRE(ts.t == t);
            REQUIRE(ts.s == s);
            REQUIRE(l.apply(p) == surface_point(F, F.lambda * t, F.lambda_p * s));
        }
    }
}

TEST_CASE("section scale invariance") {
    const EigenData E = eigen_data(tau_endo());
    for (long k : {2L, 3L, 7L}) {
        const Q c(Rational(k, 3));
        const Q ap = E.alpha_p * c, bp = E.beta_p * c;
        const Q d = E.alpha * bp - ap * E.beta;
        CHECK(d.sign() < 0);
        CHECK(bp / d == E.t_a);
        CHECK(-ap / d == E.t_b);
    }
}

TEST_CASE("tile membership") {
    const EigenData E = eigen_data(tau_endo());
    const SurfaceQuadric S = surface_quadric(E);
    CHECK(tile_membership(E, S, identity<Q>()) == Tile::domain_b);
    CHECK(tile_membership(E, S, surface_point(E, E.t_a / Q(2), E.s_a / Q(2))) == Tile::domain_a);
    CHECK(tile_membership(E, S, surface_point(E, E.t_a / Q(2), E.s_b / Q(2))) == Tile::domain_b);
    auto p = surface_point(E, E.t_a / Q(3), E.s_b / Q(3));
    p.z += Q(1);
    CHECK(tile_membership(E, S, p) == Tile::outside);
    CHECK(tile_membership(E, S, surface_point(E, E.t_a, Q(0))) == Tile::outside);
}

TEST_CASE("decomposition") {
    CHECK(decompose(HeisenbergEndo::identity()).empty());
    const auto s13 = factor(compose(generator_substitution(1), generator_substitution(3)));
    CHECK(recompose(decompose(s13)) == s13);
    CHECK(recompose(decompose(tau_endo())) == tau_endo());
    CHECK_THROWS_AS(decompose(HeisenbergEndo{2, 0, 0, 1, 0, 0}), FactorizationError);
    const HeisenbergEndo cat{2, 1, 1, 1, 5, -3};
    CHECK(recompose(decompose(cat)) == cat);

    std::mt19937_64 rng(29);
    std::uniform_int_distribution<int> idx(1, 6), pw(0, 1), len(0, 10);
    for (int i = 0; i < 200; ++i) {
        std::vector<SignedGenerator> word;
        for (int k = len(rng); k > 0; --k) word.push_back({idx(rng), pw(rng) ? 1 : -1});
        const HeisenbergEndo l = recompose(word);
        REQUIRE(recompose(decompose(l)) == l);
    }
}
