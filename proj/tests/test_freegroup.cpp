#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "heis/freegroup.hpp"

using namespace heis;

namespace {

Word w(const char* s) { return Word::parse(s); }

Word random_word(std::mt19937_64& rng, int max_len) {
    std::uniform_int_distribution<int> len(0, max_len), letter(0, 3);
    std::vector<Letter> ls;
    const int n = len(rng);
    for (int i = 0; i < n; ++i) ls.push_back(static_cast<Letter>(letter(rng)));
    return Word(std::move(ls));
}

Endomorphism random_automorphism(std::mt19937_64& rng, int factors) {
    std::uniform_int_distribution<int> gen(1, 6);
    Endomorphism e = Endomorphism::identity();
    for (int i = 0; i < factors; ++i) e = compose(e, generator_substitution(gen(rng)));
    return e;
}

}  // namespace

TEST_CASE("word operations") {
    CHECK(w("abB").to_string() == "a");
    CHECK(w("ab").inverse().to_string() == "BA");
    CHECK((w("ab") * w("BA")).empty());
    CHECK(w("aAbBaA").empty());
    CHECK(commutator(w("a"), w("b")).to_string() == "abAB");
    CHECK_THROWS_AS(Word::parse("abc"), ParseError);
}

TEST_CASE("substitution parsing") {
    const Endomorphism tau = parse_substitution("a->ab;b->a");
    CHECK(tau.image_a().to_string() == "ab");
    CHECK(tau.image_b().to_string() == "a");
    CHECK(parse_substitution(" b -> a ; a -> a b ") == tau);
    CHECK(parse_substitution("a->Bab;b->b").image_a().to_string() == "Bab");
    CHECK(parse_substitution(tau.to_string()) == tau);

    try {
        parse_substitution("a->aB;b->");
        FAIL("expected an error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("empty image") != std::string::npos);
        CHECK(e.position() == 9);
    }
    try {
        parse_substitution("a->ax;b->a");
        FAIL("expected an error");
    } catch (const ParseError& e) {
        CHECK(e.position() == 4);
    }
    CHECK_THROWS_AS(parse_substitution("a->ab"), ParseError);
    CHECK_THROWS_AS(parse_substitution("a->ab;a->b"), ParseError);
    CHECK_THROWS_AS(parse_substitution("a-ab;b->a"), ParseError);
    CHECK_THROWS_AS(parse_substitution("a->ab;b->a;"), ParseError);
    CHECK_THROWS_AS(parse_substitution("a->aA;b->a"), ParseError);  // reduces to empty
}

TEST_CASE("apply and compose") {
    const Endomorphism tau = parse_substitution("a->ab;b->a");
    CHECK(apply(tau, w("ab")).to_string() == "aba");
    CHECK(apply(generator_substitution(5), w("a")).to_string() == "Bab");
    CHECK(apply(tau, w("A")).to_string() == "BA");
    CHECK(tau.abelianization() == std::array<long long, 4>{1, 1, 1, 0});

    std::mt19937_64 rng(3);
    for (int i = 0; i < 300; ++i) {
        const Endomorphism s = random_automorphism(rng, 3), r = random_automorphism(rng, 3);
        const Word u = random_word(rng, 12), v = random_word(rng, 12);
        REQUIRE(apply(s, u * v) == apply(s, u) * apply(s, v));
        REQUIRE(apply(compose(s, r), u) == apply(s, apply(r, u)));
        REQUIRE(apply(s, commutator(u, v)) == commutator(apply(s, u), apply(s, v)));
        REQUIRE(Word(u.letters()) == u);
        REQUIRE((u * v).size() <= u.size() + v.size());
    }
}

TEST_CASE("fixed word") {
    const Endomorphism tau = parse_substitution("a->ab;b->a");
    CHECK(fixed_point_prefix(tau, 8).to_string() == "abaababa");
    CHECK(fixed_point_prefix(tau, 1).to_string() == "a");
    const Word u13 = fixed_point_prefix(tau, 13);
    CHECK(std::count(u13.letters().begin(), u13.letters().end(), Letter::a) == 8);
    CHECK_THROWS_AS(fixed_point_prefix(parse_substitution("a->b;b->ab"), 5), std::invalid_argument);
    CHECK_THROWS_AS(fixed_point_prefix(parse_substitution("a->aB;b->a"), 5), std::invalid_argument);
}

TEST_CASE("broken line") {
    const auto pts = broken_line(w("abaab"));
    CHECK(pts.size() == 6);
    CHECK(pts[5] == LatticePoint{3, 2, 4});
    CHECK(broken_line(w("a"))[1] == LatticePoint{1, 0, 0});
    CHECK(broken_line(w("ab"))[2] == LatticePoint{1, 1, 1});

    // Third coordinate against an explicit count of pairs (a before b).
    const Word u = fixed_point_prefix(parse_substitution("a->ab;b->a"), 3000);
    const auto line = broken_line(u);
    for (std::size_t k = 0; k <= u.size(); ++k) {
        long long a = 0, b = 0, c = 0;
        for (std::size_t j = 0; j < k; ++j) {
            if (u[j] == Letter::b) {
                ++b;
                c += a;  // every earlier a pairs with this b
            } else {
                ++a;
            }
        }
        REQUIRE(line[k] == LatticePoint{a, b, c});
    }
}
