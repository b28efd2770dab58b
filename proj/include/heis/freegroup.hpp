#pragma once

// Words in the free group on {a, b} (inverses written A, B), substitutions,
// fixed words and broken lines in the Heisenberg lattice.

#include "heis/group.hpp"

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace heis {

enum class Letter : std::uint8_t { a, b, A, B };

constexpr Letter inverse(Letter l) {
    switch (l) {
        case Letter::a: return Letter::A;
        case Letter::b: return Letter::B;
        case Letter::A: return Letter::a;
        case Letter::B: return Letter::b;
    }
    return l;
}

constexpr bool is_positive(Letter l) { return l == Letter::a || l == Letter::b; }
char to_char(Letter l);

class ParseError : public std::invalid_argument {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::invalid_argument(what + " at position " + std::to_string(position)), position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// Freely reduced word. Every constructor reduces.
class Word {
public:
    Word() = default;
    explicit Word(std::vector<Letter> letters);
    /// Letters a, b, A, B; throws ParseError on anything else.
    static Word parse(std::string_view text);

    const std::vector<Letter>& letters() const { return letters_; }
    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }
    bool is_positive() const;
    Letter operator[](std::size_t i) const { return letters_[i]; }

    Word inverse() const;
    std::string to_string() const;

    friend Word operator*(const Word& u, const Word& v);  // reduced concatenation
    friend bool operator==(const Word&, const Word&) = default;

private:
    std::vector<Letter> letters_;
};

/// Free reduction of an arbitrary letter sequence.
std::vector<Letter> reduce(const std::vector<Letter>& letters);
inline Word concat(const Word& u, const Word& v) { return u * v; }
inline Word invert(const Word& w) { return w.inverse(); }
/// u v u^-1 v^-1
Word commutator(const Word& u, const Word& v);

class Endomorphism {
public:
    Endomorphism(Word image_a, Word image_b, std::string name = {});

    static Endomorphism identity() { return {Word::parse("a"), Word::parse("b"), "id"}; }

    const Word& image_a() const { return image_a_; }
    const Word& image_b() const { return image_b_; }
    const std::string& name() const { return name_; }
    bool is_positive() const { return image_a_.is_positive() && image_b_.is_positive(); }

    const Word& image(Letter l) const { return l == Letter::a || l == Letter::A ? image_a_ : image_b_; }

    /// Integer abelianization: columns are the letter counts of the images.
    std::array<long long, 4> abelianization() const;

    /// "a->WORD;b->WORD"
    std::string to_string() const;

    friend bool operator==(const Endomorphism& x, const Endomorphism& y) {
        return x.image_a_ == y.image_a_ && x.image_b_ == y.image_b_;
    }

private:
    Word image_a_;
    Word image_b_;
    std::string name_;
};

/// Grammar: `a->WORD;b->WORD` (either order, whitespace ignored, both images
/// nonempty). Throws ParseError with the offending position.
Endomorphism parse_substitution(std::string_view text);

Word apply(const Endomorphism& sigma, const Word& w);
/// (sigma o rho)(w) = sigma(rho(w))
Endomorphism compose(const Endomorphism& sigma, const Endomorphism& rho);

/// Length-n prefix of the fixed word of a positive prolongable substitution.
Word fixed_point_prefix(const Endomorphism& sigma, std::size_t n);

/// Generator of the lattice for a letter: n_a = [1,0,0], n_b = [0,1,0].
LatticePoint letter_element(Letter l);
/// Product of the letter generators in order.
LatticePoint word_element(const Word& w);

/// Partial products x_0 = 1, x_{k+1} = x_k * n_{u_{k+1}} (size |w| + 1).
std::vector<LatticePoint> broken_line(const Word& w);

/// The generators sigma_1 .. sigma_6 used for decomposition (index 1..6).
Endomorphism generator_substitution(int index);

}  // namespace heis
