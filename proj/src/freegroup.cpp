#include "heis/freegroup.hpp"

#include <cctype>

namespace heis {

char to_char(Letter l) {
    switch (l) {
        case Letter::a: return 'a';
        case Letter::b: return 'b';
        case Letter::A: return 'A';
        case Letter::B: return 'B';
    }
    return '?';
}

namespace {

bool letter_from_char(char c, Letter& out) {
    switch (c) {
        case 'a': out = Letter::a; return true;
        case 'b': out = Letter::b; return true;
        case 'A': out = Letter::A; return true;
        case 'B': out = Letter::B; return true;
        default: return false;
    }
}

// Parses letters of text[begin, end) skipping whitespace; `offset` shifts
// reported positions into the caller's string.
Word parse_letters(std::string_view text, std::size_t offset) {
    std::vector<Letter> letters;
    letters.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        Letter l;
        if (!letter_from_char(c, l)) throw ParseError(std::string("unexpected character '") + c + "'", offset + i);
        letters.push_back(l);
    }
    return Word(std::move(letters));
}

}  // namespace

std::vector<Letter> reduce(const std::vector<Letter>& letters) {
    std::vector<Letter> out;
    out.reserve(letters.size());
    for (Letter l : letters) {
        if (!out.empty() && out.back() == inverse(l))
            out.pop_back();
        else
            out.push_back(l);
    }
    return out;
}

Word::Word(std::vector<Letter> letters) : letters_(reduce(letters)) {}

Word Word::parse(std::string_view text) { return parse_letters(text, 0); }

bool Word::is_positive() const {
    for (Letter l : letters_)
        if (!heis::is_positive(l)) return false;
    return true;
}

Word Word::inverse() const {
    Word w;
    w.letters_.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.letters_.push_back(heis::inverse(*it));
    return w;
}

std::string Word::to_string() const {
    std::string s;
    s.reserve(letters_.size());
    for (Letter l : letters_) s.push_back(to_char(l));
    return s;
}

Word operator*(const Word& u, const Word& v) {
    // Cancel across the junction only; both halves are already reduced.
    std::size_t k = 0;
    while (k < u.size() && k < v.size() && u.letters_[u.size() - 1 - k] == inverse(v.letters_[k])) ++k;
    Word w;
    w.letters_.reserve(u.size() + v.size() - 2 * k);
    w.letters_.insert(w.letters_.end(), u.letters_.begin(), u.letters_.end() - static_cast<std::ptrdiff_t>(k));
    w.letters_.insert(w.letters_.end(), v.letters_.begin() + static_cast<std::ptrdiff_t>(k), v.letters_.end());
    return w;
}

Word commutator(const Word& u, const Word& v) { return u * v * u.inverse() * v.inverse(); }

// ----------------------------------------------------------- Endomorphism

Endomorphism::Endomorphism(Word image_a, Word image_b, std::string name)
    : image_a_(std::move(image_a)), image_b_(std::move(image_b)), name_(std::move(name)) {}

std::array<long long, 4> Endomorphism::abelianization() const {
    auto counts = [](const Word& w) {
        long long ca = 0, cb = 0;
        for (Letter l : w.letters()) {
            switch (l) {
                case Letter::a: ++ca; break;
                case Letter::A: --ca; break;
                case Letter::b: ++cb; break;
                case Letter::B: --cb; break;
            }
        }
        return std::pair{ca, cb};
    };
    const auto [aa, ba] = counts(image_a_);
    const auto [ab, bb] = counts(image_b_);
    return {aa, ab, ba, bb};
}

std::string Endomorphism::to_string() const { return "a->" + image_a_.to_string() + ";b->" + image_b_.to_string(); }

Endomorphism parse_substitution(std::string_view text) {
    std::optional<Word> img[2];
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    for (int rule = 0; rule < 2; ++rule) {
        skip_ws();
        if (pos >= text.size()) throw ParseError("expected rule 'a->...' or 'b->...'", pos);
        const char head = text[pos];
        if (head != 'a' && head != 'b') throw ParseError(std::string("expected 'a' or 'b', found '") + head + "'", pos);
        const int idx = head == 'a' ? 0 : 1;
        if (img[idx]) throw ParseError(std::string("duplicate rule for '") + head + "'", pos);
        ++pos;
        skip_ws();
        if (text.substr(pos, 2) != "->") throw ParseError("expected '->'", pos);
        pos += 2;
        const std::size_t start = pos;
        while (pos < text.size() && text[pos] != ';') ++pos;
        Word w = parse_letters(text.substr(start, pos - start), start);
        if (w.empty()) throw ParseError(std::string("empty image for '") + head + "'", start);
        img[idx] = std::move(w);
        if (rule == 0) {
            if (pos >= text.size()) throw ParseError("expected ';' and a second rule", pos);
            ++pos;
        }
    }
    skip_ws();
    if (pos != text.size()) throw ParseError("trailing characters", pos);
    return Endomorphism(*img[0], *img[1]);
}

Word apply(const Endomorphism& sigma, const Word& w) {
    const Word inv_a = sigma.image_a().inverse();
    const Word inv_b = sigma.image_b().inverse();
    std::vector<Letter> out;
    for (Letter l : w.letters()) {
        const Word* img = nullptr;
        switch (l) {
            case Letter::a: img = &sigma.image_a(); break;
            case Letter::b: img = &sigma.image_b(); break;
            case Letter::A: img = &inv_a; break;
            case Letter::B: img = &inv_b; break;
        }
        out.insert(out.end(), img->letters().begin(), img->letters().end());
    }
    return Word(std::move(out));
}

Endomorphism compose(const Endomorphism& sigma, const Endomorphism& rho) {
    std::string name;
    if (!sigma.name().empty() && !rho.name().empty()) name = sigma.name() + "*" + rho.name();
    return Endomorphism(apply(sigma, rho.image_a()), apply(sigma, rho.image_b()), std::move(name));
}

Word fixed_point_prefix(const Endomorphism& sigma, std::size_t n) {
    const Word& ia = sigma.image_a();
    if (!sigma.is_positive()) throw std::invalid_argument("fixed word needs a positive substitution");
    if (ia.size() < 2 || ia[0] != Letter::a)
        throw std::invalid_argument("fixed word needs image of a to start with a and have length >= 2");
    Word w = Word::parse("a");
    while (w.size() < n) w = apply(sigma, w);
    return Word(std::vector<Letter>(w.letters().begin(), w.letters().begin() + static_cast<std::ptrdiff_t>(n)));
}

LatticePoint letter_element(Letter l) {
    switch (l) {
        case Letter::a: return {1, 0, 0};
        case Letter::b: return {0, 1, 0};
        case Letter::A: return inv(LatticePoint{1, 0, 0});
        case Letter::B: return inv(LatticePoint{0, 1, 0});
    }
    return {};
}

LatticePoint word_element(const Word& w) {
    LatticePoint g;
    for (Letter l : w.letters()) g = mul(g, letter_element(l));
    return g;
}

std::vector<LatticePoint> broken_line(const Word& w) {
    std::vector<LatticePoint> pts;
    pts.reserve(w.size() + 1);
    pts.push_back({});
    for (Letter l : w.letters()) pts.push_back(mul(pts.back(), letter_element(l)));
    return pts;
}

Endomorphism generator_substitution(int index) {
    static const char* const specs[6] = {"a->ab;b->b", "a->ab;b->a", "a->a;b->ba",
                                         "a->b;b->ab", "a->Bab;b->b", "a->a;b->Aba"};
    if (index < 1 || index > 6) throw std::out_of_range("generator index must be in 1..6");
    Endomorphism e = parse_substitution(specs[index - 1]);
    return Endomorphism(e.image_a(), e.image_b(), "s" + std::to_string(index));
}

}  // namespace heis
