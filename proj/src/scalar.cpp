#include "heis/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

namespace heis {

// ---------------------------------------------------------------- Rational

Rational::Rational(const Integer& num, const Integer& den) {
    if (den == 0) throw ScalarError("rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw ScalarError("division by zero");
    v_ /= o.v_;
    return *this;
}

Integer Rational::floor() const {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return q;
}

std::string Rational::to_string() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

Integer parse_integer(std::string_view s, std::string_view whole) {
    s = trim(s);
    bool neg = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        neg = s.front() == '-';
        s.remove_prefix(1);
    }
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw ScalarError("malformed integer in '" + std::string(whole) + "'");
    Integer v(std::string(s), 10);
    return neg ? Integer(-v) : v;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
    const auto t = trim(text);
    const auto slash = t.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(t, text));
    const Integer num = parse_integer(t.substr(0, slash), text);
    const Integer den = parse_integer(t.substr(slash + 1), text);
    if (den == 0) throw ScalarError("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

// -------------------------------------------------------- QuadraticContext

QuadraticContext::QuadraticContext(long long trace, long long det) : trace_(trace), det_(det) {
    disc_ = Integer(static_cast<long>(trace)) * static_cast<long>(trace) - Integer(4) * static_cast<long>(det);
    if (disc_ <= 0) throw ScalarError("discriminant must be positive for context " + to_string());
    if (mpz_perfect_square_p(disc_.get_mpz_t()))
        throw ScalarError("discriminant is a perfect square for context " + to_string());
}

std::pair<Rational, Rational> QuadraticContext::initial_bracket() const {
    Integer half;
    mpz_fdiv_q_ui(half.get_mpz_t(), Integer(static_cast<long>(trace_)).get_mpz_t(), 2);
    Integer root;
    mpz_sqrt(root.get_mpz_t(), disc_.get_mpz_t());
    root += 1;  // ceil(sqrt(disc)) since disc is not a square
    return {Rational(half), Rational(Integer(half + root))};
}

std::string QuadraticContext::to_string() const {
    return std::to_string(trace_) + "," + std::to_string(det_);
}

QuadraticContext QuadraticContext::parse(std::string_view text) {
    const auto comma = text.find(',');
    if (comma == std::string_view::npos) throw ScalarError("context must be 'T,D': '" + std::string(text) + "'");
    const Integer t = parse_integer(text.substr(0, comma), text);
    const Integer d = parse_integer(text.substr(comma + 1), text);
    if (!t.fits_slong_p() || !d.fits_slong_p()) throw ScalarError("context coefficients out of range");
    return {t.get_si(), d.get_si()};
}

namespace {

// f(X) = X^2 - T X + D
Rational min_poly(const QuadraticContext& ctx, const Rational& x) {
    return x * x - Rational(static_cast<long>(ctx.trace())) * x + Rational(static_cast<long>(ctx.det()));
}

constexpr int kCachedBits = 256;

// Bracket of width <= 2^-bits around the distinguished root, by bisection
// against the minimal polynomial (f < 0 strictly inside the root pair).
std::pair<Rational, Rational> refine_bracket(const QuadraticContext& ctx, int bits) {
    auto [lo, hi] = ctx.initial_bracket();
    Integer scale = 1;
    scale <<= bits;
    const Rational target(Integer(1), scale);
    const Rational two(2);
    while (hi - lo > target) {
        const Rational mid = (lo + hi) / two;
        if (min_poly(ctx, mid).sign() < 0)
            lo = mid;
        else
            hi = mid;
    }
    return {lo, hi};
}

const std::pair<Rational, Rational>& cached_bracket(const QuadraticContext& ctx) {
    static std::mutex mu;
    static std::map<std::pair<long long, long long>, std::pair<Rational, Rational>> cache;
    std::lock_guard<std::mutex> lock(mu);
    const auto key = std::make_pair(ctx.trace(), ctx.det());
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, refine_bracket(ctx, kCachedBits)).first;
    return it->second;
}

}  // namespace

// ------------------------------------------------------- QuadraticNumber

QuadraticNumber::QuadraticNumber(Rational a, Rational b, QuadraticContext ctx)
    : a_(std::move(a)), b_(std::move(b)), ctx_(std::move(ctx)) {}

std::optional<QuadraticContext> QuadraticNumber::merge(const std::optional<QuadraticContext>& x,
                                                       const std::optional<QuadraticContext>& y) {
    if (!x) return y;
    if (!y) return x;
    if (!(*x == *y)) throw ScalarError("quadratic context mismatch: " + x->to_string() + " vs " + y->to_string());
    return x;
}

QuadraticNumber QuadraticNumber::operator-() const {
    QuadraticNumber r = *this;
    r.a_ = -a_;
    r.b_ = -b_;
    return r;
}

QuadraticNumber& QuadraticNumber::operator+=(const QuadraticNumber& o) {
    ctx_ = merge(ctx_, o.ctx_);
    a_ += o.a_;
    b_ += o.b_;
    return *this;
}

QuadraticNumber& QuadraticNumber::operator-=(const QuadraticNumber& o) {
    ctx_ = merge(ctx_, o.ctx_);
    a_ -= o.a_;
    b_ -= o.b_;
    return *this;
}

QuadraticNumber& QuadraticNumber::operator*=(const QuadraticNumber& o) {
    ctx_ = merge(ctx_, o.ctx_);
    if (b_.is_zero() && o.b_.is_zero()) {
        a_ *= o.a_;
        return *this;
    }
    // (a + b l)(c + d l) = ac + (ad + bc) l + bd l^2, with l^2 = T l - D.
    const Rational bd = b_ * o.b_;
    const Rational T(static_cast<long>(ctx_->trace()));
    const Rational D(static_cast<long>(ctx_->det()));
    Rational na = a_ * o.a_ - bd * D;
    Rational nb = a_ * o.b_ + b_ * o.a_ + bd * T;
    a_ = std::move(na);
    b_ = std::move(nb);
    return *this;
}

QuadraticNumber& QuadraticNumber::operator/=(const QuadraticNumber& o) {
    if (o.is_zero()) throw ScalarError("division by zero");
    ctx_ = merge(ctx_, o.ctx_);
    if (o.b_.is_zero()) {
        a_ /= o.a_;
        b_ /= o.a_;
        return *this;
    }
    const Rational n = o.norm();
    *this *= o.conj();
    a_ /= n;
    b_ /= n;
    return *this;
}

QuadraticNumber QuadraticNumber::conj() const {
    if (b_.is_zero()) return *this;
    // l' = T - l
    QuadraticNumber r = *this;
    r.a_ = a_ + b_ * Rational(static_cast<long>(ctx_->trace()));
    r.b_ = -b_;
    return r;
}

Rational QuadraticNumber::norm() const {
    if (b_.is_zero()) return a_ * a_;
    const Rational T(static_cast<long>(ctx_->trace()));
    const Rational D(static_cast<long>(ctx_->det()));
    return a_ * a_ + a_ * b_ * T + b_ * b_ * D;
}

int QuadraticNumber::sign() const {
    if (b_.is_zero()) return a_.sign();
    // a + b l = u + w sqrt(d) with u = a + bT/2, w = b/2; l is irrational so the value is nonzero.
    const Rational u = a_ + b_ * Rational(static_cast<long>(ctx_->trace())) / Rational(2);
    const Rational w = b_ / Rational(2);
    const int su = u.sign();
    const int sw = w.sign();
    if (su == 0 || su == sw) return sw;
    const Rational lhs = u * u;
    const Rational rhs = w * w * Rational(ctx_->discriminant());
    return lhs > rhs ? su : sw;
}

Integer QuadraticNumber::floor() const {
    if (b_.is_zero()) return a_.floor();
    const auto& [lo, hi] = cached_bracket(*ctx_);
    const Rational upper = b_.sign() > 0 ? a_ + b_ * hi : a_ + b_ * lo;
    Integer n = upper.floor();
    if ((*this - QuadraticNumber(Rational(n))).sign() < 0) n -= 1;
    // The bracket is narrow, so at most one correction step is needed; anything
    // else means the value sits far below the upper estimate.
    while ((*this - QuadraticNumber(Rational(n))).sign() < 0) n -= 1;
    return n;
}

std::pair<Integer, QuadraticNumber> QuadraticNumber::floor_mod1() const {
    Integer n = floor();
    return {n, *this - QuadraticNumber(Rational(n))};
}

FloatApprox QuadraticNumber::to_float(int precision_bits) const {
    if (precision_bits < 32) throw ScalarError("to_float precision must be >= 32 bits");
    if (b_.is_zero()) {
        const double v = a_.to_double();
        const Rational err = a_ - Rational(mpq_class(v));
        return {v, std::nextafter(std::fabs(err.to_double()), INFINITY) * (err.is_zero() ? 0.0 : 1.0)};
    }
    // Width needed so that |b| * width / 2 <= 2^-precision_bits.
    const long bmag = static_cast<long>(mpz_sizeinbase(b_.numerator().get_mpz_t(), 2)) -
                      static_cast<long>(mpz_sizeinbase(b_.denominator().get_mpz_t(), 2)) + 1;
    const int bits = static_cast<int>(precision_bits + std::max(0L, bmag) + 1);
    const auto bracket = bits <= kCachedBits ? cached_bracket(*ctx_) : refine_bracket(*ctx_, bits);
    const Rational mid = (bracket.first + bracket.second) / Rational(2);
    const Rational center = a_ + b_ * mid;
    const Rational half_width = (b_.sign() < 0 ? -b_ : b_) * (bracket.second - bracket.first) / Rational(2);
    const double v = center.to_double();
    Rational round = center - Rational(mpq_class(v));
    if (round.sign() < 0) round = -round;
    const double err = std::nextafter((half_width + round).to_double(), INFINITY);
    return {v, err};
}

bool operator==(const QuadraticNumber& x, const QuadraticNumber& y) {
    QuadraticNumber::merge(x.ctx_, y.ctx_);
    return x.a_ == y.a_ && x.b_ == y.b_;
}

std::strong_ordering operator<=>(const QuadraticNumber& x, const QuadraticNumber& y) {
    const int s = (x - y).sign();
    return s < 0 ? std::strong_ordering::less : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::string QuadraticNumber::to_string() const {
    if (b_.is_zero()) return a_.to_string();
    std::string out = a_.to_string();
    const std::string bs = b_.to_string();
    if (b_.sign() < 0)
        out += bs;  // already carries '-'
    else
        out += "+" + bs;
    return out + "*l";
}

std::string QuadraticNumber::to_components() const {
    return "a=" + a_.to_string() + ",b=" + b_.to_string();
}

QuadraticNumber QuadraticNumber::parse(std::string_view text, const std::optional<QuadraticContext>& ctx) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw ScalarError("empty scalar");
    // Split into signed terms at top-level '+'/'-' (not the first char, not after '*' or '/').
    Rational a(0), b(0);
    std::size_t start = 0;
    auto flush = [&](std::string_view term) {
        if (term.empty() || term == "+" || term == "-") throw ScalarError("malformed scalar '" + std::string(text) + "'");
        bool neg = false;
        if (term.front() == '+' || term.front() == '-') {
            neg = term.front() == '-';
            term.remove_prefix(1);
        }
        Rational coef(1);
        bool is_l = false;
        if (term == "l") {
            is_l = true;
        } else if (term.size() > 2 && term.substr(term.size() - 2) == "*l") {
            is_l = true;
            coef = Rational::parse(term.substr(0, term.size() - 2));
        } else if (term.size() > 2 && term.substr(0, 2) == "l*") {
            is_l = true;
            coef = Rational::parse(term.substr(2));
        } else {
            coef = Rational::parse(term);
        }
        if (neg) coef = -coef;
        if (is_l) {
            b += coef;
        } else {
            a += coef;
        }
    };
    for (std::size_t i = 1; i < s.size(); ++i) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != '*' && s[i - 1] != '/') {
            flush(std::string_view(s).substr(start, i - start));
            start = i;
        }
    }
    flush(std::string_view(s).substr(start));
    if (b.is_zero()) return QuadraticNumber(a);
    if (!ctx) throw ScalarError("scalar '" + std::string(text) + "' uses l but no context was given");
    return QuadraticNumber(a, b, *ctx);
}

std::ostream& operator<<(std::ostream& os, const QuadraticNumber& x) { return os << x.to_string(); }

QuadraticNumber phi() { return QuadraticNumber::generator(QuadraticContext::golden()); }

QuadraticNumber phi_pow(int k) {
    QuadraticNumber r(1);
    const QuadraticNumber base = k >= 0 ? phi() : QuadraticNumber(1) / phi();
    for (int i = 0; i < std::abs(k); ++i) r *= base;
    return r;
}

}  // namespace heis
