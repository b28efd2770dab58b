#pragma once

// Exact scalars: GMP-backed rationals and elements a + b*l of a real quadratic
// field Q(l), where l is the larger root of X^2 - T X + D.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace heis {

using Integer = mpz_class;

class ScalarError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class Rational {
public:
    Rational() = default;
    Rational(long v) : v_(v) {}
    Rational(int v) : v_(v) {}
    Rational(long long v) : v_(static_cast<long>(v)) {}
    Rational(const Integer& v) : v_(v) {}
    Rational(const Integer& num, const Integer& den);
    Rational(long num, long den) : Rational(Integer(num), Integer(den)) {}
    explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

    Integer numerator() const { return v_.get_num(); }
    Integer denominator() const { return v_.get_den(); }
    const mpq_class& raw() const { return v_; }

    int sign() const { return sgn(v_); }
    bool is_zero() const { return sgn(v_) == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    Integer floor() const;
    double to_double() const { return v_.get_d(); }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    /// "p/q" or "p" when the denominator is 1.
    std::string to_string() const;
    /// Accepts "p", "-p", "p/q"; throws ScalarError on malformed text or q == 0.
    static Rational parse(std::string_view text);

private:
    mpq_class v_{0};
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Minimal polynomial X^2 - trace*X + det with positive non-square discriminant.
class QuadraticContext {
public:
    /// Throws ScalarError when trace^2 - 4 det is not a positive non-square.
    QuadraticContext(long long trace, long long det);

    static QuadraticContext golden() { return {1, -1}; }

    long long trace() const { return trace_; }
    long long det() const { return det_; }
    const Integer& discriminant() const { return disc_; }

    /// Rational bracket [lo, hi] containing the distinguished (larger) root.
    std::pair<Rational, Rational> initial_bracket() const;

    std::string to_string() const;  // "T,D"
    static QuadraticContext parse(std::string_view text);

    friend bool operator==(const QuadraticContext& a, const QuadraticContext& b) {
        return a.trace_ == b.trace_ && a.det_ == b.det_;
    }

private:
    long long trace_;
    long long det_;
    Integer disc_;
};

/// Certified float export: |value - exact| <= error.
struct FloatApprox {
    double value = 0.0;
    double error = 0.0;
};

/// a + b*l. Elements with b == 0 may carry no context; they combine with any
/// context. Two elements with different contexts never mix.
class QuadraticNumber {
public:
    QuadraticNumber() = default;
    QuadraticNumber(int v) : a_(v) {}
    QuadraticNumber(long v) : a_(v) {}
    QuadraticNumber(long long v) : a_(v) {}
    QuadraticNumber(Rational a) : a_(std::move(a)) {}
    QuadraticNumber(Rational a, Rational b, QuadraticContext ctx);

    /// The distinguished root l of the context.
    static QuadraticNumber generator(const QuadraticContext& ctx) { return {Rational(0), Rational(1), ctx}; }

    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }
    const std::optional<QuadraticContext>& context() const { return ctx_; }
    bool is_rational() const { return b_.is_zero(); }
    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

    QuadraticNumber conj() const;
    /// N(x) = x * conj(x) = a^2 + a b T + b^2 D.
    Rational norm() const;

    int sign() const;
    Integer floor() const;
    /// (n, r) with x = n + r and 0 <= r < 1.
    std::pair<Integer, QuadraticNumber> floor_mod1() const;
    QuadraticNumber frac() const { return floor_mod1().second; }
    QuadraticNumber abs() const { return sign() < 0 ? -*this : *this; }

    /// Interval-refined approximation; precision_bits >= 32.
    FloatApprox to_float(int precision_bits = 53) const;
    double to_double() const { return to_float(53).value; }

    QuadraticNumber operator-() const;
    QuadraticNumber& operator+=(const QuadraticNumber& o);
    QuadraticNumber& operator-=(const QuadraticNumber& o);
    QuadraticNumber& operator*=(const QuadraticNumber& o);
    QuadraticNumber& operator/=(const QuadraticNumber& o);

    friend QuadraticNumber operator+(QuadraticNumber x, const QuadraticNumber& y) { return x += y; }
    friend QuadraticNumber operator-(QuadraticNumber x, const QuadraticNumber& y) { return x -= y; }
    friend QuadraticNumber operator*(QuadraticNumber x, const QuadraticNumber& y) { return x *= y; }
    friend QuadraticNumber operator/(QuadraticNumber x, const QuadraticNumber& y) { return x /= y; }

    /// Value equality; throws ScalarError on a context mismatch.
    friend bool operator==(const QuadraticNumber& x, const QuadraticNumber& y);
    friend std::strong_ordering operator<=>(const QuadraticNumber& x, const QuadraticNumber& y);

    /// "a+b*l" with rationals "p/q"; "a" alone when b == 0.
    std::string to_string() const;
    /// "a=p/q,b=r/s"
    std::string to_components() const;
    /// Parses the "a+b*l" family ("3/2", "l", "-l", "1/2-3*l", "2*l+1").
    static QuadraticNumber parse(std::string_view text, const std::optional<QuadraticContext>& ctx);

private:
    static std::optional<QuadraticContext> merge(const std::optional<QuadraticContext>& x,
                                                 const std::optional<QuadraticContext>& y);
    Rational a_{0};
    Rational b_{0};
    std::optional<QuadraticContext> ctx_;
};

std::ostream& operator<<(std::ostream& os, const QuadraticNumber& x);

/// Golden-ratio shorthands: phi = l in the context (1, -1).
QuadraticNumber phi();
QuadraticNumber phi_pow(int k);

// Uniform helpers so templates can run over double, Rational and QuadraticNumber.
inline Integer floor_of(const Rational& x) { return x.floor(); }
inline Integer floor_of(const QuadraticNumber& x) { return x.floor(); }
inline double floor_of(double x);
inline int sign_of(const Rational& x) { return x.sign(); }
inline int sign_of(const QuadraticNumber& x) { return x.sign(); }
inline int sign_of(double x) { return (x > 0) - (x < 0); }
inline double to_double(const Rational& x) { return x.to_double(); }
inline double to_double(const QuadraticNumber& x) { return x.to_double(); }
inline double to_double(double x) { return x; }

}  // namespace heis

#include <cmath>
inline double heis::floor_of(double x) { return std::floor(x); }
