#pragma once

// The Heisenberg group H3(R) in coordinates [x, y, z] (upper-triangular
// matrices with x, y above the diagonal and z in the corner), its Lie algebra,
// the integer lattice and the right-coset reduction to the unit cube.
//
// All operations are templates over the scalar: double, Rational or
// QuadraticNumber. Exact scalars give exact results.

#include "heis/scalar.hpp"

#include <cmath>
#include <ostream>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>

namespace heis {

template <class S>
struct GroupPoint {
    S x{0}, y{0}, z{0};

    friend bool operator==(const GroupPoint& a, const GroupPoint& b) {
        return a.x == b.x && a.y == b.y && a.z == b.z;
    }
};

template <class S>
struct AlgebraVector {
    S alpha{0}, beta{0}, gamma{0};

    friend bool operator==(const AlgebraVector& a, const AlgebraVector& b) {
        return a.alpha == b.alpha && a.beta == b.beta && a.gamma == b.gamma;
    }
};

/// Element [n, m, p] of the lattice H3(Z).
struct LatticePoint {
    long long n = 0, m = 0, p = 0;

    friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
};

/// Canonical representative of the right coset g*Gamma, with the lattice
/// element that produced it: original * witness == rep.
template <class S>
struct NilPoint {
    GroupPoint<S> rep;
    LatticePoint witness;
};

// ------------------------------------------------------------------ group

template <class S>
GroupPoint<S> mul(const GroupPoint<S>& a, const GroupPoint<S>& b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z + a.x * b.y};
}

template <class S>
GroupPoint<S> inv(const GroupPoint<S>& a) {
    return {-a.x, -a.y, a.x * a.y - a.z};
}

/// [a, b] = a b a^-1 b^-1
template <class S>
GroupPoint<S> commutator(const GroupPoint<S>& a, const GroupPoint<S>& b) {
    return mul(mul(mul(a, b), inv(a)), inv(b));
}

template <class S>
GroupPoint<S> identity() {
    return {S(0), S(0), S(0)};
}

inline LatticePoint mul(const LatticePoint& a, const LatticePoint& b) {
    return {a.n + b.n, a.m + b.m, a.p + b.p + a.n * b.m};
}

inline LatticePoint inv(const LatticePoint& a) { return {-a.n, -a.m, a.n * a.m - a.p}; }

template <class S>
GroupPoint<S> lift(const LatticePoint& g) {
    return {S(g.n), S(g.m), S(g.p)};
}

// ------------------------------------------------------------ Lie algebra

/// exp(alpha, beta, gamma) = [alpha, beta, gamma + alpha beta / 2]
template <class S>
GroupPoint<S> exp(const AlgebraVector<S>& v) {
    return {v.alpha, v.beta, v.gamma + v.alpha * v.beta / S(2)};
}

template <class S>
AlgebraVector<S> log(const GroupPoint<S>& g) {
    return {g.x, g.y, g.z - g.x * g.y / S(2)};
}

template <class S>
AlgebraVector<S> operator+(const AlgebraVector<S>& u, const AlgebraVector<S>& v) {
    return {u.alpha + v.alpha, u.beta + v.beta, u.gamma + v.gamma};
}

template <class S>
AlgebraVector<S> scale(const S& t, const AlgebraVector<S>& v) {
    return {t * v.alpha, t * v.beta, t * v.gamma};
}

/// [u, v] = (0, 0, (alpha beta' - alpha' beta) / 2), i.e. half the log of the
/// group commutator of the exponentials.
template <class S>
AlgebraVector<S> bracket(const AlgebraVector<S>& u, const AlgebraVector<S>& v) {
    return {S(0), S(0), (u.alpha * v.beta - v.alpha * u.beta) / S(2)};
}

// ------------------------------------------------------------------ norm

/// Fourth power of the homogeneous group norm: (x^2 + y^2)^2 + (z - xy/2)^2.
template <class S>
S norm4(const GroupPoint<S>& g) {
    const S r2 = g.x * g.x + g.y * g.y;
    const S c = g.z - g.x * g.y / S(2);
    return r2 * r2 + c * c;
}

template <class S>
double norm(const GroupPoint<S>& g) {
    return std::pow(to_double(norm4(g)), 0.25);
}

/// Left-invariant distance d(a, b) = |a^-1 b|.
template <class S>
double dist(const GroupPoint<S>& a, const GroupPoint<S>& b) {
    return norm(mul(inv(a), b));
}

// ------------------------------------------------------- flows and maps

/// exp(t v) = [alpha t, beta t, gamma t + alpha beta t^2 / 2]
template <class S>
GroupPoint<S> flow_element(const AlgebraVector<S>& v, const S& t) {
    return {v.alpha * t, v.beta * t, v.gamma * t + v.alpha * v.beta * t * t / S(2)};
}

/// Phi^t_v(g) = exp(t v) * g
template <class S>
GroupPoint<S> flow(const AlgebraVector<S>& v, const S& t, const GroupPoint<S>& g) {
    return mul(flow_element(v, t), g);
}

/// Niltranslation by exp(v): the time-one map of the flow.
template <class S>
GroupPoint<S> translate(const AlgebraVector<S>& v, const GroupPoint<S>& g) {
    return mul(exp(v), g);
}

/// Psi^t(g) = [0, 0, t] * g
template <class S>
GroupPoint<S> central_flow(const S& t, const GroupPoint<S>& g) {
    return {g.x, g.y, g.z + t};
}

/// D^t [x, y, z] = [x t, y t, z t^2]
template <class S>
GroupPoint<S> dilate(const S& t, const GroupPoint<S>& g) {
    return {g.x * t, g.y * t, g.z * t * t};
}

// ------------------------------------------------------ lattice quotient

namespace detail {
inline long long to_ll(const Integer& v) {
    if (!v.fits_slong_p()) throw ScalarError("lattice coordinate out of 64-bit range");
    return v.get_si();
}
inline long long to_ll(double v) { return static_cast<long long>(v); }
}  // namespace detail

/// Right-multiplies by the lattice element [n, m, p] that brings every
/// coordinate into [0, 1): n = -floor(x), m = -floor(y), p = -floor(z + x m).
template <class S>
NilPoint<S> canonicalize(const GroupPoint<S>& g) {
    const long long n = -detail::to_ll(floor_of(g.x));
    const long long m = -detail::to_ll(floor_of(g.y));
    const S zm = g.z + g.x * S(m);
    const long long p = -detail::to_ll(floor_of(zm));
    const LatticePoint w{n, m, p};
    return {mul(g, lift<S>(w)), w};
}

/// True when a and b lie in the same right coset g*Gamma.
template <class S>
bool coset_eq(const GroupPoint<S>& a, const GroupPoint<S>& b) {
    return canonicalize(a).rep == canonicalize(b).rep;
}

template <class S>
std::string to_string(const GroupPoint<S>& g) {
    using std::to_string;
    if constexpr (std::is_same_v<S, double>)
        return "[" + to_string(g.x) + ", " + to_string(g.y) + ", " + to_string(g.z) + "]";
    else
        return "[" + g.x.to_string() + ", " + g.y.to_string() + ", " + g.z.to_string() + "]";
}

template <class S>
std::ostream& operator<<(std::ostream& os, const GroupPoint<S>& g) {
    return os << to_string(g);
}

inline std::ostream& operator<<(std::ostream& os, const LatticePoint& g) {
    return os << "[" << g.n << ", " << g.m << ", " << g.p << "]";
}

/// Parses "[x, y, z]" with scalar syntax "a+b*l".
GroupPoint<QuadraticNumber> parse_group_point(std::string_view text, const std::optional<QuadraticContext>& ctx);

}  // namespace heis
