#pragma once

// Lattice automorphisms attached to substitutions, their hyperbolicity data,
// the eigenflows they renormalize, the invariant surface through the identity
// and the section geometry built on it.

#include "heis/freegroup.hpp"

#include <optional>
#include <random>
#include <string>
#include <vector>

namespace heis {

class FactorizationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Endomorphism of H3 determined by M = [[A, B], [C, D]] and the central
/// coordinates e, f of the images of n_a and n_b:
///   [x, y, z] -> [A x + B y, C x + D y, det z + P(x, y)]
///   P = AC x(x-1)/2 + BD y(y-1)/2 + BC x y + e x + f y
struct HeisenbergEndo {
    long long m_aa = 1, m_ab = 0, m_ba = 0, m_bb = 1;
    long long e = 0, f = 0;

    static HeisenbergEndo identity() { return {}; }

    long long det() const { return m_aa * m_bb - m_ab * m_ba; }
    long long trace() const { return m_aa + m_bb; }
    bool is_automorphism() const { return det() == 1 || det() == -1; }

    template <class S>
    S central_polynomial(const S& x, const S& y) const {
        const S A(m_aa), B(m_ab), C(m_ba), D(m_bb);
        return A * C * x * (x - S(1)) / S(2) + B * D * y * (y - S(1)) / S(2) + B * C * x * y + S(e) * x + S(f) * y;
    }

    template <class S>
    GroupPoint<S> apply(const GroupPoint<S>& g) const {
        return {S(m_aa) * g.x + S(m_ab) * g.y, S(m_ba) * g.x + S(m_bb) * g.y,
                S(det()) * g.z + central_polynomial(g.x, g.y)};
    }

    LatticePoint apply(const LatticePoint& g) const;

    std::string to_string() const;
    friend bool operator==(const HeisenbergEndo&, const HeisenbergEndo&) = default;
};

/// From the images of the generators n_a, n_b.
HeisenbergEndo endo_from_images(const LatticePoint& image_a, const LatticePoint& image_b);

/// (L1 o L2)
HeisenbergEndo compose(const HeisenbergEndo& l1, const HeisenbergEndo& l2);
/// Throws FactorizationError unless |det| = 1.
HeisenbergEndo invert(const HeisenbergEndo& l);

/// The factorization of sigma: images of n_a, n_b are the lattice products of
/// sigma(a), sigma(b). The closed form is cross-checked against the product
/// construction on short words; a disagreement throws.
HeisenbergEndo factor(const Endomorphism& sigma);

// ---------------------------------------------------------- hypothesis (H)

struct HypothesisReport {
    bool passed = false;
    std::vector<std::string> failures;
    /// Context whose distinguished root is |lambda|; present when the
    /// discriminant is a positive non-square.
    std::optional<QuadraticContext> context;
    /// True when the dominant eigenvalue is negative (lambda = -generator).
    bool negative_dominant = false;
};

HypothesisReport check_hypothesis_H(const HeisenbergEndo& l);

// ---------------------------------------------------------------- eigendata

using Q = QuadraticNumber;

struct EigenData {
    HeisenbergEndo endo;
    QuadraticContext context;
    Q lambda, lambda_p;
    Q alpha, beta;        // alpha + beta = 1
    Q alpha_p, beta_p;    // alpha_p > 0, not normalized
    Q gamma, gamma_p;
    Q delta;              // alpha beta_p - alpha_p beta
    Q t_a, t_b;
    Q s_a, s_b;           // section endpoints, s_a < 0 < s_b
};

enum class Eigen { dominant, contracting };

/// Throws FactorizationError when (H) fails.
EigenData eigen_data(const HeisenbergEndo& l);

/// Central coordinate making (alpha, beta, gamma) an eigenflow for `value`:
///   gamma (value - det) = alpha (e - AC/2) + beta (f - BD/2)
/// with e, f overridable (grid values of the renormalization family).
Q gamma_for(const HeisenbergEndo& l, const Q& value, const Q& alpha, const Q& beta, const Q& e, const Q& f);
Q gamma_for(const HeisenbergEndo& l, const Q& value, const Q& alpha, const Q& beta);

Q gamma_of(const EigenData& E, Eigen which);
AlgebraVector<Q> flow_of(const EigenData& E, Eigen which);
const Q& eigenvalue(const EigenData& E, Eigen which);

/// L(Phi^t(g)) == Phi^{mu t}(L(g)) for the flow of the chosen eigenvalue mu.
bool conjugation_holds(const EigenData& E, Eigen which, const Q& t, const GroupPoint<Q>& g);

// ------------------------------------------------------------------ surface

/// Q(x, y) = xx x^2 + yy y^2 + xy x y + x x + y y + c
struct SurfaceQuadric {
    Q xx, yy, xy, x, y, c;

    template <class S>
    S operator()(const S& px, const S& py) const;
};

template <>
inline Q SurfaceQuadric::operator()(const Q& px, const Q& py) const {
    return xx * px * px + yy * py * py + xy * px * py + x * px + y * py + c;
}

template <>
inline double SurfaceQuadric::operator()(const double& px, const double& py) const {
    return to_double(xx) * px * px + to_double(yy) * py * py + to_double(xy) * px * py + to_double(x) * px +
           to_double(y) * py + to_double(c);
}

SurfaceQuadric surface_quadric(const EigenData& E);

/// Parameters of the projection (x, y) = t (alpha, beta) + s (alpha_p, beta_p).
struct SurfaceParams {
    Q t, s;
};
SurfaceParams surface_params(const EigenData& E, const Q& x, const Q& y);
/// x_{t,s} = Phi_lambda^t o Phi_lambda'^s (identity)
GroupPoint<Q> surface_point(const EigenData& E, const Q& t, const Q& s);

enum class Tile { domain_a, domain_b, outside };
const char* to_string(Tile t);
Tile tile_membership(const EigenData& E, const SurfaceQuadric& q, const GroupPoint<Q>& g);

// ------------------------------------------------------------ decomposition

struct SignedGenerator {
    int index = 1;   // 1..6
    int power = 1;   // +1 or -1
    std::string to_string() const;
    friend bool operator==(const SignedGenerator&, const SignedGenerator&) = default;
};

HeisenbergEndo generator_endo(const SignedGenerator& g);
/// Composition of the factors in order: g[0] o g[1] o ...
HeisenbergEndo recompose(const std::vector<SignedGenerator>& word);

struct GeneratedEndo {
    std::vector<SignedGenerator> word;
    HeisenbergEndo endo;
};

/// Random automorphism satisfying (H) with positive eigendirection: a product
/// of `factors` generators drawn from s1..s4, interleaved with random central
/// factors s5^{+-1}, s6^{+-1}. Redraws until (H) holds and the section
/// geometry is admissible.
GeneratedEndo random_hyperbolic(std::mt19937_64& rng, int factors);

/// alpha, beta > 0, alpha' > 0 > beta' (so Delta < 0 and t_a, t_b > 0).
bool section_admissible(const EigenData& E);

/// Word in the six generators whose composition is `l`. Verified by
/// recomposition; throws FactorizationError when |det| != 1 or on mismatch.
std::vector<SignedGenerator> decompose(const HeisenbergEndo& l);

}  // namespace heis
