#include "heis/factorization.hpp"

#include <cstdlib>

namespace heis {

namespace {

long long checked_add(long long a, long long b) {
    long long r;
    if (__builtin_add_overflow(a, b, &r)) throw FactorizationError("integer overflow in lattice endomorphism");
    return r;
}

long long checked_mul(long long a, long long b) {
    long long r;
    if (__builtin_mul_overflow(a, b, &r)) throw FactorizationError("integer overflow in lattice endomorphism");
    return r;
}

long long to_ll_checked(const Rational& r) {
    if (!r.is_integer()) throw FactorizationError("non-integral lattice image");
    const Integer n = r.numerator();
    if (!n.fits_slong_p()) throw FactorizationError("integer overflow in lattice endomorphism");
    return n.get_si();
}

const LatticePoint kNa{1, 0, 0};
const LatticePoint kNb{0, 1, 0};

}  // namespace

LatticePoint HeisenbergEndo::apply(const LatticePoint& g) const {
    const GroupPoint<Rational> r = apply(lift<Rational>(g));
    return {to_ll_checked(r.x), to_ll_checked(r.y), to_ll_checked(r.z)};
}

std::string HeisenbergEndo::to_string() const {
    return "M=[[" + std::to_string(m_aa) + "," + std::to_string(m_ab) + "],[" + std::to_string(m_ba) + "," +
           std::to_string(m_bb) + "]] e=" + std::to_string(e) + " f=" + std::to_string(f);
}

HeisenbergEndo endo_from_images(const LatticePoint& ia, const LatticePoint& ib) {
    return {ia.n, ib.n, ia.m, ib.m, ia.p, ib.p};
}

HeisenbergEndo compose(const HeisenbergEndo& l1, const HeisenbergEndo& l2) {
    // Guard the matrix product before the Rational evaluation of the images.
    checked_add(checked_mul(l1.m_aa, l2.m_aa), checked_mul(l1.m_ab, l2.m_ba));
    checked_add(checked_mul(l1.m_ba, l2.m_ab), checked_mul(l1.m_bb, l2.m_bb));
    return endo_from_images(l1.apply(l2.apply(kNa)), l1.apply(l2.apply(kNb)));
}

HeisenbergEndo invert(const HeisenbergEndo& l) {
    const long long d = l.det();
    if (d != 1 && d != -1) throw FactorizationError("endomorphism is not invertible (|det| != 1)");
    const long long a = d * l.m_bb, b = -d * l.m_ab, c = -d * l.m_ba, dd = d * l.m_aa;
    const auto central = [&](long long x, long long y) {
        return to_ll_checked(-Rational(d) * l.central_polynomial(Rational(x), Rational(y)));
    };
    HeisenbergEndo r{a, b, c, dd, central(a, c), central(b, dd)};
    if (compose(l, r) != HeisenbergEndo::identity()) throw FactorizationError("inverse verification failed");
    return r;
}

HeisenbergEndo factor(const Endomorphism& sigma) {
    const HeisenbergEndo l = endo_from_images(word_element(sigma.image_a()), word_element(sigma.image_b()));
    // Closed form versus generator products on every reduced word of length <= 3.
    static const std::vector<Word> probes = [] {
        std::vector<Word> out{Word()};
        std::vector<Word> layer{Word()};
        for (int len = 1; len <= 3; ++len) {
            std::vector<Word> next;
            for (const Word& w : layer)
                for (Letter c : {Letter::a, Letter::b, Letter::A, Letter::B}) {
                    if (!w.empty() && w[w.size() - 1] == inverse(c)) continue;
                    std::vector<Letter> ls = w.letters();
                    ls.push_back(c);
                    next.emplace_back(std::move(ls));
                }
            out.insert(out.end(), next.begin(), next.end());
            layer = std::move(next);
        }
        return out;
    }();
    for (const Word& w : probes)
        if (l.apply(word_element(w)) != word_element(apply(sigma, w)))
            throw FactorizationError("closed form disagrees with generator products on word '" + w.to_string() + "'");
    return l;
}

// ---------------------------------------------------------- hypothesis (H)

HypothesisReport check_hypothesis_H(const HeisenbergEndo& l) {
    HypothesisReport rep;
    const long long T = l.trace(), D = l.det();
    if (D != 1 && D != -1) rep.failures.push_back("det(M) = " + std::to_string(D) + ", not +-1");
    const Integer disc = Integer(static_cast<long>(T)) * Integer(static_cast<long>(T)) - 4 * Integer(static_cast<long>(D));
    if (sgn(disc) <= 0) {
        rep.failures.push_back("no two distinct real eigenvalues (discriminant " + disc.get_str() + ")");
    } else if (mpz_perfect_square_p(disc.get_mpz_t())) {
        rep.failures.push_back("rational eigenvalues (discriminant " + disc.get_str() + " is a square)");
    } else {
        rep.context = QuadraticContext(T >= 0 ? T : -T, D);
        rep.negative_dominant = T < 0;
        const Q mu = Q::generator(*rep.context);
        const Q lambda = rep.negative_dominant ? -mu : mu;
        const Q lambda_p = Q(T) - lambda;
        if (!(lambda.abs() > Q(1))) rep.failures.push_back("|lambda| <= 1");
        if (!(lambda_p.abs() < Q(1))) rep.failures.push_back("|lambda'| >= 1");
    }
    rep.passed = rep.failures.empty();
    return rep;
}

// ---------------------------------------------------------------- eigendata

Q gamma_for(const HeisenbergEndo& l, const Q& value, const Q& alpha, const Q& beta, const Q& e, const Q& f) {
    const Q denom = value - Q(l.det());
    if (denom.is_zero()) throw FactorizationError("eigenvalue equals det(M); no eigenflow central coordinate");
    const Q ac(Rational(l.m_aa * l.m_ba, 2)), bd(Rational(l.m_ab * l.m_bb, 2));
    return (alpha * (e - ac) + beta * (f - bd)) / denom;
}

Q gamma_for(const HeisenbergEndo& l, const Q& value, const Q& alpha, const Q& beta) {
    return gamma_for(l, value, alpha, beta, Q(l.e), Q(l.f));
}

EigenData eigen_data(const HeisenbergEndo& l) {
    const HypothesisReport h = check_hypothesis_H(l);
    if (!h.passed) {
        std::string msg = "hypothesis (H) fails:";
        for (const auto& f : h.failures) msg += " " + f + ";";
        throw FactorizationError(msg);
    }
    EigenData E{l, *h.context, {}, {}, {}, {}, {}, {}, {}, {}, {}, {}, {}, {}, {}};
    const Q A(l.m_aa), B(l.m_ab), C(l.m_ba), D(l.m_bb);
    const Q mu = Q::generator(E.context);
    E.lambda = h.negative_dominant ? -mu : mu;
    E.lambda_p = Q(l.trace()) - E.lambda;

    if (l.m_ab != 0) {
        E.alpha = B / (B + E.lambda - A);
    } else {
        // Lower triangular; only reachable with rational eigenvalues, which (H) excludes.
        E.alpha = (E.lambda - D) / (C - D + E.lambda);
    }
    E.beta = Q(1) - E.alpha;

    if (l.m_ab != 0) {
        E.alpha_p = B;
        E.beta_p = E.lambda_p - A;
    } else {
        E.alpha_p = E.lambda_p - D;
        E.beta_p = C;
    }
    if (E.alpha_p.sign() < 0) {
        E.alpha_p = -E.alpha_p;
        E.beta_p = -E.beta_p;
    }
    if (E.alpha_p.is_zero()) throw FactorizationError("contracting eigenvector has alpha' = 0");

    if (A * E.alpha + B * E.beta != E.lambda * E.alpha || C * E.alpha + D * E.beta != E.lambda * E.beta ||
        A * E.alpha_p + B * E.beta_p != E.lambda_p * E.alpha_p || C * E.alpha_p + D * E.beta_p != E.lambda_p * E.beta_p)
        throw FactorizationError("eigenvector verification failed");

    E.delta = E.alpha * E.beta_p - E.alpha_p * E.beta;
    E.t_a = E.beta_p / E.delta;
    E.t_b = -E.alpha_p / E.delta;
    E.s_a = (E.t_a * E.alpha - Q(1)) / E.alpha_p;
    E.s_b = E.t_b * E.alpha / E.alpha_p;
    E.gamma = gamma_for(l, E.lambda, E.alpha, E.beta);
    E.gamma_p = gamma_for(l, E.lambda_p, E.alpha_p, E.beta_p);
    return E;
}

const Q& eigenvalue(const EigenData& E, Eigen which) { return which == Eigen::dominant ? E.lambda : E.lambda_p; }

Q gamma_of(const EigenData& E, Eigen which) { return which == Eigen::dominant ? E.gamma : E.gamma_p; }

AlgebraVector<Q> flow_of(const EigenData& E, Eigen which) {
    if (which == Eigen::dominant) return {E.alpha, E.beta, E.gamma};
    return {E.alpha_p, E.beta_p, E.gamma_p};
}

bool conjugation_holds(const EigenData& E, Eigen which, const Q& t, const GroupPoint<Q>& g) {
    const AlgebraVector<Q> v = flow_of(E, which);
    return E.endo.apply(flow(v, t, g)) == flow(v, eigenvalue(E, which) * t, E.endo.apply(g));
}

// ------------------------------------------------------------------ surface

SurfaceQuadric surface_quadric(const EigenData& E) {
    // t = tx x + ty y, s = sx x + sy y
    const Q tx = E.beta_p / E.delta, ty = -E.alpha_p / E.delta;
    const Q sx = -E.beta / E.delta, sy = E.alpha / E.delta;
    const Q half(Rational(1, 2));
    const Q kt = half * E.alpha * E.beta;        // t^2
    const Q ks = half * E.alpha_p * E.beta_p;    // s^2
    const Q kst = E.alpha * E.beta_p;            // s t
    SurfaceQuadric q;
    q.xx = kt * tx * tx + ks * sx * sx + kst * tx * sx;
    q.yy = kt * ty * ty + ks * sy * sy + kst * ty * sy;
    q.xy = Q(2) * kt * tx * ty + Q(2) * ks * sx * sy + kst * (tx * sy + ty * sx);
    q.x = E.gamma * tx + E.gamma_p * sx;
    q.y = E.gamma * ty + E.gamma_p * sy;
    q.c = Q(0);
    return q;
}

SurfaceParams surface_params(const EigenData& E, const Q& x, const Q& y) {
    return {(x * E.beta_p - y * E.alpha_p) / E.delta, (E.alpha * y - E.beta * x) / E.delta};
}

GroupPoint<Q> surface_point(const EigenData& E, const Q& t, const Q& s) {
    return mul(flow_element(flow_of(E, Eigen::dominant), t), flow_element(flow_of(E, Eigen::contracting), s));
}

const char* to_string(Tile t) {
    switch (t) {
        case Tile::domain_a: return "D_a";
        case Tile::domain_b: return "D_b";
        case Tile::outside: return "outside";
    }
    return "?";
}

Tile tile_membership(const EigenData& E, const SurfaceQuadric& q, const GroupPoint<Q>& g) {
    const auto [t, s] = surface_params(E, g.x, g.y);
    const Q zq = q(g.x, g.y);
    const Q half(Rational(1, 2));
    if (g.z < zq - half || !(g.z < zq + half)) return Tile::outside;
    if (s < Q(0)) {
        if (s >= E.s_a && t >= Q(0) && t < E.t_b) return Tile::domain_a;
    } else if (s < E.s_b && t >= Q(0) && t < E.t_a) {
        return Tile::domain_b;
    }
    return Tile::outside;
}

// ------------------------------------------------------------ decomposition

std::string SignedGenerator::to_string() const {
    return "s" + std::to_string(index) + (power < 0 ? "^-1" : "");
}

HeisenbergEndo generator_endo(const SignedGenerator& g) {
    static const std::vector<HeisenbergEndo> forward = [] {
        std::vector<HeisenbergEndo> v;
        for (int i = 1; i <= 6; ++i) v.push_back(factor(generator_substitution(i)));
        return v;
    }();
    static const std::vector<HeisenbergEndo> backward = [] {
        std::vector<HeisenbergEndo> v;
        for (const auto& l : forward) v.push_back(invert(l));
        return v;
    }();
    if (g.index < 1 || g.index > 6 || (g.power != 1 && g.power != -1))
        throw std::out_of_range("signed generator out of range");
    return g.power > 0 ? forward[g.index - 1] : backward[g.index - 1];
}

HeisenbergEndo recompose(const std::vector<SignedGenerator>& word) {
    HeisenbergEndo l = HeisenbergEndo::identity();
    for (const auto& g : word) l = compose(l, generator_endo(g));
    return l;
}

std::vector<SignedGenerator> decompose(const HeisenbergEndo& target) {
    if (!target.is_automorphism()) throw FactorizationError("decompose needs |det| = 1");

    // Reduce cur = G_k o ... o G_1 o target to a central automorphism by
    // left factors; then target = G_1^-1 o ... o G_k^-1 o central.
    std::vector<SignedGenerator> applied;
    HeisenbergEndo cur = target;
    auto left = [&](SignedGenerator g, long long times = 1) {
        for (long long i = 0; i < times; ++i) {
            cur = compose(generator_endo(g), cur);
            applied.push_back(g);
        }
    };
    const SignedGenerator s1{1, 1}, s1i{1, -1}, s3{3, 1}, s3i{3, -1};

    if (cur.det() == -1) left({2, -1});
    while (cur.m_ba != 0) {
        if (cur.m_aa == 0) {
            left(s3);   // row1 += row2
            left(s1i);  // row2 -= row1
        } else if (std::llabs(cur.m_aa) >= std::llabs(cur.m_ba)) {
            const long long q = cur.m_aa / cur.m_ba;  // row1 -= q row2
            left(q > 0 ? s3i : s3, std::llabs(q));
        } else {
            const long long q = cur.m_ba / cur.m_aa;  // row2 -= q row1
            left(q > 0 ? s1i : s1, std::llabs(q));
        }
    }
    if (cur.m_aa == -1) {
        // (M3^-1 M1 M3^-1)^2 = -I
        for (int k = 0; k < 2; ++k) {
            left(s3i);
            left(s1);
            left(s3i);
        }
    }
    if (cur.m_aa != 1 || cur.m_bb != 1) throw FactorizationError("decompose: unexpected diagonal after reduction");
    if (cur.m_ab != 0) left(cur.m_ab > 0 ? s3i : s3, std::llabs(cur.m_ab));

    std::vector<SignedGenerator> word;
    for (auto it = applied.begin(); it != applied.end(); ++it) word.push_back({it->index, -it->power});
    // Central part: s5^e o s6^-f.
    for (long long i = 0; i < std::llabs(cur.e); ++i) word.push_back({5, cur.e > 0 ? 1 : -1});
    for (long long i = 0; i < std::llabs(cur.f); ++i) word.push_back({6, cur.f > 0 ? -1 : 1});

    if (recompose(word) != target) throw FactorizationError("decompose: recomposition does not match the input");
    return word;
}

}  // namespace heis

namespace heis {

bool section_admissible(const EigenData& E) {
    return E.alpha.sign() > 0 && E.beta.sign() > 0 && E.alpha_p.sign() > 0 && E.beta_p.sign() < 0;
}

GeneratedEndo random_hyperbolic(std::mt19937_64& rng, int factors) {
    std::uniform_int_distribution<int> positive(1, 4), central(5, 6), coin(0, 1);
    for (;;) {
        GeneratedEndo g;
        for (int i = 0; i < factors; ++i) {
            g.word.push_back({positive(rng), 1});
            if (coin(rng)) g.word.push_back({central(rng), coin(rng) ? 1 : -1});
        }
        g.endo = recompose(g.word);
        if (!check_hypothesis_H(g.endo).passed) continue;
        if (!section_admissible(eigen_data(g.endo))) continue;
        return g;
    }
}

}  // namespace heis
