#include "heis/app.hpp"

#include <random>

namespace heis::app {

namespace {

const QuadraticContext kGolden = QuadraticContext::golden();
const Q kHalf(Rational(1, 2));

// A report section: named checks, each with a pass flag and, on failure, a witness.
class Suite {
public:
    Suite(int id, std::string name) : id_(id), name_(std::move(name)) {}

    void check(const std::string& name, bool ok, const std::string& detail = {}) {
        json c{{"name", name}, {"passed", ok}};
        if (!detail.empty()) c[ok ? "detail" : "witness"] = detail;
        checks_.push_back(std::move(c));
        passed_ = passed_ && ok;
    }

    /// Reported but not part of the verdict.
    void audit(const std::string& name, bool ok, const std::string& detail) {
        audits_.push_back({{"name", name}, {"passed", ok}, {"detail", detail}});
    }

    json finish() const {
        json j{{"id", id_}, {"name", name_}, {"passed", passed_}, {"checks", checks_}};
        if (!audits_.empty()) j["audits"] = audits_;
        return j;
    }

private:
    int id_;
    std::string name_;
    bool passed_ = true;
    json checks_ = json::array();
    json audits_ = json::array();
};

// Counts failures over many cases and keeps the first witness.
struct Tally {
    long long cases = 0, failures = 0;
    std::string witness;

    void record(bool ok, const std::function<std::string()>& describe) {
        ++cases;
        if (!ok && failures++ == 0) witness = describe();
    }
    bool ok() const { return failures == 0 && cases > 0; }
    std::string summary() const {
        return std::to_string(cases - failures) + "/" + std::to_string(cases) +
               (witness.empty() ? "" : "; first failure: " + witness);
    }
    void report(Suite& s, const std::string& name) const { s.check(name, ok(), summary()); }
};

std::mt19937_64 suite_rng(const Config& cfg, int id) {
    return std::mt19937_64(cfg.seed ^ (static_cast<std::uint64_t>(id) * 0x9E3779B97F4A7C15ULL));
}

Rational rand_rational(std::mt19937_64& rng, long num_bound, long den_bound) {
    std::uniform_int_distribution<long> num(-num_bound, num_bound), den(1, den_bound);
    return Rational(num(rng), den(rng));
}

Rational unit_rational(std::mt19937_64& rng, long den = 9973) {
    std::uniform_int_distribution<long> num(0, den - 1);
    return Rational(num(rng), den);
}

Q rand_q(std::mt19937_64& rng, const QuadraticContext& ctx, long num_bound = 20, long den_bound = 9) {
    return {rand_rational(rng, num_bound, den_bound), rand_rational(rng, num_bound, den_bound), ctx};
}

// Point of [0, 1) with an irrational part.
Q unit_q(std::mt19937_64& rng) {
    return (Q(unit_rational(rng)) + Q(Rational(0), unit_rational(rng, 97), kGolden)).frac();
}

GroupPoint<Q> rand_point(std::mt19937_64& rng, const QuadraticContext& ctx) {
    return {rand_q(rng, ctx), rand_q(rng, ctx), rand_q(rng, ctx)};
}

AlgebraVector<Q> rand_vector(std::mt19937_64& rng, const QuadraticContext& ctx) {
    return {rand_q(rng, ctx), rand_q(rng, ctx), rand_q(rng, ctx)};
}

Word rand_word(std::mt19937_64& rng, int max_len, bool positive) {
    std::uniform_int_distribution<int> len(1, max_len), letter(0, positive ? 1 : 3);
    static const Letter letters[] = {Letter::a, Letter::b, Letter::A, Letter::B};
    std::vector<Letter> w;
    for (int k = len(rng); k > 0; --k) w.push_back(letters[letter(rng)]);
    return Word(std::move(w));
}

EigenData fibonacci() { return eigen_data(factor(parse_substitution("a->ab;b->a"))); }

SectionPoint rand_section_point(std::mt19937_64& rng, const Section& S) {
    return {S.E.s_a + (S.E.s_b - S.E.s_a) * Q(unit_rational(rng)), Q(unit_rational(rng)) - kHalf};
}

std::string show(const GroupPoint<Q>& g) { return to_string(g); }

// ------------------------------------------------------------ criteria

json group_suite(const Config& cfg) {
    Suite s(1, "group and algebra properties");
    auto rng = suite_rng(cfg, 1);
    const long long n = 10 * cfg.samples;
    Tally assoc, inverses, bch, explog, normsym;
    for (long long i = 0; i < n; ++i) {
        const GroupPoint<Q> a = rand_point(rng, kGolden), b = rand_point(rng, kGolden), c = rand_point(rng, kGolden);
        assoc.record(mul(mul(a, b), c) == mul(a, mul(b, c)), [&] { return show(a) + " " + show(b) + " " + show(c); });
        inverses.record(mul(a, inv(a)) == identity<Q>() && mul(inv(a), a) == identity<Q>(), [&] { return show(a); });
        const AlgebraVector<Q> u = rand_vector(rng, kGolden), v = rand_vector(rng, kGolden);
        // bracket() already carries the 1/2
        bch.record(mul(exp(u), exp(v)) == exp(u + v + bracket(u, v)),
                   [&] { return show(exp(u)) + " " + show(exp(v)); });
        explog.record(exp(log(a)) == a && log(exp(u)) == u, [&] { return show(a); });
        normsym.record(norm4(a) == norm4(inv(a)) && norm4(dilate(Q(2), a)) == Q(16) * norm4(a),
                       [&] { return show(a); });
    }
    assoc.report(s, "associativity");
    inverses.report(s, "inverses");
    bch.report(s, "BCH identity");
    explog.report(s, "exp/log round trip");
    normsym.report(s, "norm symmetry and homogeneity");
    return s.finish();
}

json commutation_suite(const Config& cfg) {
    Suite s(2, "flows commute up to the central flow");
    auto rng = suite_rng(cfg, 2);
    Tally commute, central;
    for (long long i = 0; i < cfg.samples; ++i) {
        const AlgebraVector<Q> v = rand_vector(rng, kGolden), vp = rand_vector(rng, kGolden);
        const Q t = rand_q(rng, kGolden, 10, 5), sp = rand_q(rng, kGolden, 10, 5);
        const GroupPoint<Q> g = rand_point(rng, kGolden);
        const Q delta = v.beta * vp.alpha - vp.beta * v.alpha;
        const GroupPoint<Q> lhs = flow(vp, sp, flow(v, t, g));
        const GroupPoint<Q> rhs = flow(v, t, flow(vp, sp, central_flow(delta * t * sp, g)));
        commute.record(lhs == rhs, [&] { return show(lhs) + " vs " + show(rhs); });
        central.record(central_flow(sp, flow(v, t, g)) == flow(v, t, central_flow(sp, g)), [&] { return show(g); });
    }
    commute.report(s, "flow_v'^s o flow_v^t = flow_v^t o flow_v'^s o central^(Delta t s)");
    central.report(s, "central flow commutes with every flow");
    return s.finish();
}

json factorization_suite(const Config& cfg) {
    Suite s(3, "factorization");
    const HeisenbergEndo t = factor(parse_substitution("a->ab;b->a"));
    s.check("fibonacci factorization is (1,1,1,0; e=1, f=0)", t == HeisenbergEndo{1, 1, 1, 0, 1, 0}, t.to_string());
    // z-row -z + x(x+1)/2 + xy: coefficients of z, x^2, x, y^2, y, xy.
    const Q A(t.m_aa), B(t.m_ab), C(t.m_ba), D(t.m_bb);
    const Q cz(t.det()), cxx = A * C * kHalf, cx = Q(t.e) - A * C * kHalf, cyy = B * D * kHalf,
            cy = Q(t.f) - B * D * kHalf, cxy = B * C;
    s.check("z-row coefficients (z, x^2, x, y^2, y, xy) = (-1, 1/2, 1/2, 0, 0, 1)",
            cz == Q(-1) && cxx == kHalf && cx == kHalf && cyy.is_zero() && cy.is_zero() && cxy == Q(1),
            cz.to_string() + ", " + cxx.to_string() + ", " + cx.to_string() + ", " + cyy.to_string() + ", " +
                cy.to_string() + ", " + cxy.to_string());

    auto rng = suite_rng(cfg, 3);
    Tally images, central;
    for (int i = 0; i < 50; ++i) {
        const Endomorphism sigma(rand_word(rng, 6, true), rand_word(rng, 6, true));
        const HeisenbergEndo L = factor(sigma);
        for (int j = 0; j < 20; ++j) {
            const Word u = rand_word(rng, 8, false);
            images.record(word_element(apply(sigma, u)) == L.apply(word_element(u)),
                          [&] { return sigma.to_string() + " on " + u.to_string(); });
        }
        std::uniform_int_distribution<long long> k(-9, 9);
        const long long n = k(rng);
        central.record(L.apply(LatticePoint{0, 0, n}) == LatticePoint{0, 0, L.det() * n},
                       [&] { return sigma.to_string(); });
    }
    images.report(s, "closed form agrees with products of generator images (50 positive substitutions)");
    central.report(s, "central element n maps to det(M) n");
    return s.finish();
}

json eigenflow_suite(const Config& cfg) {
    Suite s(4, "eigenflow central coordinate and conjugation");
    const EigenData E = fibonacci();
    const Q lam = E.lambda;
    s.check("fibonacci gamma = lambda - 3/2", E.gamma == lam - Q(Rational(3, 2)), E.gamma.to_string());
    const Q gp = gamma_for(E.endo, E.lambda_p, phi_pow(-2), -phi_pow(-1));
    s.check("gamma' for the eigenvector (1/phi^2, -1/phi) = 1/2", gp == kHalf, gp.to_string());

    auto rng = suite_rng(cfg, 4);
    const auto run = [&](const EigenData& D, const std::string& label) {
        Tally tl;
        for (long long i = 0; i < cfg.samples; ++i) {
            const Q t = rand_q(rng, D.context, 10, 7);
            const GroupPoint<Q> g = rand_point(rng, D.context);
            for (Eigen which : {Eigen::dominant, Eigen::contracting})
                tl.record(conjugation_holds(D, which, t, g), [&] { return "t=" + t.to_string() + " g=" + show(g); });
        }
        tl.report(s, "L o flow^t = flow^(mu t) o L for " + label);
    };
    run(E, "fibonacci");
    for (int k = 0; k < 10; ++k) {
        const GeneratedEndo g = random_hyperbolic(rng, 4);
        run(eigen_data(g.endo), g.endo.to_string());
    }
    return s.finish();
}

json induction_suite(const Config& cfg) {
    Suite s(5, "strip induction, renormalization and psi");
    const PiecewiseTorusMap T = strip_family(Q(-1), Q(0));
    const Q b2 = phi_pow(-2), b4 = phi_pow(-4);
    const auto strip = [&](const TorusPoint2& p) { return p.u < b2; };

    const PiecewiseTorusMap ind = induced_map(T, Q(0), b2);
    bool counts_ok = !ind.branches().empty();
    std::string desc;
    for (const auto& b : ind.branches()) {
        counts_ok = counts_ok && b.count == (b.hi <= b4 ? 2 : 3) && (b.hi <= b4 || b.lo >= b4);
        desc += "[" + b.lo.to_string() + ", " + b.hi.to_string() + "):" + std::to_string(b.count) + " ";
    }
    s.check("symbolic induced map: 2 returns on [0, 1/phi^4), 3 on [1/phi^4, 1/phi^2)", counts_ok, desc);

    Tally pointwise;
    const Q eps(Rational(1, 1000000));
    std::vector<Q> us{Q(0), b4 - eps, b4, b4 + eps, b2 - eps};
    for (long long i = 0; i < cfg.samples; ++i) us.push_back(b2 * Q(Rational(i, cfg.samples)));
    for (const Q& u : us) {
        const TorusPoint2 p{u, Q(Rational(1, 3))};
        const TorusReturn ret = first_return(T, strip, p);
        pointwise.record(ret.iterates == (u < b4 ? 2 : 3) && replay(T, p, ret),
                         [&] { return "u=" + u.to_string() + " n=" + std::to_string(ret.iterates); });
    }
    pointwise.report(s, "pointwise return counts (rational grid and breakpoints +-1e-6) with replay");

    std::vector<TorusPoint2> pts;
    auto rng = suite_rng(cfg, 5);
    for (long long i = 0; i < cfg.samples; ++i) pts.push_back({b2 * unit_q(rng), unit_q(rng)});
    std::vector<std::array<Q, 3>> triples{{Q(-1), Q(-1), Q(0)}};
    for (int k = 0; k < 4; ++k)
        triples.push_back({Q(rand_rational(rng, 10, 7)), Q(rand_rational(rng, 10, 7)), Q(rand_rational(rng, 10, 7))});
    for (const auto& [a, b, th] : triples) {
        const RenormalizationReport rep = renormalization_check(a, b, th, pts);
        const bool closed = rep.a == -phi_pow(3) &&
                            rep.theta_next == phi_pow(2) * th + phi_pow(2) * (a + Q(1)) - (b + Q(1));
        s.check("renormalization (s, s', theta) = (" + a.to_string() + ", " + b.to_string() + ", " + th.to_string() +
                    ")",
                rep.passed && closed && rep.samples == cfg.samples,
                rep.passed ? "theta' = " + rep.theta_next.to_string() + ", b = " + rep.b.to_string() : rep.witness);
    }

    std::vector<Q> ys;
    for (long long i = 0; i < cfg.samples; ++i) ys.push_back(unit_q(rng));
    ys.push_back(Q(Rational(1, 5)));
    ys.push_back(kHalf);
    const PsiReport psi = psi_identity_check(ys);
    for (const auto& item : psi.items) {
        if (item.name.find("informational") != std::string::npos)
            s.audit(item.name, item.passed, item.detail);
        else
            s.check(item.name, item.passed, item.detail);
    }
    return s.finish();
}

json section_suite(const Config& cfg) {
    Suite s(6, "section returns, self-induction and the diagonal section");
    auto rng = suite_rng(cfg, 6);
    const Section S(fibonacci());

    Tally exchange, replays;
    SectionPoint p = rand_section_point(rng, S);
    for (long long k = 0; k < cfg.iters; ++k) {
        const SectionReturn ret = sigma_return(S, p);
        const Q ds = ret.point.s - p.s;
        const bool ok = ((ds == S.E.s_a && ret.time == S.E.t_a) || (ds == S.E.s_b && ret.time == S.E.t_b)) &&
                        on_sigma(S, ret.point);
        exchange.record(ok, [&] { return "k=" + std::to_string(k) + " s=" + p.s.to_string(); });
        if (k < cfg.samples)
            replays.record(replay(S, p, ret) && return_is_first(S, p, ret), [&] { return "s=" + p.s.to_string(); });
        p = ret.point;
    }
    exchange.report(s, "two-interval exchange: translations {s_a, s_b}, times {t_a, t_b}");
    replays.report(s, "lattice word replays and the return is the first hit");

    const auto induction = [&](const Section& sec, long long n, const std::string& label) {
        std::vector<SectionPoint> pts{{Q(0), Q(0)}};
        while (static_cast<long long>(pts.size()) < n) pts.push_back(rand_section_point(rng, sec));
        const SelfInductionReport rep = self_induction_sigma(sec, pts);
        std::string witness;
        for (const auto& x : rep.samples)
            if (!x.passed) {
                witness = x.detail;
                break;
            }
        s.check("self-induction on the section, " + label, rep.passed,
                witness.empty() ? std::to_string(pts.size()) + " samples" : witness);
    };
    induction(S, cfg.samples, "fibonacci");
    for (int k = 0; k < 5; ++k) {
        const GeneratedEndo g = random_hyperbolic(rng, 5);
        induction(Section(eigen_data(g.endo)), std::max<long long>(cfg.samples / 5, 2), g.endo.to_string());
    }

    const AlgebraVector<Q> v = flow_of(S.E, Eigen::dominant);
    Tally diag, conj;
    for (long long i = 0; i < cfg.samples; ++i) {
        const DiagPoint d{unit_q(rng), unit_q(rng)};
        const DiagReturn ret = diag_return(v, d);
        diag.record(ret.time == Q(1) && mul(translate(v, diag_element(d)), lift<Q>(ret.witness)) ==
                                            diag_element(ret.point),
                    [&] { return "X=" + d.X.to_string(); });
        const SectionPoint sp = rand_section_point(rng, S);
        conj.record(diag_return(v, sigma_to_diag(S, sp)).point == sigma_to_diag(S, sigma_return(S, sp).point),
                    [&] { return "s=" + sp.s.to_string(); });
    }
    diag.report(s, "diagonal section: return time 1 and return map = translation by exp(alpha, beta, gamma)");
    conj.report(s, "section-to-diagonal map conjugates the two return maps");
    for (const auto& a : diag_audits(S)) s.check("inequality audit " + a.name, a.passed, a.detail);

    const Section C(eigen_data(factor(parse_substitution(cfg.substitution))));
    if (cfg.substitution != "a->ab;b->a") induction(C, cfg.samples, "configured substitution");
    return s.finish();
}

json chart_suite(const Config& cfg) {
    Suite s(7, "diagonal chart map is affinely conjugate to the skew map");
    auto rng = suite_rng(cfg, 7);
    std::vector<std::pair<Q, Q>> pts;
    for (long long i = 0; i < cfg.samples; ++i) pts.emplace_back(unit_q(rng), unit_q(rng));
    const ChartEquivalence eq = fibonacci_chart_equivalence(pts);
    s.check("exact affine conjugacy found and verified", eq.found && eq.verified_points == cfg.samples,
            "h(X, W) = (" + std::to_string(eq.eps) + " X + " + eq.u0.to_string() + ", " + std::to_string(eq.delta) +
                " W + " + std::to_string(eq.kappa) + " X + " + eq.w0.to_string() + "); " + eq.detail);
    const TorusPoint2 g0 = golden_skew_map()(TorusPoint2{Q(0), Q(0)});
    s.check("skew map at (0,0) = (1/phi^2, 1 - 1/(2 phi^3))",
            g0.u == phi_pow(-2) && g0.v == Q(1) - phi_pow(-3) * kHalf, g0.u.to_string() + ", " + g0.v.to_string());
    return s.finish();
}

json counterexample_section(const Config& cfg) {
    Suite s(8, "trapezoid example and C_x conjugation");
    auto rng = suite_rng(cfg, 8);
    const RegionCoeffs coeffs = RegionCoeffs::literal();
    std::vector<Point2> ids, audit;
    for (long long i = 0; i < cfg.samples; ++i)
        ids.emplace_back(Q(rand_rational(rng, 20, 9)) + Q(Rational(0), rand_rational(rng, 5, 3), kGolden),
                         Q(rand_rational(rng, 20, 9)));
    for (long long i = 0; i < 4 * cfg.samples; ++i) {
        const Q x = Q(unit_rational(rng)) * Q(2) - Q(1);
        audit.emplace_back(x, region_p(coeffs, x) + Q(1) - Q(unit_rational(rng)));
    }
    const CounterexampleReport rep = counterexample_suite(coeffs, ids, audit);
    s.check("affine return identity for n in {0,1,2,3}", rep.passed,
            std::to_string(rep.identity_cases - rep.identity_failures) + "/" + std::to_string(rep.identity_cases) +
                (rep.identity_witness.empty() ? "" : "; " + rep.identity_witness));
    const Point2 two = trapezoid_return_formula(2, {Q(0), Q(0)});
    s.check("identity at n = 2, (0,0) gives (1/phi^2, -1/(2 phi^3))",
            two.first == phi_pow(-2) && two.second == -phi_pow(-3) * kHalf);
    for (const auto& a : rep.audits) s.audit(a.name, a.passed, a.detail);

    Tally cx;
    for (long long i = 0; i < cfg.samples; ++i) {
        const Q x0 = rand_q(rng, kGolden);
        const GroupPoint<Q> g = rand_point(rng, kGolden), y = rand_point(rng, kGolden);
        cx.record(cx_conjugation_holds(x0, g, y), [&] { return "x=" + x0.to_string() + " g=" + show(g); });
    }
    cx.report(s, "C_x conjugation identity");
    const EigenData E = fibonacci();
    const Q g0 = gamma_zero(E);
    s.check("fibonacci gamma_0 = 3/2 - lambda", g0 == Q(Rational(3, 2)) - E.lambda, g0.to_string());
    const CxReport one = conjugation_Cx(E, Q(1), {kHalf, Q(Rational(1, 3)), Q(0)});
    s.check("x = 1, g = [1/2, 1/3, 0]: both sides [3/2, 1/3, 1/3]",
            one.identity_holds && one.lhs == GroupPoint<Q>{Q(Rational(3, 2)), Q(Rational(1, 3)), Q(Rational(1, 3))},
            show(one.lhs) + " / " + show(one.rhs));
    const CxReport res = conjugation_Cx(E, Q(Rational(1, 3)), {kHalf, Q(Rational(1, 3)), Q(0)});
    s.audit("non-resonance of gamma + beta x at x = 1/3 (|n|, |m| <= 10)", res.non_resonant, res.detail);
    return s.finish();
}

json equidistribution_suite(const Config& cfg) {
    Suite s(9, "equidistribution proxies");
    const WeylConfig& w = cfg.weyl;
    const auto line = [](const WeylReport& r) {
        return "N=" + std::to_string(r.samples) + (r.escalated ? " (escalated)" : "") +
               " max modulus=" + format_double(r.max_modulus) + " tolerance=" + format_double(r.tolerance);
    };
    const WeylReport torus =
        equidistribution_torus(golden_skew_map(), 0.0, 0.0, w.samples, w.max_index, w.tolerance, w.escalate_to);
    s.check("skew map Weyl sums, 0 < max(|p|,|q|) <= " + std::to_string(w.max_index), torus.passed, line(torus));
    const WeylReport nil = equidistribution_nilflow(flow_of(fibonacci(), Eigen::dominant), {0.0, 0.0, 0.0}, w.dt,
                                                    w.samples, w.max_index, w.tolerance, w.escalate_to);
    s.check("fibonacci nilflow Weyl sums on the cube (x, z)", nil.passed, line(nil));
    bool trivial = true;
    for (const auto& e : torus.entries)
        if (e.p == 0 && e.q == 0) trivial = std::abs(e.modulus - 1.0) < 1e-9;
    s.check("(p, q) = (0, 0) average is 1", trivial);
    return s.finish();
}

json broken_line_suite(const Config& cfg) {
    Suite s(10, "broken line of the fibonacci word");
    const Endomorphism tau = parse_substitution("a->ab;b->a");
    const std::size_t n_pairs = static_cast<std::size_t>(cfg.iters);
    const std::size_t n_proj = 10 * n_pairs;
    const Word w = fixed_point_prefix(tau, n_proj);
    const std::vector<LatticePoint> line = broken_line(w);

    // Independent count: for every b, scan all earlier letters.
    std::vector<long long> pairs_before(n_pairs + 1, 0);
    for (std::size_t j = 0; j < n_pairs; ++j) {
        long long here = 0;
        if (w[j] == Letter::b)
            for (std::size_t i = 0; i < j; ++i) here += (w[i] == Letter::a);
        pairs_before[j + 1] = pairs_before[j] + here;
    }
    Tally inv;
    for (std::size_t k = 0; k <= n_pairs; ++k)
        inv.record(line[k].p == pairs_before[k], [&] { return "k=" + std::to_string(k); });
    inv.report(s, "c_k equals the brute-force count of (a before b) pairs, k <= " + std::to_string(n_pairs));

    const Q a = phi_pow(-1), b = phi_pow(-2);
    Q sup(0);
    std::size_t at = 0;
    for (std::size_t k = 0; k < line.size(); ++k) {
        const Q kk(static_cast<long long>(k));
        const Q u = (Q(line[k].n) - kk * a).abs(), v = (Q(line[k].m) - kk * b).abs();
        const Q m = u < v ? v : u;
        if (sup < m) {
            sup = m;
            at = k;
        }
    }
    s.check("sup norm of (a_k - k/phi, b_k - k/phi^2) < 2 for k <= " + std::to_string(n_proj), sup < Q(2),
            "sup = " + sup.to_string() + " (" + format_double(sup.to_double()) + ") at k = " + std::to_string(at));
    return s.finish();
}

json decomposition_suite(const Config& cfg) {
    Suite s(11, "decomposition into the six generators");
    auto rng = suite_rng(cfg, 11);
    std::uniform_int_distribution<int> idx(1, 6), pw(0, 1), len(0, 10);
    Tally t;
    for (int i = 0; i < 50; ++i) {
        std::vector<SignedGenerator> word;
        for (int k = len(rng); k > 0; --k) word.push_back({idx(rng), pw(rng) ? 1 : -1});
        const HeisenbergEndo l = recompose(word);
        t.record(recompose(decompose(l)) == l, [&] { return l.to_string(); });
    }
    t.report(s, "recompose(decompose(L)) = L for 50 random products of <= 10 generators");
    return s.finish();
}

json determinism_suite(const Config& cfg) {
    Suite s(12, "determinism");
    Config small = cfg;
    small.samples = std::min<long long>(cfg.samples, 20);
    for (int id : {1, 2, 3, 11}) {
        const std::string first = verify_criterion(id, small).dump();
        const std::string second = verify_criterion(id, small).dump();
        s.check("criterion " + std::to_string(id) + " report is identical on rerun", first == second);
    }
    return s.finish();
}

}  // namespace

json verify_criterion(int id, const Config& cfg) {
    switch (id) {
        case 1: return group_suite(cfg);
        case 2: return commutation_suite(cfg);
        case 3: return factorization_suite(cfg);
        case 4: return eigenflow_suite(cfg);
        case 5: return induction_suite(cfg);
        case 6: return section_suite(cfg);
        case 7: return chart_suite(cfg);
        case 8: return counterexample_section(cfg);
        case 9: return equidistribution_suite(cfg);
        case 10: return broken_line_suite(cfg);
        case 11: return decomposition_suite(cfg);
        case 12: return determinism_suite(cfg);
    }
    throw ConfigError("no criterion " + std::to_string(id));
}

}  // namespace heis::app
