#include "heis/dynamics.hpp"

#include <cmath>

namespace heis {

namespace {

const Q kHalf(Rational(1, 2));

long long to_ll(const Integer& v) {
    if (!v.fits_slong_p()) throw DynamicsError("integer part out of 64-bit range");
    return v.get_si();
}

bool is_integer(const Rational& r) { return r.is_integer(); }

GroupPoint<Q> apply_word(GroupPoint<Q> g, const std::vector<LatticePoint>& word) {
    for (const auto& w : word) g = mul(g, lift<Q>(w));
    return g;
}

std::string show(const SectionPoint& p) { return "(s=" + p.s.to_string() + ", zoff=" + p.zoff.to_string() + ")"; }

}  // namespace

// ---------------------------------------------------------------- Sigma

Section::Section(EigenData e) : E(std::move(e)), quadric(surface_quadric(E)) {
    if (!section_admissible(E)) throw DynamicsError("section geometry not admissible for " + E.endo.to_string());
}

bool on_sigma(const Section& S, const SectionPoint& p) {
    return p.s >= S.E.s_a && p.s < S.E.s_b && p.zoff >= -kHalf && p.zoff < kHalf;
}

GroupPoint<Q> section_element(const Section& S, const SectionPoint& p) {
    const Q x = S.E.alpha_p * p.s, y = S.E.beta_p * p.s;
    return {x, y, S.quadric(x, y) + p.zoff};
}

std::optional<SectionPoint> locate_on_sigma(const Section& S, const GroupPoint<Q>& g, LatticePoint* witness) {
    const Q& ap = S.E.alpha_p;
    const Q& bp = S.E.beta_p;
    // n beta' - m alpha' = y alpha' - x beta', compared in the basis (1, l).
    const Q rhs = g.y * ap - g.x * bp;
    const Rational a11 = bp.a(), a12 = -ap.a(), a21 = bp.b(), a22 = -ap.b();
    const Rational det = a11 * a22 - a12 * a21;
    if (det.is_zero()) throw DynamicsError("contracting direction has rational slope");
    const Rational n = (rhs.a() * a22 - a12 * rhs.b()) / det;
    const Rational m = (a11 * rhs.b() - a21 * rhs.a()) / det;
    if (!is_integer(n) || !is_integer(m)) return std::nullopt;
    const long long ni = to_ll(n.floor()), mi = to_ll(m.floor());
    const Q x = g.x + Q(ni), y = g.y + Q(mi);
    const Q s = x / ap;
    if (s < S.E.s_a || !(s < S.E.s_b)) return std::nullopt;
    const Q z = g.z + g.x * Q(mi);
    const Q zoff0 = z - S.quadric(x, y);
    const long long p = -to_ll((zoff0 + kHalf).floor());
    if (witness) *witness = {ni, mi, p};
    return SectionPoint{s, zoff0 + Q(p)};
}

SectionReturn sigma_return(const Section& S, const SectionPoint& p) {
    if (!on_sigma(S, p)) throw DynamicsError("point not on the section: " + show(p));
    const bool right = p.s.sign() >= 0;
    SectionReturn r;
    r.time = right ? S.E.t_a : S.E.t_b;
    const LatticePoint step = right ? LatticePoint{-1, 0, 0} : LatticePoint{0, -1, 0};
    const GroupPoint<Q> g = mul(flow(flow_of(S.E, Eigen::dominant), r.time, section_element(S, p)), lift<Q>(step));
    const Q s = p.s + (right ? S.E.s_a : S.E.s_b);
    if (g.x != S.E.alpha_p * s || g.y != S.E.beta_p * s) throw DynamicsError("section return left the section line");
    const Q zoff0 = g.z - S.quadric(g.x, g.y);
    const long long k = -to_ll((zoff0 + kHalf).floor());
    r.point = {s, zoff0 + Q(k)};
    r.iterates = 1;
    r.lattice_word.push_back({step.n, step.m, k});
    return r;
}

bool replay(const Section& S, const SectionPoint& start, const SectionReturn& rec) {
    const GroupPoint<Q> g = apply_word(flow(flow_of(S.E, Eigen::dominant), rec.time, section_element(S, start)),
                                       rec.lattice_word);
    return g == section_element(S, rec.point);
}

bool return_is_first(const Section& S, const SectionPoint& p, const SectionReturn& rec) {
    const EigenData& E = S.E;
    // A hit on the translate by (n, m) happens at tau = (m alpha' - n beta') / Delta
    // with section parameter s + (alpha tau + n) / alpha'. The z offset can
    // always be absorbed by a central element, so only (n, m) matter.
    const double ap = E.alpha_p.to_double(), bp = E.beta_p.to_double(), a = E.alpha.to_double(),
                 b = E.beta.to_double(), s = p.s.to_double(), t = rec.time.to_double();
    const double sa = E.s_a.to_double(), sb = E.s_b.to_double();
    const long long n_lo = static_cast<long long>(std::floor(ap * (sa - s) - std::abs(a) * t)) - 2;
    const long long n_hi = static_cast<long long>(std::ceil(ap * (sb - s) + std::abs(a) * t)) + 2;
    const double y_lo = std::min(bp * sa, bp * sb) - bp * s, y_hi = std::max(bp * sa, bp * sb) - bp * s;
    const long long m_lo = static_cast<long long>(std::floor(y_lo - std::abs(b) * t)) - 2;
    const long long m_hi = static_cast<long long>(std::ceil(y_hi + std::abs(b) * t)) + 2;
    for (long long n = n_lo; n <= n_hi; ++n) {
        for (long long m = m_lo; m <= m_hi; ++m) {
            const Q tau = (Q(m) * E.alpha_p - Q(n) * E.beta_p) / E.delta;
            if (tau.sign() <= 0 || !(tau < rec.time)) continue;
            const Q sigma = p.s + (E.alpha * tau + Q(n)) / E.alpha_p;
            if (sigma >= E.s_a && sigma < E.s_b) return false;
        }
    }
    return true;
}

SelfInductionReport self_induction_sigma(const Section& S, const std::vector<SectionPoint>& samples,
                                         long long max_sub_returns) {
    const EigenData& E = S.E;
    if (E.lambda.sign() <= 0) throw DynamicsError("self-induction needs a positive dominant eigenvalue");
    const HeisenbergEndo L = E.endo, Linv = invert(E.endo);
    SelfInductionReport rep;
    for (const auto& p : samples) {
        InductionSample out;
        out.point = p;
        const SectionReturn direct = sigma_return(S, p);
        const auto start = locate_on_sigma(S, L.apply(section_element(S, p)));
        if (!start) {
            out.detail = "L(Sigma) point does not lie on Sigma";
        } else {
            SectionPoint cur = *start;
            for (;;) {
                if (out.sub_returns >= max_sub_returns) {
                    out.detail = "no return to L(Sigma) within the sub-return limit";
                    break;
                }
                const SectionReturn r = sigma_return(S, cur);
                ++out.sub_returns;
                out.time += r.time;
                cur = r.point;
                const auto back = locate_on_sigma(S, Linv.apply(section_element(S, cur)));
                if (!back) continue;
                out.passed = *back == direct.point && out.time == E.lambda * direct.time;
                if (!out.passed)
                    out.detail = "pulled back " + show(*back) + " time " + out.time.to_string() + "; expected " +
                                 show(direct.point) + " time " + (E.lambda * direct.time).to_string();
                break;
            }
        }
        if (!out.passed) ++rep.failures;
        rep.samples.push_back(std::move(out));
    }
    rep.passed = rep.failures == 0 && !samples.empty();
    return rep;
}

// ------------------------------------------------------------- diagonal

GroupPoint<Q> diag_element(const DiagPoint& p) { return {p.X, -p.X, p.Z}; }

DiagPoint diag_reduce(const GroupPoint<Q>& g, LatticePoint* witness) {
    const Q sum = g.x + g.y;
    if (!sum.is_rational() || !is_integer(sum.a())) throw DynamicsError("point is off the diagonal section");
    const long long n = -to_ll(g.x.floor());
    const Q X = g.x + Q(n);
    const long long m = to_ll((-X - g.y).floor());
    const Q z = g.z + g.x * Q(m);
    const long long p = -to_ll(z.floor());
    if (witness) *witness = {n, m, p};
    return {X, z + Q(p)};
}

DiagSection diag_section(const AlgebraVector<Q>& flow) {
    if (flow.alpha + flow.beta != Q(1)) throw DynamicsError("diagonal section needs alpha + beta = 1");
    const Q& a = flow.alpha;
    const Q c0 = flow.gamma + a * flow.beta * kHalf;
    DiagSection d;
    d.flow = flow;
    const Q split = (Q(1) - a).frac();
    std::vector<TorusBranch> raw;
    if (split.sign() > 0)
        raw.push_back({Q(0), split, a, Q(0), -(Q(1) + a), c0 - a, 1});
    raw.push_back({split, Q(1), a, Q(0), -a, c0, 1});
    d.chart_map = PiecewiseTorusMap(std::move(raw), "diagonal return");
    d.translation_constant = (c0 + (a * a - Q(3) * a) * kHalf).frac();
    d.normalized_map = PiecewiseTorusMap({{Q(0), Q(1), a, Q(0), Q(-1), d.translation_constant, 1}},
                                         "normalized diagonal return");
    return d;
}

DiagReturn diag_return(const AlgebraVector<Q>& flow, const DiagPoint& p) {
    // x + y grows at unit speed along the flow, so the next hit is at time 1.
    DiagReturn r;
    r.time = Q(1) / (flow.alpha + flow.beta);
    r.point = diag_reduce(heis::flow(flow, r.time, diag_element(p)), &r.witness);
    return r;
}

Q diag_normalize(const DiagPoint& p) { return (p.Z + p.X * (p.X - Q(1)) * kHalf).frac(); }

DiagPoint diag_denormalize(const Q& X, const Q& W) { return {X, (W - X * (X - Q(1)) * kHalf).frac()}; }

Q sigma_to_diag_time(const Section& S, const SectionPoint& p) { return -(S.E.alpha_p + S.E.beta_p) * p.s; }

DiagPoint sigma_to_diag(const Section& S, const SectionPoint& p) {
    return diag_reduce(flow(flow_of(S.E, Eigen::dominant), sigma_to_diag_time(S, p), section_element(S, p)));
}

std::vector<AuditItem> diag_audits(const Section& S) {
    const EigenData& E = S.E;
    const Q w = E.alpha_p + E.beta_p;
    const auto item = [](std::string name, const Q& lhs, const Q& rhs) {
        return AuditItem{std::move(name), lhs < rhs, lhs.to_string() + " < " + rhs.to_string()};
    };
    std::vector<AuditItem> out;
    if (w.sign() < 0) {
        out.push_back(item("-(a'+b') s_b < t_b", -w * E.s_b, E.t_b));
        out.push_back(item("(a'+b') s_a < t_b", w * E.s_a, E.t_b));
        out.push_back(item("b' < alpha (a'+b')", E.beta_p, E.alpha * w));
        out.push_back(item("b' < beta (a'+b')", E.beta_p, E.beta * w));
    } else if (w.sign() > 0) {
        out.push_back(item("-(a'+b') s_a < t_a", -w * E.s_a, E.t_a));
        out.push_back(item("(a'+b') (s_a + s_b) < t_a", w * (E.s_a + E.s_b), E.t_a));
        out.push_back(item("(a'+b') s_b < t_b", w * E.s_b, E.t_b));
    } else {
        out.push_back({"a' + b' != 0", false, "contracting direction is anti-diagonal"});
    }
    return out;
}

namespace {

struct AffineSearch {
    int eps, delta, kappa;
    Q u0;
};

// h(X, W) = (eps X + u0, delta W + kappa X) mod 1; solves u0 from the first
// point and checks h o F = G o h on all of them.
std::optional<AffineSearch> search_affine(const PiecewiseTorusMap& F, const PiecewiseTorusMap& G,
                                          const std::vector<std::pair<Q, Q>>& points) {
    const auto h = [](const AffineSearch& a, const TorusPoint2& p) {
        return TorusPoint2::reduced(Q(a.eps) * p.u + a.u0, Q(a.delta) * p.v + Q(a.kappa) * p.u);
    };
    for (int kappa : {0, 1, -1, 2, -2}) {
        for (int eps : {1, -1}) {
            for (int delta : {1, -1}) {
                const TorusPoint2 p0{points.front().first, points.front().second};
                const TorusPoint2 f0 = F(p0);
                // Second coordinate of G(h(p0)) adds y = eps X + u0 - floor; the floor is an integer.
                const Q u0 = (Q(delta) * f0.v + Q(kappa) * f0.u - Q(delta) * p0.v - Q(kappa) * p0.u -
                              Q(eps) * p0.u - G.branches().front().c0)
                                 .frac();
                const AffineSearch cand{eps, delta, kappa, u0};
                bool ok = true;
                for (const auto& [x, w] : points) {
                    const TorusPoint2 p{x, w};
                    if (!(h(cand, F(p)) == G(h(cand, p)))) {
                        ok = false;
                        break;
                    }
                }
                if (ok) return cand;
            }
        }
    }
    return std::nullopt;
}

}  // namespace

ChartEquivalence fibonacci_chart_equivalence(const std::vector<std::pair<Q, Q>>& points) {
    ChartEquivalence out;
    if (points.empty()) throw DynamicsError("chart equivalence needs sample points");
    const EigenData E = eigen_data(factor(parse_substitution("a->ab;b->a")));
    const DiagSection d = diag_section(flow_of(E, Eigen::dominant));
    const PiecewiseTorusMap G = golden_skew_map();
    const auto found = search_affine(d.normalized_map, G, points);
    const auto raw = search_affine(d.chart_map, G, points);
    if (found) {
        out.found = true;
        out.eps = found->eps;
        out.delta = found->delta;
        out.kappa = found->kappa;
        out.u0 = found->u0;
        out.w0 = Q(0);
        out.verified_points = static_cast<long long>(points.size());
    }
    out.detail = std::string("normalized chart: ") + (found ? "conjugacy found" : "none found") +
                 "; raw (X, Z) chart: " + (raw ? "conjugacy found" : "no affine conjugacy");
    return out;
}

// --------------------------------------------------------------- C_x

bool cx_conjugation_holds(const Q& x0, const GroupPoint<Q>& g, const GroupPoint<Q>& y) {
    const GroupPoint<Q> c{x0, Q(0), Q(0)};
    const GroupPoint<Q> gx{g.x, g.y, g.z + g.y * x0};
    return mul(mul(c, g), y) == mul(mul(gx, c), y);
}

Q gamma_zero(const EigenData& E) {
    const Q AC(E.endo.m_aa * E.endo.m_ba), BD(E.endo.m_ab * E.endo.m_bb);
    return -(E.alpha * AC + E.beta * BD) / (Q(2) * E.lambda - Q(2 * E.endo.det()));
}

CxReport conjugation_Cx(const EigenData& E, const Q& x0, const GroupPoint<Q>& g, long long grid_bound) {
    CxReport r;
    const GroupPoint<Q> c{x0, Q(0), Q(0)};
    r.lhs = mul(c, g);
    r.rhs = mul(GroupPoint<Q>{g.x, g.y, g.z + g.y * x0}, c);
    r.identity_holds = r.lhs == r.rhs && cx_conjugation_holds(x0, g, g);
    r.gamma0 = gamma_zero(E);
    const Q shifted = E.gamma + E.beta * x0;
    r.non_resonant = true;
    for (long long n = -grid_bound; n <= grid_bound && r.non_resonant; ++n) {
        for (long long m = -grid_bound; m <= grid_bound; ++m) {
            if (gamma_for(E.endo, E.lambda, E.alpha, E.beta, Q(n), Q(m)) == shifted) {
                r.non_resonant = false;
                r.detail = "gamma + beta x0 = grid value at e=" + std::to_string(n) + ", f=" + std::to_string(m);
                break;
            }
        }
    }
    const bool g0_ok = gamma_for(E.endo, E.lambda, E.alpha, E.beta, Q(0), Q(0)) == r.gamma0;
    if (r.detail.empty()) r.detail = "gamma + beta x0 = " + shifted.to_string();
    r.detail += std::string("; gamma_0 = ") + r.gamma0.to_string() + (g0_ok ? "" : " (grid mismatch)");
    return r;
}

}  // namespace heis
