#include "heis/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace heis {

namespace {

struct Poly {
    Q c2, c1, c0;
};

Poly poly_of(const TorusBranch& b) { return {b.c2, b.c1, b.c0}; }

// P(u + c)
Poly shift(const Poly& p, const Q& c) {
    return {p.c2, Q(2) * p.c2 * c + p.c1, p.c2 * c * c + p.c1 * c + p.c0};
}

Poly operator+(const Poly& a, const Poly& b) { return {a.c2 + b.c2, a.c1 + b.c1, a.c0 + b.c0}; }
Poly operator-(const Poly& a) { return {-a.c2, -a.c1, -a.c0}; }

Q eval(const Poly& p, const Q& u) { return (p.c2 * u + p.c1) * u + p.c0; }

long long to_ll(const Integer& v) {
    if (!v.fits_slong_p()) throw DynamicsError("integer part out of 64-bit range");
    return v.get_si();
}

const Q& qmax(const Q& a, const Q& b) { return a < b ? b : a; }
const Q& qmin(const Q& a, const Q& b) { return a < b ? a : b; }

// Pieces of [lo, hi) on which u + du has constant integer part k; returns
// (piece_lo, piece_hi, k).
std::vector<std::tuple<Q, Q, long long>> wrap_pieces(const Q& lo, const Q& hi, const Q& du) {
    std::vector<std::tuple<Q, Q, long long>> out;
    const long long kmin = to_ll((lo + du).floor());
    const long long kmax = to_ll((hi + du).floor());
    for (long long k = kmin; k <= kmax; ++k) {
        const Q a = qmax(lo, Q(k) - du), b = qmin(hi, Q(k + 1) - du);
        if (a < b) out.emplace_back(a, b, k);
    }
    return out;
}

TorusBranch make_branch(const Q& lo, const Q& hi, const Q& du, const Poly& p, int count) {
    return {lo, hi, du, p.c2, p.c1, p.c0, count};
}

const Q kHalf(Rational(1, 2));

}  // namespace

TorusPoint2 TorusPoint2::reduced(const Q& u, const Q& v) { return {u.frac(), v.frac()}; }

PiecewiseTorusMap::PiecewiseTorusMap(std::vector<TorusBranch> branches, std::string name)
    : branches_(std::move(branches)), name_(std::move(name)) {
    std::sort(branches_.begin(), branches_.end(), [](const TorusBranch& a, const TorusBranch& b) { return a.lo < b.lo; });
    for (std::size_t i = 0; i < branches_.size(); ++i) {
        if (!(branches_[i].lo < branches_[i].hi)) throw DynamicsError("empty branch interval");
        if (i > 0 && branches_[i].lo < branches_[i - 1].hi) throw DynamicsError("overlapping branch intervals");
        float_bounds_.emplace_back(branches_[i].lo.to_double(), branches_[i].hi.to_double());
    }
}

std::size_t PiecewiseTorusMap::branch_of(const Q& u) const {
    // Branches are sorted and disjoint: find the last one with lo <= u.
    auto it = std::upper_bound(branches_.begin(), branches_.end(), u,
                               [](const Q& x, const TorusBranch& b) { return x < b.lo; });
    if (it != branches_.begin()) {
        --it;
        if (u < it->hi) return static_cast<std::size_t>(it - branches_.begin());
    }
    throw DynamicsError("map undefined at u = " + u.to_string());
}

bool PiecewiseTorusMap::defined_at(const Q& u) const {
    try {
        branch_of(u);
        return true;
    } catch (const DynamicsError&) {
        return false;
    }
}

PiecewiseTorusMap::Step PiecewiseTorusMap::step(const TorusPoint2& p) const {
    const std::size_t i = branch_of(p.u);
    const TorusBranch& b = branches_[i];
    const Q ru = p.u + b.du;
    const Q rv = p.v + eval(poly_of(b), p.u);
    const auto [nu, fu] = ru.floor_mod1();
    const auto [nv, fv] = rv.floor_mod1();
    return {{fu, fv}, i, {to_ll(nu), to_ll(nv), 0}};
}

std::pair<double, double> PiecewiseTorusMap::operator()(double u, double v) const {
    for (std::size_t i = 0; i < branches_.size(); ++i) {
        if (u >= float_bounds_[i].first && u < float_bounds_[i].second) {
            const TorusBranch& b = branches_[i];
            const double ru = u + b.du.to_double();
            const double rv = v + (b.c2.to_double() * u + b.c1.to_double()) * u + b.c0.to_double();
            return {ru - std::floor(ru), rv - std::floor(rv)};
        }
    }
    throw DynamicsError("map undefined at float u");
}

PiecewiseTorusMap compose(const PiecewiseTorusMap& second, const PiecewiseTorusMap& first) {
    std::vector<TorusBranch> out;
    for (const auto& b1 : first.branches()) {
        for (const auto& [lo, hi, k] : wrap_pieces(b1.lo, b1.hi, b1.du)) {
            const Q c = b1.du - Q(k);
            for (const auto& b2 : second.branches()) {
                const Q a = qmax(lo, b2.lo - c), b = qmin(hi, b2.hi - c);
                if (!(a < b)) continue;
                out.push_back(make_branch(a, b, c + b2.du, poly_of(b1) + shift(poly_of(b2), c), b1.count + b2.count));
            }
        }
    }
    return PiecewiseTorusMap(std::move(out));
}

PiecewiseTorusMap inverse(const PiecewiseTorusMap& map) {
    std::vector<TorusBranch> out;
    for (const auto& b : map.branches()) {
        for (const auto& [lo, hi, k] : wrap_pieces(b.lo, b.hi, b.du)) {
            const Q c = b.du - Q(k);
            out.push_back(make_branch(lo + c, hi + c, -c, -shift(poly_of(b), -c), b.count));
        }
    }
    return PiecewiseTorusMap(std::move(out), map.name().empty() ? std::string() : map.name() + "^-1");
}

PiecewiseTorusMap induced_map(const PiecewiseTorusMap& map, const Q& lo, const Q& hi, int max_iter) {
    struct Piece {
        Q a, b, c;  // u in [a, b) currently sits at u + c
        Poly poly;
        int count;
    };
    std::vector<Piece> work{{lo, hi, Q(0), Poly{Q(0), Q(0), Q(0)}, 0}};
    std::vector<TorusBranch> out;
    while (!work.empty()) {
        Piece p = std::move(work.back());
        work.pop_back();
        if (p.count > 0) {
            // Split against the region; pieces inside are finished.
            const Q in_a = qmax(p.a, lo - p.c), in_b = qmin(p.b, hi - p.c);
            if (in_a < in_b) {
                out.push_back(make_branch(in_a, in_b, p.c, p.poly, p.count));
                if (p.a < in_a) work.push_back({p.a, in_a, p.c, p.poly, p.count + 0});
                if (in_b < p.b) work.push_back({in_b, p.b, p.c, p.poly, p.count + 0});
                // The two remainders are outside the region; mark them so the
                // next pop advances them instead of re-testing.
                for (auto it = work.end() - ((p.a < in_a) + (in_b < p.b)); it != work.end(); ++it) it->count = -it->count;
                continue;
            }
        }
        if (p.count < 0) p.count = -p.count;
        if (p.count >= max_iter) throw DynamicsError("induced map: return time exceeds max_iter");
        for (const auto& br : map.branches()) {
            const Q a = qmax(p.a, br.lo - p.c), b = qmin(p.b, br.hi - p.c);
            if (!(a < b)) continue;
            const Q start = p.c + br.du;
            for (const auto& [wa, wb, k] : wrap_pieces(a, b, start)) {
                work.push_back({wa, wb, start - Q(k), p.poly + shift(poly_of(br), p.c), p.count + br.count});
            }
        }
    }
    return PiecewiseTorusMap(std::move(out), map.name().empty() ? std::string() : "induced " + map.name());
}

PiecewiseTorusMap strip_family(const Q& s, const Q& theta) {
    const Q f = phi();
    const Q inv_f = phi_pow(-1), inv_f2 = phi_pow(-2);
    const Q s1 = s + Q(1);
    std::vector<TorusBranch> b{
        {Q(0), inv_f2, Q(1) - inv_f2, Q(0), -f, theta - inv_f + s1 * f, 1},
        {inv_f2, Q(1), -inv_f2, Q(0), -inv_f, theta + s1 * inv_f, 1},
    };
    return PiecewiseTorusMap(std::move(b), "T^s");
}

PiecewiseTorusMap golden_skew_map() {
    std::vector<TorusBranch> b{{Q(0), Q(1), phi_pow(-2), Q(0), Q(1), -phi_pow(-3) * kHalf, 1}};
    return PiecewiseTorusMap(std::move(b), "G");
}

TorusReturn first_return(const PiecewiseTorusMap& map, const std::function<bool(const TorusPoint2&)>& region,
                         const TorusPoint2& p, long long max_iter) {
    TorusReturn rec;
    TorusPoint2 cur = p;
    for (long long n = 1; n <= max_iter; ++n) {
        const auto st = map.step(cur);
        rec.branches.push_back(st.branch);
        rec.lattice_word.push_back(st.correction);
        cur = st.point;
        if (region(cur)) {
            rec.point = cur;
            rec.iterates = n;
            return rec;
        }
    }
    throw DynamicsError("first return not found within max_iter");
}

bool replay(const PiecewiseTorusMap& map, const TorusPoint2& start, const TorusReturn& rec) {
    if (rec.branches.size() != rec.lattice_word.size()) return false;
    TorusPoint2 cur = start;
    for (std::size_t i = 0; i < rec.branches.size(); ++i) {
        if (rec.branches[i] >= map.branches().size()) return false;
        const TorusBranch& b = map.branches()[rec.branches[i]];
        if (cur.u < b.lo || !(cur.u < b.hi)) return false;
        const Q u = cur.u + b.du - Q(rec.lattice_word[i].n);
        const Q v = cur.v + eval(poly_of(b), cur.u) - Q(rec.lattice_word[i].m);
        if (u.sign() < 0 || !(u < Q(1)) || v.sign() < 0 || !(v < Q(1))) return false;
        cur = {u, v};
    }
    return cur == rec.point;
}

// --------------------------------------------------------- renormalization

RenormalizationReport renormalization_check(const Q& s, const Q& s_next, const Q& theta,
                                            const std::vector<TorusPoint2>& points) {
    RenormalizationReport rep;
    rep.s = s;
    rep.s_next = s_next;
    rep.theta = theta;
    const Q f = phi(), f2 = phi_pow(2);
    rep.a = -phi_pow(3);
    rep.b = f2 * theta + f * (s + Q(1)) + f2 * (s_next + Q(1)) - f;
    rep.theta_next = f2 * theta + f2 * (s + Q(1)) - (s_next + Q(1));

    const PiecewiseTorusMap T = strip_family(s, theta);
    const PiecewiseTorusMap T_next = strip_family(s_next, rep.theta_next);
    const Q bound = phi_pow(-2);
    const auto in_strip = [&](const TorusPoint2& p) { return p.u < bound; };
    const auto transfer = [&](const TorusPoint2& p) {
        return TorusPoint2::reduced(f2 * p.u, rep.a * p.u * p.u + rep.b * p.u + p.v);
    };
    rep.passed = true;
    for (const auto& p : points) {
        if (p.u.sign() < 0 || !(p.u < bound)) throw DynamicsError("renormalization sample outside [0, 1/phi^2)");
        const TorusPoint2 lhs = transfer(first_return(T, in_strip, p).point);
        const TorusPoint2 rhs = T_next(transfer(p));
        ++rep.samples;
        if (!(lhs == rhs)) {
            rep.passed = false;
            rep.witness = "u=" + p.u.to_string() + " v=" + p.v.to_string() + " lhs=(" + lhs.u.to_string() + ", " +
                          lhs.v.to_string() + ") rhs=(" + rhs.u.to_string() + ", " + rhs.v.to_string() + ")";
            break;
        }
    }
    return rep;
}

// -------------------------------------------------------------------- psi

Q psi_strip(const Q& y) {
    if (y < phi_pow(-2)) return -phi() * y - phi_pow(-1);
    return -y * phi_pow(-1);
}

Q psi_potential(const Q& y) { return -y * y * kHalf - y * kHalf; }

PsiReport psi_identity_check(const std::vector<Q>& ys) {
    PsiReport rep;
    const Q inv_f = phi_pow(-1), b = phi_pow(-2);
    const Q left = -phi() * b - inv_f;  // first branch evaluated at the breakpoint
    const Q right = psi_strip(b);
    rep.items.push_back({"psi(0) = -1/phi", psi_strip(Q(0)) == -inv_f, psi_strip(Q(0)).to_string()});
    rep.items.push_back({"psi(1) = -1/phi", psi_strip(Q(1)) == -inv_f, psi_strip(Q(1)).to_string()});
    rep.items.push_back({"jump at 1/phi^2: left limit - value = -1", left - right == Q(-1),
                         "left=" + left.to_string() + " right=" + right.to_string() +
                             " (right - left = " + (right - left).to_string() + ")"});
    const Q c = phi_pow(-3) * kHalf;
    for (const Q& y : ys) {
        const Q base = psi_potential((y - b).frac()) - psi_potential(y) - y;
        const Q v = psi_strip(y);
        ++rep.samples;
        rep.minus_sign_matches += (v == base - c);
        rep.plus_sign_matches += (v == base + c);
    }
    rep.items.push_back({"coboundary identity with -1/(2 phi^3)", rep.minus_sign_matches == rep.samples,
                         std::to_string(rep.minus_sign_matches) + "/" + std::to_string(rep.samples)});
    rep.items.push_back({"coboundary identity with the opposite sign +1/(2 phi^3) (informational)",
                         rep.plus_sign_matches == rep.samples,
                         std::to_string(rep.plus_sign_matches) + "/" + std::to_string(rep.samples)});
    rep.passed = true;
    for (std::size_t i = 0; i + 1 < rep.items.size(); ++i) rep.passed = rep.passed && rep.items[i].passed;
    return rep;
}

// ------------------------------------------------------ trapezoid example

RegionCoeffs RegionCoeffs::literal() {
    const Q f2 = phi_pow(2);
    return {f2 * kHalf, -phi() * kHalf, -phi_pow(-1), f2, Q(Rational(3, 2)), -f2, Q(1) + phi_pow(-3) * kHalf};
}

Point2 t_phi(const Point2& p) {
    return {p.first + phi_pow(-2), p.second + p.first - phi_pow(-3) * kHalf};
}

Q region_p(const RegionCoeffs& c, const Q& x) { return (c.p2 * x + c.p1) * x + c.p0; }

namespace {

bool in_band(const RegionCoeffs& c, const Point2& pt) {
    const Q p = region_p(c, pt.first);
    return p < pt.second && pt.second <= p + Q(1);
}

Q region_q(const RegionCoeffs& c, const Q& x) { return region_p(c, x) + c.q1 * x + c.q0; }
Q region_r(const RegionCoeffs& c, const Q& x) { return region_p(c, x) + c.r1 * x + c.r0; }

std::string show(const Point2& p) { return "(" + p.first.to_string() + ", " + p.second.to_string() + ")"; }

Point2 psi_trap(const RegionCoeffs& c, const Point2& p) { return {p.first, p.second - region_p(c, p.first)}; }

}  // namespace

bool in_d1(const RegionCoeffs& c, const Point2& p) {
    return in_band(c, p) && p.second <= qmin(region_q(c, p.first), region_r(c, p.first) - Q(1));
}

bool in_d2(const RegionCoeffs& c, const Point2& p) {
    const Q r = region_r(c, p.first);
    return in_band(c, p) && r - Q(1) < p.second && p.second <= r;
}

bool in_d1_prime(const Point2& p) {
    const Q f2 = phi_pow(2);
    const Q bound = qmin(f2 * p.first + Q(Rational(3, 2)), -f2 * p.first + phi_pow(-3) * kHalf);
    return p.second.sign() > 0 && p.second <= Q(1) && p.second <= bound;
}

bool in_d2_prime(const Point2& p) {
    const Q edge = -phi_pow(2) * p.first + phi_pow(-3) * kHalf;
    return p.second.sign() > 0 && p.second <= Q(1) && edge < p.second && p.second <= edge + Q(1);
}

Point2 map_r(const RegionCoeffs& c, const Point2& p) {
    if (in_d1(c, p)) return t_phi(p);
    if (in_d2(c, p)) {
        Point2 t = t_phi(p);
        t.first -= Q(1);
        return t;
    }
    throw DynamicsError("R undefined outside D1 and D2");
}

Point2 map_r1_prime(const Point2& p) { return {p.first + phi_pow(-2), p.second}; }

Point2 map_r2_prime(const Point2& p) {
    return {p.first + phi_pow(-2) - Q(1), p.second + phi_pow(2) * p.first - phi_pow(-3) * kHalf};
}

Point2 trapezoid_return_formula(int n, const Point2& p) {
    Point2 cur{p.first * phi_pow(-2), p.second};
    cur = map_r2_prime(cur);
    for (int i = 0; i < n; ++i) cur = map_r1_prime(cur);
    return {cur.first * phi_pow(2), cur.second};
}

CounterexampleReport counterexample_suite(const RegionCoeffs& coeffs, const std::vector<Point2>& identity_points,
                                          const std::vector<Point2>& audit_points) {
    CounterexampleReport rep;
    for (int n = 0; n <= 3; ++n) {
        for (const auto& p : identity_points) {
            ++rep.identity_cases;
            Point2 expected = t_phi(p);
            expected.first += Q(n - 2);
            const Point2 got = trapezoid_return_formula(n, p);
            if (!(got.first == expected.first && got.second == expected.second)) {
                if (rep.identity_failures++ == 0)
                    rep.identity_witness = "n=" + std::to_string(n) + " p=" + show(p) + " got " + show(got);
            }
        }
    }
    rep.passed = rep.identity_failures == 0 && rep.identity_cases > 0;

    const Point2 origin{Q(0), Q(0)};
    rep.audits.push_back({"(0,0) lies in D2", in_d2(coeffs, origin),
                          "p(0)=" + region_p(coeffs, Q(0)).to_string() + " r(0)=" + region_r(coeffs, Q(0)).to_string()});

    long long in_d = 0, r_inside = 0, d1 = 0, d1_ok = 0, d2 = 0, d2_ok = 0, d2_offset = 0, img1 = 0, img2 = 0;
    long long trap = 0, trap_ok = 0;
    std::string w_inv, w_d1, w_d2, w_trap;
    for (const auto& p : audit_points) {
        const bool a = in_d1(coeffs, p), b = in_d2(coeffs, p);
        if (!a && !b) continue;
        ++in_d;
        const Point2 rp = map_r(coeffs, p);
        if (in_d1(coeffs, rp) || in_d2(coeffs, rp))
            ++r_inside;
        else if (w_inv.empty())
            w_inv = show(p) + " -> " + show(rp);
        const Point2 lhs = psi_trap(coeffs, rp);
        const Point2 q = psi_trap(coeffs, p);
        if (a) {
            ++d1;
            img1 += in_d1_prime(q);
            const Point2 rhs = map_r1_prime(q);
            if (lhs == rhs)
                ++d1_ok;
            else if (w_d1.empty())
                w_d1 = show(p);
        } else {
            ++d2;
            img2 += in_d2_prime(q);
            const Point2 rhs = map_r2_prime(q);
            if (lhs == rhs)
                ++d2_ok;
            else {
                if (lhs.first == rhs.first && lhs.second - rhs.second == Q(-1)) ++d2_offset;
                if (w_d2.empty()) w_d2 = show(p) + " y-difference " + (lhs.second - rhs.second).to_string();
            }
        }
        if (in_d2_prime(q)) {
            // First return of R' into D2': one R2' step, then R1' while in D1'.
            ++trap;
            Point2 cur = map_r2_prime(q);
            int n = 0;
            bool ok = true;
            while (!in_d2_prime(cur)) {
                if (!in_d1_prime(cur) || n > 3) {
                    ok = false;
                    break;
                }
                cur = map_r1_prime(cur);
                ++n;
            }
            if (ok)
                ++trap_ok;
            else if (w_trap.empty())
                w_trap = show(q) + " after " + std::to_string(n) + " R1' steps at " + show(cur);
        }
    }
    auto frac = [](long long a, long long b) { return std::to_string(a) + "/" + std::to_string(b); };
    rep.audits.push_back({"R maps D into D", in_d > 0 && r_inside == in_d,
                          frac(r_inside, in_d) + (w_inv.empty() ? "" : "; witness " + w_inv)});
    rep.audits.push_back({"psi maps D1 into D1'", img1 == d1, frac(img1, d1)});
    rep.audits.push_back({"psi maps D2 into D2'", img2 == d2, frac(img2, d2)});
    rep.audits.push_back({"psi o R = R1' o psi on D1", d1_ok == d1, frac(d1_ok, d1) + (w_d1.empty() ? "" : "; witness " + w_d1)});
    rep.audits.push_back({"psi o R = R2' o psi on D2", d2_ok == d2,
                          frac(d2_ok, d2) + "; " + std::to_string(d2_offset) + " differ by exactly -1 in y" +
                              (w_d2.empty() ? "" : "; witness " + w_d2)});
    rep.audits.push_back({"first return of R' to D2' uses n in {0,1,2,3}", trap > 0 && trap_ok == trap,
                          frac(trap_ok, trap) + (w_trap.empty() ? "" : "; witness " + w_trap)});
    return rep;
}

// -------------------------------------------------------- equidistribution

std::vector<WeylEntry> weyl_sums(const std::function<std::pair<double, double>(long long)>& sample, long long n,
                                 int max_index) {
    const int K = max_index, W = 2 * K + 1;
    std::vector<std::complex<double>> acc(static_cast<std::size_t>(W * W));
    std::vector<std::complex<double>> pu(static_cast<std::size_t>(W)), pv(static_cast<std::size_t>(W));
    const double two_pi = 2.0 * std::acos(-1.0);
    for (long long k = 0; k < n; ++k) {
        const auto [u, v] = sample(k);
        const std::complex<double> eu = std::polar(1.0, two_pi * u), ev = std::polar(1.0, two_pi * v);
        pu[K] = pv[K] = 1.0;
        for (int j = 1; j <= K; ++j) {
            pu[K + j] = pu[K + j - 1] * eu;
            pu[K - j] = std::conj(pu[K + j]);
            pv[K + j] = pv[K + j - 1] * ev;
            pv[K - j] = std::conj(pv[K + j]);
        }
        for (int i = 0; i < W; ++i)
            for (int j = 0; j < W; ++j) acc[static_cast<std::size_t>(i * W + j)] += pu[i] * pv[j];
    }
    std::vector<WeylEntry> out;
    for (int i = 0; i < W; ++i)
        for (int j = 0; j < W; ++j)
            out.push_back({i - K, j - K, std::abs(acc[static_cast<std::size_t>(i * W + j)]) / static_cast<double>(n)});
    return out;
}

namespace {

WeylReport finish(std::string system, long long n, double tol, std::vector<WeylEntry> entries) {
    WeylReport rep;
    rep.system = std::move(system);
    rep.samples = n;
    rep.tolerance = tol;
    for (const auto& e : entries)
        if (e.p != 0 || e.q != 0) rep.max_modulus = std::max(rep.max_modulus, e.modulus);
    rep.entries = std::move(entries);
    rep.passed = rep.max_modulus < tol;
    return rep;
}

}  // namespace

WeylReport equidistribution_torus(const PiecewiseTorusMap& map, double u0, double v0, long long n, int max_index,
                                  double tolerance, long long escalate_to) {
    auto run = [&](long long count) {
        double u = u0, v = v0;
        auto sample = [&](long long) {
            const std::pair<double, double> cur{u, v};
            std::tie(u, v) = map(u, v);
            return cur;
        };
        return finish(map.name().empty() ? "torus map" : map.name(), count, tolerance,
                      weyl_sums(sample, count, max_index));
    };
    WeylReport rep = run(n);
    if (!rep.passed && escalate_to > n) {
        rep = run(escalate_to);
        rep.escalated = true;
    }
    return rep;
}

WeylReport equidistribution_nilflow(const AlgebraVector<Q>& v, const GroupPoint<double>& g0, double dt, long long n,
                                    int max_index, double tolerance, long long escalate_to) {
    // exp(dt v) applied step by step to the cube representative, which keeps
    // the coordinates bounded (a closed form loses the fraction of z as t grows).
    const long double h = dt;
    const long double a = v.alpha.to_double() * h, b = v.beta.to_double() * h;
    const long double c = v.gamma.to_double() * h + a * b / 2;
    auto run = [&](long long count) {
        long double x = g0.x, y = g0.y, z = g0.z;
        const long double m0 = -std::floor(y);
        z += x * m0;
        y += m0;
        x -= std::floor(x);
        z -= std::floor(z);
        auto sample = [&](long long) {
            const std::pair<double, double> cur{static_cast<double>(x), static_cast<double>(z)};
            // [a, b, c] * [x, y, z], then back to the unit cube.
            long double nx = a + x, ny = b + y, nz = c + z + a * y;
            const long double m = -std::floor(ny);
            nz += nx * m;
            ny += m;
            nx -= std::floor(nx);
            x = nx;
            y = ny;
            z = nz - std::floor(nz);
            return cur;
        };
        return finish("nilflow", count, tolerance, weyl_sums(sample, count, max_index));
    };
    WeylReport rep = run(n);
    if (!rep.passed && escalate_to > n) {
        rep = run(escalate_to);
        rep.escalated = true;
    }
    return rep;
}

}  // namespace heis
