#pragma once

// Dynamical constructions: piecewise torus maps (strip family, induction,
// renormalization), the flow section and its return map, the diagonal
// section, the trapezoid example, the C_x conjugacies and Weyl sums.

#include "heis/factorization.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace heis {

class DynamicsError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One named exact check with an optional witness on failure.
struct AuditItem {
    std::string name;
    bool passed = false;
    std::string detail;
};

// ============================================================ torus maps

struct TorusPoint2 {
    Q u, v;
    /// Reduces both coordinates to [0, 1).
    static TorusPoint2 reduced(const Q& u, const Q& v);
    friend bool operator==(const TorusPoint2& a, const TorusPoint2& b) { return a.u == b.u && a.v == b.v; }
};

/// On u in [lo, hi): u' = u + du, v' = v + c2 u^2 + c1 u + c0, both mod 1.
/// `count` is the number of base iterates the branch stands for.
struct TorusBranch {
    Q lo, hi;
    Q du;
    Q c2, c1, c0;
    int count = 1;
};

class PiecewiseTorusMap {
public:
    struct Step {
        TorusPoint2 point;
        std::size_t branch = 0;
        LatticePoint correction;  // raw image = point + (n, m)
    };

    PiecewiseTorusMap() = default;
    explicit PiecewiseTorusMap(std::vector<TorusBranch> branches, std::string name = {});

    const std::vector<TorusBranch>& branches() const { return branches_; }
    const std::string& name() const { return name_; }

    /// Index of the branch containing u; throws DynamicsError when none does.
    std::size_t branch_of(const Q& u) const;
    bool defined_at(const Q& u) const;
    Step step(const TorusPoint2& p) const;
    TorusPoint2 operator()(const TorusPoint2& p) const { return step(p).point; }
    /// Float evaluation (same branch rule, branch bounds rounded to double).
    std::pair<double, double> operator()(double u, double v) const;

private:
    std::vector<TorusBranch> branches_;
    std::vector<std::pair<double, double>> float_bounds_;
    std::string name_;
};

/// second o first, branch by branch.
PiecewiseTorusMap compose(const PiecewiseTorusMap& second, const PiecewiseTorusMap& first);
/// Branchwise inverse; the map must be injective.
PiecewiseTorusMap inverse(const PiecewiseTorusMap& map);
/// First-return map to u in [lo, hi), built symbolically; branch counts are
/// the return times. Throws when a piece needs more than max_iter steps.
PiecewiseTorusMap induced_map(const PiecewiseTorusMap& map, const Q& lo, const Q& hi, int max_iter = 64);

/// The two-branch strip map T^s with parameter theta (golden context).
PiecewiseTorusMap strip_family(const Q& s, const Q& theta);
/// (y, z) -> (y + 1/phi^2, z + y - 1/(2 phi^3))
PiecewiseTorusMap golden_skew_map();

struct TorusReturn {
    TorusPoint2 point;
    long long iterates = 0;
    std::vector<std::size_t> branches;
    std::vector<LatticePoint> lattice_word;  // integer corrections per step
};

/// Smallest n >= 1 with map^n(p) in region. Throws DynamicsError past max_iter.
TorusReturn first_return(const PiecewiseTorusMap& map, const std::function<bool(const TorusPoint2&)>& region,
                         const TorusPoint2& p, long long max_iter = 1000);
/// Replays the raw branch updates and the recorded corrections.
bool replay(const PiecewiseTorusMap& map, const TorusPoint2& start, const TorusReturn& rec);

struct RenormalizationReport {
    Q s, s_next, theta;
    Q a, b, theta_next;
    long long samples = 0;
    bool passed = false;
    std::string witness;
};

/// Conjugates the first return of strip_family(s, theta) to [0, 1/phi^2) by
/// (u, v) -> (phi^2 u, a u^2 + b u + v) and compares with
/// strip_family(s_next, theta_next) on the given points (u in [0, 1/phi^2)).
RenormalizationReport renormalization_check(const Q& s, const Q& s_next, const Q& theta,
                                            const std::vector<TorusPoint2>& points);

/// psi(y) = -phi y - 1/phi on [0, 1/phi^2), -y/phi on [1/phi^2, 1].
Q psi_strip(const Q& y);
/// p(y) = -y^2/2 - y/2
Q psi_potential(const Q& y);

struct PsiReport {
    std::vector<AuditItem> items;
    /// Coboundary identity with -1/(2 phi^3) and, for comparison, +1/(2 phi^3).
    long long samples = 0;
    long long minus_sign_matches = 0;
    long long plus_sign_matches = 0;
    bool passed = false;
};
PsiReport psi_identity_check(const std::vector<Q>& ys);

// ====================================================== flow section (Sigma)

struct SectionPoint {
    Q s;     // in [s_a, s_b)
    Q zoff;  // in [-1/2, 1/2)
    friend bool operator==(const SectionPoint& a, const SectionPoint& b) { return a.s == b.s && a.zoff == b.zoff; }
};

struct Section {
    EigenData E;
    SurfaceQuadric quadric;
    explicit Section(EigenData e);
};

bool on_sigma(const Section& S, const SectionPoint& p);
/// [alpha' s, beta' s, Q(alpha' s, beta' s) + zoff]
GroupPoint<Q> section_element(const Section& S, const SectionPoint& p);

/// Finds the lattice element w with g * w on the section, if the coset meets it.
std::optional<SectionPoint> locate_on_sigma(const Section& S, const GroupPoint<Q>& g, LatticePoint* witness = nullptr);

struct SectionReturn {
    SectionPoint point;
    Q time;
    long long iterates = 0;
    std::vector<LatticePoint> lattice_word;
};

SectionReturn sigma_return(const Section& S, const SectionPoint& p);
/// Phi^time(element(start)) * word == element(end)
bool replay(const Section& S, const SectionPoint& start, const SectionReturn& rec);
/// Exact check that the flow from p meets no point of the section before the
/// return time (all lattice translates of the section line are examined).
bool return_is_first(const Section& S, const SectionPoint& p, const SectionReturn& rec);

struct InductionSample {
    SectionPoint point;
    bool passed = false;
    long long sub_returns = 0;
    Q time;  // accumulated flow time of the induced return
    std::string detail;
};

struct SelfInductionReport {
    std::vector<InductionSample> samples;
    long long failures = 0;
    bool passed = false;
};

/// For each sample p: induced return of L(p) to L(Sigma), pulled back by L^-1,
/// must equal the section return of p, with time multiplied by lambda.
SelfInductionReport self_induction_sigma(const Section& S, const std::vector<SectionPoint>& samples,
                                         long long max_sub_returns = 100000);

// ======================================================== diagonal section

/// Chart point [X, -X, Z] of the section {x + y in Z}, X, Z in [0, 1).
struct DiagPoint {
    Q X, Z;
    friend bool operator==(const DiagPoint& a, const DiagPoint& b) { return a.X == b.X && a.Z == b.Z; }
};

struct DiagReturn {
    DiagPoint point;
    Q time;
    LatticePoint witness;
};

struct DiagSection {
    AlgebraVector<Q> flow;           // alpha + beta = 1
    PiecewiseTorusMap chart_map;     // return map in (X, Z)
    PiecewiseTorusMap normalized_map;  // return map in (X, W), W = Z + X(X-1)/2
    Q translation_constant;          // W' = W - X + C
};

DiagSection diag_section(const AlgebraVector<Q>& flow);
GroupPoint<Q> diag_element(const DiagPoint& p);
/// Reduces a point with x + y in Z to the chart; throws otherwise.
DiagPoint diag_reduce(const GroupPoint<Q>& g, LatticePoint* witness = nullptr);
/// First hit of the flow with the section, computed in closed form.
DiagReturn diag_return(const AlgebraVector<Q>& flow, const DiagPoint& p);
Q diag_normalize(const DiagPoint& p);  // W
DiagPoint diag_denormalize(const Q& X, const Q& W);

/// Flow time from the Sigma point to the diagonal: -(alpha' + beta') s.
Q sigma_to_diag_time(const Section& S, const SectionPoint& p);
DiagPoint sigma_to_diag(const Section& S, const SectionPoint& p);
/// The inequality audits that make sigma_to_diag injective.
std::vector<AuditItem> diag_audits(const Section& S);

struct ChartEquivalence {
    int eps = 0, delta = 0, kappa = 0;
    Q u0, w0;  // h(X, W) = (eps X + u0, delta W + kappa X + w0)
    long long verified_points = 0;
    bool found = false;
    std::string detail;
};

/// Searches an affine torus change of coordinates h with h o F = G o h, F the
/// normalized diagonal return map of the Fibonacci eigenflow and G golden_skew_map();
/// coefficients are solved from one sample and checked on `points`.
ChartEquivalence fibonacci_chart_equivalence(const std::vector<std::pair<Q, Q>>& points);

// ==================================================== trapezoid example

struct RegionCoeffs {
    // p(x) = p2 x^2 + p1 x + p0; q = p + q1 x + q0; r = p + r1 x + r0
    Q p2, p1, p0, q1, q0, r1, r0;
    static RegionCoeffs literal();
};

using Point2 = std::pair<Q, Q>;

Point2 t_phi(const Point2& p);
Q region_p(const RegionCoeffs& c, const Q& x);
bool in_d1(const RegionCoeffs& c, const Point2& p);
bool in_d2(const RegionCoeffs& c, const Point2& p);
bool in_d1_prime(const Point2& p);
bool in_d2_prime(const Point2& p);
/// R: T_phi on D1, T_phi - (1, 0) on D2; throws outside D.
Point2 map_r(const RegionCoeffs& c, const Point2& p);
Point2 map_r1_prime(const Point2& p);
Point2 map_r2_prime(const Point2& p);
/// psi-bar o R1'^n o R2' o psi-bar^-1
Point2 trapezoid_return_formula(int n, const Point2& p);

struct CounterexampleReport {
    long long identity_cases = 0;
    long long identity_failures = 0;
    std::string identity_witness;
    std::vector<AuditItem> audits;  // region invariance and return counts (reported, not asserted)
    bool passed = false;            // the affine identity only
};

CounterexampleReport counterexample_suite(const RegionCoeffs& coeffs, const std::vector<Point2>& identity_points,
                                          const std::vector<Point2>& audit_points);

// ================================================== C_x conjugation

struct CxReport {
    bool identity_holds = false;
    GroupPoint<Q> lhs, rhs;
    Q gamma0;
    bool non_resonant = false;  // gamma + beta x0 off the grid for |n|, |m| <= bound
    std::string detail;
};

/// [x0,0,0] * g * y == g(x0) * [x0,0,0] * y with g(x0) = g + [0,0,beta x0].
bool cx_conjugation_holds(const Q& x0, const GroupPoint<Q>& g, const GroupPoint<Q>& y);
/// gamma_0 = -(alpha A C + beta B D) / (2 lambda - 2 det)
Q gamma_zero(const EigenData& E);
CxReport conjugation_Cx(const EigenData& E, const Q& x0, const GroupPoint<Q>& g, long long grid_bound = 10);

// ================================================== equidistribution

struct WeylEntry {
    int p = 0, q = 0;
    double modulus = 0.0;
};

struct WeylReport {
    std::string system;
    long long samples = 0;
    bool escalated = false;
    double tolerance = 0.0;
    double max_modulus = 0.0;
    std::vector<WeylEntry> entries;
    bool passed = false;
};

/// Birkhoff averages of e(p u + q v) for |p|, |q| <= max_index along the
/// sequence produced by `next` (called n times).
std::vector<WeylEntry> weyl_sums(const std::function<std::pair<double, double>(long long)>& sample, long long n,
                                 int max_index);

/// Orbit of a torus map from (u0, v0). When some nonzero character exceeds the
/// tolerance at n and escalate_to > n, reruns with escalate_to samples.
WeylReport equidistribution_torus(const PiecewiseTorusMap& map, double u0, double v0, long long n, int max_index,
                                  double tolerance, long long escalate_to);
/// Nilflow exp(k dt v) g0 sampled at k = 0..n-1, characters on the canonical
/// cube representative (x, z).
WeylReport equidistribution_nilflow(const AlgebraVector<Q>& v, const GroupPoint<double>& g0, double dt, long long n,
                                    int max_index, double tolerance, long long escalate_to);

}  // namespace heis
