#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "mixbound/chain.hpp"
#include "mixbound/common.hpp"
#include "mixbound/geometry.hpp"
#include "mixbound/level_sets.hpp"

namespace mixbound {

// =============================================================================
// Congestion kernels: nonnegative f on [0,1], vanishing at the ends where the
// continuous extension demands it.
// =============================================================================

struct Kernel {
    std::string name;
    std::function<double(double)> f;
    bool symmetric;  // f(a) == f(1-a)
    bool concave;
    std::function<double(double)> inverse;  // optional; empty if unused
};

namespace detail {

inline bool numerically_concave(const std::function<double(double)>& f, int grid = 10000) {
    double h = 1.0 / grid;
    double prev2 = f(0.0), prev1 = f(h);
    for (int i = 2; i <= grid; ++i) {
        double cur = f(i * h);
        if (cur - 2.0 * prev1 + prev2 > 1e-9 * std::max(1.0, std::fabs(prev1))) return false;
        prev2 = prev1;
        prev1 = cur;
    }
    return true;
}

inline Kernel make_kernel(std::string name, std::function<double(double)> f, bool symmetric,
                          std::function<double(double)> inverse = {}) {
    bool concave = numerically_concave(f);
    return Kernel{std::move(name), std::move(f), symmetric, concave, std::move(inverse)};
}

}  // namespace detail

inline const Kernel& kernel_a1a() {
    static const Kernel k =
        detail::make_kernel("a(1-a)", [](double a) { return a * (1.0 - a); }, true);
    return k;
}

inline const Kernel& kernel_alog() {
    static const Kernel k = detail::make_kernel(
        "a*log(1/a)", [](double a) { return a <= 0.0 ? 0.0 : a * std::log(1.0 / a); }, false);
    return k;
}

inline const Kernel& kernel_sqrt_a1a() {
    static const Kernel k = detail::make_kernel(
        "sqrt(a(1-a))",
        [](double a) { return std::sqrt(std::max(0.0, a * (1.0 - a))); }, true);
    return k;
}

inline const Kernel& kernel_sin() {
    static const Kernel k = detail::make_kernel(
        "sin(pi*a)", [](double a) { return std::sin(3.14159265358979323846 * a); }, true);
    return k;
}

inline const Kernel& kernel_sqrt_a() {
    static const Kernel k = detail::make_kernel(
        "sqrt(a)", [](double a) { return std::sqrt(std::max(0.0, a)); }, false);
    return k;
}

inline const std::vector<const Kernel*>& primary_kernels() {
    static const std::vector<const Kernel*> ks{&kernel_a1a(), &kernel_alog(),
                                               &kernel_sqrt_a1a()};
    return ks;
}

// =============================================================================
// f-congestion: C_f(A) = int_0^1 f(pi(A_u)) du / f(pi(A)).  The integrand is a
// step function, so only the f evaluations carry roundoff.
// =============================================================================

inline double f_congestion(const MarkovChain& c, const VertexSet& a, const Kernel& k) {
    detail::require_proper(a, "f-congestion needs a proper subset");
    LevelProfile lp = level_profile(c, a);
    double denom = k.f(lp.base_mass());
    require(std::fabs(denom) > 1e-300, errc::kernel_vanishes,
            "kernel vanishes at pi(A) = " + std::to_string(lp.base_mass()));
    return lp.integrate(k.f) / denom;
}

inline ProfileTable f_congestion_profile_table(const MarkovChain& c, const Kernel& k) {
    return congestion_profile_table(
        c, [&](const VertexSet& a) { return f_congestion(c, a, k); });
}

inline double f_congestion_profile(const MarkovChain& c, const Kernel& k, double r) {
    return profile_value(f_congestion_profile_table(c, k), r);
}

// For a lazy chain and concave f:
// C_f(A) <= [f(pi(A) + 2Q(A,A^c)) + f(pi(A) - 2Q(A,A^c))] / (2 f(pi(A))).
inline double lazy_concave_bound(const MarkovChain& c, const VertexSet& a, const Kernel& k) {
    detail::require_proper(a, "lazy bound needs a proper subset");
    require(c.is_lazy(), errc::not_lazy, "chain is not lazy");
    require(k.concave, errc::not_concave, "kernel must be concave");
    double q = ergodic_flow(c, a, c.complement(a));
    double pa = a.mass();
    double hi = std::min(1.0, pa + 2.0 * q), lo = std::max(0.0, pa - 2.0 * q);
    double bound = (k.f(hi) + k.f(lo)) / (2.0 * k.f(pa));
    require(f_congestion(c, a, k) <= bound + 1e-10, errc::bad_input,
            "lazy concave bound violated");
    return bound;
}

// =============================================================================
// Envelope machinery.  Among all non-increasing level functions with the same
// area pi(A) and the same displaced area Psi(A), there is a most-extreme shape
// (three levels 1 / pi(A) / 0) and a least-extreme one (two levels pinned by a
// crossing point wp).  Concavity turns those into bounds on C_f(A):
//   - the extreme shape gives a LOWER bound on C_f(A)   (envelope_upper)
//   - the flat shape gives an UPPER bound on C_f(A)     (envelope_lower)
// =============================================================================

inline double envelope_upper(const MarkovChain& c, const VertexSet& a, const Kernel& k) {
    detail::require_proper(a, "envelope needs a proper subset");
    require(k.concave, errc::not_concave, "kernel must be concave");
    double ps = psi(c, a);
    double pa = a.mass(), pc = 1.0 - pa;
    double fpa = k.f(pa);
    double v = (k.f(1.0) * ps / pc + fpa * (1.0 - ps / (pa * pc)) + k.f(0.0) * ps / pa) / fpa;
    require(f_congestion(c, a, k) >= v - 1e-10, errc::bad_input,
            "extreme-profile lower bound violated");
    return v;
}

inline double envelope_lower(const MarkovChain& c, const VertexSet& a, const Kernel& k,
                             double wp) {
    detail::require_proper(a, "envelope needs a proper subset");
    require(k.concave, errc::not_concave, "kernel must be concave");
    auto [lo, hi] = wp_interval(c, a);
    require(wp >= lo - 1e-9 && wp <= hi + 1e-9, errc::bad_input,
            "crossing level outside the admissible interval");
    double ps = psi(c, a);
    double pa = a.mass();
    double v = 0.0;
    if (wp > 0.0) v += wp * k.f(std::min(1.0, pa + ps / wp));
    if (wp < 1.0) v += (1.0 - wp) * k.f(std::max(0.0, pa - ps / (1.0 - wp)));
    v /= k.f(pa);
    require(f_congestion(c, a, k) <= v + 1e-10, errc::bad_input,
            "flat-profile upper bound violated");
    return v;
}

// The bound holds for every admissible crossing level, so take the best of the
// interval endpoints and midpoint.
inline double envelope_lower_best(const MarkovChain& c, const VertexSet& a, const Kernel& k) {
    auto [lo, hi] = wp_interval(c, a);
    double best = envelope_lower(c, a, k, lo);
    if (hi > lo) {
        best = std::min(best, envelope_lower(c, a, k, 0.5 * (lo + hi)));
        best = std::min(best, envelope_lower(c, a, k, hi));
    }
    return best;
}

// =============================================================================
// Inequality reports.  Each row lists a chain of values that must be
// non-increasing; slack is the most negative adjacent gap found.
// =============================================================================

struct InequalityRow {
    std::string name;
    std::vector<double> links;  // must be non-increasing up to slack
    double slack;               // min over adjacent (links[i] - links[i+1])
};

struct InequalityReport {
    std::vector<InequalityRow> rows;
    bool vacuous = false;

    bool holds(double tol = 1e-10) const {
        for (const auto& r : rows)
            if (r.slack < -tol) return false;
        return true;
    }
    double worst_slack() const {
        double w = 0.0;
        for (const auto& r : rows) w = std::min(w, r.slack);
        return w;
    }
};

namespace detail {

inline InequalityRow make_row(std::string name, std::vector<double> links) {
    double slack = 1.0;
    for (size_t i = 0; i + 1 < links.size(); ++i)
        slack = std::min(slack, links[i] - links[i + 1]);
    return {std::move(name), std::move(links), slack};
}

}  // namespace detail

// Modified-conductance sandwich around each primary kernel:
//   phi~ >= 1-C_sqrt(a(1-a)) >= 1-sqrt(1-phi~^2) >= phi~^2/2
//   phi~ >= 1-C_alog        >= 2 phi^2 / log(1/pi(A))
//   phi~ >= 1-C_a(1-a)      >= 4 phi~^2 pi(A) pi(A^c)
inline InequalityReport profile_sandwich(const MarkovChain& c, const VertexSet& a) {
    detail::require_proper(a, "sandwich needs a proper subset");
    double pt = modified_conductance(c, a, Normalization::product);
    double pm = modified_conductance(c, a, Normalization::min_side);
    double pa = a.mass(), pc = 1.0 - pa;
    InequalityReport rep;
    rep.rows.push_back(detail::make_row(
        "sqrt(a(1-a))",
        {pt, 1.0 - f_congestion(c, a, kernel_sqrt_a1a()),
         1.0 - std::sqrt(std::max(0.0, 1.0 - pt * pt)), 0.5 * pt * pt}));
    rep.rows.push_back(detail::make_row(
        "a*log(1/a)", {pt, 1.0 - f_congestion(c, a, kernel_alog()),
                       2.0 * pm * pm / std::log(1.0 / pa)}));
    rep.rows.push_back(detail::make_row(
        "a(1-a)",
        {pt, 1.0 - f_congestion(c, a, kernel_a1a()), 4.0 * pt * pt * pa * pc}));
    return rep;
}

// Conductance bounds with an explicit holding probability gamma = min holding;
// when gamma >= 1/2 the speedup identity 1-C_f = 2(1-gamma)(1-C'_f) is also
// verified against the sped-up chain.
inline InequalityReport holding_congestion_bounds(const MarkovChain& c, const VertexSet& a) {
    detail::require_proper(a, "holding bounds need a proper subset");
    double gamma = c.min_holding();
    double ct = conductance(c, a, Normalization::product);
    double cm = conductance(c, a, Normalization::min_side);
    double pa = a.mass(), pc = 1.0 - pa;
    InequalityReport rep;
    if (gamma <= kTol) {
        rep.vacuous = true;  // gamma = 0 makes every lower bound zero
        rep.rows.push_back(detail::make_row(
            "a(1-a)", {ct, 1.0 - f_congestion(c, a, kernel_a1a()), 0.0}));
        rep.rows.push_back(detail::make_row(
            "a*log(1/a)", {ct, 1.0 - f_congestion(c, a, kernel_alog()), 0.0}));
        rep.rows.push_back(detail::make_row(
            "sqrt(a(1-a))", {ct, 1.0 - f_congestion(c, a, kernel_sqrt_a1a()), 0.0}));
        return rep;
    }
    double mg = std::min(gamma, 1.0 - gamma);
    double g2 = (1.0 - gamma) * (1.0 - gamma);
    rep.rows.push_back(detail::make_row(
        "a(1-a)", {ct, 1.0 - f_congestion(c, a, kernel_a1a()),
                   2.0 * mg / g2 * ct * ct * pa * pc}));
    rep.rows.push_back(detail::make_row(
        "a*log(1/a)", {ct, 1.0 - f_congestion(c, a, kernel_alog()),
                       mg / g2 * cm * cm / std::log(1.0 / pa)}));
    rep.rows.push_back(detail::make_row(
        "sqrt(a(1-a))", {ct, 1.0 - f_congestion(c, a, kernel_sqrt_a1a()),
                         mg / (4.0 * g2) * ct * ct}));

    if (gamma >= 0.5 && gamma < 1.0 - kTol) {
        MarkovChain sped = holding_speedup(c, gamma);
        for (const Kernel* k : primary_kernels()) {
            double lhs = 1.0 - f_congestion(c, a, *k);
            double rhs = 2.0 * (1.0 - gamma) * (1.0 - f_congestion(sped, a, *k));
            require(std::fabs(lhs - rhs) <= 1e-12 * std::max(1.0, std::fabs(lhs)),
                    errc::bad_input, "speedup rescaling identity violated for " + k->name);
        }
    }
    return rep;
}

// Modified conductance against the conductance of the multiplicative
// reversibilization:
//   sqrt(Phi~_PP*) >= phi~ >= 1 - sqrt(1 - Phi~_PP*) >= Phi~_PP*/2.
inline InequalityReport pp_star_sandwich(const MarkovChain& c, const MarkovChain& pp_star,
                                         const VertexSet& a) {
    detail::require_proper(a, "sandwich needs a proper subset");
    double phi_pp = conductance(pp_star, a, Normalization::product);
    double pt = modified_conductance(c, a, Normalization::product);
    InequalityReport rep;
    rep.rows.push_back(detail::make_row(
        "PP*", {std::sqrt(std::max(0.0, phi_pp)), pt,
                1.0 - std::sqrt(std::max(0.0, 1.0 - phi_pp)), 0.5 * phi_pp}));
    return rep;
}

inline InequalityReport pp_star_sandwich(const MarkovChain& c, const VertexSet& a) {
    return pp_star_sandwich(c, multiplicative_reversibilization(c), a);
}

// =============================================================================
// Integral transforms of t -> Psi(A^c, t) driving blocking-style bounds.
// Every integral is taken segment-exactly over the piecewise-linear curve;
// the 1/t weight integrates to log terms.
// =============================================================================

struct BlockingPsis {
    double psi_gl;
    double psi_gl_tilde;
    double psi_mod;
    double psi_plus;
    double psi_plus_tilde;
};

namespace detail {

// int_lo^hi psi(t) dt over a piecewise-linear curve (weight 1).
inline double curve_integral(const PsiCurve& cv, double lo, double hi) {
    double out = 0.0;
    for (size_t j = 0; j + 1 < cv.knots.size(); ++j) {
        double t0 = std::max(lo, cv.knots[j]), t1 = std::min(hi, cv.knots[j + 1]);
        if (t1 <= t0) continue;
        out += 0.5 * (cv.at(t0) + cv.at(t1)) * (t1 - t0);
    }
    return out;
}

// int_lo^hi psi(t)/t dt; the first segment starts at psi(0) = 0, so the
// integrand stays bounded there.
inline double curve_integral_over_t(const PsiCurve& cv, double lo, double hi) {
    double out = 0.0;
    for (size_t j = 0; j + 1 < cv.knots.size(); ++j) {
        double t0 = std::max(lo, cv.knots[j]), t1 = std::min(hi, cv.knots[j + 1]);
        if (t1 <= t0) continue;
        double v0 = cv.at(t0), v1 = cv.at(t1);
        double s = (v1 - v0) / (t1 - t0);
        double intercept = v0 - t0 * s;  // psi(t) = intercept + s t on the segment
        if (t0 <= 0.0) {
            out += s * (t1 - t0);  // intercept is 0 when the curve starts at the origin
        } else {
            out += intercept * std::log(t1 / t0) + s * (t1 - t0);
        }
    }
    return out;
}

}  // namespace detail

inline BlockingPsis blocking_psis(const MarkovChain& c, const VertexSet& a) {
    detail::require_proper(a, "blocking transforms need a proper subset");
    double pa = a.mass(), pc = 1.0 - pa;
    PsiCurve cv = psi_curve_blocking(c, c.complement(a));
    double full = detail::curve_integral(cv, 0.0, 1.0);
    double head = detail::curve_integral(cv, 0.0, pa);
    double mod = detail::curve_integral_over_t(cv, 0.0, 1.0);
    BlockingPsis out;
    out.psi_gl = full / (pa * pa);
    out.psi_gl_tilde = full / (pa * pa * pc * pc);
    out.psi_mod = mod / pa;
    out.psi_plus = head / (pa * pa);
    out.psi_plus_tilde = head / (pa * pa * pc * pc);
    return out;
}

// Identities tying the blocking transforms back to f-congestion:
//   1 - C_a(1-a)(A)    == 2 pi(A) pi(A^c) psi~_gl(A)
//   1 - C_alog(A)      == psi_mod(A) / log(1/pi(A))
//   1 - C_sqrt(a(1-a)) >= psi~_plus(A) / 4
inline InequalityReport blocking_identities(const MarkovChain& c, const VertexSet& a) {
    BlockingPsis b = blocking_psis(c, a);
    double pa = a.mass(), pc = 1.0 - pa;
    double lhs_tv = 1.0 - f_congestion(c, a, kernel_a1a());
    double rhs_tv = 2.0 * pa * pc * b.psi_gl_tilde;
    double lhs_d = 1.0 - f_congestion(c, a, kernel_alog());
    double rhs_d = b.psi_mod / std::log(1.0 / pa);
    InequalityReport rep;
    rep.rows.push_back({"gl-identity", {lhs_tv, rhs_tv}, -std::fabs(lhs_tv - rhs_tv)});
    rep.rows.push_back({"mod-identity", {lhs_d, rhs_d}, -std::fabs(lhs_d - rhs_d)});
    rep.rows.push_back(detail::make_row(
        "plus-inequality",
        {1.0 - f_congestion(c, a, kernel_sqrt_a1a()), 0.25 * b.psi_plus_tilde}));
    return rep;
}

// psi_gl >= psi_mod/2 >= 1-C_sqrt(a) >= psi_plus/4 >= phi^2/4
inline InequalityRow psi_comparison_chain(const MarkovChain& c, const VertexSet& a) {
    BlockingPsis b = blocking_psis(c, a);
    double pm = modified_conductance(c, a, Normalization::min_side);
    return detail::make_row("psi-chain",
                            {b.psi_gl, 0.5 * b.psi_mod,
                             1.0 - f_congestion(c, a, kernel_sqrt_a()), 0.25 * b.psi_plus,
                             0.25 * pm * pm});
}

// =============================================================================
// Scalar inequalities used by the sandwich proofs, checked on grids, plus the
// kernel-comparison inequalities checked per subset.
// =============================================================================

inline double entropy_gap(double x, double y) {
    double a = x + y, b = 1.0 - x - y;
    double t1 = a <= 0.0 ? 0.0 : a * std::log(a / x);
    double t2 = b <= 0.0 ? 0.0 : b * std::log(b / (1.0 - x));
    return t1 + t2;
}

struct ScalarGridReport {
    double entropy_min_slack;  // min of g(x,y) - 2y^2
    double sqrt_min_slack;     // min of sqrt(1-(X-Y)^2) - [sqrt(XY)+sqrt((1-X)(1-Y))]
};

inline ScalarGridReport scalar_inequality_grids(int per_axis = 100) {
    ScalarGridReport rep{1.0, 1.0};
    for (int i = 1; i < per_axis; ++i) {
        double x = static_cast<double>(i) / per_axis;
        for (int j = 0; j < per_axis; ++j) {
            double y = (1.0 - x) * j / per_axis;  // y in [0, 1-x)
            rep.entropy_min_slack =
                std::min(rep.entropy_min_slack, entropy_gap(x, y) - 2.0 * y * y);
        }
    }
    for (int i = 0; i <= per_axis; ++i) {
        double x = static_cast<double>(i) / per_axis;
        for (int j = 0; j <= per_axis; ++j) {
            double y = static_cast<double>(j) / per_axis;
            double lhs = std::sqrt(x * y) + std::sqrt((1.0 - x) * (1.0 - y));
            double rhs = std::sqrt(std::max(0.0, 1.0 - (x - y) * (x - y)));
            rep.sqrt_min_slack = std::min(rep.sqrt_min_slack, rhs - lhs);
        }
    }
    return rep;
}

// C_alog <= (1 + C_a(1-a))/2,  C_sqrt(a(1-a)) <= sqrt(C_a(1-a)),
// C_sqrt(a(1-a)) <= C_sqrt(a).
inline InequalityReport congestion_comparisons(const MarkovChain& c, const VertexSet& a) {
    double c_tv = f_congestion(c, a, kernel_a1a());
    double c_d = f_congestion(c, a, kernel_alog());
    double c_l2 = f_congestion(c, a, kernel_sqrt_a1a());
    double c_sq = f_congestion(c, a, kernel_sqrt_a());
    InequalityReport rep;
    rep.rows.push_back(detail::make_row("alog-vs-a(1-a)", {0.5 * (1.0 + c_tv), c_d}));
    rep.rows.push_back(detail::make_row("cauchy-schwarz", {std::sqrt(c_tv), c_l2}));
    rep.rows.push_back(detail::make_row("sqrt-domination", {c_sq, c_l2}));
    return rep;
}

}  // namespace mixbound
