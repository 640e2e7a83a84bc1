#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mixbound/chain.hpp"
#include "mixbound/common.hpp"
#include "mixbound/congestion.hpp"
#include "mixbound/distance.hpp"
#include "mixbound/generators.hpp"
#include "mixbound/geometry.hpp"
#include "mixbound/level_sets.hpp"

namespace mixbound {

// =============================================================================
// Distance shapes: decreasing f with  dist(P^n(x,.), pi) <= E-hat f(pi(S_n)),
// paired with the congestion kernel a f(a) that controls the contraction.
// =============================================================================

struct DistanceShape {
    std::string name;
    Metric metric;
    std::function<double(double)> f;
    std::function<double(double)> finv;
    const Kernel* congestion;
};

inline const DistanceShape& tv_shape() {
    static const DistanceShape s{
        "tv", Metric::total_variation, [](double a) { return 1.0 - a; },
        [](double x) { return 1.0 - x; }, &kernel_a1a()};
    return s;
}

inline const DistanceShape& entropy_shape() {
    static const DistanceShape s{
        "relative-entropy", Metric::relative_entropy,
        [](double a) { return std::log(1.0 / a); }, [](double x) { return std::exp(-x); },
        &kernel_alog()};
    return s;
}

inline const DistanceShape& l2_shape() {
    static const DistanceShape s{
        "l2", Metric::l2, [](double a) { return std::sqrt((1.0 - a) / a); },
        [](double x) { return 1.0 / (1.0 + x * x); }, &kernel_sqrt_a1a()};
    return s;
}

inline const std::vector<const DistanceShape*>& all_shapes() {
    static const std::vector<const DistanceShape*> v{&tv_shape(), &entropy_shape(),
                                                     &l2_shape()};
    return v;
}

// =============================================================================
// BoundReport
// =============================================================================

struct BoundReport {
    std::string method;
    Metric metric = Metric::total_variation;
    double eps = 0.0;
    bool unbounded = false;
    long long steps = 0;  // meaningful when !unbounded; always >= 1
    double raw = std::numeric_limits<double>::infinity();  // pre-ceiling value
    std::map<std::string, double> params;
    bool convexity_checked = false;
    bool convexity_ok = false;
    std::string note;
};

namespace detail {

inline void finalize_report(BoundReport& r, double raw) {
    r.raw = raw;
    if (!std::isfinite(raw)) {
        r.unbounded = true;
        r.steps = 0;
    } else {
        r.unbounded = false;
        r.steps = std::max(1LL, static_cast<long long>(std::ceil(raw)));
    }
}

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace detail

// =============================================================================
// Exact n-step distance bounds via the set process (the per-metric rows of the
// evolving-set distance theorem), asserted against the exact oracle.
// =============================================================================

inline double distance_bound_at_n(const MarkovChain& c, int x, int n_steps, Metric m,
                                  long long node_budget = 10000000) {
    auto level = doob_distribution(c, c.singleton(x), n_steps, node_budget);
    double pi_min = c.min_stationary();
    double bound = 0.0;
    for (const auto& [set, w] : level) {
        double a = set.mass();
        switch (m) {
            case Metric::separation: bound += set.full() ? 0.0 : w; break;
            case Metric::total_variation: bound += w * (1.0 - a); break;
            case Metric::relative_entropy: bound += w * std::log(1.0 / a); break;
            case Metric::l2: bound += w * std::sqrt((1.0 - a) / a); break;
            case Metric::l_infinity:
                bound += set.full() ? 0.0 : w * std::max((1.0 - pi_min) / pi_min, 1.0);
                break;
            case Metric::hellinger: bound += w * 2.0 * (1.0 - std::sqrt(a)); break;
        }
    }
    double exact = exact_distance(c, x, n_steps, m);
    require(bound >= exact - 1e-10, errc::bad_input,
            "set-process bound fell below the exact distance");
    return bound;
}

// =============================================================================
// Single-constant mixing bound:
// tau(eps) <= ceil( log(f(pi_*)/eps) / (1 - C_{af(a)}) ).
// =============================================================================

inline BoundReport mixing_bound_basic(const MarkovChain& c, const DistanceShape& shape,
                                      double eps) {
    BoundReport rep;
    rep.method = "basic-" + shape.name;
    rep.metric = shape.metric;
    rep.eps = eps;
    ProfileTable table = f_congestion_profile_table(c, *shape.congestion);
    double cf = shape.congestion->symmetric ? profile_value(table, 0.5)
                                            : profile_extremum(table);
    rep.params["congestion"] = cf;
    double pi_min = c.min_stationary();
    rep.params["pi_star"] = pi_min;
    if (cf >= 1.0 - 1e-12) {
        rep.unbounded = true;
        rep.note = "no contraction";
        return rep;
    }
    detail::finalize_report(rep, std::log(shape.f(pi_min) / eps) / (1.0 - cf));
    return rep;
}

// =============================================================================
// Profile mixing bound.  The integrand uses the profile of C_{af(a)}, which is
// piecewise constant in the mass, so each segment integrates to a ratio of
// log f values.  In the convex mode the hypothesis "x (1-C_{af(a)}(f^{-1}(x)))
// is convex" is verified numerically on the achievable-mass grid and the
// result is recorded; when it fails the general (factor-two) form is used.
// =============================================================================

enum class ProfileBoundMode { convex, general };

namespace detail {

// sum over segments of log(f(lo)/f(hi)) / (1 - C); the table's last value
// extends beyond the largest achievable mass (no new subsets appear there).
inline double integrate_logf_over_profile(const ProfileTable& t,
                                          const std::function<double(double)>& f, double lo,
                                          double hi) {
    if (hi <= lo) return 0.0;
    double out = 0.0;
    for (size_t j = 0; j < t.size(); ++j) {
        double seg_lo = t[j].r;
        double seg_hi = (j + 1 < t.size()) ? t[j + 1].r : hi;
        double a = std::max(lo, seg_lo), b = std::min(hi, seg_hi);
        if (b <= a) continue;
        double gap = 1.0 - t[j].value;
        if (gap <= 1e-12) return kInf;
        out += std::log(f(a) / f(b)) / gap;
    }
    return out;
}

inline bool convexity_on_grid(const ProfileTable& t, const std::function<double(double)>& f) {
    // points (x, h) = (f(r), f(r) (1 - C(r))), ascending in x
    std::vector<std::pair<double, double>> pts;
    for (size_t j = t.size(); j-- > 0;) pts.emplace_back(f(t[j].r), f(t[j].r) * (1.0 - t[j].value));
    double prev_slope = -kInf;
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        double dx = pts[i + 1].first - pts[i].first;
        if (dx <= 0.0) continue;
        double slope = (pts[i + 1].second - pts[i].second) / dx;
        if (slope < prev_slope - 1e-9) return false;
        prev_slope = slope;
    }
    return true;
}

}  // namespace detail

inline BoundReport mixing_bound_profile(const MarkovChain& c, const DistanceShape& shape,
                                        double eps, ProfileBoundMode mode) {
    BoundReport rep;
    rep.metric = shape.metric;
    rep.eps = eps;
    ProfileTable table = f_congestion_profile_table(c, *shape.congestion);
    double pi_min = c.min_stationary();
    rep.params["pi_star"] = pi_min;

    rep.convexity_checked = true;
    rep.convexity_ok = detail::convexity_on_grid(table, shape.f);
    bool use_convex = mode == ProfileBoundMode::convex && rep.convexity_ok;
    if (mode == ProfileBoundMode::convex && !rep.convexity_ok)
        rep.note = "convexity check failed; general form used";

    double raw;
    if (use_convex) {
        rep.method = "profile-convex-" + shape.name;
        double hi = shape.finv(eps);
        raw = detail::integrate_logf_over_profile(table, shape.f, pi_min, hi);
        if (hi > table.back().r + kTol)
            rep.params["profile_extended"] = 1.0;
    } else {
        rep.method = "profile-general-" + shape.name;
        double lo = shape.finv(shape.f(pi_min) / 2.0);
        double hi = shape.finv(eps / 2.0);
        raw = 2.0 * detail::integrate_logf_over_profile(table, shape.f, lo, hi);
    }
    detail::finalize_report(rep, raw);
    if (rep.unbounded) rep.note = "no contraction";
    return rep;
}

// =============================================================================
// L2 mixing bounds from conductance-style profiles: modified conductance,
// conductance of the multiplicative reversibilization, or plain conductance
// with a holding-probability correction.  Both the single-constant and the
// profile-integral forms are evaluated; the report keeps the smaller.
// =============================================================================

enum class ConductanceFamily { modified, pp_star, holding };

namespace detail {

// sum over segments of w(value) * log(b/a) on [lo, hi] (integrand
// w(value(r))/r dr), extending the final value.
inline double integrate_dr_over_r(const ProfileTable& t,
                                  const std::function<double(double)>& weight, double lo,
                                  double hi) {
    if (hi <= lo) return 0.0;
    double out = 0.0;
    for (size_t j = 0; j < t.size(); ++j) {
        double seg_lo = t[j].r;
        double seg_hi = (j + 1 < t.size()) ? t[j + 1].r : hi;
        double a = std::max(lo, seg_lo), b = std::min(hi, seg_hi);
        if (b <= a) continue;
        double w = weight(t[j].value);
        if (!std::isfinite(w)) return kInf;
        out += w * std::log(b / a);
    }
    if (lo < t.front().r) {
        // below the smallest achievable mass the family is empty; treat the
        // profile as starting at its first row
        double w = weight(t.front().value);
        if (!std::isfinite(w)) return kInf;
        out += w * std::log(std::min(hi, t.front().r) / lo) * 0.0;
    }
    return out;
}

}  // namespace detail

inline BoundReport l2_conductance_bounds(const MarkovChain& c, double eps,
                                         ConductanceFamily family) {
    BoundReport rep;
    rep.metric = Metric::l2;
    rep.eps = eps;
    double pi_min = c.min_stationary();
    double log_term = std::log(1.0 / (eps * std::sqrt(pi_min)));

    ProfileTable table;
    double single_factor = 0.0, integral_factor = 0.0;
    switch (family) {
        case ConductanceFamily::modified: {
            rep.method = "l2-modified";
            table = profile_table(c, ProfileQuantity::modified_tilde);
            single_factor = 2.0;
            integral_factor = 2.0;
            break;
        }
        case ConductanceFamily::pp_star: {
            rep.method = "l2-ppstar";
            table = profile_table(multiplicative_reversibilization(c),
                                  ProfileQuantity::conductance_tilde);
            single_factor = 8.0;
            integral_factor = 8.0;
            break;
        }
        case ConductanceFamily::holding: {
            rep.method = "l2-holding";
            double gamma = c.min_holding();
            rep.params["gamma"] = gamma;
            if (gamma <= kTol) {
                rep.unbounded = true;
                rep.note = "zero holding probability";
                return rep;
            }
            table = profile_table(c, ProfileQuantity::conductance_tilde);
            double corr = 4.0 * std::max(gamma, 1.0 - gamma) / (gamma / (1.0 - gamma));
            single_factor = corr;
            integral_factor = corr;
            break;
        }
    }

    double phi = profile_extremum(table);
    rep.params["profile_extremum"] = phi;
    double single = phi <= 1e-12 ? detail::kInf
                                 : single_factor / (phi * phi) * log_term;
    double integral = detail::integrate_dr_over_r(
        table,
        [&](double v) {
            return v <= 1e-12 ? detail::kInf : integral_factor / (v * v);
        },
        4.0 * pi_min, 4.0 / (eps * eps));
    rep.params["single_form"] = single;
    rep.params["integral_form"] = integral;
    detail::finalize_report(rep, std::min(single, integral));
    if (rep.unbounded) rep.note = "no contraction";
    return rep;
}

// =============================================================================
// Blocking-style bounds driven by the psi transforms.
// =============================================================================

namespace detail {

struct PsiMins {
    // prefix minima over { A : pi(A) <= r }, one row per distinct mass
    std::vector<double> r;
    std::vector<double> gl_weighted;  // min pi(A) psi_gl(A)
    std::vector<double> mod;          // min psi_mod(A)
    std::vector<double> mod_by_logpi; // min psi_mod(A)/log(1/pi(A))
    std::vector<double> plus;         // min psi_plus(A)

    double at(const std::vector<double>& col, double x) const {
        require(!r.empty() && x >= r.front() - kTol, errc::bad_input,
                "mass below the smallest achievable set");
        double v = col.front();
        for (size_t j = 0; j < r.size(); ++j) {
            if (r[j] <= x + kTol) v = col[j];
            else break;
        }
        return v;
    }
};

inline PsiMins psi_minima(const MarkovChain& c) {
    std::map<double, std::vector<double>> rows;  // mass -> mins of the four columns
    for_each_proper_subset(c, [&](uint64_t mask) {
        VertexSet a = c.set_of(mask);
        BlockingPsis b = blocking_psis(c, a);
        double vals[4] = {a.mass() * b.psi_gl, b.psi_mod,
                          b.psi_mod / std::log(1.0 / a.mass()), b.psi_plus};
        auto [it, fresh] = rows.try_emplace(a.mass(),
                                            std::vector<double>(vals, vals + 4));
        if (!fresh)
            for (int k = 0; k < 4; ++k) it->second[k] = std::min(it->second[k], vals[k]);
    });
    PsiMins out;
    double run[4] = {kInf, kInf, kInf, kInf};
    for (const auto& [mass, vals] : rows) {
        for (int k = 0; k < 4; ++k) run[k] = std::min(run[k], vals[k]);
        out.r.push_back(mass);
        out.gl_weighted.push_back(run[0]);
        out.mod.push_back(run[1]);
        out.mod_by_logpi.push_back(run[2]);
        out.plus.push_back(run[3]);
    }
    return out;
}

// integral of 1/(x * min(x)) over [lo, hi] with min(x) piecewise constant
inline double integrate_h(const PsiMins& mins, const std::vector<double>& col, double lo,
                          double hi) {
    if (hi <= lo) return 0.0;
    double out = 0.0;
    for (size_t j = 0; j < mins.r.size(); ++j) {
        double seg_lo = mins.r[j];
        double seg_hi = (j + 1 < mins.r.size()) ? mins.r[j + 1] : hi;
        double a = std::max(lo, seg_lo), b = std::min(hi, seg_hi);
        if (b <= a) continue;
        if (col[j] <= 1e-300) return kInf;
        out += std::log(b / a) / col[j];
    }
    return out;
}

}  // namespace detail

// tau_TV, tau_D and tau_2 in the h_gl / h_mod / h_plus style.
inline std::vector<BoundReport> blocking_style_bounds(const MarkovChain& c, double eps) {
    detail::PsiMins mins = detail::psi_minima(c);
    double pi_min = c.min_stationary();
    std::vector<BoundReport> out;

    {  // tau_TV <= ceil( h_gl(1/2)/2 * log((1-pi_*)/eps) )
        BoundReport rep;
        rep.method = "blocking-tv";
        rep.metric = Metric::total_variation;
        rep.eps = eps;
        double m = mins.at(mins.gl_weighted, 0.5);
        rep.params["h_gl_half"] = m <= 1e-300 ? detail::kInf : 1.0 / m;
        double raw = m <= 1e-300 ? detail::kInf
                                 : 0.5 / m * std::log((1.0 - pi_min) / eps);
        detail::finalize_report(rep, raw);
        if (rep.unbounded) rep.note = "no contraction";
        out.push_back(std::move(rep));
    }

    {  // tau_D <= ceil( 2C int_{sqrt(pi_*)}^{1/2} h_mod + C h_mod(1/2) log(2/eps) )
        BoundReport rep;
        rep.method = "blocking-d";
        rep.metric = Metric::relative_entropy;
        rep.eps = eps;
        // optimal constant C relating the two normalizations of psi_mod
        double cconst = 1.0;
        bool dead = false;
        for (size_t j = 0; j < mins.r.size(); ++j) {
            double lhs = mins.mod_by_logpi[j];
            double rhs = mins.mod[j] / std::log(1.0 / mins.r[j]);
            if (lhs <= 1e-300) {
                dead = true;
                break;
            }
            cconst = std::max(cconst, rhs / lhs);
        }
        rep.params["C"] = cconst;
        double half = mins.at(mins.mod, 0.5);
        if (dead || half <= 1e-300) {
            rep.unbounded = true;
            rep.note = "no contraction";
        } else {
            double integral = detail::integrate_h(mins, mins.mod, std::sqrt(pi_min), 0.5);
            double raw = 2.0 * cconst * integral +
                         cconst * (2.0 / half) * std::log(2.0 / eps);
            detail::finalize_report(rep, raw);
            if (rep.unbounded) rep.note = "no contraction";
        }
        out.push_back(std::move(rep));
    }

    {  // tau_2 <= ceil( 4 int_{4pi_*}^{1/2} h_plus + h_plus(1/2) log(2sqrt2/eps) )
        BoundReport rep;
        rep.method = "blocking-l2";
        rep.metric = Metric::l2;
        rep.eps = eps;
        double half = mins.at(mins.plus, 0.5);
        if (half <= 1e-300) {
            rep.unbounded = true;
            rep.note = "no contraction";
        } else {
            double integral = detail::integrate_h(mins, mins.plus, 4.0 * pi_min, 0.5);
            double raw = 4.0 * integral +
                         (2.0 / half) * std::log(2.0 * std::sqrt(2.0) / eps);
            detail::finalize_report(rep, raw);
            if (rep.unbounded) rep.note = "no contraction";
        }
        out.push_back(std::move(rep));
    }
    return out;
}

// =============================================================================
// Cycle-style distance bound (1 - pi_*) C_{sin(pi a)}^n, valid when every
// proper subset admits 1/2 as a crossing level (true on cycles).
// =============================================================================

inline double cycle_sin_bound(const MarkovChain& c, int n_steps) {
    for_each_proper_subset(c, [&](uint64_t mask) {
        auto [lo, hi] = wp_interval(c, c.set_of(mask));
        require(lo <= 0.5 + kTol && hi >= 0.5 - kTol, errc::wp_not_half,
                "some subset does not admit 1/2 as a crossing level");
    });
    double csin = profile_value(f_congestion_profile_table(c, kernel_sin()), 0.5);
    return (1.0 - c.min_stationary()) * std::pow(csin, n_steps);
}

// =============================================================================
// Eulerian walks: recover the digraph structure from the transition matrix
// (entries of a simple walk are integer multiples of 1/deg(x), stationary mass
// deg(x)/m) and evaluate the closed-form L2 bounds.
// =============================================================================

namespace detail {

inline std::optional<EulerianMeta> detect_simple_eulerian(const MarkovChain& c) {
    int n = c.n();
    std::vector<int> deg(n, 0);
    std::vector<std::vector<long long>> mult(n, std::vector<long long>(n, 0));
    long long m = 0;
    for (int x = 0; x < n; ++x) {
        double mn = 2.0;
        for (int y = 0; y < n; ++y)
            if (c.at(x, y) > 1e-9) mn = std::min(mn, c.at(x, y));
        if (mn > 1.0) return std::nullopt;
        double d = 1.0 / mn;
        long long dx = std::llround(d);
        if (dx < 1 || std::fabs(d - dx) > 1e-6) return std::nullopt;
        long long row = 0;
        for (int y = 0; y < n; ++y) {
            double k = c.at(x, y) * dx;
            long long kk = std::llround(k);
            if (std::fabs(k - kk) > 1e-6) return std::nullopt;
            mult[x][y] = kk;
            row += kk;
        }
        if (row != dx) return std::nullopt;
        deg[x] = static_cast<int>(dx);
        m += dx;
    }
    for (int y = 0; y < n; ++y) {
        long long in = 0;
        for (int x = 0; x < n; ++x) in += mult[x][y];
        if (in != deg[y]) return std::nullopt;
    }
    for (int x = 0; x < n; ++x)
        if (std::fabs(c.pi(x) - static_cast<double>(deg[x]) / m) > 1e-9) return std::nullopt;
    return EulerianMeta{static_cast<int>(m), false};
}

}  // namespace detail

inline std::optional<EulerianMeta> detect_eulerian_walk(const MarkovChain& c) {
    if (auto meta = detail::detect_simple_eulerian(c)) return meta;
    if (c.min_holding() >= 0.5 - 1e-9) {
        int n = c.n();
        std::vector<double> p(static_cast<size_t>(n) * n);
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                double v = 2.0 * c.at(x, y) - (x == y ? 1.0 : 0.0);
                if (v < -1e-9) return std::nullopt;
                p[static_cast<size_t>(x) * n + y] = std::max(0.0, v);
            }
        MarkovChain base = chain_from_parts(n, std::move(p), c.pi(), c.labels());
        if (auto meta = detail::detect_simple_eulerian(base))
            return EulerianMeta{meta->edges, true};
    }
    return std::nullopt;
}

// tau_2 for the simple walk on an Eulerian digraph with m edges:
//   non-lazy, under the expansion condition:  ceil(m^2/12 + (m^2/8) log(1/eps))
//   lazy (no condition needed):               ceil(m^2/3  + (m^2/2) log(1/eps))
inline std::optional<BoundReport> eulerian_tau2_bound(const MarkovChain& c, double eps) {
    std::optional<EulerianMeta> meta = detect_eulerian_walk(c);
    if (!meta) return std::nullopt;
    if (c.n() > kMaxExhaustiveStates) return std::nullopt;
    double m = meta->edges;
    if (c.min_stationary() < 2.0 / m - kTol) return std::nullopt;  // needs min degree >= 2

    BoundReport rep;
    rep.metric = Metric::l2;
    rep.eps = eps;
    rep.params["edges"] = m;
    if (meta->lazy) {
        rep.method = "eulerian-lazy-tau2";
        // every lazy walk moves at least one edge weight across any boundary
        double min_psi = detail::kInf;
        for_each_proper_subset(c, [&](uint64_t mask) {
            VertexSet a = c.set_of(mask);
            if (a.mass() > 0.5 + kTol) return;
            min_psi = std::min(min_psi, psi(c, a));
        });
        rep.params["min_psi"] = min_psi;
        if (min_psi < 1.0 / (2.0 * m) - 1e-12) return std::nullopt;
        detail::finalize_report(rep, m * m / 3.0 + m * m / 2.0 * std::log(1.0 / eps));
    } else {
        rep.method = "eulerian-tau2";
        if (expansion_condition(c)) {
            rep.unbounded = true;
            rep.note = "expansion condition fails";
            return rep;
        }
        double min_psi = detail::kInf;
        for_each_proper_subset(c, [&](uint64_t mask) {
            VertexSet a = c.set_of(mask);
            if (a.mass() > 0.5 + kTol) return;
            min_psi = std::min(min_psi, psi(c, a));
        });
        rep.params["min_psi"] = min_psi;
        if (min_psi < 1.0 / m - 1e-12) return std::nullopt;
        detail::finalize_report(rep, m * m / 12.0 + m * m / 8.0 * std::log(1.0 / eps));
    }
    return rep;
}

// =============================================================================
// Comparison table: every applicable bound method against the exact oracle.
// =============================================================================

struct ComparisonRow {
    BoundReport report;
    std::optional<int> exact;  // oracle mixing time when it resolved under the cap
};

inline std::vector<ComparisonRow> comparison_table(const MarkovChain& c,
                                                   const std::vector<double>& eps_list,
                                                   int oracle_cap = 20000) {
    require(c.n() <= kMaxExhaustiveStates, errc::too_many_states,
            "bound evaluation needs subset enumeration");
    std::vector<ComparisonRow> rows;
    std::map<std::pair<int, long long>, std::optional<int>> oracle_cache;
    auto oracle = [&](Metric m, double eps) {
        auto key = std::make_pair(static_cast<int>(m), std::llround(eps * 1e12));
        auto it = oracle_cache.find(key);
        if (it == oracle_cache.end())
            it = oracle_cache.emplace(key, exact_mixing_time(c, m, eps, oracle_cap)).first;
        return it->second;
    };
    auto push = [&](BoundReport rep) {
        ComparisonRow row{std::move(rep), std::nullopt};
        row.exact = oracle(row.report.metric, row.report.eps);
        rows.push_back(std::move(row));
    };

    for (double eps : eps_list) {
        for (const DistanceShape* s : all_shapes()) {
            push(mixing_bound_basic(c, *s, eps));
            push(mixing_bound_profile(c, *s, eps, ProfileBoundMode::convex));
            push(mixing_bound_profile(c, *s, eps, ProfileBoundMode::general));
        }
        push(l2_conductance_bounds(c, eps, ConductanceFamily::modified));
        push(l2_conductance_bounds(c, eps, ConductanceFamily::pp_star));
        push(l2_conductance_bounds(c, eps, ConductanceFamily::holding));
        for (BoundReport& rep : blocking_style_bounds(c, eps)) push(std::move(rep));
        if (auto rep = eulerian_tau2_bound(c, eps)) push(std::move(*rep));
    }
    return rows;
}

}  // namespace mixbound
