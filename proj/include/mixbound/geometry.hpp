#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mixbound/chain.hpp"
#include "mixbound/common.hpp"
#include "mixbound/level_sets.hpp"

namespace mixbound {

enum class Normalization {
    product,  // pi(A) pi(A^c)
    min_side  // min{pi(A), pi(A^c)}
};

namespace detail {

inline void require_proper(const VertexSet& a, const char* what) {
    require(a.is_proper(), errc::trivial_set, what);
}

}  // namespace detail

// Phi(A) = Q(A,A^c) / norm
inline double conductance(const MarkovChain& c, const VertexSet& a, Normalization norm) {
    detail::require_proper(a, "conductance needs a proper subset");
    double q = ergodic_flow(c, a, c.complement(a));
    double pa = a.mass(), pc = 1.0 - pa;
    return q / (norm == Normalization::product ? pa * pc : std::min(pa, pc));
}

// =============================================================================
// Psi(A,t): the smallest ergodic flow from A into a fractionally completed set
// of stationary mass exactly t.  Greedy over states sorted by ascending flow
// ratio Q(A,v)/pi(v); the last state is taken fractionally.
// =============================================================================

inline double psi_flow(const MarkovChain& c, const VertexSet& a, double t) {
    require(t >= -kTol && t <= 1.0 + kTol, errc::bad_t, "mass must lie in [0,1]");
    t = std::min(1.0, std::max(0.0, t));
    std::vector<double> q = flow_vector(c, a);
    std::vector<int> order(c.n());
    for (int i = 0; i < c.n(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        double rx = q[x] / c.pi(x), ry = q[y] / c.pi(y);
        if (rx != ry) return rx < ry;
        return x < y;
    });
    double acc = 0.0, flow = 0.0;
    for (int y : order) {
        double m = c.pi(y);
        if (acc + m <= t + 1e-15) {
            flow += q[y];
            acc += m;
        } else {
            flow += (t - acc) * q[y] / m;
            return flow;
        }
    }
    return flow;
}

// Piecewise-linear representation of t -> Psi(A,t) on [0,1].
struct PsiCurve {
    std::vector<double> knots;   // masses, ascending, starting at 0 and ending at 1
    std::vector<double> values;  // Psi at each knot

    double at(double t) const {
        if (t <= knots.front()) return values.front();
        if (t >= knots.back()) return values.back();
        auto it = std::upper_bound(knots.begin(), knots.end(), t);
        size_t j = static_cast<size_t>(it - knots.begin());
        double t0 = knots[j - 1], t1 = knots[j];
        double f = (t - t0) / (t1 - t0);
        return values[j - 1] + f * (values[j] - values[j - 1]);
    }
};

// The raw curve: slopes are the flow ratios of A in ascending order (states
// with no inflow from A contribute a flat initial segment).
inline PsiCurve psi_curve_raw(const MarkovChain& c, const VertexSet& a) {
    LevelProfile lp = level_profile(c, a);
    PsiCurve curve;
    curve.knots.push_back(0.0);
    curve.values.push_back(0.0);
    double dead = 1.0 - lp.neighborhood_mass();  // zero-ratio mass comes first
    if (dead > 0.0) {
        curve.knots.push_back(dead);
        curve.values.push_back(0.0);
    }
    const auto& st = lp.steps();
    for (size_t j = st.size(); j-- > 0;) {  // ascending thresholds
        curve.knots.push_back(curve.knots.back() + st[j].mass);
        curve.values.push_back(curve.values.back() + st[j].mass * st[j].threshold);
    }
    curve.knots.back() = 1.0;  // guard cumulative roundoff
    return curve;
}

// Raw value with the blocking convention Psi(A,t) = Psi(A^c, 1-t) for
// t > 1 - pi(A).
inline double psi_flow_blocking(const MarkovChain& c, const VertexSet& a, double t) {
    require(t >= -kTol && t <= 1.0 + kTol, errc::bad_t, "mass must lie in [0,1]");
    double cutoff = 1.0 - a.mass();
    if (t <= cutoff) return psi_flow(c, a, t);
    return psi_flow(c, c.complement(a), 1.0 - t);
}

// The full blocking curve of t -> Psi(A,t): raw up to 1 - pi(A), mirrored
// complement flow beyond.
inline PsiCurve psi_curve_blocking(const MarkovChain& c, const VertexSet& a) {
    double cutoff = 1.0 - a.mass();
    PsiCurve raw = psi_curve_raw(c, a);
    PsiCurve mirror = psi_curve_raw(c, c.complement(a));

    PsiCurve out;
    for (size_t j = 0; j < raw.knots.size() && raw.knots[j] < cutoff; ++j) {
        out.knots.push_back(raw.knots[j]);
        out.values.push_back(raw.values[j]);
    }
    out.knots.push_back(cutoff);
    out.values.push_back(raw.at(cutoff));
    for (size_t j = mirror.knots.size(); j-- > 0;) {
        double t = 1.0 - mirror.knots[j];
        if (t <= cutoff + 1e-15) continue;
        out.knots.push_back(t);
        out.values.push_back(mirror.values[j]);
    }
    return out;
}

// Psi(A) = Psi(A, pi(A^c)); zero exactly on the bipartition sets of a
// periodic walk, which is what separates this from plain boundary flow.
inline double psi(const MarkovChain& c, const VertexSet& a) {
    detail::require_proper(a, "psi needs a proper subset");
    return psi_flow(c, a, 1.0 - a.mass());
}

// Same quantity through the level representation (1/2) int |pi(A)-pi(A_u)| du.
// Agreement of the two routes is a shipped invariant test.
inline double psi_via_levels(const MarkovChain& c, const VertexSet& a) {
    detail::require_proper(a, "psi needs a proper subset");
    LevelProfile lp = level_profile(c, a);
    double base = lp.base_mass();
    return 0.5 * lp.integrate([&](double v) { return std::fabs(base - v); });
}

// phi(A) = Psi(A) / norm
inline double modified_conductance(const MarkovChain& c, const VertexSet& a,
                                   Normalization norm) {
    detail::require_proper(a, "modified conductance needs a proper subset");
    double ps = psi(c, a);
    double pa = a.mass(), pc = 1.0 - pa;
    return ps / (norm == Normalization::product ? pa * pc : std::min(pa, pc));
}

// =============================================================================
// Profiles by exhaustive subset enumeration.
// =============================================================================

struct ProfileRow {
    double r;          // achievable stationary mass
    double value;      // extremal value over { A : pi(A) <= r }
    uint64_t witness;  // first subset attaining it, in enumeration order
};

using ProfileTable = std::vector<ProfileRow>;

enum class ProfileQuantity {
    conductance,        // Phi, min
    conductance_tilde,  // Phi~, min
    modified,           // phi, min
    modified_tilde,     // phi~, min
    congestion          // C_f, max (value function supplied by the caller)
};

namespace detail {

struct RawProfileEntry {
    double value;
    long long order;
    uint64_t mask;
};

template <typename ValueFn>
inline ProfileTable profile_from_values(const MarkovChain& c, bool maximize, ValueFn&& value) {
    std::map<double, RawProfileEntry> per_mass;
    long long order = 0;
    for_each_proper_subset(c, [&](uint64_t mask) {
        VertexSet a = c.set_of(mask);
        double v = value(a);
        auto [it, fresh] = per_mass.try_emplace(a.mass(), RawProfileEntry{v, order, mask});
        if (!fresh) {
            bool better = maximize ? v > it->second.value : v < it->second.value;
            if (better) it->second = {v, order, mask};
        }
        ++order;
    });

    // merge masses equal within tolerance, then prefix-extremize over r
    ProfileTable table;
    RawProfileEntry best{0.0, -1, 0};
    double last_r = -1.0;
    for (const auto& [r, e] : per_mass) {
        bool improves = best.order < 0 || (maximize ? e.value > best.value : e.value < best.value);
        if (improves ||
            (e.value == best.value && e.order < best.order))
            best = e;
        if (!table.empty() && r - last_r <= 1e-12 * std::max(1.0, r)) {
            table.back() = {r, best.value, best.mask};
        } else {
            table.push_back({r, best.value, best.mask});
        }
        last_r = r;
    }
    return table;
}

}  // namespace detail

template <typename KernelValueFn>
inline ProfileTable congestion_profile_table(const MarkovChain& c, KernelValueFn&& cf) {
    return detail::profile_from_values(c, /*maximize=*/true, cf);
}

inline ProfileTable profile_table(const MarkovChain& c, ProfileQuantity q) {
    switch (q) {
        case ProfileQuantity::conductance:
            return detail::profile_from_values(c, false, [&](const VertexSet& a) {
                return conductance(c, a, Normalization::min_side);
            });
        case ProfileQuantity::conductance_tilde:
            return detail::profile_from_values(c, false, [&](const VertexSet& a) {
                return conductance(c, a, Normalization::product);
            });
        case ProfileQuantity::modified:
            return detail::profile_from_values(c, false, [&](const VertexSet& a) {
                return modified_conductance(c, a, Normalization::min_side);
            });
        case ProfileQuantity::modified_tilde:
            return detail::profile_from_values(c, false, [&](const VertexSet& a) {
                return modified_conductance(c, a, Normalization::product);
            });
        case ProfileQuantity::congestion:
            fail(errc::bad_input, "congestion profiles need a kernel; use "
                                  "congestion_profile_table");
    }
    fail(errc::bad_input, "unknown profile quantity");
}

// Value of the profile at mass r: the row with the largest r' <= r.  Beyond
// the last achievable mass the profile is constant (no new subsets appear),
// so the final value extends.
inline double profile_value(const ProfileTable& t, double r) {
    require(!t.empty(), errc::bad_input, "empty profile");
    require(r >= t.front().r - kTol, errc::bad_input, "mass below the smallest achievable set");
    double v = t.front().value;
    for (const ProfileRow& row : t) {
        if (row.r <= r + kTol) v = row.value;
        else break;
    }
    return v;
}

// Full-range extremum (the profile evaluated at r = 1).
inline double profile_extremum(const ProfileTable& t) {
    require(!t.empty(), errc::bad_input, "empty profile");
    return t.back().value;
}

// =============================================================================
// Conductance vs modified conductance for walks with holding gamma:
// Phi~(A) >= phi~(A) >= min{1, gamma/(1-gamma)} Phi~(A).
// =============================================================================

struct ConductanceSandwich {
    double upper;      // Phi~(A)
    double modified;   // phi~(A)
    double lower;      // min{1, gamma/(1-gamma)} Phi~(A)
};

inline ConductanceSandwich nonlazy_conductance_sandwich(const MarkovChain& c,
                                                        const VertexSet& a) {
    detail::require_proper(a, "sandwich needs a proper subset");
    double upper = conductance(c, a, Normalization::product);
    double modified = modified_conductance(c, a, Normalization::product);
    double gamma = c.min_holding();
    double factor = gamma >= 0.5 ? 1.0 : gamma / (1.0 - gamma);
    double lower = factor * upper;
    require(upper >= modified - 1e-10 && modified >= lower - 1e-10, errc::bad_input,
            "conductance sandwich violated");
    return {upper, modified, lower};
}

}  // namespace mixbound
