#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "mixbound/chain.hpp"
#include "mixbound/common.hpp"

namespace mixbound {

// =============================================================================
// LevelProfile: the step function u -> pi(A_u), where
// A_u = { y : Q(A,y) >= u * pi(y) }.
//
// Stored as breakpoints (threshold, mass) sorted by descending threshold with
// only positive thresholds kept; thresholds equal within 1e-12 relative are
// merged into one breakpoint at the mass-weighted mean, which keeps the exact
// integral  sum_j mass_j * threshold_j = pi(A)  unchanged.
// =============================================================================

class LevelProfile {
  public:
    struct Step {
        double threshold;  // Q(A,y)/pi(y), merged over ties
        double mass;       // total pi-mass at this threshold
    };

    LevelProfile(double base_mass, std::vector<Step> steps)
        : base_(base_mass), steps_(std::move(steps)) {}

    double base_mass() const { return base_; }
    const std::vector<Step>& steps() const { return steps_; }

    // pi(A_{0+}): mass of everything receiving positive flow from A.
    double neighborhood_mass() const {
        double m = 0.0;
        for (const Step& s : steps_) m += s.mass;
        return m;
    }

    // pi(A_u); at u = 0 the whole space qualifies.
    double mass_at(double u) const {
        if (u <= 0.0) return 1.0;
        double m = 0.0;
        for (const Step& s : steps_) {
            if (s.threshold >= u) m += s.mass;
            else break;
        }
        return m;
    }

    // int_0^1 pi(A_u) du, exactly sum_j mass_j * threshold_j.
    double integral() const {
        double v = 0.0;
        for (const Step& s : steps_) v += s.mass * s.threshold;
        return v;
    }

    // int_0^1 f(pi(A_u)) du for arbitrary f: the integrand is a step function,
    // so this is a finite sum with one f evaluation per level.
    template <typename F>
    double integrate(F&& f) const {
        double top = steps_.empty() ? 0.0 : steps_.front().threshold;
        double out = (1.0 - top) * f(0.0);
        double cum = 0.0;
        for (size_t j = 0; j < steps_.size(); ++j) {
            cum += steps_[j].mass;
            double lo = (j + 1 < steps_.size()) ? steps_[j + 1].threshold : 0.0;
            out += (steps_[j].threshold - lo) * f(cum);
        }
        return out;
    }

  private:
    double base_;
    std::vector<Step> steps_;
};

namespace detail {

// Flow ratios u_y = Q(A,y)/pi(y), clamped into [0,1]; values within 1e-12 of
// 1 are snapped so that tie merging treats the top level as exact.
inline std::vector<double> flow_ratios(const MarkovChain& c, const VertexSet& a) {
    std::vector<double> q = flow_vector(c, a);
    std::vector<double> r(c.n());
    for (int y = 0; y < c.n(); ++y) {
        double v = q[y] / c.pi(y);
        if (v > 1.0 - kTol) v = 1.0;
        r[y] = std::min(1.0, std::max(0.0, v));
    }
    return r;
}

inline bool thresholds_equal(double hi, double lo) {
    return hi - lo <= 1e-12 * std::max(1.0, hi);
}

// States grouped by merged flow ratio, descending; zero-flow states dropped.
struct RatioGroup {
    double threshold;
    double mass;
    std::vector<int> states;
};

inline std::vector<RatioGroup> ratio_groups(const MarkovChain& c, const VertexSet& a) {
    std::vector<double> r = flow_ratios(c, a);
    std::vector<int> order;
    for (int i = 0; i < c.n(); ++i)
        if (r[i] > 0.0) order.push_back(i);
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        if (r[x] != r[y]) return r[x] > r[y];
        return x < y;
    });
    std::vector<RatioGroup> groups;
    for (int y : order) {
        if (!groups.empty() && thresholds_equal(groups.back().threshold, r[y])) {
            RatioGroup& g = groups.back();
            g.threshold = (g.threshold * g.mass + r[y] * c.pi(y)) / (g.mass + c.pi(y));
            g.mass += c.pi(y);
            g.states.push_back(y);
        } else {
            groups.push_back({r[y], c.pi(y), {y}});
        }
    }
    return groups;
}

}  // namespace detail

inline LevelProfile level_profile(const MarkovChain& c, const VertexSet& a) {
    require(!a.empty(), errc::empty_set, "level profile of the empty set");
    std::vector<LevelProfile::Step> steps;
    for (const auto& g : detail::ratio_groups(c, a)) steps.push_back({g.threshold, g.mass});
    return LevelProfile(a.mass(), std::move(steps));
}

// A_u by the defining membership test, with a relative tolerance on the ratio.
inline VertexSet set_at_level(const MarkovChain& c, const VertexSet& a, double u) {
    std::vector<int> members;
    for (int y = 0; y < c.n(); ++y) {
        double q = flow_to_state(c, a, y);
        if (q >= (u - 1e-12) * c.pi(y)) members.push_back(y);
    }
    return c.set_of(members);
}

// =============================================================================
// The evolving-set kernel K and its Doob transform K-hat.
// =============================================================================

struct SetDistribution {
    std::vector<std::pair<VertexSet, double>> atoms;

    double total() const {
        double s = 0.0;
        for (const auto& [set, p] : atoms) s += p;
        return s;
    }
};

// K(A, .): the distinct sets A_u as u sweeps (0,1], each weighted by the
// length of its u-interval.  At most n+1 atoms including the empty set.
inline SetDistribution kernel_K(const MarkovChain& c, const VertexSet& a) {
    require(!a.empty(), errc::empty_set, "kernel of the empty set");
    std::vector<detail::RatioGroup> groups = detail::ratio_groups(c, a);

    SetDistribution dist;
    if (groups.empty() || groups.front().threshold < 1.0) {
        double top = groups.empty() ? 0.0 : groups.front().threshold;
        dist.atoms.emplace_back(c.empty_set(), 1.0 - top);
    }
    std::vector<int> prefix;
    for (size_t j = 0; j < groups.size(); ++j) {
        prefix.insert(prefix.end(), groups[j].states.begin(), groups[j].states.end());
        double lo = (j + 1 < groups.size()) ? groups[j + 1].threshold : 0.0;
        double len = groups[j].threshold - lo;
        if (len > 0.0) dist.atoms.emplace_back(c.set_of(prefix), len);
    }
    return dist;
}

// K-hat(A, .) = (pi(S)/pi(A)) K(A,S); the empty set carries zero weight and is
// dropped.  Probabilities sum to 1 by the martingale property.
inline SetDistribution doob_kernel(const MarkovChain& c, const VertexSet& a) {
    SetDistribution k = kernel_K(c, a);
    SetDistribution out;
    for (auto& [set, p] : k.atoms) {
        if (set.empty()) continue;
        out.atoms.emplace_back(std::move(set), p * set.mass() / a.mass());
    }
    return out;
}

// =============================================================================
// Exact expectations under the Doob transform, by weighted expansion of the
// reachable-set tree.  Identical sets are merged per level, which collapses
// the trajectory count to the (much smaller) reachable-set count; the merge
// key order makes results independent of expansion order.
// =============================================================================

using SetFunctional = std::function<double(const VertexSet&)>;

inline std::vector<std::pair<VertexSet, double>> doob_distribution(
    const MarkovChain& c, const VertexSet& s0, int steps, long long node_budget = 10000000) {
    require(steps >= 0, errc::bad_input, "negative step count");
    require(!s0.empty(), errc::empty_set, "empty starting set");
    std::map<VertexSet, double> level;
    level[s0] = 1.0;
    long long expanded = 0;
    for (int step = 0; step < steps; ++step) {
        std::map<VertexSet, double> next;
        for (const auto& [set, w] : level) {
            if (set.full()) {  // V is absorbing under K-hat
                next[set] += w;
                continue;
            }
            SetDistribution kd = doob_kernel(c, set);
            expanded += static_cast<long long>(kd.atoms.size());
            if (expanded > node_budget)
                fail(errc::budget_exceeded,
                     "set-tree expansion exceeded the node budget; use the Monte Carlo "
                     "estimator instead");
            for (auto& [s2, p] : kd.atoms) next[s2] += w * p;
        }
        level = std::move(next);
    }
    return {level.begin(), level.end()};
}

inline double exact_doob_expectation(const MarkovChain& c, const VertexSet& s0, int steps,
                                     const SetFunctional& g,
                                     long long node_budget = 10000000) {
    double out = 0.0;
    for (const auto& [set, w] : doob_distribution(c, s0, steps, node_budget)) out += w * g(set);
    return out;
}

// =============================================================================
// Admissible crossing levels for pi(A_u) through pi(A):
// [ inf{u : pi(A_u) <= pi(A)},  sup{u : pi(A_u) >= pi(A)} ].
// =============================================================================

inline std::pair<double, double> wp_interval(const MarkovChain& c, const VertexSet& a) {
    require(a.is_proper(), errc::trivial_set, "crossing level needs a proper subset");
    LevelProfile lp = level_profile(c, a);
    const auto& st = lp.steps();
    double base = lp.base_mass();

    // Piecewise-constant intervals of u in ascending order: (lo, hi] -> value.
    struct Band {
        double lo, hi, value;
    };
    std::vector<Band> bands;
    double cum = lp.neighborhood_mass();
    double lo = 0.0;
    for (size_t j = st.size(); j-- > 0;) {
        bands.push_back({lo, st[j].threshold, cum});
        lo = st[j].threshold;
        cum -= st[j].mass;
    }
    bands.push_back({lo, 1.0, 0.0});

    double wp_lo = 1.0, wp_hi = 0.0;
    for (const Band& b : bands) {
        if (b.value <= base + kTol) {
            wp_lo = b.lo;
            break;
        }
    }
    for (size_t i = bands.size(); i-- > 0;) {
        if (bands[i].value >= base - kTol) {
            wp_hi = bands[i].hi;
            break;
        }
    }
    if (wp_lo > wp_hi) wp_lo = wp_hi;  // numerically knife-edge crossings
    return {wp_lo, wp_hi};
}

}  // namespace mixbound
