#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "mixbound/chain.hpp"
#include "mixbound/common.hpp"
#include "mixbound/matrix.hpp"

namespace mixbound {

enum class Metric {
    separation,
    total_variation,
    relative_entropy,
    l2,
    l_infinity,
    hellinger,
};

inline const char* metric_name(Metric m) {
    switch (m) {
        case Metric::separation: return "separation";
        case Metric::total_variation: return "tv";
        case Metric::relative_entropy: return "relative-entropy";
        case Metric::l2: return "l2";
        case Metric::l_infinity: return "linf";
        case Metric::hellinger: return "hellinger";
    }
    return "?";
}

inline std::optional<Metric> parse_metric(const std::string& s) {
    if (s == "separation" || s == "sep") return Metric::separation;
    if (s == "tv" || s == "total-variation") return Metric::total_variation;
    if (s == "relative-entropy" || s == "d" || s == "kl") return Metric::relative_entropy;
    if (s == "l2") return Metric::l2;
    if (s == "linf" || s == "l-infinity") return Metric::l_infinity;
    if (s == "hellinger") return Metric::hellinger;
    // the point-inequality metric makes transport distance coincide with TV
    if (s == "wasserstein" || s == "wasserstein-delta") return Metric::total_variation;
    return std::nullopt;
}

// Distance from a distribution mu to the stationary law, by the defining
// formula of each metric.  Conventions: 0 log 0 = 0; pi is strictly positive
// so no ratio can blow up.
inline double distance_to_pi(const MarkovChain& c, const std::vector<double>& mu, Metric m) {
    int n = c.n();
    switch (m) {
        case Metric::separation: {
            double worst = 0.0;
            for (int y = 0; y < n; ++y) worst = std::max(worst, 1.0 - mu[y] / c.pi(y));
            return worst;
        }
        case Metric::total_variation: {
            double s = 0.0;
            for (int y = 0; y < n; ++y) s += std::fabs(mu[y] - c.pi(y));
            return 0.5 * s;
        }
        case Metric::relative_entropy: {
            double s = 0.0;
            for (int y = 0; y < n; ++y)
                if (mu[y] > 0.0) s += mu[y] * std::log(mu[y] / c.pi(y));
            return std::max(0.0, s);
        }
        case Metric::l2: {
            double s = 0.0;
            for (int y = 0; y < n; ++y) {
                double d = mu[y] / c.pi(y) - 1.0;
                s += c.pi(y) * d * d;
            }
            return std::sqrt(s);
        }
        case Metric::l_infinity: {
            double worst = 0.0;
            for (int y = 0; y < n; ++y) worst = std::max(worst, std::fabs(mu[y] / c.pi(y) - 1.0));
            return worst;
        }
        case Metric::hellinger: {
            double s = 0.0;
            for (int y = 0; y < n; ++y) {
                double d = std::sqrt(mu[y] / c.pi(y)) - 1.0;
                s += c.pi(y) * d * d;
            }
            return s;
        }
    }
    return 0.0;
}

// Row x of P^n by n vector-matrix products.
inline std::vector<double> nstep_row(const MarkovChain& c, int x, int n_steps) {
    std::vector<double> mu(c.n(), 0.0);
    mu[x] = 1.0;
    Matrix p = c.to_matrix();
    for (int s = 0; s < n_steps; ++s) mu = vec_mat(mu, p);
    return mu;
}

inline double exact_distance(const MarkovChain& c, int x, int n_steps, Metric m) {
    require(n_steps >= 0, errc::bad_input, "negative step count");
    return distance_to_pi(c, nstep_row(c, x, n_steps), m);
}

// Worst-case point start; convexity of every supported metric in mu makes
// point masses the worst initial distributions.
inline double exact_distance_worst(const MarkovChain& c, int n_steps, Metric m) {
    double worst = 0.0;
    Matrix pn = mat_pow(c.to_matrix(), n_steps);
    for (int x = 0; x < c.n(); ++x) {
        std::vector<double> mu(c.n());
        for (int y = 0; y < c.n(); ++y) mu[y] = pn(x, y);
        worst = std::max(worst, distance_to_pi(c, mu, m));
    }
    return worst;
}

// Smallest n <= cap with worst-start distance <= eps; nullopt when the chain
// never gets there (periodic chains stay at distance forever).
inline std::optional<int> exact_mixing_time(const MarkovChain& c, Metric m, double eps,
                                            int cap = 100000) {
    require(eps > 0.0, errc::bad_input, "eps must be positive");
    require(cap >= 1, errc::bad_input, "cap must be at least 1");
    int n = c.n();
    Matrix p = c.to_matrix();
    Matrix pk = Matrix::identity(n);
    for (int k = 0; k <= cap; ++k) {
        double worst = 0.0;
        std::vector<double> mu(n);
        for (int x = 0; x < n; ++x) {
            for (int y = 0; y < n; ++y) mu[y] = pk(x, y);
            worst = std::max(worst, distance_to_pi(c, mu, m));
            if (worst > eps) break;
        }
        if (worst <= eps) return k;
        pk = pk * p;
    }
    return std::nullopt;
}

// Second-largest eigenvalue magnitude of a reversible chain, from the
// symmetrized matrix D^{1/2} P D^{-1/2}.
inline double second_eigenvalue_magnitude(const MarkovChain& c) {
    require(c.is_reversible(1e-10), errc::not_reversible,
            "spectral bound needs a reversible chain");
    int n = c.n();
    Matrix s(n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            s(x, y) = std::sqrt(c.pi(x) / c.pi(y)) * c.at(x, y);
    std::vector<double> ev = jacobi_eigenvalues(std::move(s));
    // drop the one eigenvalue closest to 1 (the stationary direction)
    size_t top = 0;
    for (size_t i = 1; i < ev.size(); ++i)
        if (std::fabs(ev[i] - 1.0) < std::fabs(ev[top] - 1.0)) top = i;
    double best = 0.0;
    for (size_t i = 0; i < ev.size(); ++i)
        if (i != top) best = std::max(best, std::fabs(ev[i]));
    return best;
}

// (1/2) lambda_max^n, a floor under the worst-start TV distance of any
// reversible chain.
inline double spectral_tv_lower_bound(const MarkovChain& c, int n_steps) {
    double lam = second_eigenvalue_magnitude(c);
    return 0.5 * std::pow(lam, n_steps);
}

// =============================================================================
// Distance series for reporting.
// =============================================================================

struct DistanceSeries {
    Metric metric;
    int start;  // -1 means worst-case over point starts
    std::vector<std::pair<int, double>> values;
};

inline DistanceSeries distance_series(const MarkovChain& c, Metric m, int start, int n_max) {
    DistanceSeries s{m, start, {}};
    if (start >= 0) {
        std::vector<double> mu(c.n(), 0.0);
        mu[start] = 1.0;
        Matrix p = c.to_matrix();
        for (int k = 0; k <= n_max; ++k) {
            s.values.emplace_back(k, distance_to_pi(c, mu, m));
            mu = vec_mat(mu, p);
        }
    } else {
        for (int k = 0; k <= n_max; ++k) s.values.emplace_back(k, exact_distance_worst(c, k, m));
    }
    return s;
}

}  // namespace mixbound
