#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mixbound/chain.hpp"
#include "mixbound/common.hpp"
#include "mixbound/geometry.hpp"

namespace mixbound {

struct EulerianMeta {
    int edges;
    bool lazy;
};

// A constructor output bundling the chain with its known closed-form
// quantities, which the test suites replay against the analysis operations.
struct NamedExample {
    std::string name;
    MarkovChain chain;
    std::map<std::string, double> expectations;
    std::optional<EulerianMeta> eulerian;
};

// Uniform two-point space with holding gamma.
inline NamedExample two_point(double gamma) {
    require(gamma >= 0.0 && gamma < 1.0, errc::bad_input, "gamma must lie in [0,1)");
    NamedExample ex;
    ex.name = "two-point(gamma=" + std::to_string(gamma) + ")";
    ex.chain = build_chain({{gamma, 1.0 - gamma}, {1.0 - gamma, gamma}});
    ex.expectations["one_minus_c_sqrt"] = 2.0 * std::min(gamma, 1.0 - gamma);
    return ex;
}

// Walk on K_m that jumps to a uniform point with probability 1-alpha.
// alpha may be negative down to -1/(m-1) (the no-holding uniform walk).
inline NamedExample complete_graph(int m, double alpha) {
    require(m >= 2, errc::bad_input, "need at least 2 vertices");
    require(alpha >= -1.0 / (m - 1) - kTol && alpha <= 1.0 + kTol, errc::bad_alpha,
            "alpha must lie in [-1/(m-1), 1]");
    std::vector<std::vector<double>> p(m, std::vector<double>(m, (1.0 - alpha) / m));
    for (int x = 0; x < m; ++x) p[x][x] = alpha + (1.0 - alpha) / m;
    NamedExample ex;
    ex.name = "complete-graph(m=" + std::to_string(m) + ")";
    ex.chain = build_chain(p);
    ex.expectations["congestion"] = std::fabs(alpha);
    ex.expectations["tv_coefficient"] = 1.0 - 1.0 / m;
    ex.expectations["l2_coefficient"] = std::sqrt(static_cast<double>(m - 1));
    return ex;
}

// Simple random walk on the m-cycle.
inline NamedExample cycle(int m) {
    require(m >= 3, errc::bad_input, "cycle needs at least 3 vertices");
    std::vector<std::vector<double>> p(m, std::vector<double>(m, 0.0));
    for (int x = 0; x < m; ++x) {
        p[x][(x + 1) % m] += 0.5;
        p[x][(x + m - 1) % m] += 0.5;
    }
    NamedExample ex;
    ex.name = "cycle(m=" + std::to_string(m) + ")";
    ex.chain = build_chain(p);
    if (m % 2 == 0) {
        ex.expectations["modified_conductance"] = 0.0;
    } else {
        ex.expectations["min_psi"] = 1.0 / (2.0 * m);
        ex.expectations["crossing_level"] = 0.5;
    }
    return ex;
}

// Simple random walk on K_{m,m}; periodic, with zero flow past the
// bipartition even though its conductance is large.
inline NamedExample complete_bipartite(int m) {
    require(m >= 1, errc::bad_input, "need at least 1 vertex per side");
    int n = 2 * m;
    std::vector<std::vector<double>> p(n, std::vector<double>(n, 0.0));
    for (int x = 0; x < m; ++x)
        for (int y = m; y < n; ++y) {
            p[x][y] = 1.0 / m;
            p[y][x] = 1.0 / m;
        }
    NamedExample ex;
    ex.name = "complete-bipartite(m=" + std::to_string(m) + ")";
    ex.chain = build_chain(p);
    ex.expectations["bipartition_psi"] = 0.0;
    return ex;
}

// Lazy walk on the binary cube {0,1}^d.
inline NamedExample lazy_hypercube(int d) {
    require(d >= 1, errc::bad_input, "dimension must be positive");
    require(d <= 12, errc::too_large, "hypercube capped at dimension 12");
    int n = 1 << d;
    std::vector<std::vector<double>> p(n, std::vector<double>(n, 0.0));
    for (int x = 0; x < n; ++x) {
        p[x][x] = 0.5;
        for (int i = 0; i < d; ++i) p[x][x ^ (1 << i)] = 0.5 / d;
    }
    NamedExample ex;
    ex.name = "lazy-hypercube(d=" + std::to_string(d) + ")";
    ex.chain = build_chain(p, std::vector<double>(n, 1.0 / n));
    ex.expectations["singleton_one_minus_c_tv"] = (d + 1.0) / 2.0 * std::pow(2.0, -d);
    ex.expectations["singleton_one_minus_c_l2"] = 0.5 - 0.5 / std::sqrt(static_cast<double>(d));
    return ex;
}

// K_m with one pendant vertex attached by a single edge; the lazy max-degree
// walk moves to each neighbor with probability 1/(2m).  The pendant vertex is
// state m.
inline NamedExample pendant_complete(int m) {
    require(m >= 3, errc::bad_input, "need at least K_3");
    int n = m + 1;
    std::vector<std::vector<double>> p(n, std::vector<double>(n, 0.0));
    for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y)
            if (x != y) p[x][y] = 0.5 / m;
    p[0][m] = 0.5 / m;
    p[m][0] = 0.5 / m;
    for (int x = 0; x < n; ++x) {
        double off = 0.0;
        for (int y = 0; y < n; ++y)
            if (y != x) off += p[x][y];
        p[x][x] = 1.0 - off;
    }
    NamedExample ex;
    ex.name = "pendant-complete(m=" + std::to_string(m) + ")";
    ex.chain = build_chain(p, std::vector<double>(n, 1.0 / n));
    ex.expectations["min_conductance_excluding_v"] = 1.0 / 8.0;
    return ex;
}

// =============================================================================
// Eulerian digraphs: in-degree = out-degree at every vertex.  The simple walk
// picks an outgoing edge uniformly; pi(x) = deg(x)/m.
// =============================================================================

using EdgeList = std::vector<std::pair<int, int>>;

inline NamedExample eulerian_walk(const EdgeList& edges, bool lazy) {
    require(!edges.empty(), errc::bad_input, "empty edge list");
    int n = 0;
    for (const auto& [u, v] : edges) {
        require(u >= 0 && v >= 0, errc::bad_input, "negative vertex id");
        n = std::max({n, u + 1, v + 1});
    }
    int m = static_cast<int>(edges.size());
    std::vector<int> out_deg(n, 0), in_deg(n, 0);
    std::vector<std::vector<double>> count(n, std::vector<double>(n, 0.0));
    for (const auto& [u, v] : edges) {
        out_deg[u]++;
        in_deg[v]++;
        count[u][v] += 1.0;
    }
    for (int x = 0; x < n; ++x) {
        require(out_deg[x] > 0, errc::not_connected, "isolated vertex");
        require(out_deg[x] == in_deg[x], errc::not_balanced,
                "vertex " + std::to_string(x) + " has in-degree != out-degree");
    }
    std::vector<std::vector<double>> p(n, std::vector<double>(n, 0.0));
    std::vector<double> pi(n);
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) p[x][y] = count[x][y] / out_deg[x];
        pi[x] = static_cast<double>(out_deg[x]) / m;
    }
    if (lazy) {
        for (int x = 0; x < n; ++x) {
            for (int y = 0; y < n; ++y) p[x][y] *= 0.5;
            p[x][x] += 0.5;
        }
    }
    NamedExample ex;
    ex.name = std::string(lazy ? "lazy-" : "") + "eulerian(m=" + std::to_string(m) + ")";
    try {
        ex.chain = build_chain(p, pi);
    } catch (const Error& e) {
        if (e.code() == errc::reducible) fail(errc::not_connected, "digraph is not strongly connected");
        throw;
    }
    ex.eulerian = EulerianMeta{m, lazy};
    return ex;
}

// The undirected graph walk is the Eulerian walk on the doubled edge set.
inline EdgeList doubled_edges(const EdgeList& undirected) {
    EdgeList out;
    out.reserve(undirected.size() * 2);
    for (const auto& [u, v] : undirected) {
        out.emplace_back(u, v);
        out.emplace_back(v, u);
    }
    return out;
}

inline EdgeList cycle_edges(int m) {
    EdgeList e;
    for (int x = 0; x < m; ++x) e.emplace_back(x, (x + 1) % m);
    return e;
}

// Superposition of k random permutations: balanced by construction.  Useful as
// a source of random Eulerian multigraphs.
inline EdgeList random_balanced_digraph(int n, int k, uint64_t seed) {
    EdgeList edges;
    for (int perm = 0; perm < k; ++perm) {
        std::vector<int> target(n);
        for (int i = 0; i < n; ++i) target[i] = i;
        for (int i = n - 1; i > 0; --i) {
            uint64_t r = counter_bits(seed, perm, i) % static_cast<uint64_t>(i + 1);
            std::swap(target[i], target[r]);
        }
        for (int i = 0; i < n; ++i) edges.emplace_back(i, target[i]);
    }
    return edges;
}

// =============================================================================
// The weak expansion condition: for every A with pi(A) <= 1/2 and every
// vertex v, pi(N(A) \ v) >= pi(A), where N(A) is the out-neighborhood under
// positive ergodic flow.  Rules out the periodic component rotations.
// =============================================================================

struct ExpansionWitness {
    uint64_t set_mask;
    int vertex;
};

inline std::optional<ExpansionWitness> expansion_condition(const MarkovChain& c) {
    std::optional<ExpansionWitness> witness;
    for_each_proper_subset(c, [&](uint64_t mask) {
        if (witness) return;
        VertexSet a = c.set_of(mask);
        if (a.mass() > 0.5 + kTol) return;
        std::vector<double> q = flow_vector(c, a);
        double nbhd = 0.0;
        for (int y = 0; y < c.n(); ++y)
            if (q[y] > 0.0) nbhd += c.pi(y);
        for (int v = 0; v < c.n(); ++v) {
            double reduced = nbhd - (q[v] > 0.0 ? c.pi(v) : 0.0);
            if (reduced < a.mass() - 1e-12) {
                witness = ExpansionWitness{mask, v};
                return;
            }
        }
    });
    return witness;
}

// =============================================================================
// Seeded dense random chains for the verification suites.
// =============================================================================

inline MarkovChain random_dense_chain(int n, uint64_t seed, bool lazy = false) {
    std::vector<std::vector<double>> p(n, std::vector<double>(n));
    for (int x = 0; x < n; ++x) {
        double sum = 0.0;
        for (int y = 0; y < n; ++y) {
            double e = -std::log(counter_uniform(seed, x, y));
            p[x][y] = e;
            sum += e;
        }
        for (int y = 0; y < n; ++y) p[x][y] /= sum;
    }
    if (lazy) {
        for (int x = 0; x < n; ++x) {
            for (int y = 0; y < n; ++y) p[x][y] *= 0.5;
            p[x][x] += 0.5;
        }
    }
    return build_chain(p);
}

}  // namespace mixbound
