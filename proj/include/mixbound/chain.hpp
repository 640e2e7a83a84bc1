#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mixbound/common.hpp"
#include "mixbound/matrix.hpp"

namespace mixbound {

// Subset-exhaustive operations enumerate all 2^n - 2 proper subsets; cap the
// state count so masks stay cheap and runtimes stay sane.
inline constexpr int kMaxExhaustiveStates = 24;

class MarkovChain;

// =============================================================================
// VertexSet: a subset of states with its stationary mass cached at build time.
// =============================================================================

class VertexSet {
  public:
    VertexSet() : n_(0), mass_(0.0) {}

    int n() const { return n_; }
    double mass() const { return mass_; }

    bool test(int i) const { return (words_[static_cast<size_t>(i) >> 6] >> (i & 63)) & 1u; }
    int count() const {
        int c = 0;
        for (uint64_t w : words_) c += std::popcount(w);
        return c;
    }
    bool empty() const {
        for (uint64_t w : words_)
            if (w) return false;
        return true;
    }
    bool full() const { return count() == n_; }
    bool is_proper() const { return !empty() && !full(); }

    std::vector<int> members() const {
        std::vector<int> out;
        out.reserve(static_cast<size_t>(count()));
        for (int i = 0; i < n_; ++i)
            if (test(i)) out.push_back(i);
        return out;
    }

    // Low word; only meaningful for n <= 64, which covers every enumeration path.
    uint64_t low_mask() const { return words_.empty() ? 0 : words_[0]; }

    bool operator==(const VertexSet& o) const { return n_ == o.n_ && words_ == o.words_; }
    bool operator<(const VertexSet& o) const { return words_ < o.words_; }

    std::string hex() const {
        static const char* digits = "0123456789abcdef";
        std::string s;
        bool started = false;
        for (size_t wi = words_.size(); wi-- > 0;) {
            for (int sh = 60; sh >= 0; sh -= 4) {
                int d = (words_[wi] >> sh) & 0xf;
                if (!started && d == 0 && !(wi == 0 && sh == 0)) continue;
                started = true;
                s.push_back(digits[d]);
            }
        }
        return "0x" + s;
    }

    struct Hash {
        size_t operator()(const VertexSet& s) const {
            uint64_t h = 0x9e3779b97f4a7c15ULL;
            for (uint64_t w : s.words_) h = mix64(h ^ w);
            return static_cast<size_t>(h);
        }
    };

    friend class MarkovChain;

  private:
    int n_;
    std::vector<uint64_t> words_;
    double mass_;
};

// =============================================================================
// MarkovChain: validated row-stochastic matrix plus its stationary law.
// =============================================================================

class MarkovChain {
  public:
    int n() const { return n_; }
    double at(int x, int y) const { return p_[static_cast<size_t>(x) * n_ + y]; }
    const std::vector<double>& flat() const { return p_; }
    const std::vector<double>& pi() const { return pi_; }
    double pi(int x) const { return pi_[x]; }
    const std::vector<std::string>& labels() const { return labels_; }
    bool irreducible() const { return irreducible_; }

    double min_stationary() const {
        double m = 1.0;
        for (double v : pi_) m = std::min(m, v);
        return m;
    }

    // gamma = min_x P(x,x)
    double min_holding() const {
        double g = 1.0;
        for (int x = 0; x < n_; ++x) g = std::min(g, at(x, x));
        return g;
    }
    bool is_lazy(double tol = kTol) const { return min_holding() >= 0.5 - tol; }

    bool is_reversible(double tol = kTol) const {
        for (int x = 0; x < n_; ++x)
            for (int y = x + 1; y < n_; ++y)
                if (!close(pi_[x] * at(x, y), pi_[y] * at(y, x), tol)) return false;
        return true;
    }

    Matrix to_matrix() const {
        Matrix m(n_);
        m.data() = p_;
        return m;
    }

    // ---- set factories -------------------------------------------------

    VertexSet empty_set() const { return masked_set(std::vector<uint64_t>(words_per_set(), 0)); }

    VertexSet full_set() const {
        std::vector<uint64_t> w(words_per_set(), ~0ULL);
        int rem = n_ & 63;
        if (rem) w.back() = (1ULL << rem) - 1;
        return masked_set(std::move(w));
    }

    VertexSet set_of(uint64_t mask) const {
        std::vector<uint64_t> w(words_per_set(), 0);
        w[0] = mask;
        return masked_set(std::move(w));
    }

    VertexSet set_of(const std::vector<int>& idx) const {
        std::vector<uint64_t> w(words_per_set(), 0);
        for (int i : idx) {
            require(i >= 0 && i < n_, errc::bad_input, "state index out of range");
            w[static_cast<size_t>(i) >> 6] |= 1ULL << (i & 63);
        }
        return masked_set(std::move(w));
    }

    VertexSet singleton(int x) const { return set_of(std::vector<int>{x}); }

    VertexSet complement(const VertexSet& a) const {
        std::vector<uint64_t> w(words_per_set());
        for (size_t i = 0; i < w.size(); ++i) w[i] = ~a.words_[i];
        int rem = n_ & 63;
        if (rem) w.back() &= (1ULL << rem) - 1;
        return masked_set(std::move(w));
    }

    double mass_of_mask(uint64_t mask) const {
        double m = 0.0;
        while (mask) {
            int i = std::countr_zero(mask);
            m += pi_[i];
            mask &= mask - 1;
        }
        return m;
    }

    friend MarkovChain build_chain(const std::vector<std::vector<double>>& rows,
                                   const std::optional<std::vector<double>>& pi_hint,
                                   std::vector<std::string> labels);
    friend MarkovChain chain_from_parts(int n, std::vector<double> p, std::vector<double> pi,
                                        std::vector<std::string> labels);

  private:
    size_t words_per_set() const { return static_cast<size_t>((n_ + 63) / 64); }

    VertexSet masked_set(std::vector<uint64_t> w) const {
        VertexSet s;
        s.n_ = n_;
        s.words_ = std::move(w);
        s.mass_ = 0.0;
        for (int i = 0; i < n_; ++i)
            if (s.test(i)) s.mass_ += pi_[i];
        return s;
    }

    int n_ = 0;
    std::vector<double> p_;
    std::vector<double> pi_;
    std::vector<std::string> labels_;
    bool irreducible_ = false;
};

// =============================================================================
// Construction and validation
// =============================================================================

namespace detail {

inline bool strongly_connected(int n, const std::vector<double>& p) {
    auto reach = [&](bool transpose) {
        std::vector<char> seen(n, 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int cnt = 1;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int y = 0; y < n; ++y) {
                double v = transpose ? p[static_cast<size_t>(y) * n + x]
                                     : p[static_cast<size_t>(x) * n + y];
                if (v > 0.0 && !seen[y]) {
                    seen[y] = 1;
                    ++cnt;
                    stack.push_back(y);
                }
            }
        }
        return cnt == n;
    };
    return reach(false) && reach(true);
}

// pi solves (P^T - I) pi = 0 with the first balance equation replaced by the
// normalization sum(pi) = 1.
inline std::vector<double> solve_stationary(int n, const std::vector<double>& p) {
    Matrix a(n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) a(x, y) = p[static_cast<size_t>(y) * n + x];
    for (int x = 0; x < n; ++x) a(x, x) -= 1.0;
    std::vector<double> b(n, 0.0);
    for (int y = 0; y < n; ++y) a(0, y) = 1.0;
    b[0] = 1.0;
    std::vector<double> pi = solve_linear(std::move(a), std::move(b));
    double s = 0.0;
    for (double v : pi) s += v;
    for (double& v : pi) v /= s;
    return pi;
}

}  // namespace detail

// Internal constructor for derived chains (time reversal, products, speedups):
// rows are trusted to be stochastic, the irreducibility flag is recomputed but
// a reducible result is allowed and only flagged.
inline MarkovChain chain_from_parts(int n, std::vector<double> p, std::vector<double> pi,
                                    std::vector<std::string> labels = {}) {
    MarkovChain c;
    c.n_ = n;
    c.p_ = std::move(p);
    c.pi_ = std::move(pi);
    c.labels_ = std::move(labels);
    c.irreducible_ = detail::strongly_connected(n, c.p_);
    return c;
}

inline MarkovChain build_chain(const std::vector<std::vector<double>>& rows,
                               const std::optional<std::vector<double>>& pi_hint = std::nullopt,
                               std::vector<std::string> labels = {}) {
    int n = static_cast<int>(rows.size());
    require(n >= 2, errc::bad_input, "need at least 2 states");
    std::vector<double> p(static_cast<size_t>(n) * n);
    for (int x = 0; x < n; ++x) {
        require(static_cast<int>(rows[x].size()) == n, errc::bad_input, "matrix must be square");
        double sum = 0.0;
        for (int y = 0; y < n; ++y) {
            double v = rows[x][y];
            require(v >= -1e-12 && v <= 1.0 + 1e-12, errc::bad_input,
                    "entries must lie in [0,1]");
            sum += v;
        }
        if (std::fabs(sum - 1.0) > 1e-9)
            fail(errc::non_stochastic, "row " + std::to_string(x) + " sums to " +
                                           std::to_string(sum));
        for (int y = 0; y < n; ++y)
            p[static_cast<size_t>(x) * n + y] = std::max(0.0, rows[x][y]) / sum;
    }

    if (!detail::strongly_connected(n, p))
        fail(errc::reducible, "support digraph is not strongly connected");

    std::vector<double> pi;
    if (pi_hint) {
        pi = *pi_hint;
        require(static_cast<int>(pi.size()) == n, errc::bad_pi_hint, "pi hint has wrong length");
        double s = 0.0;
        for (double v : pi) {
            require(v > 0.0, errc::bad_pi_hint, "pi hint must be strictly positive");
            s += v;
        }
        for (double& v : pi) v /= s;
        for (int y = 0; y < n; ++y) {
            double flow = 0.0;
            for (int x = 0; x < n; ++x) flow += pi[x] * p[static_cast<size_t>(x) * n + y];
            if (std::fabs(flow - pi[y]) > 1e-10)
                fail(errc::bad_pi_hint, "pi hint is not stationary");
        }
    } else {
        pi = detail::solve_stationary(n, p);
        for (int y = 0; y < n; ++y) {
            double flow = 0.0;
            for (int x = 0; x < n; ++x) flow += pi[x] * p[static_cast<size_t>(x) * n + y];
            require(std::fabs(flow - pi[y]) <= 1e-10 && pi[y] > 0.0, errc::bad_input,
                    "stationary solve failed");
        }
    }

    MarkovChain c;
    c.n_ = n;
    c.p_ = std::move(p);
    c.pi_ = std::move(pi);
    c.labels_ = std::move(labels);
    c.irreducible_ = true;
    return c;
}

// =============================================================================
// Flows and chain transforms
// =============================================================================

// Q(A,y): one-step stationary flow from A into the single state y.
inline double flow_to_state(const MarkovChain& c, const VertexSet& a, int y) {
    double q = 0.0;
    for (int x = 0; x < c.n(); ++x)
        if (a.test(x)) q += c.pi(x) * c.at(x, y);
    return q;
}

// Q(A,y) for every y at once.
inline std::vector<double> flow_vector(const MarkovChain& c, const VertexSet& a) {
    std::vector<double> q(c.n(), 0.0);
    for (int x = 0; x < c.n(); ++x) {
        if (!a.test(x)) continue;
        double px = c.pi(x);
        for (int y = 0; y < c.n(); ++y) q[y] += px * c.at(x, y);
    }
    return q;
}

// Q(A,B)
inline double ergodic_flow(const MarkovChain& c, const VertexSet& a, const VertexSet& b) {
    double q = 0.0;
    for (int x = 0; x < c.n(); ++x) {
        if (!a.test(x)) continue;
        double px = c.pi(x);
        for (int y = 0; y < c.n(); ++y)
            if (b.test(y)) q += px * c.at(x, y);
    }
    return q;
}

inline MarkovChain time_reversal(const MarkovChain& c) {
    int n = c.n();
    std::vector<double> p(static_cast<size_t>(n) * n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            p[static_cast<size_t>(x) * n + y] = c.pi(y) * c.at(y, x) / c.pi(x);
    return chain_from_parts(n, std::move(p), c.pi(), c.labels());
}

// P P*: always reversible w.r.t. pi; may be reducible (e.g. a permutation
// chain collapses to the identity), which is flagged rather than rejected.
inline MarkovChain multiplicative_reversibilization(const MarkovChain& c) {
    int n = c.n();
    MarkovChain rev = time_reversal(c);
    std::vector<double> p(static_cast<size_t>(n) * n, 0.0);
    for (int x = 0; x < n; ++x)
        for (int z = 0; z < n; ++z) {
            double v = c.at(x, z);
            if (v == 0.0) continue;
            for (int y = 0; y < n; ++y) p[static_cast<size_t>(x) * n + y] += v * rev.at(z, y);
        }
    return chain_from_parts(n, std::move(p), c.pi(), c.labels());
}

inline double min_holding(const MarkovChain& c) { return c.min_holding(); }

// Speeds a gamma-lazy chain up to holding probability exactly 1/2:
// P' = P/(2(1-gamma)) + (1 - 1/(2(1-gamma))) I.
inline MarkovChain holding_speedup(const MarkovChain& c, double gamma) {
    require(gamma >= 0.5 - kTol, errc::gamma_too_small, "gamma must be at least 1/2");
    require(gamma < 1.0, errc::bad_input, "gamma must be below 1");
    for (int x = 0; x < c.n(); ++x)
        if (c.at(x, x) < gamma - kTol)
            fail(errc::gamma_not_held, "state " + std::to_string(x) + " holds with probability " +
                                           std::to_string(c.at(x, x)));
    double f = 1.0 / (2.0 * (1.0 - gamma));
    int n = c.n();
    std::vector<double> p(static_cast<size_t>(n) * n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            double v = f * c.at(x, y) + (x == y ? 1.0 - f : 0.0);
            p[static_cast<size_t>(x) * n + y] = std::max(0.0, v);
        }
    return chain_from_parts(n, std::move(p), c.pi(), c.labels());
}

// Visits every proper nonempty subset in increasing-popcount, then
// increasing-mask order.  This ordering is the deterministic tie-break rule
// for every enumeration-backed table in the library.
template <typename Fn>
inline void for_each_proper_subset(const MarkovChain& c, Fn&& fn) {
    require(c.n() <= kMaxExhaustiveStates, errc::too_many_states,
            "subset enumeration is capped at " + std::to_string(kMaxExhaustiveStates) +
                " states");
    uint64_t full = (1ULL << c.n()) - 1;
    for (int pc = 1; pc < c.n(); ++pc) {
        uint64_t m = (1ULL << pc) - 1;
        while (m <= full) {
            fn(m);
            // Gosper's hack: next mask with the same popcount.
            uint64_t lo = m & (~m + 1);
            uint64_t ripple = m + lo;
            m = ripple | (((m ^ ripple) >> 2) / lo);
        }
    }
}

}  // namespace mixbound
