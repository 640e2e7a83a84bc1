#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace mixbound {

// Default comparison tolerance for stochastic-matrix style checks.
inline constexpr double kTol = 1e-12;

enum class errc {
    bad_input,
    non_stochastic,
    reducible,
    bad_pi_hint,
    empty_set,
    trivial_set,
    bad_t,
    too_many_states,
    too_large,
    not_lazy,
    not_concave,
    kernel_vanishes,
    budget_exceeded,
    not_reversible,
    gamma_too_small,
    gamma_not_held,
    zero_holding,
    wp_not_half,
    bad_alpha,
    not_balanced,
    not_connected,
    no_contraction,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::bad_input: return "BadInput";
        case errc::non_stochastic: return "NonStochastic";
        case errc::reducible: return "Reducible";
        case errc::bad_pi_hint: return "BadPiHint";
        case errc::empty_set: return "EmptySet";
        case errc::trivial_set: return "TrivialSet";
        case errc::bad_t: return "BadT";
        case errc::too_many_states: return "TooManyStates";
        case errc::too_large: return "TooLarge";
        case errc::not_lazy: return "NotLazy";
        case errc::not_concave: return "NotConcave";
        case errc::kernel_vanishes: return "KernelVanishes";
        case errc::budget_exceeded: return "BudgetExceeded";
        case errc::not_reversible: return "NotReversible";
        case errc::gamma_too_small: return "GammaTooSmall";
        case errc::gamma_not_held: return "GammaNotHeld";
        case errc::zero_holding: return "ZeroHolding";
        case errc::wp_not_half: return "WpNotHalf";
        case errc::bad_alpha: return "BadAlpha";
        case errc::not_balanced: return "NotBalanced";
        case errc::not_connected: return "NotConnected";
        case errc::no_contraction: return "NoContraction";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
  public:
    Error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    errc code() const { return code_; }

    // Resource guards get a distinct process exit code in the CLI.
    bool is_resource_guard() const {
        return code_ == errc::too_many_states || code_ == errc::too_large ||
               code_ == errc::budget_exceeded;
    }

  private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool ok, errc code, const std::string& what) {
    if (!ok) fail(code, what);
}

// |a-b| within an absolute-plus-relative band.
inline bool close(double a, double b, double tol = kTol) {
    return std::fabs(a - b) <= tol * std::max({1.0, std::fabs(a), std::fabs(b)});
}

// ---------------------------------------------------------------------------
// Counter-based RNG: a stateless mix of (seed, stream, counter).  Every draw
// is addressable, so parallel consumers produce identical values no matter
// how work is scheduled.
// ---------------------------------------------------------------------------

inline uint64_t mix64(uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline uint64_t counter_bits(uint64_t seed, uint64_t stream, uint64_t counter) {
    uint64_t h = mix64(seed ^ 0x8000000000000000ULL);
    h = mix64(h ^ mix64(stream * 0xd1342543de82ef95ULL + 1));
    h = mix64(h ^ mix64(counter * 0xaf251af3b0f025b5ULL + 1));
    return h;
}

// Uniform on the open interval (0,1); never returns an exact 0 or 1.
inline double counter_uniform(uint64_t seed, uint64_t stream, uint64_t counter) {
    return (static_cast<double>(counter_bits(seed, stream, counter) >> 11) + 0.5) * 0x1.0p-53;
}

// Deterministic pairwise reduction; the result depends only on the array
// contents, not on how callers partitioned the work that produced it.
inline double pairwise_sum(const double* v, size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    size_t half = n / 2;
    return pairwise_sum(v, half) + pairwise_sum(v + half, n - half);
}

}  // namespace mixbound
