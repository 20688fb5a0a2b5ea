#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string_view>

#include "fwt/fading.hpp"

namespace fwt {

/// Per-state transmit powers (p1, p2) and jamming powers (q1, q2), linear scale.
struct PowerDecision {
    double p1 = 0.0;
    double p2 = 0.0;
    double q1 = 0.0;
    double q2 = 0.0;

    bool nonnegative() const { return p1 >= 0.0 && p2 >= 0.0 && q1 >= 0.0 && q2 >= 0.0; }
    bool operator==(const PowerDecision&) const = default;
};

/// Bounds on R1, R2 and R1 + R2 in bits per channel use.
struct RateTriple {
    double r1   = 0.0;
    double r2   = 0.0;
    double rsum = 0.0;
};

struct PowerBudget {
    double pbar1 = 1.0;
    double pbar2 = 1.0;

    static PowerBudget symmetric(double p) { return {p, p}; }
};

enum class Scheme { GsCj, Sba, Esa, EsaCj };

std::string_view scheme_name(Scheme s);
/// Parses "gs_cj", "sba", "esa", "esa_cj"; throws std::invalid_argument.
Scheme parse_scheme(std::string_view name);

// Instantaneous integrands. GS/CJ carries no 1/2 factor; the repetition
// schemes include it.

RateTriple rates_gs_cj(const ChannelState& s, const PowerDecision& d);
RateTriple rates_sba(const SbaBlock& b, double p1, double p2);
RateTriple rates_esa(const ChannelState& s, double p1, double p2);
/// Repetition at (h1, e^{j theta} h2) / (g1, e^{j omega} g2); only the phase
/// differences matter.
RateTriple rates_esa_general(const ChannelState& s, double theta, double omega, double p1, double p2);
RateTriple rates_esa_cj(const ChannelState& s, const PowerDecision& d);

/// A power policy. SBA policies are evaluated on the odd-slot state only.
/// The stream argument is the caller's per-chunk stream and may be used for
/// inner expectations.
using Policy = std::function<PowerDecision(const ChannelState&, Rng&)>;

struct MonteCarloEstimate {
    RateTriple mean;     // raw signed means
    RateTriple std_err;  // standard error of each mean
    std::size_t n = 0;
    /// Realized constraint usage per user: E[P_k + Q_k], or for SBA the
    /// scaled usage E[(|g_{k'}o|^2 + |g_{k'}e|^2) P_k].
    std::array<double, 2> power{};
    std::array<double, 2> power_std_err{};

    /// Reported region point: means clamped at zero.
    RateTriple region() const;
};

/// Monte Carlo estimate of the ergodic region over n independent states
/// (n independent odd/even blocks for SBA). Deterministic given `seed`,
/// regardless of worker count. Throws std::invalid_argument if n < 2 or the
/// policy returns negative powers.
MonteCarloEstimate ergodic_region(Scheme scheme, const Policy& policy, const FadingParams& params,
                                  std::size_t n, std::uint64_t seed);

/// Full budget where the ESA sum-rate integrand at full budget is >= 0,
/// otherwise all-zero.
PowerDecision rudimentary_policy_esa(const ChannelState& s, const PowerBudget& budget);

/// Candidate powers pbar1 / (2 var_g2), pbar2 / (2 var_g1) if the inner
/// expectation over even-slot states of the SBA sum-rate integrand is >= 0.
PowerDecision rudimentary_policy_sba(const ChannelState& odd, const PowerBudget& budget,
                                     const FadingParams& params, std::size_t m_inner, Rng& rng);

/// Default inner sample count for rudimentary_policy_sba.
inline constexpr std::size_t kSbaInnerSamples = 1000;

/// Constant policy (p1, p2, 0, 0).
Policy constant_policy(double p1, double p2);

}  // namespace fwt
