#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>

namespace fwt {

using cplx = std::complex<double>;
using Rng  = std::mt19937_64;

/// One fading realization of the two-user multiple-access wiretap channel.
/// h1, h2 are the gains to the legitimate receiver, g1, g2 to the eavesdropper.
struct ChannelState {
    cplx h1{}, h2{}, g1{}, g2{};

    double h1_sq() const { return std::norm(h1); }
    double h2_sq() const { return std::norm(h2); }
    double g1_sq() const { return std::norm(g1); }
    double g2_sq() const { return std::norm(g2); }

    /// Builds a state with real-valued gains.
    static ChannelState real(double h1, double h2, double g1, double g2)
    {
        return ChannelState{cplx(h1, 0.0), cplx(h2, 0.0), cplx(g1, 0.0), cplx(g2, 0.0)};
    }
};

/// Variances of the four circularly symmetric complex Gaussian gains.
struct FadingParams {
    double var_h1 = 1.0;
    double var_h2 = 1.0;
    double var_g1 = 1.0;
    double var_g2 = 1.0;

    static FadingParams symmetric(double var_h, double var_g) { return {var_h, var_h, var_g, var_g}; }

    /// Throws std::invalid_argument unless all variances are finite and > 0.
    void validate() const;
};

/// SplitMix64 finalizer over (master, index). Used to derive independent
/// sub-stream seeds; the mapping is fixed so results never depend on how
/// work is distributed.
std::uint64_t split_seed(std::uint64_t master, std::uint64_t index);

/// Draws a state with each gain CN(0, var): real and imaginary parts are
/// independent N(0, var/2).
ChannelState sample_state(const FadingParams& params, Rng& rng);

/// Two consecutive slots of the scaling-based alignment scheme. Each user
/// scales its symbol by the other user's eavesdropper gain, so the main
/// receiver sees (a1, a2) in the odd slot and (b1, b2) in the even slot,
/// while the eavesdropper sees (c, c) and (d, d).
struct SbaBlock {
    ChannelState odd;
    ChannelState even;
    cplx a1{}, a2{};  // h1o*g2o, h2o*g1o
    cplx b1{}, b2{};  // h1e*g2e, h2e*g1e
    cplx c{}, d{};    // g1o*g2o, g1e*g2e
    cplx det{};       // h1e*h2o*g1o*g2e - h1o*h2e*g1e*g2o

    /// Eavesdropper two-slot channel matrix, rows = slots.
    std::array<std::array<cplx, 2>, 2> eve_matrix() const { return {{{c, c}, {d, d}}}; }
};

SbaBlock sba_expand(const ChannelState& odd, const ChannelState& even);

/// Repetition partner used by ergodic secret alignment: (h1, -h2, g1, g2).
ChannelState esa_partner(const ChannelState& state);

struct RepetitionNoise {
    cplx n1{}, n2{};   // main receiver, first and repeated instant
    cplx e1{}, e2{};   // eavesdropper, first and repeated instant
};

/// Sum/difference outputs of the two repetition instants.
struct RepetitionOutputs {
    cplx y_sum{}, y_diff{};
    cplx z_sum{}, z_diff{};
};

/// Transmits (x1, x2) at `state` and again at its partner, then combines:
/// y_sum = Y1 + Y2, y_diff = Y1 - Y2, z_sum = Z1 + Z2, z_diff = Z1 - Z2.
RepetitionOutputs simulate_repetition(const ChannelState& state, cplx x1, cplx x2,
                                      const RepetitionNoise& noise);

struct GainBin {
    int mag   = 0;
    int phase = 0;
    bool operator==(const GainBin&) const = default;
};

/// Quantized channel state, gain order (h1, h2, g1, g2).
struct QuantizedState {
    std::array<GainBin, 4> bins{};
    bool operator==(const QuantizedState&) const = default;
};

struct QuantizerSpec {
    int mag_bins   = 4;
    int phase_bins = 4;
    std::array<double, 4> mag_cap{1.0, 1.0, 1.0, 1.0};

    static QuantizerSpec uniform(int mag_bins, int phase_bins, double mag_cap);
    /// Default caps of 3 * sqrt(var) per gain.
    static QuantizerSpec for_params(const FadingParams& params, int mag_bins = 4, int phase_bins = 4);
    void validate() const;
};

/// Uniform phase bins over [0, 2*pi), uniform magnitude bins over
/// [0, mag_cap] with overflow clamped into the top bin.
QuantizedState quantize(const ChannelState& state, const QuantizerSpec& spec);
QuantizedState quantize(const ChannelState& state, int mag_bins, int phase_bins, double mag_cap);

/// The quantized state an instant must wait for: identical bins except the
/// h2 phase bin rotated by pi.
QuantizedState partner_bins(const QuantizedState& q, int phase_bins);

/// Dense integer key of a quantized state, in [0, (M*B)^4).
std::uint64_t bin_key(const QuantizedState& q, const QuantizerSpec& spec);

struct PairingReport {
    std::size_t instants  = 0;
    std::size_t pairs     = 0;
    std::size_t unmatched = 0;
    double matched_fraction = 0.0;  // 2 * pairs / instants
    double mean_wait        = 0.0;  // mean (partner index - first index), 0 if no pairs
    std::size_t max_wait    = 0;
};

/// Greedy ergodic pairing on a quantized alphabet: every instant is paired
/// with the earliest later unmatched instant whose quantized state equals
/// its partner bins. Unmatched instants are discarded and counted.
PairingReport ergodic_pairing_demo(std::size_t n, const FadingParams& params,
                                   const QuantizerSpec& spec, Rng& rng);

}  // namespace fwt
