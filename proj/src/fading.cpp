#include "fwt/fading.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <deque>

namespace fwt {

void FadingParams::validate() const
{
    const double vars[] = {var_h1, var_h2, var_g1, var_g2};
    for (double v : vars) {
        if (!std::isfinite(v) || v <= 0.0) {
            throw std::invalid_argument("fading variances must be finite and > 0, got " + std::to_string(v));
        }
    }
}

std::uint64_t split_seed(std::uint64_t master, std::uint64_t index)
{
    std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

namespace {

cplx draw_gain(double var, Rng& rng)
{
    std::normal_distribution<double> nd(0.0, std::sqrt(0.5 * var));
    const double re = nd(rng);
    const double im = nd(rng);
    return {re, im};
}

}  // namespace

ChannelState sample_state(const FadingParams& params, Rng& rng)
{
    ChannelState s;
    s.h1 = draw_gain(params.var_h1, rng);
    s.h2 = draw_gain(params.var_h2, rng);
    s.g1 = draw_gain(params.var_g1, rng);
    s.g2 = draw_gain(params.var_g2, rng);
    return s;
}

SbaBlock sba_expand(const ChannelState& odd, const ChannelState& even)
{
    SbaBlock b;
    b.odd  = odd;
    b.even = even;
    b.a1   = odd.h1 * odd.g2;
    b.a2   = odd.h2 * odd.g1;
    b.b1   = even.h1 * even.g2;
    b.b2   = even.h2 * even.g1;
    b.c    = odd.g1 * odd.g2;
    b.d    = even.g1 * even.g2;
    b.det  = even.h1 * odd.h2 * odd.g1 * even.g2 - odd.h1 * even.h2 * even.g1 * odd.g2;
    return b;
}

ChannelState esa_partner(const ChannelState& state)
{
    return ChannelState{state.h1, -state.h2, state.g1, state.g2};
}

RepetitionOutputs simulate_repetition(const ChannelState& state, cplx x1, cplx x2,
                                      const RepetitionNoise& noise)
{
    const ChannelState rep = esa_partner(state);

    const cplx y1 = state.h1 * x1 + state.h2 * x2 + noise.n1;
    const cplx y2 = rep.h1 * x1 + rep.h2 * x2 + noise.n2;
    const cplx z1 = state.g1 * x1 + state.g2 * x2 + noise.e1;
    const cplx z2 = rep.g1 * x1 + rep.g2 * x2 + noise.e2;

    return RepetitionOutputs{y1 + y2, y1 - y2, z1 + z2, z1 - z2};
}

QuantizerSpec QuantizerSpec::uniform(int mag_bins, int phase_bins, double mag_cap)
{
    QuantizerSpec q;
    q.mag_bins   = mag_bins;
    q.phase_bins = phase_bins;
    q.mag_cap    = {mag_cap, mag_cap, mag_cap, mag_cap};
    return q;
}

QuantizerSpec QuantizerSpec::for_params(const FadingParams& params, int mag_bins, int phase_bins)
{
    QuantizerSpec q;
    q.mag_bins   = mag_bins;
    q.phase_bins = phase_bins;
    q.mag_cap    = {3.0 * std::sqrt(params.var_h1), 3.0 * std::sqrt(params.var_h2),
                    3.0 * std::sqrt(params.var_g1), 3.0 * std::sqrt(params.var_g2)};
    return q;
}

void QuantizerSpec::validate() const
{
    if (mag_bins < 1 || phase_bins < 1) {
        throw std::invalid_argument("quantizer needs at least one magnitude and one phase bin");
    }
    for (double cap : mag_cap) {
        if (!(cap > 0.0) || !std::isfinite(cap)) {
            throw std::invalid_argument("quantizer magnitude cap must be finite and > 0");
        }
    }
}

namespace {

GainBin quantize_gain(cplx g, int mag_bins, int phase_bins, double cap)
{
    constexpr double two_pi = 2.0 * std::numbers::pi;

    double phase = std::arg(g);
    if (phase < 0.0) {
        phase += two_pi;
    }
    int pb = static_cast<int>(std::floor(phase / (two_pi / phase_bins)));
    pb     = std::clamp(pb, 0, phase_bins - 1);

    int mb = static_cast<int>(std::floor(std::abs(g) / (cap / mag_bins)));
    mb     = std::clamp(mb, 0, mag_bins - 1);

    return GainBin{mb, pb};
}

}  // namespace

QuantizedState quantize(const ChannelState& state, const QuantizerSpec& spec)
{
    spec.validate();
    QuantizedState q;
    const cplx gains[] = {state.h1, state.h2, state.g1, state.g2};
    for (int i = 0; i < 4; ++i) {
        q.bins[i] = quantize_gain(gains[i], spec.mag_bins, spec.phase_bins, spec.mag_cap[i]);
    }
    return q;
}

QuantizedState quantize(const ChannelState& state, int mag_bins, int phase_bins, double mag_cap)
{
    return quantize(state, QuantizerSpec::uniform(mag_bins, phase_bins, mag_cap));
}

QuantizedState partner_bins(const QuantizedState& q, int phase_bins)
{
    QuantizedState p = q;
    // bin whose interval contains (centre of this bin) + pi
    const double shifted = q.bins[1].phase + 0.5 + 0.5 * phase_bins;
    p.bins[1].phase      = static_cast<int>(std::floor(shifted)) % phase_bins;
    return p;
}

std::uint64_t bin_key(const QuantizedState& q, const QuantizerSpec& spec)
{
    const std::uint64_t per_gain = static_cast<std::uint64_t>(spec.mag_bins) * spec.phase_bins;
    std::uint64_t key = 0;
    for (const GainBin& b : q.bins) {
        key = key * per_gain + static_cast<std::uint64_t>(b.mag) * spec.phase_bins + b.phase;
    }
    return key;
}

PairingReport ergodic_pairing_demo(std::size_t n, const FadingParams& params,
                                   const QuantizerSpec& spec, Rng& rng)
{
    params.validate();
    spec.validate();

    PairingReport report;
    report.instants = n;

    // waiting[k] holds unmatched earlier instants whose partner key is k,
    // oldest first.
    std::unordered_map<std::uint64_t, std::deque<std::size_t>> waiting;
    double wait_sum = 0.0;

    for (std::size_t t = 0; t < n; ++t) {
        const QuantizedState q = quantize(sample_state(params, rng), spec);
        const std::uint64_t key = bin_key(q, spec);

        auto it = waiting.find(key);
        if (it != waiting.end() && !it->second.empty()) {
            const std::size_t first = it->second.front();
            it->second.pop_front();
            const std::size_t wait = t - first;
            wait_sum += static_cast<double>(wait);
            report.max_wait = std::max(report.max_wait, wait);
            ++report.pairs;
            continue;
        }
        waiting[bin_key(partner_bins(q, spec.phase_bins), spec)].push_back(t);
    }

    report.unmatched        = n - 2 * report.pairs;
    report.matched_fraction = n == 0 ? 0.0 : 2.0 * static_cast<double>(report.pairs) / static_cast<double>(n);
    report.mean_wait        = report.pairs == 0 ? 0.0 : wait_sum / static_cast<double>(report.pairs);
    return report;
}

}  // namespace fwt
