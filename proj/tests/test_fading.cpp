#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include "doctest.h"
#include "fwt/fading.hpp"

using namespace fwt;

namespace {

struct Stat {
    double mean = 0.0;
    double m2   = 0.0;
    long n      = 0;
    void add(double x)
    {
        ++n;
        const double d = x - mean;
        mean += d / n;
        m2 += d * (x - mean);
    }
    double var() const { return m2 / (n - 1); }
};

double correlation(const std::vector<double>& a, const std::vector<double>& b)
{
    const double n = static_cast<double>(a.size());
    double ma = 0, mb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= n;
    mb /= n;
    double sab = 0, saa = 0, sbb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    return sab / std::sqrt(saa * sbb);
}

}  // namespace

TEST_CASE("sampled squared gains have the configured means")
{
    Rng rng(11);
    const FadingParams params{1.0, 1.0, 0.75, 0.75};
    Stat h1, g1;
    for (int i = 0; i < 1000000; ++i) {
        const ChannelState s = sample_state(params, rng);
        h1.add(s.h1_sq());
        g1.add(s.g1_sq());
    }
    CHECK(h1.mean == doctest::Approx(1.0).epsilon(0.01));
    CHECK(g1.mean == doctest::Approx(0.75).epsilon(0.01));
    // exponential: variance equals mean squared
    CHECK(h1.var() == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("gains are circularly symmetric and mutually uncorrelated")
{
    Rng rng(12);
    const FadingParams params{1.0, 2.0, 0.5, 0.75};
    std::vector<std::vector<double>> sq(4), re(2);
    for (int i = 0; i < 200000; ++i) {
        const ChannelState s = sample_state(params, rng);
        sq[0].push_back(s.h1_sq());
        sq[1].push_back(s.h2_sq());
        sq[2].push_back(s.g1_sq());
        sq[3].push_back(s.g2_sq());
        re[0].push_back(s.h1.real());
        re[1].push_back(s.h1.imag());
    }
    for (int a = 0; a < 4; ++a) {
        for (int b = a + 1; b < 4; ++b) {
            CHECK(std::abs(correlation(sq[a], sq[b])) < 0.01);
        }
    }
    CHECK(std::abs(correlation(re[0], re[1])) < 0.01);
}

TEST_CASE("vanishing variance gives vanishing gains")
{
    Rng rng(13);
    const FadingParams params{1e-12, 1e-12, 1e-12, 1e-12};
    for (int i = 0; i < 1000; ++i) {
        CHECK(sample_state(params, rng).h1_sq() < 1e-9);
    }
}

TEST_CASE("invalid variances are rejected")
{
    CHECK_THROWS_AS(FadingParams({0.0, 1.0, 1.0, 1.0}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(FadingParams({1.0, -1.0, 1.0, 1.0}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(FadingParams({1.0, 1.0, INFINITY, 1.0}).validate(), std::invalid_argument);
    CHECK_NOTHROW(FadingParams{}.validate());
}

TEST_CASE("split_seed is a fixed function of its inputs")
{
    CHECK(split_seed(1, 0) == split_seed(1, 0));
    CHECK(split_seed(1, 0) != split_seed(1, 1));
    CHECK(split_seed(1, 0) != split_seed(2, 0));
}

TEST_CASE("SBA block coefficients")
{
    SUBCASE("unit gains")
    {
        const auto s = ChannelState::real(1, 1, 1, 1);
        const SbaBlock b = sba_expand(s, s);
        for (cplx v : {b.a1, b.a2, b.b1, b.b2, b.c, b.d}) {
            CHECK(v == cplx(1.0, 0.0));
        }
        CHECK(b.det == cplx(0.0, 0.0));
    }
    SUBCASE("identical slots have zero determinant")
    {
        Rng rng(14);
        for (int i = 0; i < 100; ++i) {
            const ChannelState s = sample_state(FadingParams{}, rng);
            CHECK(std::abs(sba_expand(s, s).det) < 1e-12);
        }
    }
    SUBCASE("hand-computed determinant")
    {
        const SbaBlock b = sba_expand(ChannelState::real(1, 2, 1, 1), ChannelState::real(2, 1, 1, 1));
        CHECK(b.det.real() == doctest::Approx(3.0));
        CHECK(b.det.imag() == 0.0);
    }
    SUBCASE("eavesdropper matrix has identical columns")
    {
        Rng rng(15);
        const SbaBlock b = sba_expand(sample_state(FadingParams{}, rng), sample_state(FadingParams{}, rng));
        const auto m = b.eve_matrix();
        CHECK(m[0][0] == m[0][1]);
        CHECK(m[1][0] == m[1][1]);
    }
}

TEST_CASE("repetition partner")
{
    const ChannelState p = esa_partner(ChannelState::real(1, 1, 1, 1));
    CHECK(p.h1 == cplx(1, 0));
    CHECK(p.h2 == cplx(-1, 0));
    CHECK(p.g1 == cplx(1, 0));
    CHECK(p.g2 == cplx(1, 0));

    const ChannelState z = ChannelState::real(0.3, 0.0, 0.2, 0.1);
    CHECK(std::abs(esa_partner(z).h2) == 0.0);

    Rng rng(16);
    const ChannelState s = sample_state(FadingParams{}, rng);
    const ChannelState back = esa_partner(esa_partner(s));
    CHECK(back.h2 == s.h2);
}

TEST_CASE("repetition outputs")
{
    const RepetitionNoise quiet{};
    SUBCASE("unit state, unit symbols")
    {
        const auto o = simulate_repetition(ChannelState::real(1, 1, 1, 1), 1.0, 1.0, quiet);
        CHECK(o.y_sum == cplx(2, 0));
        CHECK(o.y_diff == cplx(2, 0));
        CHECK(o.z_sum == cplx(4, 0));
        CHECK(o.z_diff == cplx(0, 0));
    }
    SUBCASE("user 2 silent")
    {
        const ChannelState s = ChannelState::real(0.7, 1.3, 0.4, 2.0);
        const auto o = simulate_repetition(s, cplx(0.5, -1.0), 0.0, quiet);
        CHECK(o.y_diff == cplx(0, 0));
        CHECK(std::abs(o.z_sum - 2.0 * s.g1 * cplx(0.5, -1.0)) < 1e-15);
    }
    SUBCASE("eavesdropper difference carries noise only")
    {
        Rng rng(17);
        std::normal_distribution<double> nd;
        for (int i = 0; i < 1000; ++i) {
            const ChannelState s = sample_state(FadingParams{}, rng);
            const RepetitionNoise n{{nd(rng), nd(rng)}, {nd(rng), nd(rng)}, {nd(rng), nd(rng)}, {nd(rng), nd(rng)}};
            const auto o = simulate_repetition(s, cplx(nd(rng), nd(rng)), cplx(nd(rng), nd(rng)), n);
            CHECK(std::abs(o.z_diff - (n.e1 - n.e2)) <= 1e-12);
        }
    }
}

TEST_CASE("quantizer bins")
{
    const double eps = 1e-9;
    auto phase_bin = [](double phase) {
        const cplx g = std::polar(0.5, phase);
        return quantize(ChannelState{g, g, g, g}, 4, 4, 1.0).bins[0].phase;
    };
    CHECK(phase_bin(0.0) == 0);
    CHECK(phase_bin(std::numbers::pi) == 2);
    CHECK(phase_bin(2.0 * std::numbers::pi - eps) == 3);
    CHECK(phase_bin(-eps) == 3);

    const QuantizedState q = quantize(ChannelState::real(2.0, 0.0, 0.3, 0.99), 4, 4, 1.0);
    CHECK(q.bins[0].mag == 3);  // above the cap: clamped
    CHECK(q.bins[1].mag == 0);
    CHECK(q.bins[2].mag == 1);
    CHECK(q.bins[3].mag == 3);

    CHECK_THROWS_AS(quantize(ChannelState{}, 0, 4, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(quantize(ChannelState{}, 4, 4, 0.0), std::invalid_argument);
}

TEST_CASE("partner bins rotate the h2 phase by half a turn")
{
    QuantizedState q;
    q.bins = {GainBin{1, 1}, GainBin{2, 3}, GainBin{0, 2}, GainBin{3, 0}};
    const QuantizedState p = partner_bins(q, 4);
    CHECK(p.bins[0] == q.bins[0]);
    CHECK(p.bins[2] == q.bins[2]);
    CHECK(p.bins[3] == q.bins[3]);
    CHECK(p.bins[1].mag == 2);
    CHECK(p.bins[1].phase == 1);

    for (int b : {1, 2, 4, 8}) {
        for (int ph = 0; ph < b; ++ph) {
            q.bins[1].phase = ph;
            CHECK(partner_bins(partner_bins(q, b), b) == q);
        }
    }
}

TEST_CASE("pairing demo edge cases")
{
    const FadingParams params{};
    Rng rng(18);
    SUBCASE("single bin matches every consecutive pair")
    {
        const auto r = ergodic_pairing_demo(1000, params, QuantizerSpec::uniform(1, 1, 1.0), rng);
        CHECK(r.pairs == 500);
        CHECK(r.matched_fraction == 1.0);
        CHECK(r.mean_wait == 1.0);
        CHECK(r.max_wait == 1);
    }
    SUBCASE("one instant has no partner")
    {
        const auto r = ergodic_pairing_demo(1, params, QuantizerSpec::uniform(1, 1, 1.0), rng);
        CHECK(r.pairs == 0);
        CHECK(r.unmatched == 1);
        CHECK(r.matched_fraction == 0.0);
    }
    SUBCASE("tiny alphabet pairs almost everything")
    {
        const auto r = ergodic_pairing_demo(100000, params, QuantizerSpec::for_params(params, 2, 2), rng);
        CHECK(r.matched_fraction >= 0.9);
        CHECK(r.instants == 2 * r.pairs + r.unmatched);
    }
}

TEST_CASE("pairing count equals the class-size oracle for even phase alphabets")
{
    const FadingParams params{1.0, 1.0, 0.75, 0.75};
    for (int bins : {2, 4}) {
        const QuantizerSpec spec = QuantizerSpec::for_params(params, 2, bins);
        const std::size_t n      = 20000;
        Rng rng(19 + bins);
        const PairingReport r = ergodic_pairing_demo(n, params, spec, rng);

        // Replay the same stream and count per quantized state.
        Rng replay(19 + bins);
        std::map<std::uint64_t, std::size_t> count;
        for (std::size_t t = 0; t < n; ++t) {
            ++count[bin_key(quantize(sample_state(params, replay), spec), spec)];
        }
        std::size_t matched = 0;
        for (const auto& [key, c] : count) {
            QuantizedState q;
            std::uint64_t rest = key;
            for (int g = 3; g >= 0; --g) {
                const std::uint64_t cell = rest % (static_cast<std::uint64_t>(spec.mag_bins) * bins);
                rest /= static_cast<std::uint64_t>(spec.mag_bins) * bins;
                q.bins[g] = GainBin{static_cast<int>(cell / bins), static_cast<int>(cell % bins)};
            }
            REQUIRE(bin_key(q, spec) == key);
            const std::uint64_t pk = bin_key(partner_bins(q, bins), spec);
            if (pk == key) {
                matched += 2 * (c / 2);
            } else {
                const auto it = count.find(pk);
                matched += it == count.end() ? 0 : std::min(c, it->second);
            }
        }
        CHECK(2 * r.pairs == matched);
    }
}

TEST_CASE("pairing demo is reproducible from the seed")
{
    const FadingParams params{};
    const QuantizerSpec spec = QuantizerSpec::for_params(params, 3, 4);
    Rng a(21), b(21);
    const auto ra = ergodic_pairing_demo(5000, params, spec, a);
    const auto rb = ergodic_pairing_demo(5000, params, spec, b);
    CHECK(ra.pairs == rb.pairs);
    CHECK(ra.mean_wait == rb.mean_wait);
    CHECK(ra.max_wait == rb.max_wait);
}
