#include "fwt/rates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "fwt/montecarlo.hpp"

namespace fwt {

namespace {

constexpr double kInvLn2 = 1.0 / std::numbers::ln2;

// log2(1 + x)
double log2_1p(double x)
{
    return std::log1p(x) * kInvLn2;
}

// log2((1 + num) / (1 + den)) for num, den >= 0
double log2_ratio(double num, double den)
{
    return (std::log1p(num) - std::log1p(den)) * kInvLn2;
}

}  // namespace

std::string_view scheme_name(Scheme s)
{
    switch (s) {
    case Scheme::GsCj:
        return "gs_cj";
    case Scheme::Sba:
        return "sba";
    case Scheme::Esa:
        return "esa";
    case Scheme::EsaCj:
        return "esa_cj";
    }
    return "unknown";
}

Scheme parse_scheme(std::string_view name)
{
    for (Scheme s : {Scheme::GsCj, Scheme::Sba, Scheme::Esa, Scheme::EsaCj}) {
        if (scheme_name(s) == name) {
            return s;
        }
    }
    throw std::invalid_argument("unknown scheme '" + std::string(name) + "'");
}

RateTriple rates_gs_cj(const ChannelState& s, const PowerDecision& d)
{
    const double h1 = s.h1_sq(), h2 = s.h2_sq(), g1 = s.g1_sq(), g2 = s.g2_sq();

    const double main_jam = 1.0 + h1 * d.q1 + h2 * d.q2;
    const double eve_jam  = 1.0 + g1 * d.q1 + g2 * d.q2;

    RateTriple r;
    r.r1 = log2_1p(h1 * d.p1 / main_jam) - log2_1p(g1 * d.p1 / (1.0 + g1 * d.q1 + g2 * (d.p2 + d.q2)));
    r.r2 = log2_1p(h2 * d.p2 / main_jam) - log2_1p(g2 * d.p2 / (1.0 + g1 * (d.p1 + d.q1) + g2 * d.q2));
    r.rsum = log2_1p((h1 * d.p1 + h2 * d.p2) / main_jam) - log2_1p((g1 * d.p1 + g2 * d.p2) / eve_jam);
    return r;
}

RateTriple rates_sba(const SbaBlock& b, double p1, double p2)
{
    const double main1 = std::norm(b.a1) + std::norm(b.b1);
    const double main2 = std::norm(b.a2) + std::norm(b.b2);
    const double eve   = std::norm(b.c) + std::norm(b.d);
    const double cross = std::norm(b.det);

    RateTriple r;
    r.r1   = 0.5 * (log2_1p(main1 * p1) - log2_1p(eve * p1 / (1.0 + eve * p2)));
    r.r2   = 0.5 * (log2_1p(main2 * p2) - log2_1p(eve * p2 / (1.0 + eve * p1)));
    r.rsum = 0.5 * log2_ratio(main1 * p1 + main2 * p2 + cross * p1 * p2, eve * (p1 + p2));
    return r;
}

RateTriple rates_esa(const ChannelState& s, double p1, double p2)
{
    const double h1 = s.h1_sq(), h2 = s.h2_sq(), g1 = s.g1_sq(), g2 = s.g2_sq();

    RateTriple r;
    r.r1   = 0.5 * (log2_1p(2.0 * h1 * p1) - log2_1p(2.0 * g1 * p1 / (1.0 + 2.0 * g2 * p2)));
    r.r2   = 0.5 * (log2_1p(2.0 * h2 * p2) - log2_1p(2.0 * g2 * p2 / (1.0 + 2.0 * g1 * p1)));
    r.rsum = 0.5 * (log2_1p(2.0 * h1 * p1) + log2_1p(2.0 * h2 * p2) - log2_1p(2.0 * (g1 * p1 + g2 * p2)));
    return r;
}

RateTriple rates_esa_general(const ChannelState& s, double theta, double omega, double p1, double p2)
{
    const double h1 = s.h1_sq(), h2 = s.h2_sq(), g1 = s.g1_sq(), g2 = s.g2_sq();
    const double main_cross = 2.0 * (1.0 - std::cos(theta)) * h1 * h2 * p1 * p2;
    const double eve_cross  = 2.0 * (1.0 - std::cos(omega)) * g1 * g2 * p1 * p2;

    RateTriple r;
    r.r1 = 0.5 * (log2_1p(2.0 * h1 * p1) - log2_1p((2.0 * g1 * p1 + eve_cross) / (1.0 + 2.0 * g2 * p2)));
    r.r2 = 0.5 * (log2_1p(2.0 * h2 * p2) - log2_1p((2.0 * g2 * p2 + eve_cross) / (1.0 + 2.0 * g1 * p1)));
    r.rsum = 0.5 * log2_ratio(2.0 * h1 * p1 + 2.0 * h2 * p2 + main_cross,
                              2.0 * g1 * p1 + 2.0 * g2 * p2 + eve_cross);
    return r;
}

RateTriple rates_esa_cj(const ChannelState& s, const PowerDecision& d)
{
    const double h1 = s.h1_sq(), h2 = s.h2_sq(), g1 = s.g1_sq(), g2 = s.g2_sq();

    const double main1 = log2_1p(2.0 * h1 * d.p1 / (1.0 + 2.0 * h1 * d.q1));
    const double main2 = log2_1p(2.0 * h2 * d.p2 / (1.0 + 2.0 * h2 * d.q2));

    RateTriple r;
    r.r1 = 0.5 * (main1 - log2_1p(2.0 * g1 * d.p1 / (1.0 + 2.0 * g1 * d.q1 + 2.0 * g2 * (d.p2 + d.q2))));
    r.r2 = 0.5 * (main2 - log2_1p(2.0 * g2 * d.p2 / (1.0 + 2.0 * g1 * (d.p1 + d.q1) + 2.0 * g2 * d.q2)));
    r.rsum = 0.5 * (main1 + main2 -
                    log2_1p(2.0 * (g1 * d.p1 + g2 * d.p2) / (1.0 + 2.0 * (g1 * d.q1 + g2 * d.q2))));
    return r;
}

RateTriple MonteCarloEstimate::region() const
{
    return RateTriple{std::max(0.0, mean.r1), std::max(0.0, mean.r2), std::max(0.0, mean.rsum)};
}

namespace {

struct ChunkMoments {
    Moments r1, r2, rsum, pow1, pow2;

    void merge(const ChunkMoments& o)
    {
        r1.merge(o.r1);
        r2.merge(o.r2);
        rsum.merge(o.rsum);
        pow1.merge(o.pow1);
        pow2.merge(o.pow2);
    }
};

void check_decision(const PowerDecision& d)
{
    if (!d.nonnegative() || !std::isfinite(d.p1 + d.p2 + d.q1 + d.q2)) {
        throw std::invalid_argument("policy returned negative or non-finite powers");
    }
}

}  // namespace

MonteCarloEstimate ergodic_region(Scheme scheme, const Policy& policy, const FadingParams& params,
                                  std::size_t n, std::uint64_t seed)
{
    if (n < 2) {
        throw std::invalid_argument("ergodic_region needs n >= 2");
    }
    params.validate();

    const std::size_t chunks = (n + kChunkSize - 1) / kChunkSize;
    std::vector<ChunkMoments> partial(chunks);

    for_each_chunk(n, [&](std::size_t c, std::size_t begin, std::size_t end) {
        Rng rng = chunk_rng(seed, c);
        ChunkMoments& acc = partial[c];
        for (std::size_t i = begin; i < end; ++i) {
            RateTriple r;
            double use1 = 0.0, use2 = 0.0;
            if (scheme == Scheme::Sba) {
                const ChannelState odd  = sample_state(params, rng);
                const ChannelState even = sample_state(params, rng);
                const PowerDecision d   = policy(odd, rng);
                check_decision(d);
                r    = rates_sba(sba_expand(odd, even), d.p1, d.p2);
                use1 = (odd.g2_sq() + even.g2_sq()) * d.p1;
                use2 = (odd.g1_sq() + even.g1_sq()) * d.p2;
            } else {
                const ChannelState s  = sample_state(params, rng);
                const PowerDecision d = policy(s, rng);
                check_decision(d);
                switch (scheme) {
                case Scheme::GsCj:
                    r = rates_gs_cj(s, d);
                    break;
                case Scheme::Esa:
                    r = rates_esa(s, d.p1, d.p2);
                    break;
                default:
                    r = rates_esa_cj(s, d);
                    break;
                }
                use1 = d.p1 + d.q1;
                use2 = d.p2 + d.q2;
            }
            acc.r1.add(r.r1);
            acc.r2.add(r.r2);
            acc.rsum.add(r.rsum);
            acc.pow1.add(use1);
            acc.pow2.add(use2);
        }
    });

    ChunkMoments total;
    for (const auto& p : partial) {
        total.merge(p);
    }

    MonteCarloEstimate est;
    est.n                = n;
    est.mean             = {total.r1.mean, total.r2.mean, total.rsum.mean};
    est.std_err          = {total.r1.stderr_mean(), total.r2.stderr_mean(), total.rsum.stderr_mean()};
    est.power            = {total.pow1.mean, total.pow2.mean};
    est.power_std_err    = {total.pow1.stderr_mean(), total.pow2.stderr_mean()};
    return est;
}

PowerDecision rudimentary_policy_esa(const ChannelState& s, const PowerBudget& budget)
{
    if (rates_esa(s, budget.pbar1, budget.pbar2).rsum >= 0.0) {
        return PowerDecision{budget.pbar1, budget.pbar2, 0.0, 0.0};
    }
    return PowerDecision{};
}

PowerDecision rudimentary_policy_sba(const ChannelState& odd, const PowerBudget& budget,
                                     const FadingParams& params, std::size_t m_inner, Rng& rng)
{
    if (m_inner < 1) {
        throw std::invalid_argument("rudimentary_policy_sba needs m_inner >= 1");
    }
    const double p1 = budget.pbar1 / (2.0 * params.var_g2);
    const double p2 = budget.pbar2 / (2.0 * params.var_g1);

    double sum = 0.0;
    for (std::size_t i = 0; i < m_inner; ++i) {
        sum += rates_sba(sba_expand(odd, sample_state(params, rng)), p1, p2).rsum;
    }
    if (sum / static_cast<double>(m_inner) >= 0.0) {
        return PowerDecision{p1, p2, 0.0, 0.0};
    }
    return PowerDecision{};
}

Policy constant_policy(double p1, double p2)
{
    return [p1, p2](const ChannelState&, Rng&) { return PowerDecision{p1, p2, 0.0, 0.0}; };
}

}  // namespace fwt
