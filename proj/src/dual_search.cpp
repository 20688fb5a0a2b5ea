#include "fwt/dual_search.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "fwt/montecarlo.hpp"

namespace fwt {

std::string_view dual_scheme_name(DualScheme s)
{
    switch (s) {
    case DualScheme::Esa: return "esa";
    case DualScheme::EsaCj: return "esa_cj";
    case DualScheme::GsCj: return "gs_cj";
    }
    return "unknown";
}

Scheme rate_scheme(DualScheme s)
{
    switch (s) {
    case DualScheme::Esa: return Scheme::Esa;
    case DualScheme::EsaCj: return Scheme::EsaCj;
    case DualScheme::GsCj: return Scheme::GsCj;
    }
    return Scheme::Esa;
}

namespace {

struct Decision {
    PowerDecision d;
    bool uncertified = false;
};

Decision decide(DualScheme scheme, const ChannelState& s, const DualVars& duals)
{
    switch (scheme) {
    case DualScheme::Esa: {
        const EsaPolicy p = esa_case_policy(EffectiveState::from_channel(s), duals);
        return {PowerDecision{p.p1, p.p2, 0.0, 0.0}, p.uncertified_fallback};
    }
    case DualScheme::EsaCj: {
        const EsaCjPolicy p = esa_cj_case_policy(EffectiveState::from_channel(s), duals);
        return {p.d, p.uncertified_fallback};
    }
    case DualScheme::GsCj:
        return {gs_cj_baseline_policy(s, duals).d, false};
    }
    return {};
}

struct Usage {
    std::array<double, 2> mean{};
    std::size_t uncertified = 0;
};

class FrozenBatch {
public:
    FrozenBatch(const FadingParams& params, std::size_t n, std::uint64_t seed) : states_(n)
    {
        for_each_chunk(n, [&](std::size_t c, std::size_t begin, std::size_t end) {
            Rng rng = chunk_rng(seed, c);
            for (std::size_t i = begin; i < end; ++i) {
                states_[i] = sample_state(params, rng);
            }
        });
    }

    Usage usage(DualScheme scheme, const DualVars& duals) const
    {
        const std::size_t n      = states_.size();
        const std::size_t chunks = (n + kChunkSize - 1) / kChunkSize;
        std::vector<Usage> partial(chunks);
        for_each_chunk(n, [&](std::size_t c, std::size_t begin, std::size_t end) {
            Usage& u = partial[c];
            for (std::size_t i = begin; i < end; ++i) {
                const Decision d = decide(scheme, states_[i], duals);
                u.mean[0] += d.d.p1 + d.d.q1;
                u.mean[1] += d.d.p2 + d.d.q2;
                u.uncertified += d.uncertified ? 1 : 0;
            }
        });
        Usage total;
        for (const Usage& u : partial) {
            total.mean[0] += u.mean[0];
            total.mean[1] += u.mean[1];
            total.uncertified += u.uncertified;
        }
        total.mean[0] /= static_cast<double>(n);
        total.mean[1] /= static_cast<double>(n);
        return total;
    }

private:
    std::vector<ChannelState> states_;
};

double& coord(DualVars& d, int k)
{
    return k == 0 ? d.lambda1 : d.lambda2;
}

struct Search {
    const FrozenBatch& batch;
    DualScheme scheme;
    std::array<double, 2> budget;
    const DualSearchOptions& opts;

    bool within(double u, int k) const { return std::abs(u - budget[k]) <= opts.tol * budget[k]; }

    // Moves lambda_k so that the k-th usage meets its budget, the other
    // multiplier held fixed. Returns false if no bracket exists below the
    // ceiling.
    bool update(DualVars& duals, int k, bool& slack) const
    {
        slack = false;
        const double target = budget[k];
        double u = batch.usage(scheme, duals).mean[k];
        if (within(u, k)) {
            return true;
        }

        double& lam = coord(duals, k);
        double lo = lam, hi = lam;  // usage(lo) > target > usage(hi)
        if (u > target) {
            while (u > target) {
                lo = lam;
                lam *= 4.0;
                if (lam > opts.lambda_ceil) {
                    lam = lo;
                    return false;
                }
                u = batch.usage(scheme, duals).mean[k];
                if (within(u, k)) {
                    return true;
                }
            }
            hi = lam;
        } else {
            while (u < target) {
                hi = lam;
                if (lam <= opts.lambda_floor) {
                    slack = true;
                    return true;
                }
                lam = std::max(lam / 4.0, opts.lambda_floor);
                u   = batch.usage(scheme, duals).mean[k];
                if (within(u, k)) {
                    return true;
                }
            }
            lo = lam;
        }

        double best_lam = lam, best_gap = std::abs(u - target);
        while (std::log(hi / lo) > 1e-12) {
            lam = std::sqrt(lo * hi);
            u   = batch.usage(scheme, duals).mean[k];
            const double gap = std::abs(u - target);
            if (gap < best_gap) {
                best_gap = gap;
                best_lam = lam;
            }
            if (within(u, k)) {
                return true;
            }
            (u > target ? lo : hi) = lam;
        }
        // usage jumps across the target; keep the closest multiplier
        lam = best_lam;
        return true;
    }
};

}  // namespace

PowerDecision apply_policy(DualScheme scheme, const ChannelState& s, const DualVars& duals)
{
    return decide(scheme, s, duals).d;
}

Policy make_kkt_policy(DualScheme scheme, const DualVars& duals)
{
    return [scheme, duals](const ChannelState& s, Rng&) { return decide(scheme, s, duals).d; };
}

DualSearchResult dual_search(const FadingParams& params, const PowerBudget& budget, DualScheme scheme,
                             std::size_t n, std::uint64_t seed, const DualSearchOptions& opts)
{
    params.validate();
    if (!(budget.pbar1 > 0.0) || !(budget.pbar2 > 0.0)) {
        throw std::invalid_argument("dual_search needs positive budgets");
    }
    if (n < 1) {
        throw std::invalid_argument("dual_search needs n >= 1");
    }
    opts.initial.validate();

    DualSearchResult res;
    res.duals = opts.initial;

    try {
        const FrozenBatch batch(params, n, seed);
        const Search search{batch, scheme, {budget.pbar1, budget.pbar2}, opts};

        auto satisfied = [&](const Usage& u, int k) {
            return search.within(u.mean[k], k) || (res.slack[k] && u.mean[k] <= search.budget[k]);
        };

        Usage u;
        for (res.sweeps = 1; res.sweeps <= opts.max_sweeps; ++res.sweeps) {
            for (int k = 0; k < 2; ++k) {
                bool slack = false;
                if (!search.update(res.duals, k, slack)) {
                    res.message = "no multiplier below the ceiling meets budget " + std::to_string(k + 1);
                    u = batch.usage(scheme, res.duals);
                    res.realized              = u.mean;
                    res.uncertified_fallbacks = u.uncertified;
                    return res;
                }
                res.slack[k] = slack;
            }
            u = batch.usage(scheme, res.duals);
            if (satisfied(u, 0) && satisfied(u, 1)) {
                res.converged = true;
                break;
            }
        }
        if (!res.converged) {
            res.sweeps  = opts.max_sweeps;
            res.message = "alternation did not settle within " + std::to_string(opts.max_sweeps) + " sweeps";
        }
        res.realized              = u.mean;
        res.uncertified_fallbacks = u.uncertified;
    } catch (const std::exception& e) {
        res.converged = false;
        res.message   = e.what();
    }
    return res;
}

}  // namespace fwt
