#include "fwt/dof.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "fwt/montecarlo.hpp"
#include "fwt/power_opt.hpp"

namespace fwt {

SumRateCurve sum_rate_curve(Scheme scheme, const FadingParams& params, const std::vector<double>& powers,
                            std::size_t n, std::uint64_t seed, const CurveOptions& opts)
{
    params.validate();
    for (std::size_t i = 0; i < powers.size(); ++i) {
        if (!(powers[i] > 0.0) || (i > 0 && !(powers[i] > powers[i - 1]))) {
            throw std::invalid_argument("curve powers must be positive and strictly increasing");
        }
    }

    SumRateCurve curve{scheme, params, {}};
    for (std::size_t i = 0; i < powers.size(); ++i) {
        const double P = powers[i];
        CurvePoint pt;
        pt.power = P;

        Policy policy;
        switch (scheme) {
        case Scheme::Sba:
            policy = constant_policy(P / (2.0 * params.var_g2), P / (2.0 * params.var_g1));
            break;
        case Scheme::Esa:
            policy = constant_policy(P, P);
            break;
        case Scheme::GsCj: {
            DualSearchOptions dopts = opts.dual;
            dopts.initial           = DualVars{1.0 / (1.0 + P), 1.0 / (1.0 + P)};
            const DualSearchResult ds =
                dual_search(params, PowerBudget::symmetric(P), DualScheme::GsCj, opts.dual_samples,
                            split_seed(~seed, i), dopts);
            if (!ds.converged) {
                pt.status = "dual_search_failed: " + ds.message;
            }
            policy = make_kkt_policy(DualScheme::GsCj, ds.duals);
            break;
        }
        case Scheme::EsaCj:
            throw std::invalid_argument("sum_rate_curve has no fixed policy for esa_cj");
        }

        const MonteCarloEstimate est = ergodic_region(scheme, policy, params, n, split_seed(seed, i));
        pt.rsum    = est.mean.rsum;
        pt.std_err = est.std_err.rsum;
        pt.n       = est.n;
        curve.points.push_back(pt);
    }
    return curve;
}

double estimate_dof(const SumRateCurve& curve, std::size_t first, std::size_t last)
{
    if (last > curve.points.size() || first >= last || last - first < 3) {
        throw std::invalid_argument("estimate_dof needs a window of at least 3 points");
    }
    const double m = static_cast<double>(last - first);
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = first; i < last; ++i) {
        sx += std::log2(curve.points[i].power);
        sy += curve.points[i].rsum;
    }
    const double mx = sx / m, my = sy / m;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = first; i < last; ++i) {
        const double dx = std::log2(curve.points[i].power) - mx;
        sxy += dx * (curve.points[i].rsum - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

double estimate_dof(const SumRateCurve& curve)
{
    const std::size_t n = curve.points.size();
    return estimate_dof(curve, n > 4 ? n - 4 : 0, n);
}

double dominated_bound_sba(const SbaBlock& b, const FadingParams& params)
{
    const double s1 = params.var_g1, s2 = params.var_g2;
    double psi = 4.0 + 2.0 * (std::log2(1.0 + 1.0 / s1) + std::log2(1.0 + 1.0 / s2)) +
                 std::log2(1.0 + (s1 + s2) / (s1 * s2));
    for (const ChannelState* s : {&b.odd, &b.even}) {
        psi += 3.0 * (std::log2(1.0 + s->h1_sq()) + std::log2(1.0 + s->h2_sq()));
        psi += 4.0 * (std::log2(1.0 + s->g1_sq()) + std::log2(1.0 + s->g2_sq()));
    }
    return psi;
}

double dominated_bound_esa(const ChannelState& s)
{
    return 6.0 + std::log2(1.0 + 2.0 * s.h1_sq()) + std::log2(1.0 + 2.0 * s.h2_sq()) +
           std::log2(1.0 + 2.0 * (s.g1_sq() + s.g2_sq()));
}

double gs_cj_bound_integrand(const ChannelState& s)
{
    const double a1 = s.h1_sq(), a2 = s.h2_sq(), b1 = s.g1_sq(), b2 = s.g2_sq();
    if (a1 > b1 && a2 > b2) {
        return std::log2(1.0 + a1 / b1) + std::log2(1.0 + a2 / b2);
    }
    if (a1 > b1 && a2 < b2) {
        return 1.0 + std::log2(1.0 + a1 / b1) + std::log2(1.0 + b2 / a2);
    }
    if (a1 < b1 && a2 > b2) {
        return 1.0 + std::log2(1.0 + a2 / b2) + std::log2(1.0 + b1 / a1);
    }
    return 0.0;
}

BoundEstimate gs_cj_upper_bound(const FadingParams& params, std::size_t n, std::uint64_t seed)
{
    if (n < 2) {
        throw std::invalid_argument("gs_cj_upper_bound needs n >= 2");
    }
    params.validate();

    const std::size_t chunks = (n + kChunkSize - 1) / kChunkSize;
    std::vector<Moments> partial(chunks);
    for_each_chunk(n, [&](std::size_t c, std::size_t begin, std::size_t end) {
        Rng rng = chunk_rng(seed, c);
        for (std::size_t i = begin; i < end; ++i) {
            partial[c].add(gs_cj_bound_integrand(sample_state(params, rng)));
        }
    });
    Moments total;
    for (const Moments& m : partial) {
        total.merge(m);
    }
    return BoundEstimate{total.mean, total.stderr_mean(), n};
}

}  // namespace fwt
