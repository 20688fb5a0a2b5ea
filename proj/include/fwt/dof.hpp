#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "fwt/dual_search.hpp"
#include "fwt/fading.hpp"
#include "fwt/rates.hpp"

namespace fwt {

struct CurvePoint {
    double power   = 0.0;  // symmetric budget P, linear
    double rsum    = 0.0;  // ergodic sum rate, bits (raw mean)
    double std_err = 0.0;
    std::size_t n  = 0;
    std::string status = "ok";
};

struct SumRateCurve {
    Scheme scheme = Scheme::Esa;
    FadingParams params;
    std::vector<CurvePoint> points;
};

struct CurveOptions {
    /// GS/CJ only: samples and options for the per-point multiplier search.
    std::size_t dual_samples = 20000;
    DualSearchOptions dual;
};

/// Sum rate versus a symmetric budget P at each entry of `powers` (strictly
/// increasing, > 0). Fixed policies: SBA transmits P / (2 var_g2) and
/// P / (2 var_g1), ESA transmits P on both users, GS/CJ runs the baseline
/// with multipliers searched per point. Point i is evaluated with seed
/// split_seed(seed, i); the GS/CJ search uses split_seed(~seed, i).
SumRateCurve sum_rate_curve(Scheme scheme, const FadingParams& params, const std::vector<double>& powers,
                            std::size_t n, std::uint64_t seed, const CurveOptions& opts = {});

/// Least-squares slope of rsum against log2(P) over points [first, last).
/// Requires at least 3 points in the window.
double estimate_dof(const SumRateCurve& curve, std::size_t first, std::size_t last);
/// Window of the top four points (or all points if fewer than four).
double estimate_dof(const SumRateCurve& curve);

/// Majorant of f_P / log2(P) for the SBA sum-rate integrand (without the
/// 1/2 factor), valid for large P.
double dominated_bound_sba(const SbaBlock& block, const FadingParams& params);
/// Majorant of f_P / log2(P) for the ESA sum-rate integrand (without the
/// 1/2 factor), valid for large P.
double dominated_bound_esa(const ChannelState& state);

struct BoundEstimate {
    double mean    = 0.0;  // bits
    double std_err = 0.0;
    std::size_t n  = 0;
};

/// Per-state value of the GS/CJ sum-rate bound on the raw squared gains:
/// on D1 log2(1 + a1/b1) + log2(1 + a2/b2), on D2 1 + log2(1 + a1/b1) +
/// log2(1 + b2/a2), D3 mirrored, zero elsewhere.
double gs_cj_bound_integrand(const ChannelState& s);

/// Monte Carlo estimate of E[gs_cj_bound_integrand]. Requires n >= 2.
BoundEstimate gs_cj_upper_bound(const FadingParams& params, std::size_t n, std::uint64_t seed);

}  // namespace fwt
