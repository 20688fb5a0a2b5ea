#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>

#include "fwt/power_opt.hpp"
#include "fwt/rates.hpp"

namespace fwt {

/// Policies whose multipliers can be tuned to an average-power budget.
enum class DualScheme { Esa, EsaCj, GsCj };

std::string_view dual_scheme_name(DualScheme s);
/// Rate scheme used to evaluate a dual policy.
Scheme rate_scheme(DualScheme s);

/// Per-state decision of the multiplier-driven policy. ESA and ESA/CJ run
/// their case trees on the doubled gains; GS/CJ runs the baseline.
PowerDecision apply_policy(DualScheme scheme, const ChannelState& s, const DualVars& duals);
Policy make_kkt_policy(DualScheme scheme, const DualVars& duals);

struct DualSearchOptions {
    double tol           = 1e-3;   // relative budget tolerance
    int max_sweeps       = 50;
    double lambda_floor  = 1e-30;  // below this the constraint is reported slack
    double lambda_ceil   = 1e30;
    DualVars initial{1.0, 1.0};
};

struct DualSearchResult {
    DualVars duals;
    std::array<double, 2> realized{};  // E[P_k + Q_k] on the search batch
    std::array<bool, 2> slack{};       // usage below budget at lambda_floor
    int sweeps = 0;
    bool converged = false;
    std::string message;
    std::size_t uncertified_fallbacks = 0;  // at the returned multipliers
};

/// Alternating per-coordinate bisection (in log lambda) over one frozen
/// batch of n states drawn from `seed`. Each coordinate is bracketed by
/// geometric expansion from its current value, then bisected until its
/// usage is within tol * budget. Stops when both usages are within
/// tolerance at the same multiplier pair. Does not throw on
/// non-convergence; `converged` and `message` report it.
DualSearchResult dual_search(const FadingParams& params, const PowerBudget& budget, DualScheme scheme,
                             std::size_t n, std::uint64_t seed, const DualSearchOptions& opts = {});

}  // namespace fwt
