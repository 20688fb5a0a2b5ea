#pragma once

#include <array>
#include <cstddef>
#include <string>

#include "fwt/fading.hpp"
#include "fwt/rates.hpp"

namespace fwt {

/// Effective power gains used by the power-control problems: every gain is
/// the doubled squared magnitude, h_k = 2|h_k|^2, g_k = 2|g_k|^2.
struct EffectiveState {
    double h1 = 0.0;
    double h2 = 0.0;
    double g1 = 0.0;
    double g2 = 0.0;

    static EffectiveState from_channel(const ChannelState& s);
    /// Exchanges the roles of the two users.
    EffectiveState swapped() const { return {h2, h1, g2, g1}; }
    void validate() const;
};

/// Multipliers of the two average-power constraints, in nats per unit power.
struct DualVars {
    double lambda1 = 1.0;
    double lambda2 = 1.0;

    DualVars swapped() const { return {lambda2, lambda1}; }
    void validate() const;
};

// ---------------------------------------------------------------------------
// Per-state objectives (natural log, no 1/2 factor), as in the KKT analysis.

double esa_objective(const EffectiveState& s, double p1, double p2);
double esa_cj_objective(const EffectiveState& s, const PowerDecision& d);
double esa_lagrangian(const EffectiveState& s, const DualVars& duals, double p1, double p2);
double esa_cj_lagrangian(const EffectiveState& s, const DualVars& duals, const PowerDecision& d);

/// Stationarity residuals d/dP_k of the ESA Lagrangian (multipliers of the
/// nonnegativity constraints taken as zero).
std::array<double, 2> esa_kkt_residual(const EffectiveState& s, double p1, double p2, const DualVars& duals);

/// Gradient of the ESA/CJ Lagrangian with respect to (P1, P2, Q1, Q2); for a
/// positive variable the entry is its stationarity residual, for a zero
/// variable it must be <= 0.
std::array<double, 4> esa_cj_kkt_residual(const EffectiveState& s, const PowerDecision& d, const DualVars& duals);

// ---------------------------------------------------------------------------
// Positive common roots of the two-variable stationarity systems.

enum class RootStatus { Found, NoPositiveRoot, NotConverged };

struct CommonRoot {
    RootStatus status = RootStatus::NoPositiveRoot;
    double x = 0.0;          // first unknown
    double y = 0.0;          // second unknown
    double residual = 0.0;   // max |stationarity residual| at (x, y)

    bool found() const { return status == RootStatus::Found; }
};

/// Acceptance threshold on the stationarity residuals of a common root.
inline constexpr double kRootResidualTol = 1e-9;

/// (P1, P2) with both positive solving the joint ESA stationarity system.
CommonRoot solve_common_root(const EffectiveState& s, const DualVars& duals);
/// (P1, Q2): user 1 transmits, user 2 jams.
CommonRoot solve_p1q2(const EffectiveState& s, const DualVars& duals);
/// (P2, Q1): user 2 transmits, user 1 jams. x = P2, y = Q1.
CommonRoot solve_p2q1(const EffectiveState& s, const DualVars& duals);

enum class PairSystem { EsaPowers, TransmitJam };

/// Individual solver routes behind solve_common_root / solve_p1q2, exposed
/// so they can be checked against each other. Elimination reduces the pair
/// to a quartic in the second unknown and enumerates its real roots; Newton
/// runs a damped iteration from a 5x5 start grid over [0, 10 / min lambda].
CommonRoot solve_by_elimination(PairSystem system, const EffectiveState& s, const DualVars& duals);
CommonRoot solve_by_newton(PairSystem system, const EffectiveState& s, const DualVars& duals);

/// Single-user stationary power of user 1 when user 2 is silent.
/// Requires h1 > g1 (throws std::invalid_argument otherwise); returns 0 when
/// lambda1 >= h1 - g1.
double closed_form_p1(const EffectiveState& s, double lambda1);
double closed_form_p2(const EffectiveState& s, double lambda2);

// ---------------------------------------------------------------------------
// ESA power control (seven-case tree).

enum class EsaCase { A1 = 1, A2, A3, A4, A5, A6, A7 };

struct EsaPolicy {
    double p1 = 0.0;
    double p2 = 0.0;
    EsaCase branch = EsaCase::A1;
    /// The root test could not be certified and the fallback was taken.
    bool uncertified_fallback = false;
};

EsaCase classify_esa(const EffectiveState& s, const DualVars& duals);
/// Throws std::runtime_error if case A7 yields no positive root.
EsaPolicy esa_case_policy(const EffectiveState& s, const DualVars& duals);

/// True for the cases where the stationary point is unique (A1, A2, A3, A7).
bool stationarity_unique(EsaCase c);
std::string branch_label(EsaCase c);

// ---------------------------------------------------------------------------
// ESA with cooperative jamming.

enum class CjBranch {
    B1,
    B2a, B2b, B2c, B2d,
    B3a, B3b, B3c, B3d,
    B4a, B4b, B4c,
    B4d,  // both transmit/jam pairs admissible; refined by the policy below
    B4d_i, B4d_ii, B4d_iii, B4d_iv,
};

struct EsaCjPolicy {
    PowerDecision d;
    CjBranch branch = CjBranch::B1;
    EsaCase esa_branch = EsaCase::A1;  // meaningful for B1 only
    bool uncertified_fallback = false;
};

CjBranch classify_esa_cj(const EffectiveState& s, const DualVars& duals);
/// Throws std::runtime_error, naming the branch, if a required root cannot
/// be found.
EsaCjPolicy esa_cj_case_policy(const EffectiveState& s, const DualVars& duals);

bool stationarity_unique(const EsaCjPolicy& p);
std::string branch_label(CjBranch b);
std::string branch_label(const EsaCjPolicy& p);

// ---------------------------------------------------------------------------
// Baseline for i.i.d. Gaussian signalling with cooperative jamming.
//
// This is an approximation: only the structure of the optimal policy is
// reproduced (no simultaneous transmit and jam for a user, silence when both
// users are weaker than the eavesdropper). Within each region the powers are
// single-user stationary roots on the raw (not doubled) squared gains.

enum class GsCjRegion { Off, D1, D2, D3 };

struct GsCjPolicy {
    PowerDecision d;
    GsCjRegion region = GsCjRegion::Off;
};

inline constexpr const char* kGsCjBaselineTag = "gs_cj_baseline(approx)";

GsCjPolicy gs_cj_baseline_policy(const ChannelState& s, const DualVars& duals);
std::string region_label(GsCjRegion r);

// ---------------------------------------------------------------------------
// Exhaustive grid search over the per-state Lagrangian.

struct GridOracleResult {
    PowerDecision best;
    double value   = 0.0;  // Lagrangian at `best`, nats
    double spacing = 0.0;
};

/// Evaluates the per-state Lagrangian on a uniform grid of grid_n points per
/// variable over [0, grid_max]. For EsaCj the grid only contains decisions in
/// which each user either transmits or jams, unless `allow_splitting` is set,
/// in which case the full four-dimensional grid is searched.
GridOracleResult grid_oracle(const EffectiveState& s, const DualVars& duals, Scheme scheme,
                             double grid_max, std::size_t grid_n, bool allow_splitting = false);

/// Upper bound on how far the grid maximum can sit below the true maximum
/// inside the grid box: half a cell times the Lipschitz constant of the
/// Lagrangian.
double grid_error_bound(const EffectiveState& s, const DualVars& duals, double spacing);

}  // namespace fwt
