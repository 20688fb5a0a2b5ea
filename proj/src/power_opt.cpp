#include "fwt/power_opt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "poly_roots.hpp"

namespace fwt {

EffectiveState EffectiveState::from_channel(const ChannelState& s)
{
    return {2.0 * s.h1_sq(), 2.0 * s.h2_sq(), 2.0 * s.g1_sq(), 2.0 * s.g2_sq()};
}

void EffectiveState::validate() const
{
    for (double v : {h1, h2, g1, g2}) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw std::invalid_argument("effective gains must be finite and >= 0");
        }
    }
}

void DualVars::validate() const
{
    if (!(lambda1 > 0.0) || !(lambda2 > 0.0) || !std::isfinite(lambda1) || !std::isfinite(lambda2)) {
        throw std::invalid_argument("dual variables must be finite and > 0");
    }
}

double esa_objective(const EffectiveState& s, double p1, double p2)
{
    return std::log1p(s.h1 * p1) + std::log1p(s.h2 * p2) - std::log1p(s.g1 * p1 + s.g2 * p2);
}

double esa_cj_objective(const EffectiveState& s, const PowerDecision& d)
{
    const double t1 = d.p1 + d.q1;
    const double t2 = d.p2 + d.q2;
    return std::log1p(s.h1 * t1) + std::log1p(s.h2 * t2) - std::log1p(s.g1 * t1 + s.g2 * t2) +
           std::log1p(s.g1 * d.q1 + s.g2 * d.q2) - std::log1p(s.h1 * d.q1) - std::log1p(s.h2 * d.q2);
}

double esa_lagrangian(const EffectiveState& s, const DualVars& duals, double p1, double p2)
{
    return esa_objective(s, p1, p2) - duals.lambda1 * p1 - duals.lambda2 * p2;
}

double esa_cj_lagrangian(const EffectiveState& s, const DualVars& duals, const PowerDecision& d)
{
    return esa_cj_objective(s, d) - duals.lambda1 * (d.p1 + d.q1) - duals.lambda2 * (d.p2 + d.q2);
}

std::array<double, 2> esa_kkt_residual(const EffectiveState& s, double p1, double p2, const DualVars& duals)
{
    const double S = 1.0 + s.g1 * p1 + s.g2 * p2;
    return {s.h1 / (1.0 + s.h1 * p1) - s.g1 / S - duals.lambda1,
            s.h2 / (1.0 + s.h2 * p2) - s.g2 / S - duals.lambda2};
}

std::array<double, 4> esa_cj_kkt_residual(const EffectiveState& s, const PowerDecision& d, const DualVars& duals)
{
    const double t1 = d.p1 + d.q1;
    const double t2 = d.p2 + d.q2;
    const double S  = 1.0 + s.g1 * t1 + s.g2 * t2;
    const double J  = 1.0 + s.g1 * d.q1 + s.g2 * d.q2;

    const double dp1 = s.h1 / (1.0 + s.h1 * t1) - s.g1 / S - duals.lambda1;
    const double dp2 = s.h2 / (1.0 + s.h2 * t2) - s.g2 / S - duals.lambda2;
    const double dq1 = dp1 + s.g1 / J - s.h1 / (1.0 + s.h1 * d.q1);
    const double dq2 = dp2 + s.g2 / J - s.h2 / (1.0 + s.h2 * d.q2);
    return {dp1, dp2, dq1, dq2};
}

// ---------------------------------------------------------------------------
// Common-root solvers.
//
// Both systems share the form
//   E1: h1 (1 + g2 y) - g1 = l1 (1 + h1 x)(1 + g1 x + g2 y)
//   E2: c2 (1 + g1 x) - g2 = l2 (1 + c2 y)(1 + g1 x + g2 y)
// with c2 = h2 for the ESA powers (x = P1, y = P2) and c2 = g2 for the
// transmit/jam pair (x = P1, y = Q2).

namespace {

using detail::Poly;

struct PairForm {
    double h1, c2, g1, g2, l1, l2;
};

PairForm make_form(PairSystem system, const EffectiveState& s, const DualVars& duals)
{
    return {s.h1, system == PairSystem::EsaPowers ? s.h2 : s.g2, s.g1, s.g2, duals.lambda1, duals.lambda2};
}

std::array<double, 2> equations(const PairForm& f, double x, double y)
{
    const double S = 1.0 + f.g1 * x + f.g2 * y;
    return {f.h1 * (1.0 + f.g2 * y) - f.g1 - f.l1 * (1.0 + f.h1 * x) * S,
            f.c2 * (1.0 + f.g1 * x) - f.g2 - f.l2 * (1.0 + f.c2 * y) * S};
}

double residual(const PairForm& f, double x, double y)
{
    const double S = 1.0 + f.g1 * x + f.g2 * y;
    const double r1 = f.h1 / (1.0 + f.h1 * x) - f.g1 / S - f.l1;
    const double r2 = f.c2 / (1.0 + f.c2 * y) - f.g2 / S - f.l2;
    return std::max(std::abs(r1), std::abs(r2));
}

double pair_lagrangian(const PairForm& f, double x, double y)
{
    return std::log1p(f.h1 * x) + std::log1p(f.c2 * y) - std::log1p(f.g1 * x + f.g2 * y) - f.l1 * x - f.l2 * y;
}

struct NewtonOutcome {
    double x, y;
    bool converged;
};

NewtonOutcome newton(const PairForm& f, double x, double y, int max_iter)
{
    auto merit = [&](double a, double b) {
        const auto e = equations(f, a, b);
        return e[0] * e[0] + e[1] * e[1];
    };

    for (int it = 0; it < max_iter; ++it) {
        if (residual(f, x, y) <= 1e-14) {
            return {x, y, true};
        }
        const auto e   = equations(f, x, y);
        const double S = 1.0 + f.g1 * x + f.g2 * y;
        const double j11 = -f.l1 * (f.h1 * S + f.g1 * (1.0 + f.h1 * x));
        const double j12 = f.h1 * f.g2 - f.l1 * (1.0 + f.h1 * x) * f.g2;
        const double j21 = f.c2 * f.g1 - f.l2 * (1.0 + f.c2 * y) * f.g1;
        const double j22 = -f.l2 * (f.c2 * S + f.g2 * (1.0 + f.c2 * y));
        const double det = j11 * j22 - j12 * j21;
        if (det == 0.0 || !std::isfinite(det)) {
            break;
        }
        const double dx = (e[0] * j22 - e[1] * j12) / det;
        const double dy = (e[1] * j11 - e[0] * j21) / det;

        const double m0 = merit(x, y);
        double t = 1.0;
        while (t > 1e-6 && merit(x - t * dx, y - t * dy) > (1.0 - 1e-4 * t) * m0) {
            t *= 0.5;
        }
        x -= t * dx;
        y -= t * dy;
        if (!std::isfinite(x) || !std::isfinite(y)) {
            break;
        }
        if (std::abs(t * dx) <= 1e-16 * (1.0 + std::abs(x)) && std::abs(t * dy) <= 1e-16 * (1.0 + std::abs(y))) {
            break;
        }
    }
    return {x, y, residual(f, x, y) <= kRootResidualTol};
}

// Snaps components in (-1e-9, 0) to zero.
double clamp_small_negative(double v)
{
    return (v < 0.0 && v > -1e-9) ? 0.0 : v;
}

struct Candidate {
    double x, y, res;
};

// Keeps the verified positive root with the largest Lagrangian.
CommonRoot pick(const PairForm& f, const std::vector<Candidate>& roots)
{
    CommonRoot best;
    double best_val = -std::numeric_limits<double>::infinity();
    for (const auto& c : roots) {
        const double v = pair_lagrangian(f, c.x, c.y);
        if (v > best_val) {
            best_val  = v;
            best      = CommonRoot{RootStatus::Found, c.x, c.y, c.res};
        }
    }
    return best;
}

bool accept(const PairForm& f, double& x, double& y, std::vector<Candidate>& out)
{
    x = clamp_small_negative(x);
    y = clamp_small_negative(y);
    if (!(x > 0.0 && y > 0.0)) {
        return false;
    }
    const double res = residual(f, x, y);
    if (res > kRootResidualTol) {
        return false;
    }
    for (const auto& c : out) {
        if (std::abs(c.x - x) <= 1e-8 * (1.0 + x) && std::abs(c.y - y) <= 1e-8 * (1.0 + y)) {
            return true;
        }
    }
    out.push_back({x, y, res});
    return true;
}

CommonRoot eliminate(const PairForm& f)
{
    // E1 as a quadratic in x, E2 as a linear function of x, coefficients
    // polynomial in y.
    const double A = -f.l1 * f.h1 * f.g1;
    const Poly B   = {-f.l1 * (f.g1 + f.h1), -f.l1 * f.h1 * f.g2};
    const Poly C   = {f.h1 - f.g1 - f.l1, (f.h1 - f.l1) * f.g2};
    const Poly a   = {f.g1 * (f.c2 - f.l2), -f.g1 * f.l2 * f.c2};
    const Poly b   = {f.c2 - f.g2 - f.l2, -f.l2 * (f.c2 + f.g2), -f.l2 * f.c2 * f.g2};

    std::vector<double> ys;
    const bool x_free = a[0] == 0.0 && a[1] == 0.0;
    if (x_free) {
        // E2 does not involve x: its roots fix y, E1 then fixes x.
        if (!detail::real_roots(b, ys)) {
            return CommonRoot{RootStatus::NotConverged};
        }
    } else {
        using detail::poly_add;
        using detail::poly_mul;
        using detail::poly_scale;
        const Poly R = poly_add(poly_add(poly_scale(poly_mul(b, b), A), poly_scale(poly_mul(poly_mul(B, a), b), -1.0)),
                                poly_mul(C, poly_mul(a, a)));
        if (!detail::real_roots(R, ys)) {
            return CommonRoot{RootStatus::NotConverged};
        }
    }

    std::vector<Candidate> verified;
    bool positive_unverified = false;
    std::vector<double> xs;

    for (double y : ys) {
        if (!std::isfinite(y) || y < -1e-9 * (1.0 + std::abs(y))) {
            continue;
        }
        xs.clear();
        const double ay = detail::poly_eval(a, y);
        const double a_scale = std::abs(a[0]) + std::abs(a[1]) * std::abs(y);
        if (!x_free && std::abs(ay) > 1e-12 * a_scale) {
            xs.push_back(-detail::poly_eval(b, y) / ay);
        } else {
            // x enters E1 only: A x^2 + B(y) x + C(y) = 0
            detail::real_roots({detail::poly_eval(C, y), detail::poly_eval(B, y), A}, xs);
        }
        for (double x0 : xs) {
            if (!std::isfinite(x0)) {
                continue;
            }
            const NewtonOutcome polished = newton(f, x0, y, 30);
            double x = polished.x, yy = polished.y;
            if (accept(f, x, yy, verified)) {
                continue;
            }
            if (x0 > 1e-9 && y > 1e-9) {
                positive_unverified = true;
            }
        }
    }

    if (!verified.empty()) {
        return pick(f, verified);
    }
    return CommonRoot{positive_unverified ? RootStatus::NotConverged : RootStatus::NoPositiveRoot};
}

CommonRoot newton_multistart(const PairForm& f)
{
    const double span = 10.0 / std::min(f.l1, f.l2);
    std::vector<Candidate> verified;
    for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 5; ++j) {
            const NewtonOutcome o = newton(f, span * i / 4.0, span * j / 4.0, 100);
            if (!o.converged) {
                continue;
            }
            double x = o.x, y = o.y;
            accept(f, x, y, verified);
        }
    }
    if (!verified.empty()) {
        return pick(f, verified);
    }
    return CommonRoot{RootStatus::NotConverged};
}

CommonRoot solve_form(const PairForm& f)
{
    CommonRoot r = eliminate(f);
    if (r.status != RootStatus::NotConverged) {
        return r;
    }
    return newton_multistart(f);
}

}  // namespace

CommonRoot solve_by_elimination(PairSystem system, const EffectiveState& s, const DualVars& duals)
{
    duals.validate();
    return eliminate(make_form(system, s, duals));
}

CommonRoot solve_by_newton(PairSystem system, const EffectiveState& s, const DualVars& duals)
{
    duals.validate();
    return newton_multistart(make_form(system, s, duals));
}

CommonRoot solve_common_root(const EffectiveState& s, const DualVars& duals)
{
    duals.validate();
    return solve_form(make_form(PairSystem::EsaPowers, s, duals));
}

CommonRoot solve_p1q2(const EffectiveState& s, const DualVars& duals)
{
    duals.validate();
    if (s.g2 <= duals.lambda2) {
        // jamming can never be stationary: g2 - g2 / (1 + g1 P1) < g2 <= lambda2
        return CommonRoot{RootStatus::NoPositiveRoot};
    }
    return solve_form(make_form(PairSystem::TransmitJam, s, duals));
}

CommonRoot solve_p2q1(const EffectiveState& s, const DualVars& duals)
{
    return solve_p1q2(s.swapped(), duals.swapped());
}

namespace {

// Positive root of  h / (1 + h p) - g / (1 + g p) = lambda,  0 if none.
double single_user_root(double h, double g, double lambda)
{
    if (!(h > g) || lambda >= h - g) {
        return 0.0;
    }
    // h g p^2 + (h + g) p + c = 0 with c = 1 - (h - g) / lambda < 0; the
    // rationalized form avoids cancellation near the threshold.
    const double c    = 1.0 - (h - g) / lambda;
    const double disc = (h - g) * (h - g) + 4.0 * h * g * (h - g) / lambda;
    return -2.0 * c / ((h + g) + std::sqrt(disc));
}

}  // namespace

double closed_form_p1(const EffectiveState& s, double lambda1)
{
    if (!(s.h1 > s.g1)) {
        throw std::invalid_argument("closed_form_p1 requires h1 > g1");
    }
    return single_user_root(s.h1, s.g1, lambda1);
}

double closed_form_p2(const EffectiveState& s, double lambda2)
{
    if (!(s.h2 > s.g2)) {
        throw std::invalid_argument("closed_form_p2 requires h2 > g2");
    }
    return single_user_root(s.h2, s.g2, lambda2);
}

// ---------------------------------------------------------------------------
// ESA seven-case tree.

EsaCase classify_esa(const EffectiveState& s, const DualVars& duals)
{
    const double l1 = duals.lambda1, l2 = duals.lambda2;
    const bool low1  = s.h1 <= l1;
    const bool low2  = s.h2 <= l2;
    const bool high1 = s.h1 - s.g1 > l1;
    const bool high2 = s.h2 - s.g2 > l2;

    if ((low1 && !high2) || (!high1 && low2)) return EsaCase::A1;
    if (low1 && high2) return EsaCase::A2;
    if (high1 && low2) return EsaCase::A3;
    if (high1 && high2) return EsaCase::A7;
    if (!high1 && !high2) return EsaCase::A4;
    if (!high1) return EsaCase::A5;
    return EsaCase::A6;
}

EsaPolicy esa_case_policy(const EffectiveState& s, const DualVars& duals)
{
    s.validate();
    duals.validate();
    EsaPolicy out;
    out.branch = classify_esa(s, duals);

    switch (out.branch) {
    case EsaCase::A1:
        break;
    case EsaCase::A2:
        out.p2 = closed_form_p2(s, duals.lambda2);
        break;
    case EsaCase::A3:
        out.p1 = closed_form_p1(s, duals.lambda1);
        break;
    case EsaCase::A4:
    case EsaCase::A5:
    case EsaCase::A6:
    case EsaCase::A7: {
        const CommonRoot r = solve_common_root(s, duals);
        if (r.found()) {
            out.p1 = r.x;
            out.p2 = r.y;
            break;
        }
        if (out.branch == EsaCase::A7) {
            throw std::runtime_error("case A.7: no positive common root (" +
                                     std::string(r.status == RootStatus::NotConverged ? "solver did not converge"
                                                                                      : "none exists") +
                                     ")");
        }
        out.uncertified_fallback = r.status == RootStatus::NotConverged;
        if (out.branch == EsaCase::A5) {
            out.p2 = closed_form_p2(s, duals.lambda2);
        } else if (out.branch == EsaCase::A6) {
            out.p1 = closed_form_p1(s, duals.lambda1);
        }
        break;
    }
    }
    return out;
}

bool stationarity_unique(EsaCase c)
{
    return c == EsaCase::A1 || c == EsaCase::A2 || c == EsaCase::A3 || c == EsaCase::A7;
}

std::string branch_label(EsaCase c)
{
    return "A." + std::to_string(static_cast<int>(c));
}

// ---------------------------------------------------------------------------
// ESA/CJ case tree.

namespace {

// Branch 2 logic (h1 >= g1, h2 < g2): user 2 never transmits, user 1 never
// jams.
CjBranch classify_branch2(const EffectiveState& s, const DualVars& duals)
{
    const double l1 = duals.lambda1, l2 = duals.lambda2;
    if (s.h1 <= l1 || (s.h1 - s.g1 <= l1 && s.g2 <= l2)) return CjBranch::B2a;
    if (s.h1 - s.g1 > l1 && s.g2 <= l2) return CjBranch::B2b;
    if (s.h1 - s.g1 <= l1) return CjBranch::B2c;
    return CjBranch::B2d;
}

CjBranch mirror(CjBranch b)
{
    switch (b) {
    case CjBranch::B2a: return CjBranch::B3a;
    case CjBranch::B2b: return CjBranch::B3b;
    case CjBranch::B2c: return CjBranch::B3c;
    case CjBranch::B2d: return CjBranch::B3d;
    default: return b;
    }
}

PowerDecision mirror(const PowerDecision& d)
{
    return PowerDecision{d.p2, d.p1, d.q2, d.q1};
}

// Solves branch-2 sub-cases; returns the decision and the uncertified flag.
PowerDecision solve_branch2(CjBranch b, const EffectiveState& s, const DualVars& duals, bool& uncertified)
{
    PowerDecision d;
    switch (b) {
    case CjBranch::B2a:
        break;
    case CjBranch::B2b:
        d.p1 = closed_form_p1(s, duals.lambda1);
        break;
    case CjBranch::B2c:
    case CjBranch::B2d: {
        const CommonRoot r = solve_p1q2(s, duals);
        if (r.found()) {
            d.p1 = r.x;
            d.q2 = r.y;
            break;
        }
        uncertified = r.status == RootStatus::NotConverged;
        if (b == CjBranch::B2d) {
            d.p1 = closed_form_p1(s, duals.lambda1);
        }
        break;
    }
    default:
        break;
    }
    return d;
}

}  // namespace

CjBranch classify_esa_cj(const EffectiveState& s, const DualVars& duals)
{
    const bool strong1 = s.h1 >= s.g1;
    const bool strong2 = s.h2 >= s.g2;

    if (strong1 && strong2) return CjBranch::B1;
    if (strong1) return classify_branch2(s, duals);
    if (strong2) return mirror(classify_branch2(s.swapped(), duals.swapped()));

    const double l1 = duals.lambda1, l2 = duals.lambda2;
    const bool a_blocked = s.h1 <= l1 || s.g2 <= l2;  // (P1, Q2) pair inactive
    const bool b_blocked = s.h2 <= l2 || s.g1 <= l1;  // (P2, Q1) pair inactive
    if (a_blocked && b_blocked) return CjBranch::B4a;
    if (b_blocked) return CjBranch::B4b;
    if (a_blocked) return CjBranch::B4c;
    return CjBranch::B4d;
}

EsaCjPolicy esa_cj_case_policy(const EffectiveState& s, const DualVars& duals)
{
    s.validate();
    duals.validate();
    EsaCjPolicy out;
    out.branch = classify_esa_cj(s, duals);

    switch (out.branch) {
    case CjBranch::B1: {
        EsaPolicy e;
        try {
            e = esa_case_policy(s, duals);
        } catch (const std::runtime_error& err) {
            throw std::runtime_error("branch B.1/" + std::string(err.what()));
        }
        out.esa_branch           = e.branch;
        out.uncertified_fallback = e.uncertified_fallback;
        out.d                    = PowerDecision{e.p1, e.p2, 0.0, 0.0};
        break;
    }
    case CjBranch::B2a:
    case CjBranch::B2b:
    case CjBranch::B2c:
    case CjBranch::B2d:
        out.d = solve_branch2(out.branch, s, duals, out.uncertified_fallback);
        break;
    case CjBranch::B3a:
    case CjBranch::B3b:
    case CjBranch::B3c:
    case CjBranch::B3d: {
        const CjBranch as2 = classify_branch2(s.swapped(), duals.swapped());
        out.d = mirror(solve_branch2(as2, s.swapped(), duals.swapped(), out.uncertified_fallback));
        break;
    }
    case CjBranch::B4a:
        break;
    case CjBranch::B4b: {
        const CommonRoot a = solve_p1q2(s, duals);
        if (a.found()) {
            out.d.p1 = a.x;
            out.d.q2 = a.y;
        }
        out.uncertified_fallback = a.status == RootStatus::NotConverged;
        break;
    }
    case CjBranch::B4c: {
        const CommonRoot b = solve_p2q1(s, duals);
        if (b.found()) {
            out.d.p2 = b.x;
            out.d.q1 = b.y;
        }
        out.uncertified_fallback = b.status == RootStatus::NotConverged;
        break;
    }
    default: {
        const CommonRoot a = solve_p1q2(s, duals);
        const CommonRoot b = solve_p2q1(s, duals);
        const PowerDecision da{a.x, 0.0, 0.0, a.y};
        const PowerDecision db{0.0, b.x, b.y, 0.0};
        if (a.found() && b.found()) {
            out.branch = CjBranch::B4d_iv;
            // rounding-level differences count as ties, which go to (P1, Q2)
            const double va = esa_cj_objective(s, da), vb = esa_cj_objective(s, db);
            out.d = vb - va > 1e-12 * (1.0 + std::abs(va)) ? db : da;
        } else if (a.found()) {
            out.branch = CjBranch::B4d_i;
            out.d      = da;
        } else if (b.found()) {
            out.branch = CjBranch::B4d_ii;
            out.d      = db;
        } else {
            out.branch = CjBranch::B4d_iii;
        }
        out.uncertified_fallback =
            a.status == RootStatus::NotConverged || b.status == RootStatus::NotConverged;
        break;
    }
    }
    return out;
}

bool stationarity_unique(const EsaCjPolicy& p)
{
    switch (p.branch) {
    case CjBranch::B1:
        return stationarity_unique(p.esa_branch);
    case CjBranch::B2a:
    case CjBranch::B2b:
    case CjBranch::B3a:
    case CjBranch::B3b:
    case CjBranch::B4a:
        return true;
    default:
        return false;
    }
}

std::string branch_label(CjBranch b)
{
    switch (b) {
    case CjBranch::B1: return "B.1";
    case CjBranch::B2a: return "B.2(a)";
    case CjBranch::B2b: return "B.2(b)";
    case CjBranch::B2c: return "B.2(c)";
    case CjBranch::B2d: return "B.2(d)";
    case CjBranch::B3a: return "B.3(a)";
    case CjBranch::B3b: return "B.3(b)";
    case CjBranch::B3c: return "B.3(c)";
    case CjBranch::B3d: return "B.3(d)";
    case CjBranch::B4a: return "B.4(a)";
    case CjBranch::B4b: return "B.4(b)";
    case CjBranch::B4c: return "B.4(c)";
    case CjBranch::B4d: return "B.4(d)";
    case CjBranch::B4d_i: return "B.4(d)(i)";
    case CjBranch::B4d_ii: return "B.4(d)(ii)";
    case CjBranch::B4d_iii: return "B.4(d)(iii)";
    case CjBranch::B4d_iv: return "B.4(d)(iv)";
    }
    return "B.?";
}

std::string branch_label(const EsaCjPolicy& p)
{
    if (p.branch == CjBranch::B1) {
        return "B.1/" + branch_label(p.esa_branch);
    }
    return branch_label(p.branch);
}

// ---------------------------------------------------------------------------
// GS/CJ baseline.

GsCjPolicy gs_cj_baseline_policy(const ChannelState& s, const DualVars& duals)
{
    duals.validate();
    const double h1 = s.h1_sq(), h2 = s.h2_sq(), g1 = s.g1_sq(), g2 = s.g2_sq();
    const double l1 = duals.lambda1, l2 = duals.lambda2;

    GsCjPolicy out;
    if (h1 > g1 && h2 > g2) {
        out.region = GsCjRegion::D1;
        out.d.p1   = single_user_root(h1, g1, l1);
        out.d.p2   = single_user_root(h2, g2, l2);
    } else if (h1 > g1) {
        out.region = GsCjRegion::D2;
        out.d.p1   = single_user_root(h1, g1, l1);
        // the jammer only helps a transmitting partner
        out.d.q2 = out.d.p1 > 0.0 ? single_user_root(g2, h2, l2) : 0.0;
    } else if (h2 > g2) {
        out.region = GsCjRegion::D3;
        out.d.p2   = single_user_root(h2, g2, l2);
        out.d.q1   = out.d.p2 > 0.0 ? single_user_root(g1, h1, l1) : 0.0;
    }
    return out;
}

std::string region_label(GsCjRegion r)
{
    switch (r) {
    case GsCjRegion::Off: return "off";
    case GsCjRegion::D1: return "D1";
    case GsCjRegion::D2: return "D2";
    case GsCjRegion::D3: return "D3";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Grid oracle.

GridOracleResult grid_oracle(const EffectiveState& s, const DualVars& duals, Scheme scheme,
                             double grid_max, std::size_t grid_n, bool allow_splitting)
{
    if (grid_n < 2) {
        throw std::invalid_argument("grid_oracle needs grid_n >= 2");
    }
    if (scheme != Scheme::Esa && scheme != Scheme::EsaCj) {
        throw std::invalid_argument("grid_oracle supports the ESA and ESA/CJ schemes");
    }
    const double step = grid_max / static_cast<double>(grid_n - 1);
    std::vector<double> t(grid_n);
    for (std::size_t i = 0; i < grid_n; ++i) t[i] = step * static_cast<double>(i);

    GridOracleResult best;
    best.spacing = step;
    best.value   = -std::numeric_limits<double>::infinity();

    if (scheme == Scheme::EsaCj && allow_splitting) {
        for (double p1 : t)
            for (double q1 : t)
                for (double p2 : t)
                    for (double q2 : t) {
                        const PowerDecision d{p1, p2, q1, q2};
                        const double v = esa_cj_lagrangian(s, duals, d);
                        if (v > best.value) {
                            best.value = v;
                            best.best  = d;
                        }
                    }
        return best;
    }

    // Separable parts per user: transmit tx_k(t) = ln(1 + h_k t) - l_k t and,
    // for ESA/CJ, jam jm_k(t) = ln(1 + g_k t) - l_k t. The shared term
    // -ln(1 + g1 t1 + g2 t2) covers every mix except both jamming, which is
    // dominated by the all-zero point.
    std::vector<double> tx1(grid_n), tx2(grid_n), jm1(grid_n), jm2(grid_n);
    for (std::size_t i = 0; i < grid_n; ++i) {
        tx1[i] = std::log1p(s.h1 * t[i]) - duals.lambda1 * t[i];
        tx2[i] = std::log1p(s.h2 * t[i]) - duals.lambda2 * t[i];
        jm1[i] = std::log1p(s.g1 * t[i]) - duals.lambda1 * t[i];
        jm2[i] = std::log1p(s.g2 * t[i]) - duals.lambda2 * t[i];
    }
    const bool cj = scheme == Scheme::EsaCj;

    for (std::size_t i = 0; i < grid_n; ++i) {
        for (std::size_t j = 0; j < grid_n; ++j) {
            const double cross = -std::log1p(s.g1 * t[i] + s.g2 * t[j]);
            double v = tx1[i] + tx2[j] + cross;
            PowerDecision d{t[i], t[j], 0.0, 0.0};
            if (cj) {
                const double v12 = tx1[i] + jm2[j] + cross;  // user 1 transmits, user 2 jams
                const double v21 = jm1[i] + tx2[j] + cross;  // user 1 jams, user 2 transmits
                if (v12 > v) {
                    v = v12;
                    d = PowerDecision{t[i], 0.0, 0.0, t[j]};
                }
                if (v21 > v) {
                    v = v21;
                    d = PowerDecision{0.0, t[j], t[i], 0.0};
                }
            }
            if (v > best.value) {
                best.value = v;
                best.best  = d;
            }
        }
    }
    return best;
}

double grid_error_bound(const EffectiveState& s, const DualVars& duals, double spacing)
{
    const double lip = 2.0 * (s.h1 + s.g1 + s.h2 + s.g2) + duals.lambda1 + duals.lambda2;
    return 0.5 * spacing * lip;
}

}  // namespace fwt
