#include <cmath>

#include "doctest.h"
#include "fwt/dof.hpp"

using namespace fwt;

namespace {

SumRateCurve synthetic(double slope, double offset)
{
    SumRateCurve c;
    for (double p : {1e2, 1e3, 1e4, 1e5, 1e6}) {
        c.points.push_back({p, slope * std::log2(p) + offset, 0.0, 1, "ok"});
    }
    return c;
}

// Composite Simpson rule for the integral of f over [0, top].
template <class F>
double simpson(F f, double top, int n)
{
    const double h = top / n;
    double s = f(0.0) + f(top);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(i * h);
    return s * h / 3.0;
}

}  // namespace

TEST_CASE("slope estimate")
{
    CHECK(estimate_dof(synthetic(0.5, 3.0)) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(estimate_dof(synthetic(0.0, 1.7)) == doctest::Approx(0.0).scale(1e-12));
    CHECK(estimate_dof(synthetic(1.0, 0.0), 0, 3) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(estimate_dof(synthetic(1.0, 0.0), 0, 2), std::invalid_argument);
}

TEST_CASE("ESA dominating function")
{
    CHECK(dominated_bound_esa(ChannelState{}) == 6.0);
    CHECK(dominated_bound_esa(ChannelState::real(0, 0, 0, 1)) == doctest::Approx(6.0 + std::log2(3.0)));
    CHECK(dominated_bound_esa(ChannelState::real(0, 0, 0, 1)) == doctest::Approx(7.585).epsilon(1e-4));
}

TEST_CASE("dominating functions bound the normalized integrands at large power")
{
    const FadingParams params{1.0, 1.0, 0.75, 1.5};
    Rng rng(61);
    for (int i = 0; i < 10000; ++i) {
        const ChannelState s = sample_state(params, rng);
        const SbaBlock b     = sba_expand(s, sample_state(params, rng));
        for (double p : {1e4, 1e5, 1e6}) {
            const double lp = std::log2(p);
            CHECK(2.0 * rates_esa(s, p, p).rsum / lp <= dominated_bound_esa(s));
            const double sba = 2.0 * rates_sba(b, p / (2 * params.var_g2), p / (2 * params.var_g1)).rsum;
            CHECK(sba / lp <= dominated_bound_sba(b, params));
        }
    }
}

TEST_CASE("ESA sum rate at unit power matches quadrature")
{
    // Independent unit-mean exponentials: main terms separate, the
    // eavesdropper sum is Gamma(2, 1).
    const double main = simpson([](double x) { return std::log2(1 + 2 * x) * std::exp(-x); }, 60.0, 60000);
    const double eve  = simpson([](double x) { return std::log2(1 + 2 * x) * x * std::exp(-x); }, 60.0, 60000);
    const double oracle = 0.5 * (2 * main - eve);

    const SumRateCurve c = sum_rate_curve(Scheme::Esa, FadingParams{}, {1.0, 2.0, 4.0}, 100000, 62);
    CHECK(std::abs(c.points[0].rsum - oracle) <= 3 * c.points[0].std_err);
    CHECK(c.points[0].power == 1.0);
    CHECK(c.points[0].n == 100000);
}

TEST_CASE("sum-rate curve input checks")
{
    CHECK_THROWS_AS(sum_rate_curve(Scheme::EsaCj, FadingParams{}, {1, 2, 3}, 100, 1), std::invalid_argument);
    CHECK_THROWS_AS(sum_rate_curve(Scheme::Esa, FadingParams{}, {1, 1, 3}, 100, 1), std::invalid_argument);
    CHECK_THROWS_AS(sum_rate_curve(Scheme::Esa, FadingParams{}, {0, 1, 3}, 100, 1), std::invalid_argument);
}

TEST_CASE("GS/CJ bound")
{
    SUBCASE("region values")
    {
        CHECK(gs_cj_bound_integrand(ChannelState::real(0.5, 0.5, 1, 1)) == 0.0);
        CHECK(gs_cj_bound_integrand(ChannelState::real(2, 2, 1, 1)) == doctest::Approx(2 * std::log2(5.0)));
        CHECK(gs_cj_bound_integrand(ChannelState::real(2, 1, 1, 2)) ==
              doctest::Approx(1 + std::log2(5.0) + std::log2(5.0)));
    }
    SUBCASE("finite and stable across seeds")
    {
        const FadingParams params{};
        const BoundEstimate a = gs_cj_upper_bound(params, 100000, 63);
        const BoundEstimate b = gs_cj_upper_bound(params, 100000, 64);
        CHECK(std::isfinite(a.mean));
        CHECK(a.std_err > 0.0);
        CHECK(std::abs(a.mean - b.mean) <= 4 * std::hypot(a.std_err, b.std_err));
    }
    SUBCASE("eavesdropper much stronger leaves almost nothing")
    {
        const BoundEstimate e = gs_cj_upper_bound({1e-4, 1e-4, 1.0, 1.0}, 20000, 65);
        CHECK(e.mean < 0.01);
    }
}
