#include "fwt/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "fwt/dof.hpp"
#include "fwt/dual_search.hpp"
#include "fwt/power_opt.hpp"
#include "fwt/rates.hpp"

namespace fwt {

namespace {

// Seed streams: evaluation batches and multiplier searches never share one.
constexpr std::uint64_t kEvalStream = 1;
constexpr std::uint64_t kDualStream = 2;
constexpr std::uint64_t kBoundStream = 3;

std::uint64_t point_seed(std::uint64_t seed, std::uint64_t stream, std::size_t vg, std::size_t snr)
{
    return split_seed(split_seed(split_seed(seed, stream), vg), snr);
}

bool wanted(const ExperimentConfig& cfg, const std::string& scheme)
{
    return cfg.schemes.empty() || std::find(cfg.schemes.begin(), cfg.schemes.end(), scheme) != cfg.schemes.end();
}

void check_scheme_filter(const ExperimentConfig& cfg, std::initializer_list<const char*> known)
{
    for (const std::string& s : cfg.schemes) {
        if (std::none_of(known.begin(), known.end(), [&](const char* k) { return s == k; })) {
            throw std::invalid_argument("scheme '" + s + "' is not part of this experiment");
        }
    }
}

FigureRow make_row(double snr, Scheme scheme, const MonteCarloEstimate& est, double var_g, std::string policy)
{
    FigureRow r;
    r.snr_db  = snr;
    r.scheme  = std::string(scheme_name(scheme));
    r.rsum    = est.mean.rsum;
    r.std_err = est.std_err.rsum;
    r.n       = est.n;
    r.var_g   = var_g;
    r.policy  = std::move(policy);
    return r;
}

struct Searched {
    Policy policy;
    std::string status = "ok";
};

Searched searched_policy(const ExperimentConfig& cfg, DualScheme scheme, const FadingParams& params, double pbar,
                         std::uint64_t seed)
{
    DualSearchOptions opts;
    opts.tol        = cfg.dual_tol;
    opts.max_sweeps = cfg.dual_max_sweeps;
    // multipliers scale roughly like 1 / budget
    opts.initial = DualVars{1.0 / (1.0 + pbar), 1.0 / (1.0 + pbar)};
    const DualSearchResult ds = dual_search(params, PowerBudget::symmetric(pbar), scheme, cfg.dual_samples, seed, opts);

    Searched out{make_kkt_policy(scheme, ds.duals)};
    if (!ds.converged) {
        out.status = "dual_search_failed: " + ds.message;
    } else if (ds.uncertified_fallbacks > 0) {
        out.status = "ok; uncertified_fallbacks=" + std::to_string(ds.uncertified_fallbacks);
    }
    return out;
}

std::string fmt(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// Status text may contain commas; quote it.
std::string csv_text(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

}  // namespace

double snr_db_to_budget(double snr_db)
{
    return std::pow(10.0, snr_db / 10.0);
}

std::vector<FigureRow> run_figure1(const ExperimentConfig& cfg)
{
    cfg.validate();
    check_scheme_filter(cfg, {"sba", "esa", "gs_cj"});

    std::vector<FigureRow> rows;
    for (std::size_t v = 0; v < cfg.var_g.size(); ++v) {
        const FadingParams params = FadingParams::symmetric(cfg.var_h, cfg.var_g[v]);
        for (std::size_t i = 0; i < cfg.snr_db.size(); ++i) {
            const double pbar         = snr_db_to_budget(cfg.snr_db[i]);
            const PowerBudget budget  = PowerBudget::symmetric(pbar);
            const std::uint64_t eseed = point_seed(cfg.seed, kEvalStream, v, i);
            const bool rudimentary    = cfg.policy == "rudimentary";

            if (wanted(cfg, "sba")) {
                Policy p;
                if (rudimentary) {
                    const std::size_t inner = cfg.sba_inner;
                    p = [budget, params, inner](const ChannelState& odd, Rng& rng) {
                        return rudimentary_policy_sba(odd, budget, params, inner, rng);
                    };
                } else {
                    p = constant_policy(pbar / (2.0 * params.var_g2), pbar / (2.0 * params.var_g1));
                }
                rows.push_back(make_row(cfg.snr_db[i], Scheme::Sba, ergodic_region(Scheme::Sba, p, params, cfg.samples, eseed),
                                        cfg.var_g[v], cfg.policy));
            }
            if (wanted(cfg, "esa")) {
                Policy p = rudimentary
                               ? Policy([budget](const ChannelState& s, Rng&) { return rudimentary_policy_esa(s, budget); })
                               : constant_policy(pbar, pbar);
                rows.push_back(make_row(cfg.snr_db[i], Scheme::Esa, ergodic_region(Scheme::Esa, p, params, cfg.samples, eseed),
                                        cfg.var_g[v], cfg.policy));
            }
            if (wanted(cfg, "gs_cj")) {
                const Searched s = searched_policy(cfg, DualScheme::GsCj, params, pbar,
                                                   point_seed(cfg.seed, kDualStream, v, i));
                FigureRow r = make_row(cfg.snr_db[i], Scheme::GsCj,
                                       ergodic_region(Scheme::GsCj, s.policy, params, cfg.samples, eseed),
                                       cfg.var_g[v], kGsCjBaselineTag);
                r.status = s.status;
                rows.push_back(r);
            }
        }
    }
    return rows;
}

std::vector<FigureRow> run_figure2(const ExperimentConfig& cfg)
{
    cfg.validate();
    check_scheme_filter(cfg, {"esa", "esa_cj", "gs_cj"});

    std::vector<FigureRow> rows;
    for (std::size_t v = 0; v < cfg.var_g.size(); ++v) {
        const FadingParams params = FadingParams::symmetric(cfg.var_h, cfg.var_g[v]);
        for (std::size_t i = 0; i < cfg.snr_db.size(); ++i) {
            const double pbar         = snr_db_to_budget(cfg.snr_db[i]);
            const std::uint64_t eseed = point_seed(cfg.seed, kEvalStream, v, i);
            const std::uint64_t dseed = point_seed(cfg.seed, kDualStream, v, i);

            if (wanted(cfg, "esa")) {
                rows.push_back(make_row(cfg.snr_db[i], Scheme::Esa,
                                        ergodic_region(Scheme::Esa, constant_policy(pbar, pbar), params, cfg.samples, eseed),
                                        cfg.var_g[v], "constant"));
            }
            for (const auto& [name, ds] : {std::pair{"esa", DualScheme::Esa}, std::pair{"esa_cj", DualScheme::EsaCj},
                                           std::pair{"gs_cj", DualScheme::GsCj}}) {
                if (!wanted(cfg, name)) {
                    continue;
                }
                const Searched s = searched_policy(cfg, ds, params, pbar, dseed);
                FigureRow r      = make_row(cfg.snr_db[i], rate_scheme(ds),
                                            ergodic_region(rate_scheme(ds), s.policy, params, cfg.samples, eseed),
                                            cfg.var_g[v], ds == DualScheme::GsCj ? kGsCjBaselineTag : "kkt-dual");
                r.status = s.status;
                rows.push_back(r);
            }
        }
    }
    return rows;
}

std::vector<DofRow> run_dof(const ExperimentConfig& cfg)
{
    cfg.validate();
    check_scheme_filter(cfg, {"sba", "esa", "gs_cj"});

    std::vector<DofRow> rows;
    for (std::size_t v = 0; v < cfg.var_g.size(); ++v) {
        const FadingParams params = FadingParams::symmetric(cfg.var_h, cfg.var_g[v]);
        BoundEstimate bound;
        if (wanted(cfg, "gs_cj")) {
            bound = gs_cj_upper_bound(params, cfg.samples, point_seed(cfg.seed, kBoundStream, v, 0));
        }
        for (Scheme scheme : {Scheme::Sba, Scheme::Esa, Scheme::GsCj}) {
            if (!wanted(cfg, std::string(scheme_name(scheme)))) {
                continue;
            }
            CurveOptions opts;
            opts.dual_samples    = cfg.dual_samples;
            opts.dual.tol        = cfg.dual_tol;
            opts.dual.max_sweeps = cfg.dual_max_sweeps;
            const SumRateCurve curve =
                sum_rate_curve(scheme, params, cfg.dof_powers, cfg.samples, point_seed(cfg.seed, kEvalStream, v, 0), opts);
            const double eta = estimate_dof(curve);
            for (const CurvePoint& p : curve.points) {
                DofRow r;
                r.scheme  = std::string(scheme_name(scheme));
                r.var_g   = cfg.var_g[v];
                r.power   = p.power;
                r.rsum    = p.rsum;
                r.std_err = p.std_err;
                r.n       = p.n;
                r.eta_hat = eta;
                r.status  = p.status;
                if (scheme == Scheme::GsCj) {
                    r.bound         = bound.mean;
                    r.bound_std_err = bound.std_err;
                }
                rows.push_back(r);
            }
        }
    }
    return rows;
}

void write_figure_csv(std::ostream& out, const std::vector<FigureRow>& rows)
{
    out << "snr_db,scheme,rsum_bits,stderr,n,var_g,policy,status\n";
    for (const FigureRow& r : rows) {
        out << fmt(r.snr_db) << ',' << r.scheme << ',' << fmt(r.rsum) << ',' << fmt(r.std_err) << ',' << r.n << ','
            << fmt(r.var_g) << ',' << csv_text(r.policy) << ',' << csv_text(r.status) << '\n';
    }
}

void write_dof_csv(std::ostream& out, const std::vector<DofRow>& rows)
{
    out << "scheme,var_g,power,rsum_bits,stderr,n,eta_hat,bound_bits,bound_stderr,status\n";
    for (const DofRow& r : rows) {
        out << r.scheme << ',' << fmt(r.var_g) << ',' << fmt(r.power) << ',' << fmt(r.rsum) << ',' << fmt(r.std_err)
            << ',' << r.n << ',' << fmt(r.eta_hat) << ',' << fmt(r.bound) << ',' << fmt(r.bound_std_err) << ','
            << csv_text(r.status) << '\n';
    }
}

}  // namespace fwt
