// Command-line runner for the fading MAC wiretap experiments.
//
//   fwt figure1 [--config PATH] [--seed U64] [--samples N] [--out PATH]
//               [--snr-db LIST] [--scheme LIST]
//   fwt figure2 ...            (same flags)
//   fwt dof ...                (same flags; --snr-db is ignored)
//   fwt query LITERAL --scheme NAME (--powers LIST | --duals LIST)
//
// Settings come from built-in defaults, then the config file, then flags.
// FWT_WORKERS sets the worker thread count.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "fwt/config.hpp"
#include "fwt/experiments.hpp"
#include "fwt/query.hpp"

namespace {

struct RunFlags {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> samples;
    std::optional<std::string> out;
    std::optional<std::string> snr_db;
    std::optional<std::string> schemes;
};

void add_run_flags(CLI::App* cmd, RunFlags& f)
{
    cmd->add_option("--config", f.config, "key = value config file");
    cmd->add_option("--seed", f.seed, "master seed");
    cmd->add_option("--samples", f.samples, "Monte Carlo samples per point");
    cmd->add_option("--out", f.out, "output CSV path (default: stdout)");
    cmd->add_option("--snr-db", f.snr_db, "comma-separated SNR grid in dB");
    cmd->add_option("--scheme", f.schemes, "comma-separated scheme filter");
}

fwt::ExperimentConfig build_config(const RunFlags& f)
{
    fwt::ExperimentConfig cfg;
    if (!f.config.empty()) {
        fwt::apply_config_file(cfg, f.config);
    }
    if (f.seed) cfg.seed = *f.seed;
    if (f.samples) cfg.samples = *f.samples;
    if (f.out) cfg.out = *f.out;
    if (f.snr_db) cfg.snr_db = fwt::parse_double_list(*f.snr_db);
    if (f.schemes) cfg.schemes = fwt::parse_name_list(*f.schemes);
    cfg.validate();
    return cfg;
}

// Writes only once the whole output exists.
void emit(const fwt::ExperimentConfig& cfg, const std::string& text)
{
    if (cfg.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(cfg.out, std::ios::binary);
    if (!file) {
        throw std::runtime_error("cannot open '" + cfg.out + "' for writing");
    }
    file << text;
    if (!file) {
        throw std::runtime_error("write to '" + cfg.out + "' failed");
    }
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Ergodic secrecy rates for the two-user fading MAC wiretap channel"};
    app.require_subcommand(1);

    RunFlags fig1, fig2, dof;
    add_run_flags(app.add_subcommand("figure1", "SBA, ESA and GS/CJ sum rates versus SNR"), fig1);
    add_run_flags(app.add_subcommand("figure2", "ESA and ESA/CJ with power control versus SNR"), fig2);
    add_run_flags(app.add_subcommand("dof", "sum-rate slope against log2 P"), dof);

    fwt::QueryInput q;
    std::string powers, duals;
    auto* query = app.add_subcommand("query", "rates, policy branch and KKT residuals at one state");
    query->add_option("literal", q.literal, "state(h1,h2,g1,g2), state(..); state(..), or eff(h1,h2,g1,g2)")
        ->required();
    query->add_option("--scheme", q.scheme, "gs_cj | sba | esa | esa_cj")->required();
    auto* popt = query->add_option("--powers", powers, "p1,p2 or p1,p2,q1,q2");
    auto* dopt = query->add_option("--duals", duals, "lambda1,lambda2");
    popt->excludes(dopt);

    CLI11_PARSE(app, argc, argv);

    try {
        std::ostringstream out;
        if (app.got_subcommand("query")) {
            if (popt->count()) q.powers = powers;
            if (dopt->count()) q.duals = duals;
            std::cout << fwt::run_query(q);
            return 0;
        }
        if (app.got_subcommand("figure1")) {
            const auto cfg = build_config(fig1);
            fwt::write_figure_csv(out, fwt::run_figure1(cfg));
            emit(cfg, out.str());
        } else if (app.got_subcommand("figure2")) {
            const auto cfg = build_config(fig2);
            fwt::write_figure_csv(out, fwt::run_figure2(cfg));
            emit(cfg, out.str());
        } else {
            const auto cfg = build_config(dof);
            fwt::write_dof_csv(out, fwt::run_dof(cfg));
            emit(cfg, out.str());
        }
    } catch (const std::exception& e) {
        std::cerr << "fwt: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
