#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "fwt/config.hpp"

namespace fwt {

struct FigureRow {
    double snr_db = 0.0;
    std::string scheme;
    double rsum    = 0.0;  // bits, raw Monte Carlo mean
    double std_err = 0.0;
    std::size_t n  = 0;
    double var_g   = 0.0;
    std::string policy;
    std::string status = "ok";
};

/// Average SNR in dB to the symmetric per-user budget: the SNR is
/// (pbar1 + pbar2) / 2, so pbar1 = pbar2 = 10^(dB / 10).
double snr_db_to_budget(double snr_db);

/// SBA and ESA (rudimentary or constant policy, per cfg.policy) and the
/// GS/CJ baseline, for every var_g and SNR point. All schemes at one point
/// share an evaluation seed; multiplier searches use independent seeds.
std::vector<FigureRow> run_figure1(const ExperimentConfig& cfg);

/// ESA with constant power, ESA and ESA/CJ with multiplier-searched power
/// control, and the GS/CJ baseline. A failed multiplier search is recorded
/// in the row status and the run continues with the multipliers reached.
std::vector<FigureRow> run_figure2(const ExperimentConfig& cfg);

struct DofRow {
    std::string scheme;
    double var_g   = 0.0;
    double power   = 0.0;
    double rsum    = 0.0;
    double std_err = 0.0;
    std::size_t n  = 0;
    double eta_hat = 0.0;  // slope over the top four points of the curve
    double bound = 0.0, bound_std_err = 0.0;  // GS/CJ upper bound, 0 otherwise
    std::string status = "ok";
};

/// Sum-rate curves over cfg.dof_powers for every var_g entry. The GS/CJ rows
/// also carry the upper-bound estimate.
std::vector<DofRow> run_dof(const ExperimentConfig& cfg);

/// CSV with a header row, `\n` line endings and 12 significant digits.
void write_figure_csv(std::ostream& out, const std::vector<FigureRow>& rows);
void write_dof_csv(std::ostream& out, const std::vector<DofRow>& rows);

}  // namespace fwt
