#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fwt {

/// Settings shared by the experiment runners. Precedence: built-in
/// defaults, then the config file, then command-line flags.
struct ExperimentConfig {
    std::vector<std::string> schemes;  // empty: every scheme of the experiment
    double var_h = 1.0;
    std::vector<double> var_g{0.75, 1.5};
    std::vector<double> snr_db{0.0, 10.0, 20.0, 30.0, 40.0, 50.0, 60.0};
    std::vector<double> dof_powers{1e3, 1e4, 1e5, 1e6};
    std::size_t samples      = 20000;
    std::size_t sba_inner    = 1000;
    std::size_t dual_samples = 10000;
    double dual_tol          = 1e-3;
    int dual_max_sweeps      = 50;
    std::uint64_t seed       = 1;
    std::string policy       = "rudimentary";  // figure1 alignment rows: rudimentary | constant
    std::string out;                           // empty: standard output

    /// Throws std::invalid_argument describing the first problem found.
    void validate() const;
};

/// Applies one `key = value` setting. Lists are comma separated. Throws
/// std::invalid_argument for unknown keys or malformed values.
void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value);

/// Parses config text: one `key = value` per line, `#` starts a comment,
/// blank lines ignored. Errors name the line.
void apply_config_text(ExperimentConfig& cfg, const std::string& text);
void apply_config_file(ExperimentConfig& cfg, const std::string& path);

std::vector<double> parse_double_list(const std::string& text);
std::vector<std::string> parse_name_list(const std::string& text);

}  // namespace fwt
