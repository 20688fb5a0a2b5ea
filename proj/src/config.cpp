#include "fwt/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fwt {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& text)
{
    const std::string t = trim(text);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v)) {
        throw std::invalid_argument("not a number: '" + t + "'");
    }
    return v;
}

template <class T>
T parse_unsigned(const std::string& text)
{
    const std::string t = trim(text);
    T v{};
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
        throw std::invalid_argument("not a nonnegative integer: '" + t + "'");
    }
    return v;
}

std::vector<std::string> split(const std::string& text, char sep)
{
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep)) {
        out.push_back(trim(item));
    }
    return out;
}

}  // namespace

std::vector<double> parse_double_list(const std::string& text)
{
    std::vector<double> out;
    for (const std::string& item : split(text, ',')) {
        out.push_back(parse_double(item));
    }
    return out;
}

std::vector<std::string> parse_name_list(const std::string& text)
{
    std::vector<std::string> out;
    for (const std::string& item : split(text, ',')) {
        if (item.empty()) {
            throw std::invalid_argument("empty name in list '" + text + "'");
        }
        out.push_back(item);
    }
    return out;
}

void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value)
{
    if (key == "schemes") {
        cfg.schemes = parse_name_list(value);
    } else if (key == "var_h") {
        cfg.var_h = parse_double(value);
    } else if (key == "var_g") {
        cfg.var_g = parse_double_list(value);
    } else if (key == "snr_db") {
        cfg.snr_db = parse_double_list(value);
    } else if (key == "dof_powers") {
        cfg.dof_powers = parse_double_list(value);
    } else if (key == "samples") {
        cfg.samples = parse_unsigned<std::size_t>(value);
    } else if (key == "sba_inner_samples") {
        cfg.sba_inner = parse_unsigned<std::size_t>(value);
    } else if (key == "dual_samples") {
        cfg.dual_samples = parse_unsigned<std::size_t>(value);
    } else if (key == "dual_tol") {
        cfg.dual_tol = parse_double(value);
    } else if (key == "dual_max_sweeps") {
        cfg.dual_max_sweeps = parse_unsigned<int>(value);
    } else if (key == "seed") {
        cfg.seed = parse_unsigned<std::uint64_t>(value);
    } else if (key == "policy") {
        cfg.policy = trim(value);
    } else if (key == "out") {
        cfg.out = trim(value);
    } else {
        throw std::invalid_argument("unknown key '" + key + "'");
    }
}

void apply_config_text(ExperimentConfig& cfg, const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
        }
        try {
            apply_setting(cfg, trim(line.substr(0, eq)), line.substr(eq + 1));
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": " + e.what());
        }
    }
}

void apply_config_file(ExperimentConfig& cfg, const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open config file '" + path + "'");
    }
    std::ostringstream text;
    text << in.rdbuf();
    apply_config_text(cfg, text.str());
}

void ExperimentConfig::validate() const
{
    if (!(var_h > 0.0)) {
        throw std::invalid_argument("var_h must be > 0");
    }
    if (var_g.empty()) {
        throw std::invalid_argument("var_g list is empty");
    }
    for (double v : var_g) {
        if (!(v > 0.0)) {
            throw std::invalid_argument("var_g entries must be > 0");
        }
    }
    if (snr_db.empty()) {
        throw std::invalid_argument("snr_db grid is empty");
    }
    if (dof_powers.size() < 3) {
        throw std::invalid_argument("dof_powers needs at least 3 points");
    }
    for (std::size_t i = 0; i < dof_powers.size(); ++i) {
        if (!(dof_powers[i] > 0.0) || (i > 0 && !(dof_powers[i] > dof_powers[i - 1]))) {
            throw std::invalid_argument("dof_powers must be positive and strictly increasing");
        }
    }
    if (samples < 2) {
        throw std::invalid_argument("samples must be >= 2");
    }
    if (sba_inner < 1) {
        throw std::invalid_argument("sba_inner_samples must be >= 1");
    }
    if (dual_samples < 1) {
        throw std::invalid_argument("dual_samples must be >= 1");
    }
    if (!(dual_tol > 0.0)) {
        throw std::invalid_argument("dual_tol must be > 0");
    }
    if (dual_max_sweeps < 1) {
        throw std::invalid_argument("dual_max_sweeps must be >= 1");
    }
    if (policy != "rudimentary" && policy != "constant") {
        throw std::invalid_argument("policy must be 'rudimentary' or 'constant'");
    }
}

}  // namespace fwt
