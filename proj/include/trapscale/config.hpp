#ifndef TRAPSCALE_CONFIG_HPP
#define TRAPSCALE_CONFIG_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace trapscale::cli {

struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Regime { slow, critical, fast };

// slow: beta < alpha/(alpha+1) with mu > 0; critical: beta = alpha/(alpha+1)
// with mu > 0; fast: beta above critical or mu = 0.
Regime classify_regime(double alpha, double beta, double mu);
const char* regime_name(Regime r);

struct ExperimentConfig {
    double alpha = 0.5;
    double beta = 0.2;
    double mu = 1.0;
    std::vector<long long> big_n = {10000};
    std::vector<double> t = {1.0};
    std::vector<double> v_grid = {0.5, 1.0, 2.0};
    std::size_t reps = 1000;
    std::uint64_t seed = 0;
    std::uint64_t step_budget = 1000000000ULL;
    double fin_window = 20.0;
    double fin_cutoff = 1e-3;
    int workers = 0; // 0 = auto (TRAPSCALE_WORKERS / hardware)
    std::string out;
};

// Flat key=value document; '#' starts a comment, blank lines ignored.
// Unknown keys are rejected by name.
ExperimentConfig parse_config_file(const std::string& path);

// Applies one key=value pair; used by both the file parser and flag overrides.
void apply_key_value(ExperimentConfig& config, const std::string& key,
                     const std::string& value);

// Checks every field invariant; error messages name the field and the
// violated constraint.
void validate(const ExperimentConfig& config);

std::vector<double> parse_double_list(const std::string& text);
std::vector<long long> parse_int_list(const std::string& text);

} // namespace trapscale::cli

#endif
