#ifndef LRGD_HARNESS_CONFIG_HPP
#define LRGD_HARNESS_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lrgd::harness {

/// File-facing experiment description. The sweep axes (alphas, k_values,
/// sigma_r_values, both modes) expand into independent runs; everything else
/// is shared. Serialized as flat `key = value` lines, arrays comma-separated.
struct ExperimentConfig {
    std::string name;
    std::string mode = "asymmetric";  // symmetric | asymmetric | accel
    bool compare_modes = false;       // run symmetric and asymmetric side by side

    std::size_t n = 50;
    std::size_t r = 2;
    std::vector<std::size_t> k_values{4};
    std::size_t m = 0;  // 0 = identity operator

    double eta = 0.1;
    std::vector<double> alphas{0.5};
    double ratio = 1.0 / 3.0;

    std::vector<double> singulars;        // explicit sigma_1..sigma_r; empty = all ones
    std::vector<double> sigma_r_values;   // sweep: singulars = [1, ..., 1, sigma_r]

    long t_max = 1000;
    long log_stride = 1;
    std::uint64_t seed = 1;
    std::optional<double> stop_loss;

    // accel
    std::optional<double> gamma;
    std::optional<long> t_fire;
    double beta = 0.0;  // 0 = 0.5 * sigma_r

    // rate-fit overrides (default window: last 50% of positive samples)
    std::string fit_field = "loss_fro2";
    std::string fit_kind = "linear";  // linear | power
    std::optional<long> fit_t_start, fit_t_end;
};

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);
std::string serialize_config(const ExperimentConfig& cfg);

/// Validates field combinations against module preconditions; throws
/// std::invalid_argument naming the offending field.
void validate_config(const ExperimentConfig& cfg);

/// One fully resolved run of the sweep.
struct ResolvedRun {
    std::string label;  // e.g. "k4-a0.5"
    std::string mode;   // symmetric | asymmetric | accel
    std::size_t k = 0;
    double alpha = 0.0;
    std::vector<double> singulars;
    std::uint64_t init_seed = 0;  // base seed + run index
};

std::vector<ResolvedRun> expand_runs(const ExperimentConfig& cfg);

}  // namespace lrgd::harness

#endif
