#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace semilab::cli {

/// Bad flags, unknown keys or values; maps to exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Model description; every field has a default so an empty file is valid.
struct ModelSpec {
    std::string kind = "entropic";  ///< entropic | control | perturbation
    std::string backend = "gauss_hermite";
    int nodes = 33;
    double theta = 1.0;
    std::string step = "drift";  ///< drift | wasserstein (perturbation models)

    double b_max = 2.0;
    double db = 0.05;
    std::string control_cost = "entropic";  ///< entropic | single
    double single_a = 1.0;
    double single_b = 0.0;
    double hjb_dt_factor = 1.0;
    std::string hjb_scheme = "automatic";

    double diffusion = 1.0;
    double contraction = 0.0;
    double shift = 0.0;

    std::string phi = "quadratic";  ///< quadratic | ball | zero_budget
    double phi_radius = 0.5;
    double phi_p = 2.0;
    double v_max = 2.0;
    double dv = 0.05;

    std::string probe = "bump";  ///< bump | ramp | tanh | wave | shifted_bump
    double probe_scale = 1.0;

    /// Sorted key=value text; input to the model hash.
    std::string canonical() const;
};

struct ExperimentConfig {
    std::string experiment;
    std::optional<std::filesystem::path> model_path;
    std::filesystem::path output_dir;
    std::optional<double> tolerance;
    std::uint64_t seed = 0;

    double span = 8.0;
    double dx = 0.02;
    double window = 2.0;

    double t = 0.5;
    int first = 1;
    int last = 8;
    double ceiling = 1e6;
    double convergence_tolerance = 1e-4;

    std::string oracle = "auto";  ///< auto | entropic | hjb | none
    double slope_min = 0.8;
    int h_first = 3;
    int h_last = 8;
    std::vector<double> chain_times{0.1, 0.25, 0.5};
    double chain_r = 1.0;
    double chain_tolerance = 1e-9;
    /// Pairs (mean, variance / t).
    std::vector<std::pair<double, double>> family{{0.0, 1.0}, {1.0, 1.0}, {0.0, 0.25}, {0.0, 0.5},
                                                  {0.0, 2.0}, {0.0, 4.0},  {0.5, 2.0}};
    int gamma_count = 20;
    std::vector<double> gamma_eps{0.5, 0.25, 0.1};

    ModelSpec model;

    /// The experiment's pass tolerance: configured value or the per-experiment default.
    double effective_tolerance() const;
    void validate() const;
};

const std::vector<std::string>& experiment_names();
double default_tolerance(const std::string& experiment);

ModelSpec load_model(const std::filesystem::path& path);
/// Relative model paths resolve against the config file's directory.
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace semilab::cli
