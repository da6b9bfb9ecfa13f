#pragma once

#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "config.hpp"
#include "semilab/generator.hpp"
#include "semilab/io.hpp"
#include "semilab/operators.hpp"

namespace semilab::cli {

inline constexpr const char* kToolVersion = "0.1.0";

struct Check {
    std::string name;
    bool passed = false;
    double value = 0.0;
    double limit = 0.0;
};

struct Outcome {
    Json report;
    /// File name under tables/ -> CSV text.
    std::map<std::string, std::string> tables;
    std::vector<Check> checks;

    bool passed() const;
};

/// Lowercase hex SHA-256.
std::string sha256_hex(const std::string& data);

/// Probe named by the model file, scaled.
GridFunction model_probe(const ModelSpec& m, const GridPtr& grid);
/// Five named C_b^2 probes and the square-root probe sqrt(min(|x|, 4)).
std::vector<std::pair<std::string, GridFunction>> smooth_probe_catalog(const GridPtr& grid);
GridFunction root_probe(const GridPtr& grid);

Backend model_backend(const ModelSpec& m);
ControlCost model_controls(const ModelSpec& m);
ReferenceModel model_reference(const ModelSpec& m);
PhiCost model_phi(const ModelSpec& m);
/// One-step family of the model: entropic, control or perturbation (drift or wasserstein).
StepOperator model_step(const ModelSpec& m);

Outcome chernoff_run_experiment(const ExperimentConfig& c);
Outcome gen_check(const ExperimentConfig& c);
Outcome hjb_compare(const ExperimentConfig& c);
Outcome wasserstein_compare(const ExperimentConfig& c);
Outcome talagrand(const ExperimentConfig& c);
Outcome gamma_demo(const ExperimentConfig& c);

Outcome run_experiment(const ExperimentConfig& c);

/// Runs the experiment and writes report.json, tables/*.csv and MANIFEST.json.
/// Returns 0 when every check passes, 1 otherwise; throws UsageError on a model hash
/// mismatch with an existing MANIFEST.json in the output directory.
int run(const ExperimentConfig& c, bool quiet, std::ostream& log);

}  // namespace semilab::cli
