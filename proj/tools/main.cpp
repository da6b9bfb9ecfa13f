#include <exception>
#include <iostream>
#include <stdexcept>

#include <CLI11.hpp>

#include "config.hpp"
#include "experiments.hpp"

int main(int argc, char** argv) {
    using namespace semilab::cli;
    CLI::App app{"semilab experiment runner"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);

    std::string config_path, out_dir;
    double tolerance = 0.0;
    bool quiet = false;
    for (const auto& name : experiment_names()) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "experiment config (INI)")->check(CLI::ExistingFile);
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--tolerance", tolerance, "override the pass tolerance")->check(CLI::PositiveNumber);
        sub->add_flag("--quiet", quiet, "suppress per-check output");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        const auto* sub = app.get_subcommands().front();
        ExperimentConfig c = config_path.empty() ? ExperimentConfig{} : load_config(config_path);
        if (!c.experiment.empty() && c.experiment != sub->get_name()) {
            throw UsageError("config names experiment '" + c.experiment + "' but '" + sub->get_name() + "' was requested");
        }
        c.experiment = sub->get_name();
        if (!out_dir.empty()) c.output_dir = out_dir;
        if (sub->count("--tolerance")) c.tolerance = tolerance;
        return run(c, quiet, std::cout);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
