// Command-line front end: simulate | features | similarity | classify | report,
// each driven by a JSON config and an output directory. Exit code 0 on
// success; failures print a machine-readable JSON object on stderr.

#include <CLI11.hpp>
#include <cstdio>
#include <exception>
#include <nlohmann/json.hpp>
#include <string>

#include "swarmsim/dataset.hpp"
#include "swarmsim/experiments.hpp"
#include "swarmsim/kernels.hpp"

using namespace swarmsim;

namespace {

ExperimentConfig load_config(const std::string& config_path) {
    if (config_path.empty()) {
        ExperimentConfig cfg;
        cfg.validate();
        return cfg;
    }
    return ExperimentConfig::load(config_path);
}

int fail(const char* type, const std::string& message) {
    nlohmann::json err = {{"error", message}, {"type", type}};
    std::fprintf(stderr, "%s\n", err.dump().c_str());
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"deterministic swarm behaviour simulator and analysis toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;

    auto add_common = [&](CLI::App* cmd, bool config_needed = true) {
        if (config_needed) {
            cmd->add_option("--config", config_path, "experiment config JSON (defaults if omitted)");
        }
        cmd->add_option("--out", out_dir, "artifact output directory")->required();
    };

    auto* simulate_cmd =
        app.add_subcommand("simulate", "generate the trajectory dataset for the grid");
    add_common(simulate_cmd);
    auto* features_cmd =
        app.add_subcommand("features", "extract and cache all feature sets for the grid");
    add_common(features_cmd);
    auto* similarity_cmd =
        app.add_subcommand("similarity", "score all behaviour pairs under every measure");
    add_common(similarity_cmd);
    auto* classify_cmd =
        app.add_subcommand("classify", "train and evaluate the SOM classifiers");
    add_common(classify_cmd);
    auto* report_cmd =
        app.add_subcommand("report", "consolidate artifacts into summary.json / summary.txt");
    add_common(report_cmd, /*config_needed=*/false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate_cmd->parsed()) {
            const auto config = load_config(config_path);
            const auto report = generate_dataset(config, out_dir);
            std::printf("simulate: %d generated, %d skipped (kernel backend: %s)\n",
                        report.generated, report.skipped, kernels::name(kernels::active()));
            if (!report.failures.empty()) {
                std::string joined;
                for (const auto& f : report.failures) joined += f + "; ";
                return fail("io", std::to_string(report.failures.size()) +
                                      " run(s) failed: " + joined);
            }
        } else if (features_cmd->parsed()) {
            run_features(load_config(config_path), out_dir);
            std::printf("features: cache complete under %s/features\n", out_dir.c_str());
        } else if (similarity_cmd->parsed()) {
            run_similarity(load_config(config_path), out_dir);
            std::printf("similarity: reports written under %s/reports/similarity\n",
                        out_dir.c_str());
        } else if (classify_cmd->parsed()) {
            run_classification(load_config(config_path), out_dir);
            std::printf("classify: accuracy table at %s/reports/classification.csv\n",
                        out_dir.c_str());
        } else if (report_cmd->parsed()) {
            write_summary(out_dir);
            std::printf("report: %s/summary.json and summary.txt written\n", out_dir.c_str());
        }
    } catch (const ConfigError& e) {
        return fail("config", e.what());
    } catch (const DataError& e) {
        return fail("data", e.what());
    } catch (const std::exception& e) {
        return fail("internal", e.what());
    }
    return 0;
}
