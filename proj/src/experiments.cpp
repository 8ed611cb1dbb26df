#include "swarmsim/experiments.hpp"

#include <algorithm>
#include <map>
#include <nlohmann/json.hpp>
#include <set>

#include "swarmsim/dataset.hpp"
#include "swarmsim/feature_io.hpp"
#include "swarmsim/io_util.hpp"
#include "swarmsim/parallel.hpp"
#include "swarmsim/similarity.hpp"
#include "swarmsim/som_io.hpp"

namespace swarmsim {

namespace {

using nlohmann::json;

struct RunRef {
    Setting setting;
    Behaviour behaviour;
    int replicate;
};

std::vector<RunRef> grid(const ExperimentConfig& config) {
    std::vector<RunRef> runs;
    for (Setting s : config.settings) {
        for (Behaviour b : config.behaviours) {
            for (int r = 0; r < config.replicates; ++r) runs.push_back({s, b, r});
        }
    }
    return runs;
}

}  // namespace

std::filesystem::path similarity_report_path(const std::filesystem::path& out_root, Setting s,
                                             FeatureSet fs, Measure m) {
    return similarity_report_dir(out_root) /
           (std::string(to_string(s)) + "_" + to_string(fs) + "_" + to_string(m) + ".csv");
}

void run_features(const ExperimentConfig& config, const std::filesystem::path& out_root) {
    config.validate();
    verify_dataset_complete(config, out_root);
    const auto runs = grid(config);
    // One work unit per run: reads the trajectory once and fills all caches.
    parallel_for(runs.size(), [&](std::size_t i) {
        const RunRef& run = runs[i];
        for (FeatureSet fs : kAllFeatureSets) {
            load_or_extract(feature_root(out_root), data_root(out_root), fs, run.setting,
                            run.behaviour, run.replicate, config.features);
        }
    });
    persist_config(config, out_root);
}

void run_similarity(const ExperimentConfig& config, const std::filesystem::path& out_root) {
    config.validate();
    verify_dataset_complete(config, out_root);
    persist_config(config, out_root);
    const int R = config.replicates;

    for (Setting setting : config.settings) {
        for (FeatureSet fs : kAllFeatureSets) {
            // All series of this (setting, feature set), behaviour-major.
            std::vector<FeatureSeries> series(config.behaviours.size() * R);
            std::vector<std::pair<std::size_t, RunRef>> jobs;
            for (std::size_t bi = 0; bi < config.behaviours.size(); ++bi) {
                for (int r = 0; r < R; ++r) {
                    jobs.push_back({bi * R + r, {setting, config.behaviours[bi], r}});
                }
            }
            parallel_for(jobs.size(), [&](std::size_t i) {
                const auto& [slot, run] = jobs[i];
                series[slot] = load_or_extract(feature_root(out_root), data_root(out_root), fs,
                                               run.setting, run.behaviour, run.replicate,
                                               config.features);
            });

            auto behaviour_index = [&](Behaviour b) {
                for (std::size_t i = 0; i < config.behaviours.size(); ++i) {
                    if (config.behaviours[i] == b) return i;
                }
                throw DataError(std::string("behaviour not in grid: ") + to_string(b));
            };
            auto lookup = [&](Behaviour b, int r) -> const FeatureSeries& {
                return series[behaviour_index(b) * R + r];
            };

            for (Measure m : kAllMeasures) {
                const auto scores =
                    pairwise_matrix(lookup, config.behaviours, R, m, config.measures);
                std::string csv = "setting,feature_set,measure,behaviour_a,behaviour_b,mean,std,n\n";
                for (const auto& ps : scores) {
                    csv += to_string(setting);
                    csv += ',';
                    csv += to_string(fs);
                    csv += ',';
                    csv += to_string(m);
                    csv += ',';
                    csv += to_string(ps.behaviour_a);
                    csv += ',';
                    csv += to_string(ps.behaviour_b);
                    csv += ',';
                    append_double(csv, ps.mean);
                    csv += ',';
                    append_double(csv, ps.stddev);
                    csv += ',';
                    csv += std::to_string(ps.n_replicates);
                    csv += '\n';
                }
                write_file(similarity_report_path(out_root, setting, fs, m), csv);
            }
        }
    }
}

std::vector<bool> trajectory_split_mask(const ExperimentConfig& config, Setting setting,
                                        Behaviour behaviour) {
    // One shuffle stream per (setting, behaviour) cell keeps the split stable
    // under reordering or subsetting of the grid.
    Rng stream(mix_seed({config.base_seed, fnv1a64("train-test-split"),
                         static_cast<std::uint64_t>(static_cast<int>(setting)),
                         static_cast<std::uint64_t>(static_cast<int>(behaviour))}));
    const int R = config.replicates;
    std::vector<int> order(R);
    for (int i = 0; i < R; ++i) order[i] = i;
    for (int i = R - 1; i > 0; --i) {
        std::swap(order[i], order[stream.bounded(static_cast<std::uint64_t>(i + 1))]);
    }
    int n_train = static_cast<int>(std::lround(config.classifier.split * R));
    n_train = std::clamp(n_train, 1, std::max(1, R - 1));
    std::vector<bool> mask(R, false);
    for (int i = 0; i < n_train; ++i) mask[order[i]] = true;
    return mask;
}

void run_classification(const ExperimentConfig& config, const std::filesystem::path& out_root) {
    config.validate();
    verify_dataset_complete(config, out_root);
    persist_config(config, out_root);
    const auto runs = grid(config);

    // Split masks per (setting, behaviour), replicate-indexed.
    std::map<std::pair<int, int>, std::vector<bool>> split;
    for (Setting s : config.settings) {
        for (Behaviour b : config.behaviours) {
            split[{static_cast<int>(s), static_cast<int>(b)}] =
                trajectory_split_mask(config, s, b);
        }
    }

    std::string csv = "feature_set,metric,mean,std";
    for (int m = 0; m < config.classifier.models; ++m) {
        csv += ",model_" + std::to_string(m);
    }
    csv += '\n';

    for (FeatureSet fs : kAllFeatureSets) {
        std::vector<SampleSet> per_run(runs.size());
        parallel_for(runs.size(), [&](std::size_t i) {
            const RunRef& run = runs[i];
            const auto series =
                load_or_extract(feature_root(out_root), data_root(out_root), fs, run.setting,
                                run.behaviour, run.replicate, config.features);
            per_run[i] = build_samples(series, config.classifier.sample_window);
        });
        SampleSet all;
        for (const auto& part : per_run) all.append(part);
        per_run.clear();
        per_run.shrink_to_fit();

        auto [train_set, test_set] = all.partition([&](const SampleProvenance& p) {
            return split.at({static_cast<int>(p.setting), static_cast<int>(p.behaviour)})
                .at(static_cast<std::size_t>(p.replicate));
        });
        all = SampleSet{};

        std::vector<SomModel> models(config.classifier.models);
        parallel_for(models.size(), [&](std::size_t m) {
            const std::uint64_t seed =
                mix_seed({config.base_seed, fnv1a64("som-model"),
                          static_cast<std::uint64_t>(static_cast<int>(fs)),
                          static_cast<std::uint64_t>(m)});
            models[m] = init_som(config.classifier.som, train_set, seed);
            train(models[m], train_set);
            label_nodes(models[m], train_set);
            write_som_model(model_dir(out_root, fs, static_cast<int>(m)), models[m],
                            to_string(fs));
        });

        const auto report = evaluate(models, train_set, test_set);
        auto emit = [&](const char* metric, double mean, double stddev, auto accessor) {
            csv += to_string(fs);
            csv += ',';
            csv += metric;
            csv += ',';
            append_double(csv, mean);
            csv += ',';
            append_double(csv, stddev);
            for (const auto& ms : report.per_model) {
                csv += ',';
                append_double(csv, accessor(ms));
            }
            csv += '\n';
        };
        emit("train_accuracy", report.train_mean, report.train_std,
             [](const ModelScore& ms) { return ms.train_accuracy; });
        emit("test_accuracy", report.test_mean, report.test_std,
             [](const ModelScore& ms) { return ms.test_accuracy; });
    }
    write_file(classification_report_path(out_root), csv);
}

void write_summary(const std::filesystem::path& out_root) {
    if (!std::filesystem::exists(out_root)) {
        throw DataError("artifacts directory does not exist: " + out_root.string());
    }

    ExperimentConfig config;
    bool have_config = false;
    if (std::filesystem::exists(out_root / "config.json")) {
        config = ExperimentConfig::load(out_root / "config.json");
        have_config = true;
    }

    json summary;
    summary["tool_version"] = kToolVersion;
    summary["config_present"] = have_config;
    if (have_config) summary["config_hash"] = config.hash();
    std::vector<std::string> missing;
    std::vector<std::string> invalid;
    std::vector<std::string> report_files;

    const std::size_t expected_pairs =
        config.behaviours.size() * (config.behaviours.size() - 1) / 2;

    json similarity = json::object();
    for (Setting s : config.settings) {
        for (FeatureSet fs : kAllFeatureSets) {
            for (Measure m : kAllMeasures) {
                const auto path = similarity_report_path(out_root, s, fs, m);
                const std::string key = std::string(to_string(s)) + "/" + to_string(fs) + "/" +
                                        to_string(m);
                if (!std::filesystem::exists(path)) {
                    missing.push_back("similarity:" + key);
                    continue;
                }
                const std::string content = read_file(path);
                const auto lines = split(content, '\n');
                json pairs = json::array();
                for (std::size_t i = 1; i < lines.size(); ++i) {
                    if (lines[i].empty()) continue;
                    const auto f = split(lines[i], ',');
                    if (f.size() != 8) continue;
                    pairs.push_back(json{{"behaviour_a", std::string(f[3])},
                                         {"behaviour_b", std::string(f[4])},
                                         {"mean", parse_double(f[5])},
                                         {"std", parse_double(f[6])},
                                         {"n", parse_long(f[7])}});
                }
                // A similarity matrix with missing pairs is not presented.
                if (pairs.size() != expected_pairs) {
                    invalid.push_back("similarity:" + key);
                    continue;
                }
                similarity[key] = pairs;
                report_files.push_back(std::filesystem::relative(path, out_root).generic_string());
            }
        }
    }
    summary["similarity"] = similarity;

    json classification = json::object();
    const auto cls_path = classification_report_path(out_root);
    if (std::filesystem::exists(cls_path)) {
        const std::string content = read_file(cls_path);
        const auto lines = split(content, '\n');
        for (std::size_t i = 1; i < lines.size(); ++i) {
            if (lines[i].empty()) continue;
            const auto f = split(lines[i], ',');
            if (f.size() < 4) continue;
            classification[std::string(f[0])][std::string(f[1])] = {
                {"mean", parse_double(f[2])}, {"std", parse_double(f[3])}};
        }
        report_files.push_back(
            std::filesystem::relative(cls_path, out_root).generic_string());
    } else {
        missing.push_back("classification");
    }
    summary["classification"] = classification;

    const auto mpath = manifest_path(out_root);
    if (std::filesystem::exists(mpath)) {
        const json manifest = json::parse(read_file(mpath));
        summary["dataset"] = {{"runs", manifest.value("runs", 0)},
                              {"files", manifest.at("files").size()}};
    } else {
        missing.push_back("dataset");
    }

    if (report_files.empty() && !std::filesystem::exists(mpath)) {
        throw DataError("no artifacts found under " + out_root.string());
    }

    std::sort(report_files.begin(), report_files.end());
    summary["reports"] = report_files;
    summary["missing"] = missing;
    summary["invalid"] = invalid;
    write_file(out_root / "summary.json", summary.dump(2) + "\n");

    // Human-readable companion.
    std::string text = "swarmsim summary\n================\n";
    text += "reports: " + std::to_string(report_files.size()) + "\n";
    text += "missing sections: " + std::to_string(missing.size());
    for (const auto& m : missing) text += " " + m;
    text += "\ninvalid sections: " + std::to_string(invalid.size());
    for (const auto& m : invalid) text += " " + m;
    text += "\n";
    if (!classification.empty()) {
        text += "\nclassification accuracy (mean +/- std over models)\n";
        for (const auto& [fs, metrics] : classification.items()) {
            for (const auto& [metric, stats] : metrics.items()) {
                text += "  " + fs + " " + metric + ": " +
                        format_double(stats.at("mean").get<double>()) + " +/- " +
                        format_double(stats.at("std").get<double>()) + "\n";
            }
        }
    }
    if (!similarity.empty()) {
        text += "\nsimilarity matrices: " + std::to_string(similarity.size()) + " complete\n";
    }
    write_file(out_root / "summary.txt", text);
}

}  // namespace swarmsim
