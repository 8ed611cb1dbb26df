#include "swarmsim/dataset.hpp"

#include <map>
#include <nlohmann/json.hpp>

#include "swarmsim/io_util.hpp"
#include "swarmsim/parallel.hpp"
#include "swarmsim/trajectory_io.hpp"

namespace swarmsim {

namespace {

struct RunKey {
    Setting setting;
    Behaviour behaviour;
    int replicate;
};

std::vector<RunKey> grid_runs(const ExperimentConfig& config) {
    std::vector<RunKey> runs;
    runs.reserve(config.settings.size() * config.behaviours.size() * config.replicates);
    for (Setting s : config.settings) {
        for (Behaviour b : config.behaviours) {
            for (int r = 0; r < config.replicates; ++r) runs.push_back({s, b, r});
        }
    }
    return runs;
}

std::string relative_to(const std::filesystem::path& path, const std::filesystem::path& root) {
    return std::filesystem::relative(path, root).generic_string();
}

std::map<std::string, std::string> load_manifest_files(const std::filesystem::path& out_root) {
    std::map<std::string, std::string> files;
    const auto path = manifest_path(out_root);
    if (!std::filesystem::exists(path)) return files;
    try {
        nlohmann::json j = nlohmann::json::parse(read_file(path));
        for (const auto& [rel, checksum] : j.at("files").items()) {
            files[rel] = checksum.get<std::string>();
        }
    } catch (...) {
        // Unreadable manifest: regenerate everything it would have covered.
    }
    return files;
}

}  // namespace

void persist_config(const ExperimentConfig& config, const std::filesystem::path& out_root) {
    write_file(out_root / "config.json", config.to_json().dump(2) + "\n");
}

DatasetReport generate_dataset(const ExperimentConfig& config,
                               const std::filesystem::path& out_root) {
    config.validate();
    const auto root = data_root(out_root);
    std::filesystem::create_directories(root);
    const auto previous = load_manifest_files(out_root);
    const auto runs = grid_runs(config);

    struct Slot {
        std::string csv_rel, csv_sum, meta_rel, meta_sum;
        bool skipped = false;
        std::string failure;
    };
    std::vector<Slot> slots(runs.size());

    parallel_for(runs.size(), [&](std::size_t i) {
        const RunKey& key = runs[i];
        Slot& slot = slots[i];
        const auto csv = trajectory_csv_path(root, key.setting, key.behaviour, key.replicate);
        const auto meta = trajectory_meta_path(root, key.setting, key.behaviour, key.replicate);
        slot.csv_rel = relative_to(csv, root);
        slot.meta_rel = relative_to(meta, root);
        try {
            if (std::filesystem::exists(csv) && std::filesystem::exists(meta)) {
                auto prev_csv = previous.find(slot.csv_rel);
                auto prev_meta = previous.find(slot.meta_rel);
                if (prev_csv != previous.end() && prev_meta != previous.end()) {
                    const auto csv_sum = file_checksum(csv);
                    const auto meta_sum = file_checksum(meta);
                    if (csv_sum == prev_csv->second && meta_sum == prev_meta->second) {
                        slot.csv_sum = csv_sum;
                        slot.meta_sum = meta_sum;
                        slot.skipped = true;
                        return;
                    }
                }
            }
            const Trajectory traj = simulate(key.behaviour, key.setting, key.replicate,
                                             config.base_seed, config.sim);
            write_trajectory(root, traj, config.sim);
            slot.csv_sum = file_checksum(csv);
            slot.meta_sum = file_checksum(meta);
        } catch (const std::exception& e) {
            slot.failure = slot.csv_rel + ": " + e.what();
        }
    });

    DatasetReport report;
    std::map<std::string, std::string> files;
    for (const Slot& slot : slots) {
        if (!slot.failure.empty()) {
            report.failures.push_back(slot.failure);
            continue;
        }
        files[slot.csv_rel] = slot.csv_sum;
        files[slot.meta_rel] = slot.meta_sum;
        slot.skipped ? ++report.skipped : ++report.generated;
    }

    nlohmann::json manifest = {
        {"config_hash", config.hash()},
        {"tool_version", kToolVersion},
        {"prng", kPrngId},
        {"runs", runs.size()},
        {"files", files},
    };
    write_file(manifest_path(out_root), manifest.dump(2) + "\n");
    persist_config(config, out_root);
    return report;
}

void verify_dataset_complete(const ExperimentConfig& config,
                             const std::filesystem::path& out_root) {
    const auto root = data_root(out_root);
    std::vector<std::string> missing;
    for (const RunKey& key : grid_runs(config)) {
        const auto csv = trajectory_csv_path(root, key.setting, key.behaviour, key.replicate);
        const auto meta = trajectory_meta_path(root, key.setting, key.behaviour, key.replicate);
        if (!std::filesystem::exists(csv) || !std::filesystem::exists(meta)) {
            missing.push_back(relative_to(csv, root));
        }
    }
    if (!missing.empty()) {
        std::string msg = "dataset is missing " + std::to_string(missing.size()) + " run(s):";
        const std::size_t show = std::min<std::size_t>(missing.size(), 8);
        for (std::size_t i = 0; i < show; ++i) msg += " " + missing[i];
        if (missing.size() > show) msg += " ...";
        throw DataError(msg);
    }
}

}  // namespace swarmsim
