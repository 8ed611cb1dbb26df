#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "swarmsim/config.hpp"

namespace swarmsim {

inline std::filesystem::path data_root(const std::filesystem::path& out_root) {
    return out_root / "data";
}
inline std::filesystem::path feature_root(const std::filesystem::path& out_root) {
    return out_root / "features";
}
inline std::filesystem::path manifest_path(const std::filesystem::path& out_root) {
    return data_root(out_root) / "manifest.json";
}

struct DatasetReport {
    int generated = 0;
    int skipped = 0;
    std::vector<std::string> failures;  // one entry per failed run, path + reason
};

// Simulates the full grid (settings x behaviours x replicates) into
// <out>/data, one CSV + JSON sidecar per run, and writes a manifest with
// per-file checksums. Existing files whose checksums match the manifest are
// skipped, so interrupted generations resume and finished ones are no-ops.
// Failures are collected per run; completed runs stay on disk.
DatasetReport generate_dataset(const ExperimentConfig& config,
                               const std::filesystem::path& out_root);

// Throws DataError naming the gaps when any run of the grid is missing.
void verify_dataset_complete(const ExperimentConfig& config,
                             const std::filesystem::path& out_root);

// Writes <out>/config.json (the effective configuration) for later commands.
void persist_config(const ExperimentConfig& config, const std::filesystem::path& out_root);

}  // namespace swarmsim
