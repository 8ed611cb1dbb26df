#pragma once

#include <filesystem>

#include "swarmsim/config.hpp"
#include "swarmsim/som.hpp"

namespace swarmsim {

inline std::filesystem::path similarity_report_dir(const std::filesystem::path& out_root) {
    return out_root / "reports" / "similarity";
}
inline std::filesystem::path classification_report_path(const std::filesystem::path& out_root) {
    return out_root / "reports" / "classification.csv";
}
inline std::filesystem::path model_dir(const std::filesystem::path& out_root, FeatureSet fs,
                                       int model_index) {
    return out_root / "models" / to_string(fs) /
           ("model_" + std::to_string(model_index));
}

std::filesystem::path similarity_report_path(const std::filesystem::path& out_root, Setting s,
                                             FeatureSet fs, Measure m);

// Extracts (or loads from cache) the feature series for every run of the grid
// and every feature set.
void run_features(const ExperimentConfig& config, const std::filesystem::path& out_root);

// One report CSV per (setting, feature set, measure): 15 behaviour-pair rows,
// self-pairs omitted. Requires a complete dataset.
void run_similarity(const ExperimentConfig& config, const std::filesystem::path& out_root);

// Trains `models` SOMs per feature set on a trajectory-level stratified 80/20
// split of the 5-step samples, persists each model with its U-matrix and
// label-map exports, and writes the accuracy table.
void run_classification(const ExperimentConfig& config, const std::filesystem::path& out_root);

// Train-set membership of each replicate, stratified by (setting, behaviour).
// All samples of one run land on the same side of the split.
std::vector<bool> trajectory_split_mask(const ExperimentConfig& config, Setting s, Behaviour b);

// Consolidates whatever reports exist under <out>/ into summary.json and
// summary.txt; flags missing or incomplete sections. Errors when the
// directory holds no artifacts at all.
void write_summary(const std::filesystem::path& out_root);

}  // namespace swarmsim
