#pragma once

#include <filesystem>

#include "swarmsim/features.hpp"

namespace swarmsim {

// Cache layout: <root>/<feature_set>/<setting>/<behaviour>/run_<k>.csv with a
// sidecar run_<k>.json recording feature_set, bounds version and the
// subsample indices.
std::filesystem::path feature_csv_path(const std::filesystem::path& root, FeatureSet fs,
                                       Setting s, Behaviour b, int replicate);
std::filesystem::path feature_meta_path(const std::filesystem::path& root, FeatureSet fs,
                                        Setting s, Behaviour b, int replicate);

void write_feature_series(const std::filesystem::path& root, const FeatureSeries& series);
FeatureSeries read_feature_series(const std::filesystem::path& root, FeatureSet fs, Setting s,
                                  Behaviour b, int replicate);

// Returns the cached series when present with a matching bounds version;
// otherwise extracts from the trajectory store and fills the cache.
FeatureSeries load_or_extract(const std::filesystem::path& feature_root,
                              const std::filesystem::path& trajectory_root, FeatureSet fs,
                              Setting s, Behaviour b, int replicate,
                              const FeatureConfig& config);

}  // namespace swarmsim
