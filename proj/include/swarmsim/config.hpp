#pragma once

#include <filesystem>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "swarmsim/features.hpp"
#include "swarmsim/similarity.hpp"
#include "swarmsim/simulation.hpp"
#include "swarmsim/som.hpp"

namespace swarmsim {

inline constexpr const char* kToolVersion = "0.1.0";

struct ClassifierConfig {
    SomConfig som;
    double split = 0.8;     // train fraction, trajectory-level stratified split
    int models = 3;         // independently seeded replicate models
    int sample_window = 5;  // steps per classification sample

    void validate() const;
};

// The whole experiment grid in one declarative document. Every default is the
// reference configuration; a config file only needs the fields it overrides.
struct ExperimentConfig {
    std::uint64_t base_seed = 1;
    std::vector<Setting> settings{kAllSettings.begin(), kAllSettings.end()};
    std::vector<Behaviour> behaviours{kAllBehaviours.begin(), kAllBehaviours.end()};
    int replicates = 50;
    SimParams sim;
    FeatureConfig features;
    MeasureConfig measures;
    ClassifierConfig classifier;

    void validate() const;
    nlohmann::json to_json() const;
    static ExperimentConfig from_json(const nlohmann::json& j);
    static ExperimentConfig load(const std::filesystem::path& path);

    // Stable hash of the canonical JSON dump; recorded in manifests.
    std::string hash() const;
};

}  // namespace swarmsim
