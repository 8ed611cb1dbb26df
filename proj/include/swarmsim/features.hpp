#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "swarmsim/simulation.hpp"

namespace swarmsim {

enum class FeatureSet : int {
    alharthi2022 = 0,  // 8 swarm-level scalars
    gomes2013 = 1,     // per agent: x, y, vx, vy
    yang2023 = 2,      // 6 swarm-level scalars
    gharbi2023 = 3,    // per agent: nearest-neighbour distance, sorted
};

inline constexpr int kFeatureSetCount = 4;
inline constexpr std::array<FeatureSet, kFeatureSetCount> kAllFeatureSets = {
    FeatureSet::alharthi2022, FeatureSet::gomes2013, FeatureSet::yang2023,
    FeatureSet::gharbi2023};

const char* to_string(FeatureSet fs);
FeatureSet feature_set_from_string(std::string_view name);

// Agent-level sets produce one sub-vector per agent and are subject to the
// 30-agent subsampling rule; swarm-level sets always use the full swarm.
bool is_agent_level(FeatureSet fs);

struct FeatureConfig {
    double connection_radius = 50.0;  // proximity graph / density features
    double collision_radius = 5.0;    // yang2023 collision pairs
    double tau_mode = 0.5;            // swarm mode index radius fraction of side/2
    double mode_cell_size = 25.0;     // densest-cell grid pitch
    int shift_window = 5;             // steps covered by maximum swarm shift
    int subsample_size = 30;          // agents kept for agent-level sets
    std::string bounds_version = "1";

    void validate() const;
};

int feature_dimension(FeatureSet fs, int n_agents);

// Per-step feature vectors for the post-transient part of one run.
struct FeatureSeries {
    RunMeta meta;
    FeatureSet feature_set = FeatureSet::alharthi2022;
    std::string bounds_version;
    int first_step = 0;
    std::size_t dimension = 0;
    std::vector<int> agent_indices;  // subsample used by agent-level sets
    std::vector<double> values;      // step-major, step_count x dimension

    std::size_t step_count() const { return dimension == 0 ? 0 : values.size() / dimension; }
    std::span<const double> row(std::size_t i) const {
        return {values.data() + i * dimension, dimension};
    }
};

// Uniform k-subset of [0, n), drawn once per trajectory from the run's seed,
// returned sorted so the original relative agent order is preserved.
std::vector<int> subsample_agents(int n_agents, int k, std::uint64_t seed_value);

// The trajectory restricted to the given agent indices at every step.
Trajectory restrict_agents(const Trajectory& traj, std::span<const int> indices);

// Feature extraction over the post-transient steps. `normalize` maps every
// value into [0,1] through the per-feature bounds table; raw values are used
// by tests and calibration.
FeatureSeries extract(const Trajectory& traj, FeatureSet fs, const FeatureConfig& config,
                      bool normalize = true);

struct FeatureBounds {
    double lo = 0.0;
    double hi = 1.0;
};

// The per-feature normalization table for a swarm of n_agents moving at
// `speed` in an arena of side `side`. Documented in the README.
std::vector<FeatureBounds> bounds_table(FeatureSet fs, int n_agents, double side, double speed,
                                        const FeatureConfig& config);

double clamp_unit(double v);

}  // namespace swarmsim
