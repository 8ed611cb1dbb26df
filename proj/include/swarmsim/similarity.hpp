#pragma once

#include <array>
#include <functional>
#include <string_view>
#include <vector>

#include "swarmsim/features.hpp"

namespace swarmsim {

enum class Measure : int {
    cosine = 0,
    euclidean = 1,
    combined_state_count = 2,
    sampled_average_state = 3,
};

inline constexpr int kMeasureCount = 4;
inline constexpr std::array<Measure, kMeasureCount> kAllMeasures = {
    Measure::cosine, Measure::euclidean, Measure::combined_state_count,
    Measure::sampled_average_state};

const char* to_string(Measure m);
Measure measure_from_string(std::string_view name);

struct MeasureConfig {
    double csc_threshold = 1e-2;  // low/medium/high discretisation threshold
    int sas_window = 10;          // sampled-average-state window, steps

    void validate() const;
};

// Per-step cosine of the two feature vectors, averaged over steps. Both
// vectors zero counts as 1, exactly one zero as 0. Result in [0, 1].
double cosine_similarity(const FeatureSeries& a, const FeatureSeries& b);

// Per-step Euclidean distance, averaged over steps.
double euclidean_distance(const FeatureSeries& a, const FeatureSeries& b);

// Discretises each feature into low/medium/high (value < tau, value > 1-tau,
// else medium), counts state occurrences (per step for swarm-level sets, per
// agent and step for agent-level sets) and returns the normalized L1
// difference of the two count maps: 0 for identical series, 1 for disjoint
// state sets. Requires normalized input.
double combined_state_count(const FeatureSeries& a, const FeatureSeries& b, double threshold);

// Averages agent-level features over all robots (one mean agent), then
// averages per feature over consecutive windows of `window` steps (trailing
// partial window dropped), and reports the mean Euclidean distance between
// corresponding window vectors.
double sampled_average_state(const FeatureSeries& a, const FeatureSeries& b, int window);

double score(Measure m, const FeatureSeries& a, const FeatureSeries& b,
             const MeasureConfig& config);

struct PairScore {
    Behaviour behaviour_a;
    Behaviour behaviour_b;
    double mean = 0.0;
    double stddev = 0.0;  // sample standard deviation over replicates
    int n_replicates = 0;
};

// Scores every unordered behaviour pair, replicate by replicate (runs sharing
// a seed are compared against each other), and aggregates mean and standard
// deviation over replicates. `series` must return the feature series of
// (behaviour, replicate) and should throw DataError naming any gap.
std::vector<PairScore> pairwise_matrix(
    const std::function<const FeatureSeries&(Behaviour, int)>& series,
    std::span<const Behaviour> behaviours, int replicates, Measure m,
    const MeasureConfig& config);

}  // namespace swarmsim
