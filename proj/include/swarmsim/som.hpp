#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "swarmsim/features.hpp"

namespace swarmsim {

struct SampleProvenance {
    Setting setting = Setting::s40b;
    Behaviour behaviour = Behaviour::reynolds;
    int replicate = 0;
    int start_step = 0;
};

// Flat store of classification samples: each sample is `window` consecutive
// feature vectors concatenated in step order, labeled 1..6 by behaviour.
struct SampleSet {
    std::size_t dimension = 0;
    std::vector<double> data;  // sample-major
    std::vector<int> labels;
    std::vector<SampleProvenance> provenance;
    int skipped_series = 0;  // series shorter than the window

    std::size_t size() const { return labels.size(); }
    std::span<const double> sample(std::size_t i) const {
        return {data.data() + i * dimension, dimension};
    }
    void append(const SampleSet& other);
    // Splits into (matching, rest) by provenance predicate.
    std::pair<SampleSet, SampleSet> partition(
        const std::function<bool(const SampleProvenance&)>& pred) const;
};

// Non-overlapping windows of `window` consecutive steps from one series.
SampleSet build_samples(const FeatureSeries& series, int window = 5);

struct SomConfig {
    int rows = 46;
    int cols = 46;
    long training_steps = 180000;
    double alpha0 = 0.1;   // initial learning rate
    double sigma0 = 23.0;  // initial neighbourhood radius (half the lattice side)

    void validate() const;
};

// Rectangular lattice of prototype vectors. Training uses Euclidean
// activation and a Gaussian neighbourhood over lattice distance; alpha and
// sigma decay as x0 / (1 + 2t/T).
struct SomModel {
    SomConfig config;
    std::size_t dimension = 0;
    std::uint64_t seed = 0;
    std::vector<double> prototypes;  // node-major, node = row*cols + col
    std::vector<int> labels;         // per node, 1..6; empty until labeled
    std::vector<long> hits;          // training samples mapped to each node

    int node_count() const { return config.rows * config.cols; }
    std::span<const double> prototype(int node) const {
        return {prototypes.data() + static_cast<std::size_t>(node) * dimension, dimension};
    }
};

// Prototypes initialized uniformly within the per-dimension [min, max] of the
// training data; deterministic in the seed.
SomModel init_som(const SomConfig& config, const SampleSet& training, std::uint64_t seed);

// Best matching unit: node with minimal Euclidean prototype distance, ties
// broken toward the smaller (row, col) in lexicographic order.
struct NodeCoord {
    int row = 0;
    int col = 0;
    bool operator==(const NodeCoord&) const = default;
};
NodeCoord bmu(const SomModel& model, std::span<const double> sample);

// `training_steps` single-sample updates, drawing uniformly from `training`
// with the model's seed.
void train(SomModel& model, const SampleSet& training);

// Majority vote over training hits; ties picked by a seeded draw among the
// tied classes; hit-less nodes receive the most common label among labeled
// nodes (the default class).
void label_nodes(SomModel& model, const SampleSet& training);

int classify(const SomModel& model, std::span<const double> sample);

// Per node, the mean Euclidean prototype distance to its 8-neighbourhood
// (fewer at edges and corners).
std::vector<double> u_matrix(const SomModel& model);

struct ModelScore {
    double train_accuracy = 0.0;
    double test_accuracy = 0.0;
};

struct EvalReport {
    std::vector<ModelScore> per_model;
    double train_mean = 0.0, train_std = 0.0;
    double test_mean = 0.0, test_std = 0.0;
};

double accuracy(const SomModel& model, const SampleSet& samples);
EvalReport evaluate(std::span<const SomModel> models, const SampleSet& train_set,
                    const SampleSet& test_set);

}  // namespace swarmsim
