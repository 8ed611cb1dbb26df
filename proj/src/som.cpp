#include "swarmsim/som.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "swarmsim/errors.hpp"
#include "swarmsim/io_util.hpp"
#include "swarmsim/kernels.hpp"
#include "swarmsim/rng.hpp"

namespace swarmsim {

void SampleSet::append(const SampleSet& other) {
    if (dimension == 0) dimension = other.dimension;
    if (other.dimension != dimension) throw DataError("sample dimension mismatch on append");
    data.insert(data.end(), other.data.begin(), other.data.end());
    labels.insert(labels.end(), other.labels.begin(), other.labels.end());
    provenance.insert(provenance.end(), other.provenance.begin(), other.provenance.end());
    skipped_series += other.skipped_series;
}

std::pair<SampleSet, SampleSet> SampleSet::partition(
    const std::function<bool(const SampleProvenance&)>& pred) const {
    SampleSet in, out;
    in.dimension = out.dimension = dimension;
    for (std::size_t i = 0; i < size(); ++i) {
        SampleSet& dst = pred(provenance[i]) ? in : out;
        auto s = sample(i);
        dst.data.insert(dst.data.end(), s.begin(), s.end());
        dst.labels.push_back(labels[i]);
        dst.provenance.push_back(provenance[i]);
    }
    return {std::move(in), std::move(out)};
}

SampleSet build_samples(const FeatureSeries& series, int window) {
    if (window < 1) throw ConfigError("sample window must be >= 1");
    SampleSet set;
    set.dimension = series.dimension * static_cast<std::size_t>(window);
    const std::size_t steps = series.step_count();
    if (steps < static_cast<std::size_t>(window)) {
        set.skipped_series = 1;
        return set;
    }
    const std::size_t n_samples = steps / static_cast<std::size_t>(window);
    set.data.reserve(n_samples * set.dimension);
    for (std::size_t w = 0; w < n_samples; ++w) {
        const std::size_t begin = w * static_cast<std::size_t>(window) * series.dimension;
        set.data.insert(set.data.end(), series.values.begin() + begin,
                        series.values.begin() + begin + set.dimension);
        set.labels.push_back(class_label(series.meta.behaviour));
        set.provenance.push_back({series.meta.setting, series.meta.behaviour,
                                  series.meta.replicate,
                                  series.first_step + static_cast<int>(w) * window});
    }
    return set;
}

void SomConfig::validate() const {
    if (rows < 1 || cols < 1) throw ConfigError("SOM grid must be at least 1x1");
    if (training_steps < 0) throw ConfigError("training_steps must be >= 0");
    if (!(alpha0 > 0.0 && alpha0 <= 1.0)) throw ConfigError("alpha0 must lie in (0, 1]");
    if (!(sigma0 > 0.0)) throw ConfigError("sigma0 must be > 0");
}

SomModel init_som(const SomConfig& config, const SampleSet& training, std::uint64_t seed) {
    config.validate();
    if (training.size() == 0) throw DataError("cannot initialize a SOM from empty training data");

    const std::size_t dim = training.dimension;
    std::vector<double> lo(dim, std::numeric_limits<double>::infinity());
    std::vector<double> hi(dim, -std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < training.size(); ++i) {
        auto s = training.sample(i);
        for (std::size_t f = 0; f < dim; ++f) {
            lo[f] = std::min(lo[f], s[f]);
            hi[f] = std::max(hi[f], s[f]);
        }
    }

    SomModel model;
    model.config = config;
    model.dimension = dim;
    model.seed = seed;
    model.prototypes.resize(static_cast<std::size_t>(model.node_count()) * dim);
    Rng stream(mix_seed({seed, fnv1a64("som-init")}));
    for (std::size_t i = 0; i < model.prototypes.size(); ++i) {
        const std::size_t f = i % dim;
        model.prototypes[i] = stream.uniform(lo[f], hi[f]);
    }
    return model;
}

NodeCoord bmu(const SomModel& model, std::span<const double> sample) {
    if (sample.size() != model.dimension) throw DataError("sample dimension mismatch in bmu");
    const std::size_t node = kernels::argmin_squared_distance(
        model.prototypes.data(), static_cast<std::size_t>(model.node_count()), model.dimension,
        sample.data());
    return {static_cast<int>(node) / model.config.cols,
            static_cast<int>(node) % model.config.cols};
}

void train(SomModel& model, const SampleSet& training) {
    if (training.size() == 0) throw DataError("cannot train a SOM on empty training data");
    if (training.dimension != model.dimension) {
        throw DataError("training data dimension mismatch");
    }
    const long T = model.config.training_steps;
    const int rows = model.config.rows;
    const int cols = model.config.cols;
    Rng stream(mix_seed({model.seed, fnv1a64("som-train")}));

    for (long t = 0; t < T; ++t) {
        const std::size_t idx = stream.bounded(training.size());
        const double* x = training.data.data() + idx * model.dimension;

        double best = 0.0;
        const std::size_t best_node = kernels::argmin_squared_distance(
            model.prototypes.data(), static_cast<std::size_t>(model.node_count()),
            model.dimension, x, &best);
        const int bmu_row = static_cast<int>(best_node) / cols;
        const int bmu_col = static_cast<int>(best_node) % cols;

        const double decay = 1.0 + 2.0 * static_cast<double>(t) / static_cast<double>(T);
        const double alpha = model.config.alpha0 / decay;
        const double sigma = model.config.sigma0 / decay;
        const double factor = -1.0 / (2.0 * sigma * sigma);

        for (int r = 0; r < rows; ++r) {
            const double dr = static_cast<double>(r - bmu_row);
            double* proto_row = model.prototypes.data() +
                                static_cast<std::size_t>(r) * cols * model.dimension;
            for (int c = 0; c < cols; ++c) {
                const double dc = static_cast<double>(c - bmu_col);
                const double h = std::exp(factor * (dr * dr + dc * dc));
                kernels::blend_toward(proto_row + static_cast<std::size_t>(c) * model.dimension,
                                      x, alpha * h, model.dimension);
            }
        }
    }

}

void label_nodes(SomModel& model, const SampleSet& training) {
    if (training.size() == 0) throw DataError("cannot label a SOM without labeled samples");
    const int n_nodes = model.node_count();

    int max_label = 0;
    for (int l : training.labels) max_label = std::max(max_label, l);
    std::vector<long> votes(static_cast<std::size_t>(n_nodes) * (max_label + 1), 0);
    for (std::size_t i = 0; i < training.size(); ++i) {
        auto coord = bmu(model, training.sample(i));
        const int node = coord.row * model.config.cols + coord.col;
        ++votes[static_cast<std::size_t>(node) * (max_label + 1) + training.labels[i]];
    }

    Rng stream(mix_seed({model.seed, fnv1a64("som-label")}));
    model.labels.assign(n_nodes, 0);
    model.hits.assign(n_nodes, 0);
    std::vector<int> tied;
    for (int node = 0; node < n_nodes; ++node) {
        const long* v = votes.data() + static_cast<std::size_t>(node) * (max_label + 1);
        long best = 0;
        for (int l = 1; l <= max_label; ++l) best = std::max(best, v[l]);
        long total = 0;
        for (int l = 1; l <= max_label; ++l) total += v[l];
        model.hits[node] = total;
        if (best == 0) continue;  // hit-less, resolved below
        tied.clear();
        for (int l = 1; l <= max_label; ++l) {
            if (v[l] == best) tied.push_back(l);
        }
        model.labels[node] =
            tied.size() == 1 ? tied[0] : tied[stream.bounded(tied.size())];
    }

    // Default class: the most common label among already-labeled nodes.
    std::vector<long> node_label_counts(max_label + 1, 0);
    for (int node = 0; node < n_nodes; ++node) {
        if (model.labels[node] != 0) ++node_label_counts[model.labels[node]];
    }
    long best_count = 0;
    for (int l = 1; l <= max_label; ++l) best_count = std::max(best_count, node_label_counts[l]);
    tied.clear();
    for (int l = 1; l <= max_label; ++l) {
        if (node_label_counts[l] == best_count && best_count > 0) tied.push_back(l);
    }
    const int default_class =
        tied.empty() ? training.labels.front()
                     : (tied.size() == 1 ? tied[0] : tied[stream.bounded(tied.size())]);
    for (int node = 0; node < n_nodes; ++node) {
        if (model.labels[node] == 0) model.labels[node] = default_class;
    }
}

int classify(const SomModel& model, std::span<const double> sample) {
    if (model.labels.empty()) throw DataError("classify requires a labeled model");
    auto coord = bmu(model, sample);
    return model.labels[static_cast<std::size_t>(coord.row) * model.config.cols + coord.col];
}

std::vector<double> u_matrix(const SomModel& model) {
    const int rows = model.config.rows;
    const int cols = model.config.cols;
    std::vector<double> um(static_cast<std::size_t>(rows) * cols, 0.0);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            double sum = 0.0;
            int n = 0;
            for (int dr = -1; dr <= 1; ++dr) {
                for (int dc = -1; dc <= 1; ++dc) {
                    if (dr == 0 && dc == 0) continue;
                    const int nr = r + dr, nc = c + dc;
                    if (nr < 0 || nr >= rows || nc < 0 || nc >= cols) continue;
                    sum += std::sqrt(kernels::squared_distance(
                        model.prototype(r * cols + c).data(),
                        model.prototype(nr * cols + nc).data(), model.dimension));
                    ++n;
                }
            }
            um[static_cast<std::size_t>(r) * cols + c] = n > 0 ? sum / n : 0.0;
        }
    }
    return um;
}

double accuracy(const SomModel& model, const SampleSet& samples) {
    if (samples.size() == 0) throw DataError("accuracy over an empty sample set");
    std::size_t correct = 0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (classify(model, samples.sample(i)) == samples.labels[i]) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(samples.size());
}

EvalReport evaluate(std::span<const SomModel> models, const SampleSet& train_set,
                    const SampleSet& test_set) {
    if (models.empty()) throw DataError("evaluate requires at least one model");
    if (train_set.size() == 0 || test_set.size() == 0) {
        throw DataError("evaluate requires non-empty train and test splits");
    }
    EvalReport report;
    for (const auto& model : models) {
        report.per_model.push_back({accuracy(model, train_set), accuracy(model, test_set)});
    }
    const double n = static_cast<double>(report.per_model.size());
    for (const auto& ms : report.per_model) {
        report.train_mean += ms.train_accuracy / n;
        report.test_mean += ms.test_accuracy / n;
    }
    double train_ss = 0.0, test_ss = 0.0;
    for (const auto& ms : report.per_model) {
        train_ss += (ms.train_accuracy - report.train_mean) * (ms.train_accuracy - report.train_mean);
        test_ss += (ms.test_accuracy - report.test_mean) * (ms.test_accuracy - report.test_mean);
    }
    if (report.per_model.size() > 1) {
        report.train_std = std::sqrt(train_ss / (n - 1.0));
        report.test_std = std::sqrt(test_ss / (n - 1.0));
    }
    return report;
}

}  // namespace swarmsim
