#include "swarmsim/similarity.hpp"

#include <cmath>
#include <map>

#include "swarmsim/errors.hpp"
#include "swarmsim/kernels.hpp"

namespace swarmsim {

namespace {

void check_comparable(const FeatureSeries& a, const FeatureSeries& b) {
    if (a.dimension != b.dimension) {
        throw DataError("feature series dimension mismatch: " + std::to_string(a.dimension) +
                        " vs " + std::to_string(b.dimension));
    }
    if (a.step_count() != b.step_count()) {
        throw DataError("feature series step count mismatch");
    }
    if (a.step_count() == 0) throw DataError("empty feature series");
}

// Number of values forming one state occurrence: the per-agent sub-vector for
// agent-level sets, the whole row for swarm-level sets.
std::size_t state_width(const FeatureSeries& s) {
    if (is_agent_level(s.feature_set) && !s.agent_indices.empty()) {
        return s.dimension / s.agent_indices.size();
    }
    return s.dimension;
}

using StateCounts = std::map<std::vector<std::uint8_t>, long>;

StateCounts count_states(const FeatureSeries& s, double threshold) {
    StateCounts counts;
    const std::size_t width = state_width(s);
    std::vector<std::uint8_t> key(width);
    const std::size_t total = s.values.size();
    for (std::size_t base = 0; base < total; base += width) {
        for (std::size_t f = 0; f < width; ++f) {
            const double v = s.values[base + f];
            if (v < 0.0 || v > 1.0) {
                throw DataError("combined_state_count requires normalized features in [0,1]");
            }
            key[f] = v < threshold ? 0 : (v > 1.0 - threshold ? 2 : 1);
        }
        ++counts[key];
    }
    return counts;
}

}  // namespace

const char* to_string(Measure m) {
    switch (m) {
        case Measure::cosine: return "cosine";
        case Measure::euclidean: return "euclidean";
        case Measure::combined_state_count: return "combined_state_count";
        case Measure::sampled_average_state: return "sampled_average_state";
    }
    throw ConfigError("invalid measure enum value");
}

Measure measure_from_string(std::string_view name) {
    for (Measure m : kAllMeasures) {
        if (name == to_string(m)) return m;
    }
    throw ConfigError("unknown measure: " + std::string(name));
}

void MeasureConfig::validate() const {
    if (!(csc_threshold > 0.0 && csc_threshold < 0.5)) {
        throw ConfigError("csc_threshold must lie in (0, 0.5)");
    }
    if (sas_window < 1) throw ConfigError("sas_window must be >= 1");
}

double cosine_similarity(const FeatureSeries& a, const FeatureSeries& b) {
    check_comparable(a, b);
    const std::size_t steps = a.step_count();
    double total = 0.0;
    for (std::size_t s = 0; s < steps; ++s) {
        auto ra = a.row(s);
        auto rb = b.row(s);
        const double na = kernels::dot(ra, ra);
        const double nb = kernels::dot(rb, rb);
        if (na == 0.0 && nb == 0.0) {
            total += 1.0;
        } else if (na == 0.0 || nb == 0.0) {
            total += 0.0;
        } else {
            total += clamp_unit(kernels::dot(ra, rb) / (std::sqrt(na) * std::sqrt(nb)));
        }
    }
    return total / static_cast<double>(steps);
}

double euclidean_distance(const FeatureSeries& a, const FeatureSeries& b) {
    check_comparable(a, b);
    const std::size_t steps = a.step_count();
    double total = 0.0;
    for (std::size_t s = 0; s < steps; ++s) {
        total += std::sqrt(kernels::squared_distance(a.row(s), b.row(s)));
    }
    return total / static_cast<double>(steps);
}

double combined_state_count(const FeatureSeries& a, const FeatureSeries& b, double threshold) {
    check_comparable(a, b);
    const StateCounts ca = count_states(a, threshold);
    const StateCounts cb = count_states(b, threshold);

    long diff = 0, total = 0;
    auto ia = ca.begin();
    auto ib = cb.begin();
    while (ia != ca.end() || ib != cb.end()) {
        if (ib == cb.end() || (ia != ca.end() && ia->first < ib->first)) {
            diff += ia->second;
            total += ia->second;
            ++ia;
        } else if (ia == ca.end() || ib->first < ia->first) {
            diff += ib->second;
            total += ib->second;
            ++ib;
        } else {
            diff += std::abs(ia->second - ib->second);
            total += ia->second + ib->second;
            ++ia;
            ++ib;
        }
    }
    return static_cast<double>(diff) / static_cast<double>(total);
}

double sampled_average_state(const FeatureSeries& a, const FeatureSeries& b, int window) {
    check_comparable(a, b);
    const std::size_t steps = a.step_count();
    if (steps < static_cast<std::size_t>(window)) {
        throw DataError("sampled_average_state needs at least one full window");
    }

    // Collapse agent-level rows to one mean agent per step.
    auto averaged_row = [](const FeatureSeries& s, std::size_t step, std::vector<double>& out) {
        auto row = s.row(step);
        const std::size_t width = state_width(s);
        out.assign(width, 0.0);
        const std::size_t agents = s.dimension / width;
        for (std::size_t a_i = 0; a_i < agents; ++a_i) {
            for (std::size_t f = 0; f < width; ++f) out[f] += row[a_i * width + f];
        }
        for (double& v : out) v /= static_cast<double>(agents);
    };

    const std::size_t width = state_width(a);
    if (width != state_width(b)) throw DataError("state width mismatch");
    const std::size_t n_windows = steps / static_cast<std::size_t>(window);

    std::vector<double> row_a, row_b, win_a(width), win_b(width);
    double total = 0.0;
    for (std::size_t w = 0; w < n_windows; ++w) {
        win_a.assign(width, 0.0);
        win_b.assign(width, 0.0);
        for (int t = 0; t < window; ++t) {
            const std::size_t step = w * static_cast<std::size_t>(window) + t;
            averaged_row(a, step, row_a);
            averaged_row(b, step, row_b);
            for (std::size_t f = 0; f < width; ++f) {
                win_a[f] += row_a[f];
                win_b[f] += row_b[f];
            }
        }
        for (std::size_t f = 0; f < width; ++f) {
            win_a[f] /= window;
            win_b[f] /= window;
        }
        total += std::sqrt(kernels::squared_distance(win_a.data(), win_b.data(), width));
    }
    return total / static_cast<double>(n_windows);
}

double score(Measure m, const FeatureSeries& a, const FeatureSeries& b,
             const MeasureConfig& config) {
    config.validate();
    switch (m) {
        case Measure::cosine: return cosine_similarity(a, b);
        case Measure::euclidean: return euclidean_distance(a, b);
        case Measure::combined_state_count:
            return combined_state_count(a, b, config.csc_threshold);
        case Measure::sampled_average_state:
            return sampled_average_state(a, b, config.sas_window);
    }
    throw ConfigError("invalid measure enum value");
}

std::vector<PairScore> pairwise_matrix(
    const std::function<const FeatureSeries&(Behaviour, int)>& series,
    std::span<const Behaviour> behaviours, int replicates, Measure m,
    const MeasureConfig& config) {
    if (replicates < 1) throw ConfigError("pairwise_matrix needs at least 1 replicate");
    std::vector<PairScore> result;
    for (std::size_t i = 0; i < behaviours.size(); ++i) {
        for (std::size_t j = i + 1; j < behaviours.size(); ++j) {
            PairScore ps;
            ps.behaviour_a = behaviours[i];
            ps.behaviour_b = behaviours[j];
            ps.n_replicates = replicates;
            std::vector<double> scores(replicates);
            for (int r = 0; r < replicates; ++r) {
                scores[r] = score(m, series(behaviours[i], r), series(behaviours[j], r), config);
            }
            double sum = 0.0;
            for (double s : scores) sum += s;
            ps.mean = sum / replicates;
            double ss = 0.0;
            for (double s : scores) ss += (s - ps.mean) * (s - ps.mean);
            ps.stddev = replicates > 1 ? std::sqrt(ss / (replicates - 1)) : 0.0;
            result.push_back(ps);
        }
    }
    return result;
}

}  // namespace swarmsim
