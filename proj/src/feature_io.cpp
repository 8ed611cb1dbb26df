#include "swarmsim/feature_io.hpp"

#include <nlohmann/json.hpp>

#include "swarmsim/io_util.hpp"
#include "swarmsim/trajectory_io.hpp"

namespace swarmsim {

namespace {

std::filesystem::path series_dir(const std::filesystem::path& root, FeatureSet fs, Setting s,
                                 Behaviour b) {
    return root / to_string(fs) / to_string(s) / to_string(b);
}

}  // namespace

std::filesystem::path feature_csv_path(const std::filesystem::path& root, FeatureSet fs,
                                       Setting s, Behaviour b, int replicate) {
    return series_dir(root, fs, s, b) / ("run_" + std::to_string(replicate) + ".csv");
}

std::filesystem::path feature_meta_path(const std::filesystem::path& root, FeatureSet fs,
                                        Setting s, Behaviour b, int replicate) {
    return series_dir(root, fs, s, b) / ("run_" + std::to_string(replicate) + ".json");
}

void write_feature_series(const std::filesystem::path& root, const FeatureSeries& series) {
    const RunMeta& m = series.meta;
    std::string csv;
    csv.reserve(series.values.size() * 20 + 64);
    csv += "step";
    for (std::size_t f = 0; f < series.dimension; ++f) {
        csv += ",f" + std::to_string(f);
    }
    csv += '\n';
    const std::size_t steps = series.step_count();
    for (std::size_t s = 0; s < steps; ++s) {
        csv += std::to_string(series.first_step + static_cast<int>(s));
        auto row = series.row(s);
        for (double v : row) {
            csv += ',';
            append_double(csv, v);
        }
        csv += '\n';
    }
    write_file(feature_csv_path(root, series.feature_set, m.setting, m.behaviour, m.replicate),
               csv);

    nlohmann::json meta = {
        {"feature_set", to_string(series.feature_set)},
        {"bounds_version", series.bounds_version},
        {"setting", to_string(m.setting)},
        {"behaviour", to_string(m.behaviour)},
        {"replicate", m.replicate},
        {"base_seed", m.base_seed},
        {"first_step", series.first_step},
        {"steps", steps},
        {"dimension", series.dimension},
        {"subsample", series.agent_indices},
    };
    write_file(feature_meta_path(root, series.feature_set, m.setting, m.behaviour, m.replicate),
               meta.dump(2) + "\n");
}

FeatureSeries read_feature_series(const std::filesystem::path& root, FeatureSet fs, Setting s,
                                  Behaviour b, int replicate) {
    const auto meta_path = feature_meta_path(root, fs, s, b, replicate);
    nlohmann::json meta = nlohmann::json::parse(read_file(meta_path));

    FeatureSeries series;
    series.feature_set = fs;
    series.bounds_version = meta.at("bounds_version").get<std::string>();
    series.meta = {b, s, replicate, meta.at("base_seed").get<std::uint64_t>()};
    series.first_step = meta.at("first_step").get<int>();
    series.dimension = meta.at("dimension").get<std::size_t>();
    series.agent_indices = meta.at("subsample").get<std::vector<int>>();
    const std::size_t steps = meta.at("steps").get<std::size_t>();
    series.values.reserve(steps * series.dimension);

    const auto csv_path = feature_csv_path(root, fs, s, b, replicate);
    const std::string csv = read_file(csv_path);
    std::size_t pos = csv.find('\n');
    if (pos == std::string::npos) throw DataError("empty feature file: " + csv_path.string());
    ++pos;
    while (pos < csv.size()) {
        std::size_t end = csv.find('\n', pos);
        if (end == std::string::npos) end = csv.size();
        std::string_view line = std::string_view(csv).substr(pos, end - pos);
        pos = end + 1;
        if (line.empty()) continue;
        auto fields = split(line, ',');
        if (fields.size() != series.dimension + 1) {
            throw DataError("bad feature row in " + csv_path.string());
        }
        for (std::size_t f = 1; f < fields.size(); ++f) {
            series.values.push_back(parse_double(fields[f]));
        }
    }
    if (series.step_count() != steps) {
        throw DataError("feature file is incomplete: " + csv_path.string());
    }
    return series;
}

FeatureSeries load_or_extract(const std::filesystem::path& feature_root,
                              const std::filesystem::path& trajectory_root, FeatureSet fs,
                              Setting s, Behaviour b, int replicate,
                              const FeatureConfig& config) {
    const auto meta_path = feature_meta_path(feature_root, fs, s, b, replicate);
    const auto csv_path = feature_csv_path(feature_root, fs, s, b, replicate);
    if (std::filesystem::exists(meta_path) && std::filesystem::exists(csv_path)) {
        try {
            auto series = read_feature_series(feature_root, fs, s, b, replicate);
            if (series.bounds_version == config.bounds_version) return series;
        } catch (const DataError&) {
            // Stale or damaged cache entry: fall through and rebuild it.
        }
    }
    Trajectory traj = read_trajectory(trajectory_root, s, b, replicate);
    FeatureSeries series = extract(traj, fs, config);
    write_feature_series(feature_root, series);
    return series;
}

}  // namespace swarmsim
