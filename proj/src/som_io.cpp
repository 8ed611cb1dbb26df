#include "swarmsim/som_io.hpp"

#include <algorithm>
#include <cstring>
#include <nlohmann/json.hpp>

#include "swarmsim/io_util.hpp"
#include "swarmsim/kernels.hpp"
#include "swarmsim/rng.hpp"

namespace swarmsim {

namespace {

template <typename T, typename Fmt>
std::string grid_csv(const std::vector<T>& values, int rows, int cols, Fmt fmt) {
    std::string out;
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            if (c > 0) out += ',';
            fmt(out, values[static_cast<std::size_t>(r) * cols + c]);
        }
        out += '\n';
    }
    return out;
}

}  // namespace

void write_pgm(const std::filesystem::path& path, int width, int height,
               const std::vector<unsigned char>& pixels) {
    std::string out = "P5\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
    out.append(reinterpret_cast<const char*>(pixels.data()), pixels.size());
    write_file(path, out);
}

void write_som_model(const std::filesystem::path& dir, const SomModel& model,
                     const std::string& feature_set_name) {
    std::filesystem::create_directories(dir);

    nlohmann::json header = {
        {"rows", model.config.rows},
        {"cols", model.config.cols},
        {"dimension", model.dimension},
        {"training_steps", model.config.training_steps},
        {"alpha0", model.config.alpha0},
        {"sigma0", model.config.sigma0},
        {"decay", "x0/(1+2t/T)"},
        {"seed", model.seed},
        {"feature_set", feature_set_name},
        {"prng", kPrngId},
        {"kernel_backend", kernels::name(kernels::active())},
        {"prototype_file", "prototypes.bin"},
        {"prototype_layout", "node-major little-endian float64"},
        {"labeled", !model.labels.empty()},
    };
    write_file(dir / "model.json", header.dump(2) + "\n");

    std::string blob(model.prototypes.size() * sizeof(double), '\0');
    std::memcpy(blob.data(), model.prototypes.data(), blob.size());
    write_file(dir / "prototypes.bin", blob);

    const int rows = model.config.rows, cols = model.config.cols;
    if (!model.labels.empty()) {
        write_file(dir / "labels.csv", grid_csv(model.labels, rows, cols,
                                                [](std::string& o, int v) {
                                                    o += std::to_string(v);
                                                }));
        std::vector<unsigned char> px(model.labels.size());
        for (std::size_t i = 0; i < model.labels.size(); ++i) {
            px[i] = static_cast<unsigned char>(std::clamp(model.labels[i] * 36, 0, 255));
        }
        write_pgm(dir / "labelmap.pgm", cols, rows, px);
    }
    if (!model.hits.empty()) {
        write_file(dir / "hits.csv", grid_csv(model.hits, rows, cols,
                                              [](std::string& o, long v) {
                                                  o += std::to_string(v);
                                              }));
    }

    const auto um = u_matrix(model);
    write_file(dir / "umatrix.csv", grid_csv(um, rows, cols, [](std::string& o, double v) {
                   append_double(o, v);
               }));
    const auto [lo_it, hi_it] = std::minmax_element(um.begin(), um.end());
    const double lo = *lo_it, hi = *hi_it;
    std::vector<unsigned char> px(um.size(), 0);
    if (hi > lo) {
        for (std::size_t i = 0; i < um.size(); ++i) {
            px[i] = static_cast<unsigned char>(std::lround((um[i] - lo) / (hi - lo) * 255.0));
        }
    }
    write_pgm(dir / "umatrix.pgm", cols, rows, px);
}

SomModel read_som_model(const std::filesystem::path& dir) {
    nlohmann::json header = nlohmann::json::parse(read_file(dir / "model.json"));
    SomModel model;
    model.config.rows = header.at("rows").get<int>();
    model.config.cols = header.at("cols").get<int>();
    model.config.training_steps = header.at("training_steps").get<long>();
    model.config.alpha0 = header.at("alpha0").get<double>();
    model.config.sigma0 = header.at("sigma0").get<double>();
    model.dimension = header.at("dimension").get<std::size_t>();
    model.seed = header.at("seed").get<std::uint64_t>();

    const std::string blob = read_file(dir / "prototypes.bin");
    const std::size_t expect =
        static_cast<std::size_t>(model.node_count()) * model.dimension * sizeof(double);
    if (blob.size() != expect) {
        throw DataError("prototype blob has wrong size: " + (dir / "prototypes.bin").string());
    }
    model.prototypes.resize(blob.size() / sizeof(double));
    std::memcpy(model.prototypes.data(), blob.data(), blob.size());

    if (header.value("labeled", false)) {
        const std::string csv = read_file(dir / "labels.csv");
        model.labels.reserve(model.node_count());
        for (auto line_view : split(csv, '\n')) {
            if (line_view.empty()) continue;
            for (auto field : split(line_view, ',')) {
                model.labels.push_back(static_cast<int>(parse_long(field)));
            }
        }
        if (model.labels.size() != static_cast<std::size_t>(model.node_count())) {
            throw DataError("label grid has wrong size: " + (dir / "labels.csv").string());
        }
    }
    if (std::filesystem::exists(dir / "hits.csv")) {
        const std::string csv = read_file(dir / "hits.csv");
        model.hits.reserve(model.node_count());
        for (auto line_view : split(csv, '\n')) {
            if (line_view.empty()) continue;
            for (auto field : split(line_view, ',')) model.hits.push_back(parse_long(field));
        }
    }
    return model;
}

}  // namespace swarmsim
