#pragma once

#include <filesystem>
#include <string>

#include "swarmsim/som.hpp"

namespace swarmsim {

// Model directory contents: model.json (hyperparameters, seed, dims, backend),
// prototypes.bin (little-endian doubles, node-major), labels.csv, hits.csv,
// umatrix.csv, and 8-bit PGM renders umatrix.pgm (min-max scaled) and
// labelmap.pgm (label index x 36 grey levels).
void write_som_model(const std::filesystem::path& dir, const SomModel& model,
                     const std::string& feature_set_name);

SomModel read_som_model(const std::filesystem::path& dir);

// P5 binary PGM, maxval 255.
void write_pgm(const std::filesystem::path& path, int width, int height,
               const std::vector<unsigned char>& pixels);

}  // namespace swarmsim
