#pragma once

#include <stdexcept>
#include <string>

namespace swarmsim {

// Invalid configuration, unknown names, out-of-range parameters.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Missing or malformed artifacts (trajectories, caches, reports).
struct DataError : std::runtime_error {
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace swarmsim
