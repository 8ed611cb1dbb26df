#pragma once

#include <filesystem>

#include "swarmsim/simulation.hpp"

namespace swarmsim {

// Dataset layout: <root>/<setting>/<behaviour>/run_<k>.csv plus a sidecar
// run_<k>.json holding everything needed to regenerate or reinterpret the run.
std::filesystem::path trajectory_csv_path(const std::filesystem::path& root, Setting s,
                                          Behaviour b, int replicate);
std::filesystem::path trajectory_meta_path(const std::filesystem::path& root, Setting s,
                                           Behaviour b, int replicate);

// CSV with header `step,agent,x,y,heading`; doubles in shortest round-trip
// form so rereading reproduces the in-memory run exactly.
void write_trajectory(const std::filesystem::path& root, const Trajectory& traj,
                      const SimParams& params);

Trajectory read_trajectory(const std::filesystem::path& root, Setting s, Behaviour b,
                           int replicate);

}  // namespace swarmsim
