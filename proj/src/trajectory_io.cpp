#include "swarmsim/trajectory_io.hpp"

#include <nlohmann/json.hpp>

#include "swarmsim/io_util.hpp"
#include "swarmsim/rng.hpp"

namespace swarmsim {

namespace {

std::string run_stem(int replicate) { return "run_" + std::to_string(replicate); }

std::filesystem::path run_dir(const std::filesystem::path& root, Setting s, Behaviour b) {
    return root / to_string(s) / to_string(b);
}

nlohmann::json params_to_json(const BehaviourParams& p) {
    return {
        {"interaction_radius", p.interaction_radius},
        {"separation_radius", p.separation_radius},
        {"w_sep", p.w_sep},
        {"w_align", p.w_align},
        {"w_coh", p.w_coh},
        {"noise_eta", p.noise_eta},
        {"turn_sigma", p.turn_sigma},
        {"max_turn", p.max_turn},
    };
}

}  // namespace

std::filesystem::path trajectory_csv_path(const std::filesystem::path& root, Setting s,
                                          Behaviour b, int replicate) {
    return run_dir(root, s, b) / (run_stem(replicate) + ".csv");
}

std::filesystem::path trajectory_meta_path(const std::filesystem::path& root, Setting s,
                                           Behaviour b, int replicate) {
    return run_dir(root, s, b) / (run_stem(replicate) + ".json");
}

void write_trajectory(const std::filesystem::path& root, const Trajectory& traj,
                      const SimParams& params) {
    const RunMeta& m = traj.meta;
    std::string csv;
    csv.reserve(traj.states.size() * traj.states.front().agents.size() * 64 + 32);
    csv += "step,agent,x,y,heading\n";
    for (const SwarmState& state : traj.states) {
        for (std::size_t a = 0; a < state.agents.size(); ++a) {
            csv += std::to_string(state.step_index);
            csv += ',';
            csv += std::to_string(a);
            csv += ',';
            append_double(csv, state.agents[a].position.x);
            csv += ',';
            append_double(csv, state.agents[a].position.y);
            csv += ',';
            append_double(csv, state.agents[a].heading);
            csv += '\n';
        }
    }
    write_file(trajectory_csv_path(root, m.setting, m.behaviour, m.replicate), csv);

    nlohmann::json meta = {
        {"behaviour", to_string(m.behaviour)},
        {"setting", to_string(m.setting)},
        {"replicate", m.replicate},
        {"base_seed", m.base_seed},
        {"run_seed", run_seed(m.base_seed, m.behaviour, m.setting, m.replicate)},
        {"speed", traj.speed},
        {"arena_side", traj.arena.side},
        {"boundary_mode", to_string(traj.arena.boundary_mode)},
        {"total_steps", traj.total_steps()},
        {"transient_steps", traj.transient_steps},
        {"agents", traj.states.front().agents.size()},
        {"params", params_to_json(params.params_for(m.behaviour))},
        {"prng", kPrngId},
    };
    write_file(trajectory_meta_path(root, m.setting, m.behaviour, m.replicate),
               meta.dump(2) + "\n");
}

Trajectory read_trajectory(const std::filesystem::path& root, Setting s, Behaviour b,
                           int replicate) {
    const auto meta_path = trajectory_meta_path(root, s, b, replicate);
    const auto csv_path = trajectory_csv_path(root, s, b, replicate);
    nlohmann::json meta = nlohmann::json::parse(read_file(meta_path));

    Trajectory traj;
    traj.meta = {b, s, replicate, meta.at("base_seed").get<std::uint64_t>()};
    traj.arena.side = meta.at("arena_side").get<double>();
    traj.arena.boundary_mode = meta.at("boundary_mode").get<std::string>() == "unbounded"
                                   ? BoundaryMode::unbounded
                                   : BoundaryMode::bounded;
    traj.speed = meta.at("speed").get<double>();
    traj.transient_steps = meta.at("transient_steps").get<int>();
    const int total_steps = meta.at("total_steps").get<int>();
    const std::size_t n_agents = meta.at("agents").get<std::size_t>();

    traj.states.resize(total_steps);
    for (int t = 0; t < total_steps; ++t) {
        traj.states[t].step_index = t;
        traj.states[t].speed = traj.speed;
        traj.states[t].agents.resize(n_agents);
    }

    const std::string csv = read_file(csv_path);
    std::size_t pos = 0;
    auto next_line = [&](std::string_view& line) {
        if (pos >= csv.size()) return false;
        std::size_t end = csv.find('\n', pos);
        if (end == std::string::npos) end = csv.size();
        line = std::string_view(csv).substr(pos, end - pos);
        pos = end + 1;
        return true;
    };
    std::string_view line;
    if (!next_line(line) || line != "step,agent,x,y,heading") {
        throw DataError("bad trajectory header in " + csv_path.string());
    }
    std::size_t rows = 0;
    while (next_line(line)) {
        if (line.empty()) continue;
        auto fields = split(line, ',');
        if (fields.size() != 5) throw DataError("bad trajectory row in " + csv_path.string());
        long t = parse_long(fields[0]);
        long a = parse_long(fields[1]);
        if (t < 0 || t >= total_steps || a < 0 || static_cast<std::size_t>(a) >= n_agents) {
            throw DataError("trajectory row out of range in " + csv_path.string());
        }
        traj.states[t].agents[a] = {{parse_double(fields[2]), parse_double(fields[3])},
                                    parse_double(fields[4])};
        ++rows;
    }
    if (rows != static_cast<std::size_t>(total_steps) * n_agents) {
        throw DataError("trajectory is incomplete: " + csv_path.string());
    }
    return traj;
}

}  // namespace swarmsim
