#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "swarmsim/behaviour.hpp"
#include "swarmsim/rng.hpp"
#include "swarmsim/vec2.hpp"

namespace swarmsim {

struct AgentState {
    Vec2 position;
    double heading = 0.0;  // radians, kept in [0, 2*pi)
};

// Snapshot of all agents at one step. Agent ordering is fixed for the whole
// run; speed is shared by all agents and constant over the run.
struct SwarmState {
    int step_index = 0;
    double speed = 0.0;
    std::vector<AgentState> agents;
};

struct RunMeta {
    Behaviour behaviour = Behaviour::reynolds;
    Setting setting = Setting::s40b;
    int replicate = 0;
    std::uint64_t base_seed = 0;
};

struct Trajectory {
    RunMeta meta;
    ArenaConfig arena;
    double speed = 0.0;
    int transient_steps = 0;
    std::vector<SwarmState> states;

    int total_steps() const { return static_cast<int>(states.size()); }
    // Steps retained after transient removal.
    int usable_steps() const { return total_steps() - transient_steps; }
};

// Simulation-level knobs shared by every behaviour.
struct SimParams {
    double arena_side = 500.0;
    double speed = 2.0;  // px per step; 1 step = 0.1 s
    int total_steps = 1250;
    int transient_steps = 250;
    std::map<Behaviour, BehaviourParams> behaviours = default_behaviour_params();

    static std::map<Behaviour, BehaviourParams> default_behaviour_params();

    const BehaviourParams& params_for(Behaviour b) const;
    ArenaConfig arena_for(Setting s) const {
        return ArenaConfig{arena_side, boundary_mode(s)};
    }
    void validate() const;
};

// Per-run seed: a stable mix of (base_seed, behaviour ordinal, setting
// ordinal, replicate). A single stream seeded with it drives initialization
// and all per-step noise, consumed in fixed agent order.
std::uint64_t run_seed(std::uint64_t base_seed, Behaviour b, Setting s, int replicate);

// Uniform positions over the arena and uniform headings in [0, 2*pi): per
// agent, in index order, the stream yields x, y, heading.
SwarmState init_swarm(Behaviour b, Setting s, int replicate, std::uint64_t base_seed,
                      const SimParams& params, Rng& stream);

// One synchronous behaviour update: headings are computed for all agents from
// the previous state, then every agent advances by speed along its heading
// and boundary handling is applied.
SwarmState step(const SwarmState& state, Behaviour b, const BehaviourParams& params,
                const ArenaConfig& arena, Rng& stream);

Trajectory simulate(Behaviour b, Setting s, int replicate, std::uint64_t base_seed,
                    const SimParams& params);

// Magnitude of the mean unit-heading vector: 1 for perfect alignment, ~0 for
// incoherent motion.
double order_parameter(const SwarmState& state);

// Mean over agents of the distance to their nearest neighbour, under the
// arena metric. Requires at least 2 agents.
double mean_nearest_neighbour_distance(const SwarmState& state, const ArenaConfig& arena);

}  // namespace swarmsim
