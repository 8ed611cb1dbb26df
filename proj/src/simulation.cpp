#include "swarmsim/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "swarmsim/errors.hpp"

namespace swarmsim {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Signed angular difference target - current, in (-pi, pi].
double angle_delta(double current, double target) {
    double d = std::fmod(target - current, kTwoPi);
    if (d > std::numbers::pi) d -= kTwoPi;
    if (d <= -std::numbers::pi) d += kTwoPi;
    return d;
}

double turn_toward(double current, double target, double max_turn) {
    double d = std::clamp(angle_delta(current, target), -max_turn, max_turn);
    return wrap_angle(current + d);
}

// Steering vector is considered absent below this magnitude.
constexpr double kDirectionEps = 1e-12;

double reynolds_heading(const SwarmState& s, std::size_t i, const BehaviourParams& p,
                        const ArenaConfig& arena) {
    const Vec2 pos = s.agents[i].position;
    Vec2 separation{}, alignment{}, cohesion_sum{};
    int cohesion_n = 0;
    for (std::size_t j = 0; j < s.agents.size(); ++j) {
        if (j == i) continue;
        Vec2 d = displacement(pos, s.agents[j].position, arena);
        double dist_sq = d.norm_sq();
        if (dist_sq >= p.interaction_radius * p.interaction_radius) continue;
        alignment += unit_from_angle(s.agents[j].heading);
        cohesion_sum += d;
        ++cohesion_n;
        if (dist_sq < p.separation_radius * p.separation_radius && dist_sq > 0.0) {
            // Inverse-square repulsion away from the neighbour.
            separation -= d / dist_sq;
        }
    }
    if (cohesion_n == 0) return s.agents[i].heading;
    Vec2 cohesion = cohesion_sum / static_cast<double>(cohesion_n);
    Vec2 desired = p.w_sep * separation.normalized() + p.w_align * alignment.normalized() +
                   p.w_coh * cohesion.normalized();
    if (desired.norm_sq() < kDirectionEps * kDirectionEps) return s.agents[i].heading;
    return turn_toward(s.agents[i].heading, angle_of(desired), p.max_turn);
}

double vicsek_heading(const SwarmState& s, std::size_t i, const BehaviourParams& p,
                      const ArenaConfig& arena, double noise) {
    const Vec2 pos = s.agents[i].position;
    // Circular mean over neighbours within the radius, self included.
    Vec2 sum = unit_from_angle(s.agents[i].heading);
    for (std::size_t j = 0; j < s.agents.size(); ++j) {
        if (j == i) continue;
        if (distance_sq(pos, s.agents[j].position, arena) <
            p.interaction_radius * p.interaction_radius) {
            sum += unit_from_angle(s.agents[j].heading);
        }
    }
    double base = sum.norm_sq() < kDirectionEps * kDirectionEps ? s.agents[i].heading
                                                                : angle_of(sum);
    return wrap_angle(base + noise);
}

double aggregation_heading(const SwarmState& s, std::size_t i, const BehaviourParams& p,
                           const ArenaConfig& arena) {
    const Vec2 pos = s.agents[i].position;
    Vec2 sum{};
    int n = 0;
    for (std::size_t j = 0; j < s.agents.size(); ++j) {
        if (j == i) continue;
        Vec2 d = displacement(pos, s.agents[j].position, arena);
        if (d.norm_sq() < p.interaction_radius * p.interaction_radius) {
            sum += d;
            ++n;
        }
    }
    if (n == 0) return s.agents[i].heading;
    Vec2 toward_centroid = sum / static_cast<double>(n);
    if (toward_centroid.norm_sq() < kDirectionEps * kDirectionEps) return s.agents[i].heading;
    return turn_toward(s.agents[i].heading, angle_of(toward_centroid), p.max_turn);
}

// Lazy repulsion: with probability act_prob the agent steers directly away
// from its nearest neighbour in range, otherwise (and when no neighbour is in
// range) it loiters in a tight circle. Loitering parks satisfied agents
// instead of letting them cruise across the arena and re-pack it, and the
// activation gate spreads the dispersal over the whole run.
double dispersion_heading(const SwarmState& s, std::size_t i, const BehaviourParams& p,
                          const ArenaConfig& arena, bool act) {
    const double loiter = wrap_angle(s.agents[i].heading + p.max_turn);
    if (!act) return loiter;
    const Vec2 pos = s.agents[i].position;
    double best_sq = p.interaction_radius * p.interaction_radius;
    Vec2 away{};
    bool found = false;
    for (std::size_t j = 0; j < s.agents.size(); ++j) {
        if (j == i) continue;
        Vec2 d = displacement(pos, s.agents[j].position, arena);
        double dist_sq = d.norm_sq();
        if (dist_sq < best_sq) {
            best_sq = dist_sq;
            away = Vec2{} - d;
            found = true;
        }
    }
    if (!found || away.norm_sq() < kDirectionEps * kDirectionEps) return loiter;
    return turn_toward(s.agents[i].heading, angle_of(away), p.max_turn);
}

}  // namespace

// Reference parameters, verified against the behaviour signature suite
// (aggregation compacts, dispersion spreads, flockers order, random walks
// stay incoherent) on the default seeds.
std::map<Behaviour, BehaviourParams> SimParams::default_behaviour_params() {
    std::map<Behaviour, BehaviourParams> m;
    for (Behaviour b : kAllBehaviours) m[b] = BehaviourParams{};
    m[Behaviour::reynolds].interaction_radius = 150.0;
    m[Behaviour::reynolds].max_turn = 0.2;
    m[Behaviour::vicsek].interaction_radius = 150.0;
    m[Behaviour::vicsek].noise_eta = 0.1;
    m[Behaviour::aggregation].interaction_radius = 50.0;
    m[Behaviour::aggregation].max_turn = 0.1;
    m[Behaviour::dispersion].interaction_radius = 100.0;
    m[Behaviour::dispersion].max_turn = 1.0;
    m[Behaviour::dispersion].act_prob = 0.15;
    return m;
}

const BehaviourParams& SimParams::params_for(Behaviour b) const {
    auto it = behaviours.find(b);
    if (it == behaviours.end()) {
        throw ConfigError(std::string("no parameters configured for behaviour ") + to_string(b));
    }
    return it->second;
}

void SimParams::validate() const {
    if (!(arena_side > 0.0)) throw ConfigError("arena_side must be > 0");
    if (!(speed > 0.0)) throw ConfigError("speed must be > 0");
    if (!(speed < arena_side)) throw ConfigError("speed must be smaller than the arena side");
    if (transient_steps < 0) throw ConfigError("transient_steps must be >= 0");
    if (total_steps <= transient_steps) {
        throw ConfigError("total_steps must exceed transient_steps");
    }
    for (const auto& [b, p] : behaviours) p.validate();
}

std::uint64_t run_seed(std::uint64_t base_seed, Behaviour b, Setting s, int replicate) {
    return mix_seed({base_seed, static_cast<std::uint64_t>(static_cast<int>(b)),
                     static_cast<std::uint64_t>(static_cast<int>(s)),
                     static_cast<std::uint64_t>(replicate)});
}

SwarmState init_swarm(Behaviour b, Setting s, int replicate, std::uint64_t base_seed,
                      const SimParams& params, Rng& stream) {
    (void)b;
    (void)replicate;
    (void)base_seed;
    params.validate();
    SwarmState state;
    state.step_index = 0;
    state.speed = params.speed;
    state.agents.resize(agent_count(s));
    for (auto& agent : state.agents) {
        agent.position.x = stream.uniform(0.0, params.arena_side);
        agent.position.y = stream.uniform(0.0, params.arena_side);
        agent.heading = stream.uniform(0.0, kTwoPi);
    }
    return state;
}

SwarmState step(const SwarmState& state, Behaviour b, const BehaviourParams& params,
                const ArenaConfig& arena, Rng& stream) {
    const std::size_t n = state.agents.size();
    std::vector<double> headings(n);
    for (std::size_t i = 0; i < n; ++i) {
        switch (b) {
            case Behaviour::reynolds:
                headings[i] = reynolds_heading(state, i, params, arena);
                break;
            case Behaviour::vicsek:
                headings[i] = vicsek_heading(state, i, params, arena,
                                             stream.uniform(-params.noise_eta / 2.0,
                                                            params.noise_eta / 2.0));
                break;
            case Behaviour::aggregation:
                headings[i] = aggregation_heading(state, i, params, arena);
                break;
            case Behaviour::dispersion:
                // One gate draw per agent per step, in fixed agent order.
                headings[i] = dispersion_heading(state, i, params, arena,
                                                 stream.uniform() < params.act_prob);
                break;
            case Behaviour::ballistic:
                headings[i] = state.agents[i].heading;
                break;
            case Behaviour::brownian:
                headings[i] = wrap_angle(state.agents[i].heading +
                                         stream.normal(0.0, params.turn_sigma));
                break;
        }
    }
    SwarmState next;
    next.step_index = state.step_index + 1;
    next.speed = state.speed;
    next.agents.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        Vec2 pos = state.agents[i].position + state.speed * unit_from_angle(headings[i]);
        auto [wrapped, heading] = apply_boundary(pos, headings[i], arena);
        next.agents[i] = {wrapped, heading};
    }
    return next;
}

Trajectory simulate(Behaviour b, Setting s, int replicate, std::uint64_t base_seed,
                    const SimParams& params) {
    params.validate();
    Trajectory traj;
    traj.meta = {b, s, replicate, base_seed};
    traj.arena = params.arena_for(s);
    traj.speed = params.speed;
    traj.transient_steps = params.transient_steps;
    traj.states.reserve(params.total_steps);

    Rng stream(run_seed(base_seed, b, s, replicate));
    const BehaviourParams& bp = params.params_for(b);
    traj.states.push_back(init_swarm(b, s, replicate, base_seed, params, stream));
    for (int t = 1; t < params.total_steps; ++t) {
        traj.states.push_back(step(traj.states.back(), b, bp, traj.arena, stream));
    }
    return traj;
}

double order_parameter(const SwarmState& state) {
    if (state.agents.empty()) return 0.0;
    Vec2 sum{};
    for (const auto& a : state.agents) sum += unit_from_angle(a.heading);
    return sum.norm() / static_cast<double>(state.agents.size());
}

double mean_nearest_neighbour_distance(const SwarmState& state, const ArenaConfig& arena) {
    const std::size_t n = state.agents.size();
    if (n < 2) throw DataError("nearest-neighbour distance requires at least 2 agents");
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            best = std::min(best, distance_sq(state.agents[i].position,
                                              state.agents[j].position, arena));
        }
        total += std::sqrt(best);
    }
    return total / static_cast<double>(n);
}

}  // namespace swarmsim
