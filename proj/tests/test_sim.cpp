#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <numbers>

#include "swarmsim/io_util.hpp"
#include "swarmsim/simulation.hpp"
#include "swarmsim/trajectory_io.hpp"

using namespace swarmsim;

namespace {

bool states_equal(const SwarmState& a, const SwarmState& b) {
    if (a.step_index != b.step_index || a.speed != b.speed ||
        a.agents.size() != b.agents.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.agents.size(); ++i) {
        if (a.agents[i].position != b.agents[i].position ||
            a.agents[i].heading != b.agents[i].heading) {
            return false;
        }
    }
    return true;
}

bool trajectories_equal(const Trajectory& a, const Trajectory& b) {
    if (a.states.size() != b.states.size()) return false;
    for (std::size_t t = 0; t < a.states.size(); ++t) {
        if (!states_equal(a.states[t], b.states[t])) return false;
    }
    return true;
}

SwarmState single_agent_state(Vec2 pos, double heading, double speed) {
    SwarmState s;
    s.speed = speed;
    s.agents.push_back({pos, heading});
    return s;
}

}  // namespace

TEST_CASE("init_swarm: agent count, speed, determinism, replicate variation") {
    SimParams params;
    Rng s1(run_seed(7, Behaviour::reynolds, Setting::s40b, 0));
    auto a = init_swarm(Behaviour::reynolds, Setting::s40b, 0, 7, params, s1);
    CHECK(a.agents.size() == 40);
    CHECK(a.speed == params.speed);

    Rng s2(run_seed(7, Behaviour::reynolds, Setting::s40b, 0));
    auto b = init_swarm(Behaviour::reynolds, Setting::s40b, 0, 7, params, s2);
    CHECK(states_equal(a, b));

    Rng s3(run_seed(7, Behaviour::reynolds, Setting::s40b, 1));
    auto c = init_swarm(Behaviour::reynolds, Setting::s40b, 1, 7, params, s3);
    bool any_diff = false;
    for (std::size_t i = 0; i < a.agents.size(); ++i) {
        any_diff = any_diff || !(a.agents[i].position == c.agents[i].position);
    }
    CHECK(any_diff);

    Rng s4(run_seed(7, Behaviour::reynolds, Setting::s30b, 0));
    CHECK(init_swarm(Behaviour::reynolds, Setting::s30b, 0, 7, params, s4).agents.size() == 30);
}

TEST_CASE("ballistic step wraps toroidally") {
    ArenaConfig arena{500.0, BoundaryMode::unbounded};
    auto s = single_agent_state({499.0, 250.0}, 0.0, 2.0);
    Rng rng(1);
    auto next = step(s, Behaviour::ballistic, BehaviourParams{}, arena, rng);
    CHECK(next.agents[0].position.x == doctest::Approx(1.0));
    CHECK(next.agents[0].position.y == doctest::Approx(250.0));
    CHECK(next.agents[0].heading == doctest::Approx(0.0));
    CHECK(next.step_index == 1);
}

TEST_CASE("ballistic step reflects at a bounded wall") {
    ArenaConfig arena{500.0, BoundaryMode::bounded};
    auto s = single_agent_state({499.0, 250.0}, 0.0, 2.0);
    Rng rng(1);
    auto next = step(s, Behaviour::ballistic, BehaviourParams{}, arena, rng);
    // x' = 2*500 - 501 = 499, heading mirrored to pi.
    CHECK(next.agents[0].position.x == doctest::Approx(499.0));
    CHECK(next.agents[0].position.y == doctest::Approx(250.0));
    CHECK(next.agents[0].heading == doctest::Approx(std::numbers::pi));
}

TEST_CASE("speed is structurally constant across a step") {
    ArenaConfig arena{500.0, BoundaryMode::bounded};
    SwarmState s;
    s.speed = 2.0;
    Rng init_rng(3);
    for (int i = 0; i < 10; ++i) {
        s.agents.push_back({{init_rng.uniform(0.0, 500.0), init_rng.uniform(0.0, 500.0)},
                            init_rng.uniform(0.0, 2.0 * std::numbers::pi)});
    }
    Rng rng(17);
    auto next = step(s, Behaviour::brownian, BehaviourParams{}, arena, rng);
    CHECK(next.speed == s.speed);
    // Away from walls the per-step displacement equals the speed exactly.
    for (std::size_t i = 0; i < s.agents.size(); ++i) {
        const Vec2 p = s.agents[i].position;
        bool near_wall = p.x < 2.0 || p.x > 498.0 || p.y < 2.0 || p.y > 498.0;
        if (!near_wall) {
            CHECK(distance(p, next.agents[i].position, arena) == doctest::Approx(2.0).epsilon(1e-9));
        }
    }
}

TEST_CASE("simulate: length, transient bookkeeping, determinism") {
    SimParams params;
    params.total_steps = 300;
    params.transient_steps = 250;
    auto t1 = simulate(Behaviour::aggregation, Setting::s30b, 3, 99, params);
    CHECK(t1.total_steps() == 300);
    CHECK(t1.usable_steps() == 50);
    auto t2 = simulate(Behaviour::aggregation, Setting::s30b, 3, 99, params);
    CHECK(trajectories_equal(t1, t2));

    auto t3 = simulate(Behaviour::aggregation, Setting::s30b, 4, 99, params);
    CHECK_FALSE(trajectories_equal(t1, t3));
}

TEST_CASE("simulate rejects too-small step budgets") {
    SimParams params;
    params.total_steps = 100;  // <= transient
    CHECK_THROWS_AS(simulate(Behaviour::ballistic, Setting::s40b, 0, 1, params), ConfigError);
}

TEST_CASE("constant speed invariant over a full unbounded run") {
    SimParams params;
    params.total_steps = 400;
    auto traj = simulate(Behaviour::vicsek, Setting::s40u, 0, 5, params);
    for (std::size_t t = 1; t < traj.states.size(); ++t) {
        for (std::size_t i = 0; i < traj.states[t].agents.size(); ++i) {
            double d = distance(traj.states[t - 1].agents[i].position,
                                traj.states[t].agents[i].position, traj.arena);
            REQUIRE(d == doctest::Approx(params.speed).epsilon(1e-9));
        }
    }
}

TEST_CASE("containment invariant for both boundary modes") {
    SimParams params;
    params.total_steps = 300;
    for (auto setting : {Setting::s40b, Setting::s40u}) {
        auto traj = simulate(Behaviour::brownian, setting, 1, 21, params);
        bool ok = true;
        for (const auto& state : traj.states) {
            for (const auto& agent : state.agents) {
                if (traj.arena.boundary_mode == BoundaryMode::bounded) {
                    ok = ok && agent.position.x >= 0.0 && agent.position.x <= 500.0 &&
                         agent.position.y >= 0.0 && agent.position.y <= 500.0;
                } else {
                    ok = ok && agent.position.x >= 0.0 && agent.position.x < 500.0 &&
                         agent.position.y >= 0.0 && agent.position.y < 500.0;
                }
            }
        }
        CHECK(ok);
    }
}

TEST_CASE("vicsek order grows over an unbounded run") {
    SimParams params;  // full default length
    auto traj = simulate(Behaviour::vicsek, Setting::s40u, 0, 400, params);
    double start = order_parameter(traj.states.front());
    double end = order_parameter(traj.states.back());
    CHECK(end > start);
}

TEST_CASE("nearest-neighbour helper matches a hand oracle") {
    ArenaConfig arena{500.0, BoundaryMode::bounded};
    SwarmState s;
    s.speed = 2.0;
    s.agents = {{{0.0, 0.0}, 0.0}, {{3.0, 4.0}, 0.0}, {{100.0, 100.0}, 0.0}};
    double expect = (5.0 + 5.0 + std::hypot(97.0, 96.0)) / 3.0;
    CHECK(mean_nearest_neighbour_distance(s, arena) == doctest::Approx(expect));
    s.agents.resize(1);
    CHECK_THROWS_AS(mean_nearest_neighbour_distance(s, arena), DataError);
}

TEST_CASE("trajectory round-trips through CSV bit-exactly") {
    SimParams params;
    params.total_steps = 260;
    auto traj = simulate(Behaviour::reynolds, Setting::s40u, 2, 31, params);
    auto root = std::filesystem::temp_directory_path() / "swarmsim_test_traj";
    std::filesystem::remove_all(root);
    write_trajectory(root, traj, params);
    auto loaded = read_trajectory(root, Setting::s40u, Behaviour::reynolds, 2);
    CHECK(trajectories_equal(traj, loaded));
    CHECK(loaded.meta.base_seed == 31);
    CHECK(loaded.transient_steps == 250);
    // Rewriting produces identical bytes.
    auto path = trajectory_csv_path(root, Setting::s40u, Behaviour::reynolds, 2);
    auto before = file_checksum(path);
    write_trajectory(root, traj, params);
    CHECK(file_checksum(path) == before);
    std::filesystem::remove_all(root);
}
