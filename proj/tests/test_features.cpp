#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "swarmsim/features.hpp"
#include "swarmsim/proximity_graph.hpp"
#include "swarmsim/rng.hpp"

using namespace swarmsim;

namespace {

SwarmState make_state(std::vector<AgentState> agents, double speed = 2.0) {
    SwarmState s;
    s.speed = speed;
    s.agents = std::move(agents);
    return s;
}

Trajectory make_trajectory(std::vector<SwarmState> states, BoundaryMode mode,
                           int transient = 0, double speed = 2.0) {
    Trajectory t;
    t.arena = {500.0, mode};
    t.speed = speed;
    t.transient_steps = transient;
    for (std::size_t i = 0; i < states.size(); ++i) {
        states[i].step_index = static_cast<int>(i);
        states[i].speed = speed;
    }
    t.states = std::move(states);
    return t;
}

// Independent all-pairs edge oracle.
std::vector<std::pair<int, int>> brute_force_edges(const std::vector<Vec2>& pos, double radius,
                                                   const ArenaConfig& arena) {
    std::vector<std::pair<int, int>> edges;
    for (std::size_t i = 0; i < pos.size(); ++i) {
        for (std::size_t j = i + 1; j < pos.size(); ++j) {
            if (distance(pos[i], pos[j], arena) <= radius) {
                edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
            }
        }
    }
    return edges;
}

// Independent component oracle: union-find over the oracle edge list.
struct Dsu {
    std::vector<int> parent;
    explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Independent diameter oracle: Floyd-Warshall over hop counts.
int floyd_warshall_diameter(int n, const std::vector<std::pair<int, int>>& edges,
                            const std::vector<int>& members) {
    const int inf = 1 << 20;
    std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
    for (int i = 0; i < n; ++i) d[i][i] = 0;
    for (auto [a, b] : edges) d[a][b] = d[b][a] = 1;
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
            }
        }
    }
    int best = 0;
    for (int a : members) {
        for (int b : members) {
            if (d[a][b] < inf) best = std::max(best, d[a][b]);
        }
    }
    return best;
}

std::vector<Vec2> random_positions(Rng& rng, int n, double side = 500.0) {
    std::vector<Vec2> p(n);
    for (auto& v : p) v = {rng.uniform(0.0, side), rng.uniform(0.0, side)};
    return p;
}

}  // namespace

TEST_CASE("proximity graph trivial shapes") {
    ArenaConfig arena{500.0, BoundaryMode::bounded};
    std::vector<Vec2> tight{{0.0, 0.0}, {10.0, 0.0}, {0.0, 10.0}};
    auto g = proximity_graph(tight, 50.0, arena);
    CHECK(g.edge_count() == 3);
    CHECK(static_cast<double>(g.edge_count()) / g.node_count == 1.0);  // beta index

    std::vector<Vec2> sparse{{0.0, 0.0}, {200.0, 0.0}, {0.0, 200.0}, {400.0, 400.0}};
    auto g2 = proximity_graph(sparse, 50.0, arena);
    CHECK(g2.edge_count() == 0);
    CHECK(connected_components(g2).count == 4);
}

TEST_CASE("proximity graph respects the arena metric") {
    std::vector<Vec2> pos{{1.0, 250.0}, {499.0, 250.0}};
    auto wrapped = proximity_graph(pos, 5.0, {500.0, BoundaryMode::unbounded});
    CHECK(wrapped.edge_count() == 1);
    auto walled = proximity_graph(pos, 5.0, {500.0, BoundaryMode::bounded});
    CHECK(walled.edge_count() == 0);
}

TEST_CASE("graph features equal brute-force oracles on random configurations") {
    Rng rng(314);
    for (int trial = 0; trial < 100; ++trial) {
        const auto arena = trial % 2 == 0 ? ArenaConfig{500.0, BoundaryMode::bounded}
                                          : ArenaConfig{500.0, BoundaryMode::unbounded};
        const double radius = rng.uniform(20.0, 200.0);
        const auto pos = random_positions(rng, 10);

        const auto g = proximity_graph(pos, radius, arena);
        const auto oracle_edges = brute_force_edges(pos, radius, arena);
        REQUIRE(g.edges == oracle_edges);

        Dsu dsu(10);
        for (auto [a, b] : oracle_edges) dsu.unite(a, b);
        std::vector<int> root_count(10, 0);
        for (int i = 0; i < 10; ++i) ++root_count[dsu.find(i)];
        const int oracle_components =
            static_cast<int>(std::count_if(root_count.begin(), root_count.end(),
                                           [](int c) { return c > 0; }));
        const int oracle_singletons =
            static_cast<int>(std::count(root_count.begin(), root_count.end(), 1));
        const int oracle_largest = *std::max_element(root_count.begin(), root_count.end());

        const auto comps = connected_components(g);
        CHECK(comps.count == oracle_components);
        CHECK(comps.singleton_count() == oracle_singletons);
        CHECK(comps.sizes[comps.largest()] == oracle_largest);

        // Diameter of the largest component vs Floyd-Warshall.
        std::vector<int> members;
        const int largest_label = comps.largest();
        for (int i = 0; i < 10; ++i) {
            if (comps.label[i] == largest_label) members.push_back(i);
        }
        CHECK(component_diameter(g, comps, largest_label) ==
              floyd_warshall_diameter(10, oracle_edges, members));
    }
}

TEST_CASE("yang2023: order for aligned and opposed headings") {
    FeatureConfig config;
    auto aligned = make_trajectory(
        {make_state({{{10.0, 10.0}, 0.7}, {{20.0, 20.0}, 0.7}, {{400.0, 400.0}, 0.7}})},
        BoundaryMode::bounded);
    auto series = extract(aligned, FeatureSet::yang2023, config, /*normalize=*/false);
    CHECK(series.row(0)[4] == doctest::Approx(1.0));

    auto opposed = make_trajectory(
        {make_state({{{10.0, 10.0}, 0.0}, {{20.0, 20.0}, std::numbers::pi}})},
        BoundaryMode::bounded);
    auto series2 = extract(opposed, FeatureSet::yang2023, config, false);
    CHECK(series2.row(0)[4] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("alharthi2022: nearest-neighbour hand example") {
    FeatureConfig config;
    auto traj = make_trajectory(
        {make_state({{{0.0, 0.0}, 0.0}, {{3.0, 4.0}, 0.0}, {{100.0, 100.0}, 0.0}})},
        BoundaryMode::bounded);
    auto series = extract(traj, FeatureSet::alharthi2022, config, false);
    const double expected = (5.0 + 5.0 + std::sqrt(97.0 * 97.0 + 96.0 * 96.0)) / 3.0;
    CHECK(series.row(0)[6] == doctest::Approx(expected));
    CHECK(expected == doctest::Approx(48.82).epsilon(1e-3));
}

TEST_CASE("gomes2013: single-agent normalization example") {
    FeatureConfig config;
    auto traj = make_trajectory({make_state({{{250.0, 250.0}, 0.0}}, 2.0)},
                                BoundaryMode::bounded);
    auto series = extract(traj, FeatureSet::gomes2013, config);
    REQUIRE(series.dimension == 4);
    CHECK(series.row(0)[0] == doctest::Approx(0.5));
    CHECK(series.row(0)[1] == doctest::Approx(0.5));
    CHECK(series.row(0)[2] == doctest::Approx(1.0));
    CHECK(series.row(0)[3] == doctest::Approx(0.5));
}

TEST_CASE("feature sets with neighbour terms reject lone agents") {
    FeatureConfig config;
    auto traj = make_trajectory({make_state({{{250.0, 250.0}, 0.0}})}, BoundaryMode::bounded);
    CHECK_THROWS_AS(extract(traj, FeatureSet::alharthi2022, config), DataError);
    CHECK_THROWS_AS(extract(traj, FeatureSet::gharbi2023, config), DataError);
    CHECK_NOTHROW(extract(traj, FeatureSet::yang2023, config));
}

TEST_CASE("subsample_agents: identity, determinism, errors") {
    auto all = subsample_agents(30, 30, 123);
    std::vector<int> identity(30);
    std::iota(identity.begin(), identity.end(), 0);
    CHECK(all == identity);

    auto a = subsample_agents(40, 30, 7);
    auto b = subsample_agents(40, 30, 7);
    CHECK(a == b);
    CHECK(a.size() == 30);
    CHECK(std::is_sorted(a.begin(), a.end()));
    CHECK(a.back() < 40);
    auto c = subsample_agents(40, 30, 8);
    CHECK(a != c);

    CHECK_THROWS_AS(subsample_agents(10, 11, 1), ConfigError);
}

TEST_CASE("agent-level extraction subsamples 40-agent settings to 30") {
    FeatureConfig config;
    std::vector<AgentState> agents;
    Rng rng(5);
    for (int i = 0; i < 40; ++i) {
        agents.push_back({{rng.uniform(0.0, 500.0), rng.uniform(0.0, 500.0)},
                          rng.uniform(0.0, 2.0 * std::numbers::pi)});
    }
    auto traj = make_trajectory({make_state(agents), make_state(agents)}, BoundaryMode::bounded);
    traj.meta = {Behaviour::reynolds, Setting::s40b, 0, 42};

    auto gomes = extract(traj, FeatureSet::gomes2013, config);
    CHECK(gomes.dimension == 120);
    CHECK(gomes.agent_indices.size() == 30);
    auto gharbi = extract(traj, FeatureSet::gharbi2023, config);
    CHECK(gharbi.dimension == 30);
    CHECK(gharbi.agent_indices == gomes.agent_indices);  // same run seed, same subset

    auto yang = extract(traj, FeatureSet::yang2023, config);
    CHECK(yang.dimension == 6);
    auto alharthi = extract(traj, FeatureSet::alharthi2022, config);
    CHECK(alharthi.dimension == 8);
}

TEST_CASE("normalization clamps to the bounds") {
    FeatureConfig config;
    auto bounds = bounds_table(FeatureSet::alharthi2022, 40, 500.0, 2.0, config);
    REQUIRE(bounds.size() == 8);
    // value at lo -> 0, at hi -> 1, beyond -> clamped.
    CHECK(clamp_unit((bounds[1].lo - bounds[1].lo) / (bounds[1].hi - bounds[1].lo)) == 0.0);
    CHECK(clamp_unit((bounds[1].hi - bounds[1].lo) / (bounds[1].hi - bounds[1].lo)) == 1.0);
    CHECK(clamp_unit((bounds[1].hi * 2 - bounds[1].lo) / (bounds[1].hi - bounds[1].lo)) == 1.0);
}

TEST_CASE("swarm-level features are invariant under agent relabeling") {
    FeatureConfig config;
    Rng rng(99);
    std::vector<AgentState> agents;
    for (int i = 0; i < 12; ++i) {
        agents.push_back({{rng.uniform(0.0, 500.0), rng.uniform(0.0, 500.0)},
                          rng.uniform(0.0, 2.0 * std::numbers::pi)});
    }
    std::vector<AgentState> shuffled = agents;
    for (std::size_t i = shuffled.size(); i > 1; --i) {
        std::swap(shuffled[i - 1], shuffled[rng.bounded(i)]);
    }

    for (auto fs : {FeatureSet::alharthi2022, FeatureSet::yang2023, FeatureSet::gharbi2023}) {
        auto s1 = extract(make_trajectory({make_state(agents)}, BoundaryMode::bounded), fs,
                          config, false);
        auto s2 = extract(make_trajectory({make_state(shuffled)}, BoundaryMode::bounded), fs,
                          config, false);
        REQUIRE(s1.dimension == s2.dimension);
        for (std::size_t f = 0; f < s1.dimension; ++f) {
            CHECK(s1.row(0)[f] == doctest::Approx(s2.row(0)[f]).epsilon(1e-12));
        }
    }
}

TEST_CASE("gharbi2023 values are sorted ascending") {
    FeatureConfig config;
    Rng rng(4);
    std::vector<AgentState> agents;
    for (int i = 0; i < 8; ++i) {
        agents.push_back({{rng.uniform(0.0, 500.0), rng.uniform(0.0, 500.0)}, 0.0});
    }
    auto series = extract(make_trajectory({make_state(agents)}, BoundaryMode::bounded),
                          FeatureSet::gharbi2023, config, false);
    auto row = series.row(0);
    CHECK(std::is_sorted(row.begin(), row.end()));
}

TEST_CASE("all normalized features stay in [0,1] on a real run") {
    SimParams params;
    params.total_steps = 300;
    FeatureConfig config;
    for (auto setting : {Setting::s40b, Setting::s40u}) {
        auto traj = simulate(Behaviour::reynolds, setting, 0, 11, params);
        for (auto fs : kAllFeatureSets) {
            auto series = extract(traj, fs, config);
            CHECK(series.step_count() == 50);
            bool in_range = true;
            for (double v : series.values) in_range = in_range && v >= 0.0 && v <= 1.0;
            CHECK(in_range);
        }
    }
}

TEST_CASE("swarm mode index counts agents near the densest cell") {
    FeatureConfig config;  // tau_mode 0.5 -> radius 125 of cell centre
    std::vector<AgentState> agents;
    // 5 agents piled in the cell [0,25)x[0,25); 2 outliers far beyond 125px.
    for (int i = 0; i < 5; ++i) {
        agents.push_back({{5.0 + i, 5.0}, 0.0});
    }
    agents.push_back({{400.0, 400.0}, 0.0});
    agents.push_back({{450.0, 100.0}, 0.0});
    auto series = extract(make_trajectory({make_state(agents)}, BoundaryMode::bounded),
                          FeatureSet::alharthi2022, config, false);
    CHECK(series.row(0)[2] == doctest::Approx(5.0 / 7.0));
}

TEST_CASE("maximum swarm shift tracks the centroid displacement") {
    FeatureConfig config;
    // Two steps: every agent moves +2 in x -> centroid shift 2 at step 1.
    std::vector<AgentState> a0 = {{{10.0, 10.0}, 0.0}, {{30.0, 30.0}, 0.0}};
    std::vector<AgentState> a1 = {{{12.0, 10.0}, 0.0}, {{32.0, 30.0}, 0.0}};
    auto traj = make_trajectory({make_state(a0), make_state(a1)}, BoundaryMode::bounded);
    auto series = extract(traj, FeatureSet::alharthi2022, config, false);
    CHECK(series.row(0)[0] == doctest::Approx(0.0));  // no history at step 0
    CHECK(series.row(1)[0] == doctest::Approx(2.0));
}
