#include "swarmsim/features.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "swarmsim/errors.hpp"
#include "swarmsim/io_util.hpp"
#include "swarmsim/proximity_graph.hpp"

namespace swarmsim {

namespace {

std::vector<Vec2> positions_of(const SwarmState& state) {
    std::vector<Vec2> p;
    p.reserve(state.agents.size());
    for (const auto& a : state.agents) p.push_back(a.position);
    return p;
}

Vec2 raw_centroid(const std::vector<Vec2>& positions) {
    Vec2 sum{};
    for (const auto& p : positions) sum += p;
    return sum / static_cast<double>(positions.size());
}

// Mean per-agent displacement between consecutive states, i.e. the centroid
// displacement lifted through the minimum image in unbounded mode.
Vec2 centroid_shift(const SwarmState& prev, const SwarmState& curr, const ArenaConfig& arena) {
    Vec2 sum{};
    for (std::size_t i = 0; i < curr.agents.size(); ++i) {
        sum += displacement(prev.agents[i].position, curr.agents[i].position, arena);
    }
    return sum / static_cast<double>(curr.agents.size());
}

double nearest_neighbour_distance(const std::vector<Vec2>& positions, std::size_t i,
                                  const ArenaConfig& arena) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < positions.size(); ++j) {
        if (j == i) continue;
        best = std::min(best, distance_sq(positions[i], positions[j], arena));
    }
    return std::sqrt(best);
}

// Convex hull area by monotone chain + shoelace. Returns 0 for < 3 distinct
// or collinear points.
double convex_hull_area(std::vector<Vec2> pts) {
    std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const std::size_t n = pts.size();
    if (n < 3) return 0.0;
    auto cross = [](const Vec2& o, const Vec2& a, const Vec2& b) {
        return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
    };
    std::vector<Vec2> hull(2 * n);
    std::size_t h = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (h >= 2 && cross(hull[h - 2], hull[h - 1], pts[i]) <= 0.0) --h;
        hull[h++] = pts[i];
    }
    for (std::size_t i = n - 1, lower = h + 1; i-- > 0;) {
        while (h >= lower && cross(hull[h - 2], hull[h - 1], pts[i]) <= 0.0) --h;
        hull[h++] = pts[i];
    }
    hull.resize(h - 1);
    if (hull.size() < 3) return 0.0;
    double twice_area = 0.0;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const Vec2& a = hull[i];
        const Vec2& b = hull[(i + 1) % hull.size()];
        twice_area += a.x * b.y - a.y * b.x;
    }
    return std::abs(twice_area) / 2.0;
}

double bounding_box_area(const std::vector<Vec2>& pts) {
    double min_x = pts[0].x, max_x = pts[0].x, min_y = pts[0].y, max_y = pts[0].y;
    for (const auto& p : pts) {
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
    return (max_x - min_x) * (max_y - min_y);
}

// Fraction of agents within tau_mode*(side/2) of the densest grid cell's
// centre. Cell ties resolve to the smallest row-major index.
double swarm_mode_index(const std::vector<Vec2>& positions, const ArenaConfig& arena,
                        const FeatureConfig& config) {
    const int cells = std::max(1, static_cast<int>(std::ceil(arena.side / config.mode_cell_size)));
    std::vector<int> counts(static_cast<std::size_t>(cells) * cells, 0);
    auto cell_of = [&](double v) {
        int c = static_cast<int>(v / config.mode_cell_size);
        return std::clamp(c, 0, cells - 1);
    };
    for (const auto& p : positions) {
        counts[static_cast<std::size_t>(cell_of(p.y)) * cells + cell_of(p.x)]++;
    }
    std::size_t densest = 0;
    for (std::size_t c = 1; c < counts.size(); ++c) {
        if (counts[c] > counts[densest]) densest = c;
    }
    const Vec2 centre{(static_cast<double>(densest % cells) + 0.5) * config.mode_cell_size,
                      (static_cast<double>(densest / cells) + 0.5) * config.mode_cell_size};
    const double radius = config.tau_mode * arena.side / 2.0;
    int inside = 0;
    for (const auto& p : positions) {
        if (distance(p, centre, arena) <= radius) ++inside;
    }
    return static_cast<double>(inside) / static_cast<double>(positions.size());
}

void alharthi_row(const Trajectory& traj, int t, const FeatureConfig& config, double* out) {
    const SwarmState& state = traj.states[t];
    const auto positions = positions_of(state);
    const std::size_t n = positions.size();
    const ArenaConfig& arena = traj.arena;

    double max_shift = 0.0;
    for (int k = std::max(1, t - config.shift_window + 1); k <= t; ++k) {
        max_shift = std::max(max_shift,
                             centroid_shift(traj.states[k - 1], traj.states[k], arena).norm());
    }

    const Vec2 centroid = raw_centroid(positions);
    const Vec2 centre{arena.side / 2.0, arena.side / 2.0};

    auto graph = proximity_graph(positions, config.connection_radius, arena);
    auto comps = connected_components(graph);
    int longest_path = graph.edges.empty() ? 0 : component_diameter(graph, comps, comps.largest());

    double max_radius = 0.0;
    for (const auto& p : positions) max_radius = std::max(max_radius, (p - centroid).norm());

    double degree_sum = 0.0;
    for (const auto& adj : graph.adjacency) degree_sum += static_cast<double>(adj.size());

    double nn_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) nn_sum += nearest_neighbour_distance(positions, i, arena);

    out[0] = max_shift;
    out[1] = (centroid - centre).norm();
    out[2] = swarm_mode_index(positions, arena, config);
    out[3] = static_cast<double>(longest_path);
    out[4] = max_radius;
    out[5] = degree_sum / (static_cast<double>(n) * static_cast<double>(n - 1));
    out[6] = nn_sum / static_cast<double>(n);
    out[7] = static_cast<double>(graph.edge_count()) / static_cast<double>(n);
}

void yang_row(const Trajectory& traj, int t, const FeatureConfig& config, double* out) {
    const SwarmState& state = traj.states[t];
    const auto positions = positions_of(state);
    const std::size_t n = positions.size();
    const ArenaConfig& arena = traj.arena;

    int collisions = 0;
    const double coll_sq = config.collision_radius * config.collision_radius;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (distance_sq(positions[i], positions[j], arena) < coll_sq) ++collisions;
        }
    }

    double hull = convex_hull_area(positions);
    double density = hull > 0.0 ? static_cast<double>(n) / hull
                                : static_cast<double>(n) / (1.0 + bounding_box_area(positions));

    auto graph = proximity_graph(positions, config.connection_radius, arena);
    auto comps = connected_components(graph);

    out[0] = static_cast<double>(collisions);
    out[1] = density;
    out[2] = static_cast<double>(comps.sizes[comps.largest()]) / static_cast<double>(n);
    out[3] = static_cast<double>(comps.singleton_count());
    out[4] = order_parameter(state);
    out[5] = static_cast<double>(comps.count);
}

void gomes_row(const SwarmState& state, double* out) {
    for (std::size_t i = 0; i < state.agents.size(); ++i) {
        const auto& a = state.agents[i];
        const Vec2 v = state.speed * unit_from_angle(a.heading);
        out[4 * i + 0] = a.position.x;
        out[4 * i + 1] = a.position.y;
        out[4 * i + 2] = v.x;
        out[4 * i + 3] = v.y;
    }
}

void gharbi_row(const SwarmState& state, const ArenaConfig& arena, double* out) {
    const auto positions = positions_of(state);
    for (std::size_t i = 0; i < positions.size(); ++i) {
        out[i] = nearest_neighbour_distance(positions, i, arena);
    }
    // Sorted ascending so the feature is invariant under agent relabeling.
    std::sort(out, out + positions.size());
}

}  // namespace

const char* to_string(FeatureSet fs) {
    switch (fs) {
        case FeatureSet::alharthi2022: return "alharthi2022";
        case FeatureSet::gomes2013: return "gomes2013";
        case FeatureSet::yang2023: return "yang2023";
        case FeatureSet::gharbi2023: return "gharbi2023";
    }
    throw ConfigError("invalid feature set enum value");
}

FeatureSet feature_set_from_string(std::string_view name) {
    for (FeatureSet fs : kAllFeatureSets) {
        if (name == to_string(fs)) return fs;
    }
    throw ConfigError("unknown feature set: " + std::string(name));
}

bool is_agent_level(FeatureSet fs) {
    return fs == FeatureSet::gomes2013 || fs == FeatureSet::gharbi2023;
}

void FeatureConfig::validate() const {
    if (!(connection_radius > 0.0)) throw ConfigError("connection_radius must be > 0");
    if (!(collision_radius > 0.0)) throw ConfigError("collision_radius must be > 0");
    if (!(tau_mode > 0.0)) throw ConfigError("tau_mode must be > 0");
    if (!(mode_cell_size > 0.0)) throw ConfigError("mode_cell_size must be > 0");
    if (shift_window < 1) throw ConfigError("shift_window must be >= 1");
    if (subsample_size < 1) throw ConfigError("subsample_size must be >= 1");
}

int feature_dimension(FeatureSet fs, int n_agents) {
    switch (fs) {
        case FeatureSet::alharthi2022: return 8;
        case FeatureSet::yang2023: return 6;
        case FeatureSet::gomes2013: return 4 * n_agents;
        case FeatureSet::gharbi2023: return n_agents;
    }
    throw ConfigError("invalid feature set enum value");
}

std::vector<int> subsample_agents(int n_agents, int k, std::uint64_t seed_value) {
    if (k > n_agents) throw ConfigError("subsample size exceeds agent count");
    std::vector<int> indices(n_agents);
    for (int i = 0; i < n_agents; ++i) indices[i] = i;
    Rng rng(seed_value);
    // Partial Fisher-Yates: the first k entries become the chosen subset.
    for (int i = 0; i < k; ++i) {
        int j = i + static_cast<int>(rng.bounded(static_cast<std::uint64_t>(n_agents - i)));
        std::swap(indices[i], indices[j]);
    }
    indices.resize(k);
    std::sort(indices.begin(), indices.end());
    return indices;
}

Trajectory restrict_agents(const Trajectory& traj, std::span<const int> indices) {
    Trajectory out;
    out.meta = traj.meta;
    out.arena = traj.arena;
    out.speed = traj.speed;
    out.transient_steps = traj.transient_steps;
    out.states.reserve(traj.states.size());
    for (const auto& state : traj.states) {
        SwarmState s;
        s.step_index = state.step_index;
        s.speed = state.speed;
        s.agents.reserve(indices.size());
        for (int idx : indices) s.agents.push_back(state.agents.at(idx));
        out.states.push_back(std::move(s));
    }
    return out;
}

std::vector<FeatureBounds> bounds_table(FeatureSet fs, int n_agents, double side, double speed,
                                        const FeatureConfig& config) {
    const double n = static_cast<double>(n_agents);
    // Packing scale: the nearest-neighbour distance of a uniform spread.
    const double nn_scale = side / std::sqrt(n);
    switch (fs) {
        case FeatureSet::alharthi2022:
            return {
                {0.0, speed},             // maximum swarm shift (per-step centroid displacement)
                {0.0, side / 2.0},        // centre-of-mass distance, centre to wall
                {0.0, 1.0},               // swarm mode index
                {0.0, n - 1.0},           // longest path, hops
                {0.0, side / 2.0},        // maximum radius
                {0.0, 1.0},               // average local density
                {0.0, nn_scale},          // average nearest-neighbour distance
                {0.0, (n - 1.0) / 2.0},   // beta index, |E|/|N|
            };
        case FeatureSet::yang2023: {
            // Reference density: the swarm packed into one interaction disc.
            const double rho_ref =
                n / (std::numbers::pi * config.connection_radius * config.connection_radius);
            return {
                {0.0, n * (n - 1.0) / 2.0},  // collision count
                {0.0, rho_ref},              // flock density
                {0.0, 1.0},                  // grouping
                {0.0, n},                    // straggler count
                {0.0, 1.0},                  // order
                {0.0, n},                    // subgroup count
            };
        }
        case FeatureSet::gomes2013: {
            std::vector<FeatureBounds> b;
            b.reserve(4 * static_cast<std::size_t>(n_agents));
            for (int i = 0; i < n_agents; ++i) {
                b.push_back({0.0, side});        // x
                b.push_back({0.0, side});        // y
                b.push_back({-speed, speed});    // vx -> v/(2*speed) + 0.5
                b.push_back({-speed, speed});    // vy
            }
            return b;
        }
        case FeatureSet::gharbi2023:
            return std::vector<FeatureBounds>(n_agents, FeatureBounds{0.0, nn_scale});
    }
    throw ConfigError("invalid feature set enum value");
}

double clamp_unit(double v) { return std::clamp(v, 0.0, 1.0); }

FeatureSeries extract(const Trajectory& traj, FeatureSet fs, const FeatureConfig& config,
                      bool normalize) {
    config.validate();
    if (traj.states.empty()) throw DataError("empty trajectory");
    const int n_agents = static_cast<int>(traj.states.front().agents.size());
    const bool needs_neighbours =
        fs == FeatureSet::alharthi2022 || fs == FeatureSet::gharbi2023;
    if (needs_neighbours && n_agents < 2) {
        throw DataError("nearest-neighbour features require at least 2 agents");
    }

    FeatureSeries series;
    series.meta = traj.meta;
    series.feature_set = fs;
    series.bounds_version = config.bounds_version;
    series.first_step = traj.transient_steps;

    const Trajectory* source = &traj;
    Trajectory restricted;
    if (is_agent_level(fs)) {
        if (n_agents > config.subsample_size) {
            std::uint64_t seed = mix_seed(
                {run_seed(traj.meta.base_seed, traj.meta.behaviour, traj.meta.setting,
                          traj.meta.replicate),
                 fnv1a64("subsample")});
            series.agent_indices = subsample_agents(n_agents, config.subsample_size, seed);
            restricted = restrict_agents(traj, series.agent_indices);
            source = &restricted;
        } else {
            series.agent_indices.resize(n_agents);
            for (int i = 0; i < n_agents; ++i) series.agent_indices[i] = i;
        }
        if (fs == FeatureSet::gharbi2023 && source->states.front().agents.size() < 2) {
            throw DataError("nearest-neighbour features require at least 2 agents");
        }
    }

    const int eff_agents = static_cast<int>(source->states.front().agents.size());
    series.dimension = static_cast<std::size_t>(feature_dimension(fs, eff_agents));

    const int first = traj.transient_steps;
    const int total = traj.total_steps();
    if (first >= total) throw DataError("no post-transient steps to extract");
    series.values.resize(static_cast<std::size_t>(total - first) * series.dimension);

    for (int t = first; t < total; ++t) {
        double* row = series.values.data() + static_cast<std::size_t>(t - first) * series.dimension;
        switch (fs) {
            case FeatureSet::alharthi2022: alharthi_row(*source, t, config, row); break;
            case FeatureSet::yang2023: yang_row(*source, t, config, row); break;
            case FeatureSet::gomes2013: gomes_row(source->states[t], row); break;
            case FeatureSet::gharbi2023: gharbi_row(source->states[t], source->arena, row); break;
        }
    }

    if (normalize) {
        const auto bounds =
            bounds_table(fs, eff_agents, traj.arena.side, traj.speed, config);
        const std::size_t steps = series.step_count();
        for (std::size_t s = 0; s < steps; ++s) {
            double* row = series.values.data() + s * series.dimension;
            for (std::size_t f = 0; f < series.dimension; ++f) {
                const auto& b = bounds[f];
                row[f] = clamp_unit((row[f] - b.lo) / (b.hi - b.lo));
            }
        }
    }
    return series;
}

}  // namespace swarmsim
