#include "swarmsim/proximity_graph.hpp"

#include <algorithm>
#include <queue>

namespace swarmsim {

ProximityGraph proximity_graph(std::span<const Vec2> positions, double radius,
                               const ArenaConfig& arena) {
    ProximityGraph g;
    g.node_count = static_cast<int>(positions.size());
    g.radius = radius;
    g.adjacency.resize(positions.size());
    const double radius_sq = radius * radius;
    for (int i = 0; i < g.node_count; ++i) {
        for (int j = i + 1; j < g.node_count; ++j) {
            if (distance_sq(positions[i], positions[j], arena) <= radius_sq) {
                g.edges.emplace_back(i, j);
                g.adjacency[i].push_back(j);
                g.adjacency[j].push_back(i);
            }
        }
    }
    return g;
}

ComponentInfo connected_components(const ProximityGraph& graph) {
    ComponentInfo info;
    info.label.assign(graph.node_count, -1);
    for (int start = 0; start < graph.node_count; ++start) {
        if (info.label[start] != -1) continue;
        int id = info.count++;
        info.sizes.push_back(0);
        std::queue<int> queue;
        queue.push(start);
        info.label[start] = id;
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop();
            ++info.sizes[id];
            for (int v : graph.adjacency[u]) {
                if (info.label[v] == -1) {
                    info.label[v] = id;
                    queue.push(v);
                }
            }
        }
    }
    return info;
}

int ComponentInfo::largest() const {
    int best = 0;
    for (int c = 1; c < count; ++c) {
        if (sizes[c] > sizes[best]) best = c;
    }
    return best;
}

int ComponentInfo::singleton_count() const {
    return static_cast<int>(std::count(sizes.begin(), sizes.end(), 1));
}

int component_diameter(const ProximityGraph& graph, const ComponentInfo& comps, int component) {
    int diameter = 0;
    std::vector<int> dist(graph.node_count);
    for (int source = 0; source < graph.node_count; ++source) {
        if (comps.label[source] != component) continue;
        std::fill(dist.begin(), dist.end(), -1);
        std::queue<int> queue;
        queue.push(source);
        dist[source] = 0;
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop();
            diameter = std::max(diameter, dist[u]);
            for (int v : graph.adjacency[u]) {
                if (dist[v] == -1) {
                    dist[v] = dist[u] + 1;
                    queue.push(v);
                }
            }
        }
    }
    return diameter;
}

}  // namespace swarmsim
