#pragma once

#include <span>
#include <utility>
#include <vector>

#include "swarmsim/arena.hpp"
#include "swarmsim/vec2.hpp"

namespace swarmsim {

// Undirected graph over agent indices: edge (i,j) present iff the pairwise
// distance under the arena metric is <= radius. Exact all-pairs construction.
struct ProximityGraph {
    int node_count = 0;
    double radius = 0.0;
    std::vector<std::pair<int, int>> edges;  // i < j
    std::vector<std::vector<int>> adjacency;

    int edge_count() const { return static_cast<int>(edges.size()); }
};

ProximityGraph proximity_graph(std::span<const Vec2> positions, double radius,
                               const ArenaConfig& arena);

// Component labels are assigned by BFS from the lowest-index unvisited node,
// so label order is deterministic and label 0 contains node 0.
struct ComponentInfo {
    std::vector<int> label;  // per node
    std::vector<int> sizes;  // per component
    int count = 0;

    // Largest component; ties go to the lower label (earliest node).
    int largest() const;
    int singleton_count() const;
};

ComponentInfo connected_components(const ProximityGraph& graph);

// Longest shortest path in hops within one component (0 for singletons).
int component_diameter(const ProximityGraph& graph, const ComponentInfo& comps, int component);

}  // namespace swarmsim
