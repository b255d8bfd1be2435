#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "mcsf/graph.hpp"
#include "mcsf/treewidth_dp.hpp"

namespace mcsf {

struct EptasConfig {
    double epsilon = 0.5;

    void validate() const {
        if (!(epsilon > 0.0 && epsilon < 1.0)) throw PreconditionError("epsilon must lie in (0,1)");
    }

    // ceil(2/epsilon), guarded against 2/0.4 landing a hair above 5.
    int k() const {
        validate();
        return static_cast<int>(std::ceil(2.0 / epsilon - 1e-9));
    }
};

// Drops every vertex whose BFS level l satisfies l = 3r+2 (mod 3k).
inline Subgraph prune_levels(const Graph& g, int r, int k) {
    if (k < 1 || r < 0 || r >= k) throw PreconditionError("prune_levels needs 0 <= r < k");
    const auto level = bfs_levels(g);
    std::vector<Vertex> keep;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (level[v] % (3 * k) != 3 * r + 2) keep.push_back(v);
    return induced_subgraph(g, keep);
}

struct EptasResult {
    long size = 0;
    StarCountVector vector;
    int r1 = 0;
    int r2 = 0;
    int k = 0;
};

// Best exact solution over all k^2 shift pairs; the first pair in
// lexicographic order wins ties. At least (1-epsilon) OPT on planar inputs of
// bounded degree, never above OPT.
inline EptasResult solve_eptas(const Graph& g1, const Graph& g2, const EptasConfig& cfg = {}) {
    EptasResult best;
    best.k = cfg.k();
    std::vector<Graph> pruned2;
    for (int r2 = 0; r2 < best.k; ++r2) pruned2.push_back(prune_levels(g2, r2, best.k).graph);
    bool first = true;
    for (int r1 = 0; r1 < best.k; ++r1) {
        const auto h1 = prune_levels(g1, r1, best.k).graph;
        for (int r2 = 0; r2 < best.k; ++r2) {
            const auto r = tw::solve_tw(h1, pruned2[r2]);
            if (first || r.size > best.size) {
                best.size = r.size;
                best.vector = r.vector;
                best.r1 = r1;
                best.r2 = r2;
                first = false;
            }
        }
    }
    return best;
}

} // namespace mcsf
