#pragma once

// Small independent checkers used as oracles by the unit tests.

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

#include "mcsf/graph.hpp"

namespace brute {

// Largest matching by trying every edge subset.
inline int matching_size(const mcsf::Graph& g) {
    auto edges = g.edges();
    const std::size_t m = edges.size();
    int best = 0;
    for (std::uint32_t s = 0; s < (1u << m); ++s) {
        std::uint64_t used = 0;
        bool ok = true;
        for (std::size_t i = 0; i < m && ok; ++i) {
            if (!(s >> i & 1)) continue;
            auto [u, v] = edges[i];
            if ((used >> u & 1) || (used >> v & 1)) ok = false;
            used |= (1ull << u) | (1ull << v);
        }
        if (ok) best = std::max(best, __builtin_popcount(s));
    }
    return best;
}

// Smallest edge cover by shortest path over covered-vertex masks.
inline int edge_cover_size(const mcsf::Graph& g) {
    const int n = g.vertex_count();
    const std::uint32_t full = (1u << n) - 1;
    std::vector<int> dist(full + 1, 1 << 20);
    dist[0] = 0;
    for (std::uint32_t mask = 0; mask <= full; ++mask) {
        if (dist[mask] >= (1 << 20)) continue;
        for (auto [u, v] : g.edges()) {
            std::uint32_t next = mask | (1u << u) | (1u << v);
            dist[next] = std::min(dist[next], dist[mask] + 1);
        }
    }
    return dist[full];
}

inline int vertex_cover_size(const mcsf::Graph& g) {
    const int n = g.vertex_count();
    int best = n;
    for (std::uint32_t s = 0; s < (1u << n); ++s) {
        bool ok = true;
        for (auto [u, v] : g.edges())
            if (!(s >> u & 1) && !(s >> v & 1)) ok = false;
        if (ok) best = std::min(best, __builtin_popcount(s));
    }
    return best;
}

// Minimum dominating sets by subset enumeration.
inline std::vector<std::vector<int>> minimum_dominating_sets(const mcsf::Graph& g) {
    const int n = g.vertex_count();
    std::vector<std::vector<int>> out;
    int best = n + 1;
    for (std::uint32_t s = 0; s < (1u << n); ++s) {
        int size = __builtin_popcount(s);
        if (size > best) continue;
        bool ok = true;
        for (int v = 0; v < n && ok; ++v) {
            if (s >> v & 1) continue;
            bool hit = false;
            for (int w : g.neighbors(v)) hit |= (s >> w & 1) != 0;
            ok = hit;
        }
        if (!ok) continue;
        if (size < best) {
            best = size;
            out.clear();
        }
        std::vector<int> d;
        for (int v = 0; v < n; ++v)
            if (s >> v & 1) d.push_back(v);
        out.push_back(d);
    }
    return out;
}

} // namespace brute

namespace brute {

// Star-count vectors of every edge subset whose non-trivial components are
// stars with at most delta+1 vertices.
inline std::set<mcsf::StarCountVector> star_vectors_by_edges(const mcsf::Graph& g, int delta) {
    auto edges = g.edges();
    const int n = g.vertex_count();
    std::set<mcsf::StarCountVector> out;
    for (std::uint32_t s = 0; s < (1u << edges.size()); ++s) {
        std::vector<int> deg(n, 0);
        for (std::size_t i = 0; i < edges.size(); ++i)
            if (s >> i & 1) {
                ++deg[edges[i].first];
                ++deg[edges[i].second];
            }
        // A forest of stars: every edge has an endpoint of degree 1, and the
        // other endpoint is either degree 1 too or a centre whose edges all
        // lead to degree-1 vertices.
        bool ok = true;
        std::vector<int> centre_size(n, 0);
        int single_edges = 0;
        for (std::size_t i = 0; i < edges.size() && ok; ++i) {
            if (!(s >> i & 1)) continue;
            auto [u, v] = edges[i];
            if (deg[u] > 1 && deg[v] > 1) ok = false;
            else if (deg[u] == 1 && deg[v] == 1) ++single_edges;
        }
        if (!ok) continue;
        mcsf::StarCountVector vec;
        for (int v = 0; v < n; ++v)
            if (deg[v] > 1) {
                if (deg[v] + 1 > delta + 1) ok = false;
                else vec.add(deg[v] + 1, 1);
            }
        if (!ok) continue;
        if (single_edges) vec.add(2, single_edges);
        out.insert(vec);
    }
    return out;
}

} // namespace brute
