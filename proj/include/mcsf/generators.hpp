#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "mcsf/graph.hpp"

namespace mcsf::gen {

// Erdos-Renyi G(n, p).
template <class Rng>
Graph random_graph(int n, double p, Rng& rng) {
    std::bernoulli_distribution coin(p);
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin(rng)) edges.emplace_back(u, v);
    return Graph(n, edges);
}

// Graph from the label-th bit pattern over the n(n-1)/2 vertex pairs;
// enumerating label over [0, 2^(n(n-1)/2)) lists every labelled graph.
inline Graph graph_from_bits(int n, std::uint64_t label) {
    std::vector<Edge> edges;
    int bit = 0;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v, ++bit)
            if (label >> bit & 1) edges.emplace_back(u, v);
    return Graph(n, edges);
}

// Random graph whose edges all touch a random set of at most `cover`
// vertices, so its vertex cover number is at most `cover`.
template <class Rng>
Graph random_small_cover_graph(int n, int cover, double p, Rng& rng) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<char> in_cover(n, 0);
    for (int i = 0; i < std::min(cover, n); ++i) in_cover[perm[i]] = 1;
    std::bernoulli_distribution coin(p);
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if ((in_cover[u] || in_cover[v]) && coin(rng)) edges.emplace_back(u, v);
    return Graph(n, edges);
}

// Random spanning subgraph of a grid close to `n` vertices with degrees
// capped at max_deg. Planar by construction.
template <class Rng>
Graph random_planar_grid(int n, int max_deg, double keep, Rng& rng) {
    int cols = std::max(1, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n)))));
    auto grid = graphs::grid((n + cols - 1) / cols, cols);
    std::vector<Vertex> first_n(n);
    std::iota(first_n.begin(), first_n.end(), 0);
    auto base = induced_subgraph(grid, first_n).graph;
    auto edges = base.edges();
    std::shuffle(edges.begin(), edges.end(), rng);
    std::bernoulli_distribution coin(keep);
    std::vector<int> deg(n, 0);
    std::vector<Edge> kept;
    for (auto [u, v] : edges) {
        if (!coin(rng) || deg[u] >= max_deg || deg[v] >= max_deg) continue;
        ++deg[u];
        ++deg[v];
        kept.emplace_back(u, v);
    }
    return Graph(n, kept);
}

// Random outerplanar graph: a Hamiltonian cycle (or path) plus random
// non-crossing chords, degrees capped at max_deg.
template <class Rng>
Graph random_outerplanar(int n, int max_deg, Rng& rng) {
    std::vector<Edge> edges;
    std::vector<int> deg(n, 0);
    auto add = [&](int u, int v) {
        if (deg[u] >= max_deg || deg[v] >= max_deg) return false;
        ++deg[u];
        ++deg[v];
        edges.emplace_back(std::min(u, v), std::max(u, v));
        return true;
    };
    for (int i = 0; i + 1 < n; ++i) add(i, i + 1);
    std::bernoulli_distribution close(0.5);
    if (n >= 3 && close(rng)) add(0, n - 1);
    // Chords (a, b) with a < b cross (c, d) iff exactly one of c, d lies
    // strictly between a and b while the other lies strictly outside.
    std::vector<Edge> chords;
    std::uniform_int_distribution<int> pick(0, std::max(0, n - 1));
    for (int attempt = 0; attempt < 2 * n; ++attempt) {
        int a = pick(rng), b = pick(rng);
        if (a > b) std::swap(a, b);
        if (b - a < 2 || (a == 0 && b == n - 1)) continue;
        bool crossing = false;
        for (auto [c, d] : chords) {
            bool c_in = a < c && c < b, d_in = a < d && d < b;
            bool c_out = c < a || c > b, d_out = d < a || d > b;
            if ((c_in && d_out) || (c_out && d_in)) crossing = true;
        }
        if (crossing || std::find(edges.begin(), edges.end(), Edge{a, b}) != edges.end()) continue;
        if (add(a, b)) chords.emplace_back(a, b);
    }
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    for (auto& [u, v] : edges) {
        u = perm[u];
        v = perm[v];
    }
    return Graph(n, edges);
}

} // namespace mcsf::gen
