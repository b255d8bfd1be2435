#pragma once

#include <algorithm>
#include <optional>
#include <queue>
#include <vector>

#include "mcsf/graph.hpp"

namespace mcsf {

namespace detail {

// Edmonds' blossom algorithm, O(n^3). mate[v] is the partner of v or -1.
class Blossom {
public:
    explicit Blossom(const Graph& g)
        : g_(g), n_(g.vertex_count()), mate_(n_, -1), parent_(n_), base_(n_), used_(n_), blossom_(n_) {}

    std::vector<Vertex> run() {
        // Greedy warm start.
        for (Vertex v = 0; v < n_; ++v) {
            if (mate_[v] >= 0) continue;
            for (Vertex w : g_.neighbors(v))
                if (mate_[w] < 0) {
                    mate_[v] = w;
                    mate_[w] = v;
                    break;
                }
        }
        for (Vertex root = 0; root < n_; ++root) {
            if (mate_[root] >= 0) continue;
            Vertex end = find_path(root);
            while (end >= 0) {
                Vertex pv = parent_[end];
                Vertex next = mate_[pv];
                mate_[end] = pv;
                mate_[pv] = end;
                end = next;
            }
        }
        return mate_;
    }

private:
    Vertex lca(Vertex a, Vertex b) {
        std::vector<char> seen(n_, 0);
        for (;;) {
            a = base_[a];
            seen[a] = 1;
            if (mate_[a] < 0) break;
            a = parent_[mate_[a]];
        }
        for (;;) {
            b = base_[b];
            if (seen[b]) return b;
            b = parent_[mate_[b]];
        }
    }

    void mark_path(Vertex v, Vertex b, Vertex child) {
        while (base_[v] != b) {
            blossom_[base_[v]] = blossom_[base_[mate_[v]]] = 1;
            parent_[v] = child;
            child = mate_[v];
            v = parent_[mate_[v]];
        }
    }

    Vertex find_path(Vertex root) {
        std::fill(used_.begin(), used_.end(), 0);
        std::fill(parent_.begin(), parent_.end(), -1);
        for (Vertex i = 0; i < n_; ++i) base_[i] = i;
        used_[root] = 1;
        std::queue<Vertex> q;
        q.push(root);
        while (!q.empty()) {
            Vertex v = q.front();
            q.pop();
            for (Vertex to : g_.neighbors(v)) {
                if (base_[v] == base_[to] || mate_[v] == to) continue;
                if (to == root || (mate_[to] >= 0 && parent_[mate_[to]] >= 0)) {
                    Vertex cur = lca(v, to);
                    std::fill(blossom_.begin(), blossom_.end(), 0);
                    mark_path(v, cur, to);
                    mark_path(to, cur, v);
                    for (Vertex i = 0; i < n_; ++i) {
                        if (!blossom_[base_[i]]) continue;
                        base_[i] = cur;
                        if (!used_[i]) {
                            used_[i] = 1;
                            q.push(i);
                        }
                    }
                } else if (parent_[to] < 0) {
                    parent_[to] = v;
                    if (mate_[to] < 0) return to;
                    used_[mate_[to]] = 1;
                    q.push(mate_[to]);
                }
            }
        }
        return -1;
    }

    const Graph& g_;
    int n_;
    std::vector<Vertex> mate_, parent_, base_;
    std::vector<char> used_, blossom_;
};

} // namespace detail

// Maximum-cardinality matching of a general graph. Edges come back as (u, v)
// with u < v, sorted.
inline std::vector<Edge> max_matching(const Graph& g) {
    auto mate = detail::Blossom(g).run();
    std::vector<Edge> out;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (mate[v] > v) out.emplace_back(v, mate[v]);
    return out;
}

inline bool is_matching(const Graph& g, const std::vector<Edge>& m) {
    std::vector<char> used(g.vertex_count(), 0);
    for (auto [u, v] : m) {
        if (!g.has_edge(u, v) || used[u] || used[v]) return false;
        used[u] = used[v] = 1;
    }
    return true;
}

// Star forest spanned by the edges of a matching; each edge is a size-2 star.
inline std::pair<StarForest, Embedding> matching_forest(const std::vector<Edge>& m) {
    Embedding emb;
    for (auto [u, v] : m) emb.stars.push_back({u, v});
    return {StarForest(std::vector<int>(m.size(), 2)), std::move(emb)};
}

struct EdgeCover {
    std::vector<Edge> edges;  // (u, v) with u < v, sorted
    StarForest forest;
    Embedding embedding;
};

// Minimum edge cover: a maximum matching plus one edge per unmatched vertex
// to a (necessarily matched) neighbour. Each matching edge collects its
// attachments on one endpoint only, else the two attachments and the edge
// would form an augmenting path; so the result is a spanning star forest.
inline EdgeCover min_edge_cover(const Graph& g) {
    const int n = g.vertex_count();
    for (Vertex v = 0; v < n; ++v)
        if (g.degree(v) == 0)
            throw PreconditionError("isolated vertex " + std::to_string(v) + " has no covering edge");
    auto mate = detail::Blossom(g).run();
    std::vector<std::vector<Vertex>> attached(n);
    for (Vertex v = 0; v < n; ++v) {
        if (mate[v] >= 0) continue;
        Vertex w = g.neighbors(v).front();
        attached[w].push_back(v);
    }
    EdgeCover out;
    std::vector<int> sizes;
    for (Vertex a = 0; a < n; ++a) {
        Vertex b = mate[a];
        if (b < a) continue;
        Vertex centre = attached[b].empty() ? a : b;
        Vertex other = centre == a ? b : a;
        std::vector<Vertex> star{centre, other};
        star.insert(star.end(), attached[centre].begin(), attached[centre].end());
        for (std::size_t i = 1; i < star.size(); ++i)
            out.edges.emplace_back(std::min(centre, star[i]), std::max(centre, star[i]));
        sizes.push_back(static_cast<int>(star.size()));
        out.embedding.stars.push_back(std::move(star));
    }
    std::sort(out.edges.begin(), out.edges.end());
    out.forest = StarForest(std::move(sizes));
    return out;
}

namespace detail {

inline bool cover_branch(const std::vector<Edge>& edges, std::vector<char>& in_cover, int budget,
                         std::vector<Vertex>& chosen) {
    const Edge* open = nullptr;
    for (const auto& e : edges)
        if (!in_cover[e.first] && !in_cover[e.second]) {
            open = &e;
            break;
        }
    if (!open) return true;
    if (budget == 0) return false;
    for (Vertex pick : {open->first, open->second}) {
        in_cover[pick] = 1;
        chosen.push_back(pick);
        if (cover_branch(edges, in_cover, budget - 1, chosen)) return true;
        chosen.pop_back();
        in_cover[pick] = 0;
    }
    return false;
}

} // namespace detail

// A minimum vertex cover if its size is at most k, otherwise nullopt.
// Iterative deepening over the budget, so the first cover found is minimum.
inline std::optional<std::vector<Vertex>> min_vertex_cover(const Graph& g, int k) {
    if (k < 0) throw PreconditionError("negative cover bound");
    const auto edges = g.edges();
    for (int budget = 0; budget <= k; ++budget) {
        std::vector<char> in_cover(g.vertex_count(), 0);
        std::vector<Vertex> chosen;
        if (detail::cover_branch(edges, in_cover, budget, chosen)) {
            std::sort(chosen.begin(), chosen.end());
            return chosen;
        }
    }
    return std::nullopt;
}

inline bool is_vertex_cover(const Graph& g, const std::vector<Vertex>& cover) {
    std::vector<char> in(g.vertex_count(), 0);
    for (Vertex v : cover) in[v] = 1;
    for (auto [u, v] : g.edges())
        if (!in[u] && !in[v]) return false;
    return true;
}

// Hopcroft-Karp on a bipartite graph given as left adjacency lists into
// [0, right_count). Returns match_left (right index or -1).
inline std::vector<int> hopcroft_karp(const std::vector<std::vector<int>>& left_adj, int right_count) {
    const int nl = static_cast<int>(left_adj.size());
    std::vector<int> match_l(nl, -1), match_r(right_count, -1), dist(nl);
    constexpr int inf = 1 << 29;
    auto bfs = [&] {
        std::queue<int> q;
        bool found = false;
        for (int u = 0; u < nl; ++u) {
            dist[u] = match_l[u] < 0 ? 0 : inf;
            if (match_l[u] < 0) q.push(u);
        }
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int r : left_adj[u]) {
                int w = match_r[r];
                if (w < 0) {
                    found = true;
                } else if (dist[w] == inf) {
                    dist[w] = dist[u] + 1;
                    q.push(w);
                }
            }
        }
        return found;
    };
    auto dfs = [&](auto&& self, int u) -> bool {
        for (int r : left_adj[u]) {
            int w = match_r[r];
            if (w < 0 || (dist[w] == dist[u] + 1 && self(self, w))) {
                match_l[u] = r;
                match_r[r] = u;
                return true;
            }
        }
        dist[u] = inf;
        return false;
    };
    while (bfs())
        for (int u = 0; u < nl; ++u)
            if (match_l[u] < 0) dfs(dfs, u);
    return match_l;
}

} // namespace mcsf
