#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mcsf/combinatorics.hpp"
#include "mcsf/graph.hpp"
#include "mcsf/tree_decomposition.hpp"

namespace mcsf::tw {

// Role of a bag vertex, one int per bag position:
//   0            uncovered
//   -1           leaf of a centre already forgotten
//   d >= 2       centre of a partial star with d vertices
//   -(u+2)       leaf of centre u, u in the bag
namespace role {
constexpr int uncovered = 0;
constexpr int leaf_outside = -1;
inline bool is_centre(int r) { return r >= 2; }
inline bool is_leaf(int r) { return r <= -2; }
inline int leaf_of(Vertex u) { return -(u + 2); }
inline Vertex centre_of(int r) { return -r - 2; }
} // namespace role

using Mask = std::vector<int>;
// counts[d-2] = partial stars with d vertices, d in [2, delta+1].
using Counts = std::vector<int>;
using Table = std::map<Mask, std::set<Counts>>;

struct DpOptions {
    const TreeDecomposition* decomposition = nullptr;  // min-fill when null
    bool naive_join = false;                           // pairwise loop instead of sumset
};

namespace detail {

inline int position(const std::vector<Vertex>& bag, Vertex v) {
    return static_cast<int>(std::lower_bound(bag.begin(), bag.end(), v) - bag.begin());
}

inline Table introduce(const Graph& g, const Table& child, const std::vector<Vertex>& bag, Vertex v, int delta) {
    Table out;
    const int at = position(bag, v);
    std::vector<int> nbr;  // positions in the parent bag
    for (int i = 0; i < static_cast<int>(bag.size()); ++i)
        if (bag[i] != v && g.has_edge(v, bag[i])) nbr.push_back(i);
    for (const auto& [cmask, family] : child) {
        Mask base = cmask;
        base.insert(base.begin() + at, role::uncovered);
        auto emit = [&](const Mask& m, auto&& adjust) {
            auto& dst = out[m];
            for (Counts c : family) {
                adjust(c);
                dst.insert(std::move(c));
            }
        };
        emit(base, [](Counts&) {});
        // v joins the star of a neighbour.
        for (int j : nbr) {
            const int r = base[j];
            if (r == role::uncovered) {
                Mask m = base;
                m[j] = 2;
                m[at] = role::leaf_of(bag[j]);
                emit(m, [](Counts& c) { ++c[0]; });
            } else if (role::is_centre(r) && r <= delta) {
                Mask m = base;
                m[j] = r + 1;
                m[at] = role::leaf_of(bag[j]);
                emit(m, [r](Counts& c) { --c[r - 2], ++c[r - 1]; });
            }
        }
        // v becomes a centre over uncovered neighbours.
        std::vector<int> free;
        for (int j : nbr)
            if (base[j] == role::uncovered) free.push_back(j);
        const std::uint32_t subsets = 1u << free.size();
        for (std::uint32_t s = 1; s < subsets; ++s) {
            const int leaves = __builtin_popcount(s);
            if (leaves > delta) continue;
            Mask m = base;
            m[at] = leaves + 1;
            for (std::size_t i = 0; i < free.size(); ++i)
                if (s >> i & 1) m[free[i]] = role::leaf_of(v);
            emit(m, [leaves](Counts& c) { ++c[leaves - 1]; });
        }
    }
    return out;
}

inline Table forget(const Table& child, const std::vector<Vertex>& child_bag, Vertex v) {
    Table out;
    const int at = position(child_bag, v);
    for (const auto& [cmask, family] : child) {
        Mask m = cmask;
        if (role::is_centre(m[at]))
            for (int& r : m)
                if (r == role::leaf_of(v)) r = role::leaf_outside;
        m.erase(m.begin() + at);
        out[m].insert(family.begin(), family.end());
    }
    return out;
}

// Merged mask and the correction m - a - b, or nullopt when incompatible.
inline std::optional<std::pair<Mask, Counts>> merge_masks(const Mask& a, const Mask& b,
                                                          const std::vector<Vertex>& bag, int delta) {
    Mask m(a.size());
    Counts fix(delta, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        const int x = a[i], y = b[i];
        if (x == y && !role::is_centre(x)) {
            if (x == role::leaf_outside) return std::nullopt;
            m[i] = x;
        } else if ((x == role::leaf_outside && y == role::uncovered) ||
                   (y == role::leaf_outside && x == role::uncovered)) {
            m[i] = role::leaf_outside;
        } else if (role::is_centre(x) && role::is_centre(y)) {
            int shared = 0;
            for (std::size_t j = 0; j < a.size(); ++j)
                if (a[j] == role::leaf_of(bag[i])) ++shared;
            const int d = x + y - shared - 1;
            if (d > delta + 1) return std::nullopt;
            m[i] = d;
            --fix[x - 2], --fix[y - 2], ++fix[d - 2];
        } else if (role::is_centre(x) && y == role::uncovered) {
            m[i] = x;
        } else if (role::is_centre(y) && x == role::uncovered) {
            m[i] = y;
        } else {
            return std::nullopt;
        }
    }
    return std::pair{std::move(m), std::move(fix)};
}

inline Table join(const Table& left, const Table& right, const std::vector<Vertex>& bag, int delta, int n,
                  bool naive) {
    Table out;
    for (const auto& [ma, fa] : left) {
        const comb::IntVectorSet sa(delta, n, {fa.begin(), fa.end()});
        for (const auto& [mb, fb] : right) {
            auto merged = merge_masks(ma, mb, bag, delta);
            if (!merged) continue;
            const comb::IntVectorSet sb(delta, n, {fb.begin(), fb.end()});
            const auto sum = naive ? comb::sumset_naive(sa, sb) : comb::sumset(sa, sb);
            auto& dst = out[merged->first];
            for (auto c : sum.members) {
                for (int d = 0; d < delta; ++d) c[d] += merged->second[d];
                dst.insert(std::move(c));
            }
        }
    }
    return out;
}

} // namespace detail

// Every star-count vector with star sizes in [2, delta+1] realisable in g,
// read off the empty root bag of a nice decomposition.
inline VectorFamily enum_star_vectors_dp(const Graph& g, int delta, const DpOptions& options = {}) {
    if (delta < 1) throw PreconditionError("delta must be at least 1");
    const TreeDecomposition td = options.decomposition ? *options.decomposition : heuristic_decomposition(g);
    std::string why;
    if (!verify_decomposition(g, td, &why)) throw PreconditionError("invalid tree decomposition: " + why);
    const auto nice = to_nice(td);
    const int n = g.vertex_count();
    std::vector<Table> tables(nice.nodes.size());
    for (int t : nice.post_order()) {
        const auto& node = nice.nodes[t];
        switch (node.kind) {
        case NodeKind::leaf:
            tables[t][{}].insert(Counts(delta, 0));
            break;
        case NodeKind::introduce:
            tables[t] = detail::introduce(g, tables[node.children[0]], node.bag, node.vertex, delta);
            break;
        case NodeKind::forget:
            tables[t] = detail::forget(tables[node.children[0]], nice.nodes[node.children[0]].bag, node.vertex);
            break;
        case NodeKind::join:
            tables[t] = detail::join(tables[node.children[0]], tables[node.children[1]], node.bag, delta, n,
                                     options.naive_join);
            break;
        }
        for (int c : node.children) Table().swap(tables[c]);
    }
    VectorFamily out{delta, {}};
    for (const auto& c : tables[nice.root][{}]) {
        StarCountVector v;
        for (int d = 2; d <= delta + 1; ++d)
            if (c[d - 2]) v.add(d, c[d - 2]);
        out.vectors.insert(v);
    }
    return out;
}

struct TwResult {
    long size = 0;
    StarCountVector vector;
    int width1 = 0;
    int width2 = 0;
};

// Largest common star forest by intersecting both families; ties go to the
// smallest vector.
inline TwResult solve_tw(const Graph& g1, const Graph& g2) {
    TwResult out;
    const auto td1 = heuristic_decomposition(g1);
    const auto td2 = heuristic_decomposition(g2);
    out.width1 = td1.width();
    out.width2 = td2.width();
    const int delta = std::min(g1.max_degree(), g2.max_degree());
    if (delta == 0) return out;
    const auto f1 = enum_star_vectors_dp(g1, delta, {&td1});
    const auto f2 = enum_star_vectors_dp(g2, delta, {&td2});
    for (const auto& v : f1.vectors) {
        if (!f2.contains(v)) continue;
        if (v.total_vertices() > out.size) {
            out.size = v.total_vertices();
            out.vector = v;
        }
    }
    return out;
}

} // namespace mcsf::tw
