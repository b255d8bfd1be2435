#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <unordered_map>
#include <vector>

#include "mcsf/graph.hpp"

namespace mcsf {

constexpr int default_oracle_limit = 12;

namespace detail {

// Star packings by brute force. f(used, next) is the set of vectors packable
// using only vertices outside `used` and centres >= next; centre `next` is
// either skipped or takes a nonempty leaf subset of its free neighbours.
class PackingOracle {
public:
    using Counts = std::vector<int>;  // index d-2 for star size d

    PackingOracle(const Graph& g, int delta) : g_(g), delta_(delta), n_(g.vertex_count()) {}

    const std::set<Counts>& family(std::uint32_t used, int next) {
        const std::uint64_t key = static_cast<std::uint64_t>(used) * (n_ + 1) + next;
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        std::set<Counts> out;
        if (next >= n_) {
            out.insert(Counts(delta_, 0));
        } else {
            out = family(used, next + 1);
            if (!(used >> next & 1)) {
                for_each_leaf_set(used, next, [&](std::uint32_t leaves, int count) {
                    for (Counts c : family(used | leaves | (1u << next), next + 1)) {
                        ++c[count - 1];
                        out.insert(std::move(c));
                    }
                });
            }
        }
        return memo_.emplace(key, std::move(out)).first->second;
    }

    // Rebuilds one packing with exactly `target` counts.
    bool witness(std::uint32_t used, int next, Counts target, std::vector<std::vector<Vertex>>& stars) {
        if (!family(used, next).count(target)) return false;
        if (next >= n_) return true;
        if (family(used, next + 1).count(target)) return witness(used, next + 1, target, stars);
        bool done = false;
        for_each_leaf_set(used, next, [&](std::uint32_t leaves, int count) {
            if (done || target[count - 1] == 0) return;
            Counts rest = target;
            --rest[count - 1];
            const std::uint32_t after = used | leaves | (1u << next);
            if (!family(after, next + 1).count(rest)) return;
            std::vector<Vertex> star{next};
            for (Vertex w = 0; w < n_; ++w)
                if (leaves >> w & 1) star.push_back(w);
            stars.push_back(std::move(star));
            done = witness(after, next + 1, rest, stars);
        });
        return done;
    }

private:
    template <class F>
    void for_each_leaf_set(std::uint32_t used, Vertex centre, F&& f) {
        std::vector<Vertex> free;
        for (Vertex w : g_.neighbors(centre))
            if (!(used >> w & 1)) free.push_back(w);
        const std::uint32_t subsets = 1u << free.size();
        for (std::uint32_t s = 1; s < subsets; ++s) {
            const int count = __builtin_popcount(s);
            if (count > delta_) continue;
            std::uint32_t leaves = 0;
            for (std::size_t i = 0; i < free.size(); ++i)
                if (s >> i & 1) leaves |= 1u << free[i];
            f(leaves, count);
        }
    }

    const Graph& g_;
    int delta_;
    int n_;
    std::unordered_map<std::uint64_t, std::set<Counts>> memo_;
};

inline StarCountVector to_star_vector(const std::vector<int>& counts) {
    StarCountVector v;
    for (std::size_t i = 0; i < counts.size(); ++i)
        if (counts[i]) v.add(static_cast<int>(i) + 2, counts[i]);
    return v;
}

inline std::vector<int> to_counts(const StarCountVector& v, int delta) {
    std::vector<int> c(delta, 0);
    for (int d = 2; d <= delta + 1; ++d) c[d - 2] = v.count(d);
    return c;
}

inline void check_oracle_limit(const Graph& g, int limit) {
    if (g.vertex_count() > limit)
        throw ResourceError("oracle refuses a graph with " + std::to_string(g.vertex_count()) +
                            " vertices (limit " + std::to_string(limit) + ")");
    if (g.vertex_count() > 30) throw ResourceError("oracle supports at most 30 vertices");
}

} // namespace detail

// Every star-count vector (star sizes in [2, delta+1]) realisable as
// vertex-disjoint stars in g.
inline VectorFamily enum_star_vectors_brute(const Graph& g, int delta, int limit = default_oracle_limit) {
    if (delta < 1) throw PreconditionError("delta must be at least 1");
    detail::check_oracle_limit(g, limit);
    detail::PackingOracle oracle(g, delta);
    VectorFamily out{delta, {}};
    for (const auto& c : oracle.family(0, 0)) out.vectors.insert(detail::to_star_vector(c));
    return out;
}

// Embedding of the star forest with vector v (stars in non-increasing size),
// or nullopt when v is not realisable.
inline std::optional<Embedding> embed_vector_brute(const Graph& g, const StarCountVector& v,
                                                   int limit = default_oracle_limit) {
    detail::check_oracle_limit(g, limit);
    const int delta = std::max(1, v.max_size() - 1);
    detail::PackingOracle oracle(g, delta);
    Embedding emb;
    if (!oracle.witness(0, 0, detail::to_counts(v, delta), emb.stars)) return std::nullopt;
    sort_stars(emb);
    return emb;
}

struct OracleResult {
    long size = 0;
    StarCountVector vector;
    Embedding emb1;
    Embedding emb2;

    StarForest forest() const { return StarForest::from_vector(vector); }
};

// Largest common star forest of g1 and g2. Ties on size go to the smallest
// vector.
inline OracleResult opt_common_brute(const Graph& g1, const Graph& g2, int limit = default_oracle_limit) {
    detail::check_oracle_limit(g1, limit);
    detail::check_oracle_limit(g2, limit);
    OracleResult best;
    const int delta = std::min(g1.max_degree(), g2.max_degree());
    if (delta == 0) return best;
    const auto f1 = enum_star_vectors_brute(g1, delta, limit);
    const auto f2 = enum_star_vectors_brute(g2, delta, limit);
    bool found = false;
    for (const auto& v : f1.vectors) {
        if (!f2.contains(v)) continue;
        const long size = v.total_vertices();
        if (!found || size > best.size) {
            best.size = size;
            best.vector = v;
            found = true;
        }
    }
    best.emb1 = *embed_vector_brute(g1, best.vector, limit);
    best.emb2 = *embed_vector_brute(g2, best.vector, limit);
    return best;
}

} // namespace mcsf
