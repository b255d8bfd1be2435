#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "mcsf/combinatorics.hpp"
#include "mcsf/graph.hpp"
#include "mcsf/matching.hpp"

namespace mcsf {

enum class EmbedMode { automatic, exact, randomized };

struct ColorCodingConfig {
    long trials = 0;  // 0 means auto
    double failure_probability = 0.01;
    std::uint64_t rng_seed = 0;

    void validate() const {
        if (trials < 0) throw PreconditionError("trials must be positive");
        if (!(failure_probability > 0.0 && failure_probability < 1.0))
            throw PreconditionError("failure probability must lie in (0,1)");
    }
};

// ceil(e^h * ln(1/p)): one colouring is colourful for a fixed h-vertex copy
// with probability h!/h^h > e^-h.
inline long auto_trials(long h, double failure_probability) {
    const double t = std::ceil(std::exp(static_cast<double>(h)) * std::log(1.0 / failure_probability));
    return t < 1.0 ? 1 : static_cast<long>(t);
}

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

namespace detail {

class ExactEmbedder {
public:
    ExactEmbedder(const Graph& g, const StarForest& forest) : g_(g), forest_(forest), used_(g.vertex_count(), 0) {
        order_.resize(forest.star_count());
        std::iota(order_.begin(), order_.end(), 0);
        std::stable_sort(order_.begin(), order_.end(),
                         [&](int a, int b) { return forest.sizes()[a] > forest.sizes()[b]; });
        stars_.resize(forest.star_count());
        free_ = g.vertex_count();
        remaining_ = forest.total_vertices();
    }

    std::optional<Embedding> run() {
        if (remaining_ > free_) return std::nullopt;
        if (!place(0, -1)) return std::nullopt;
        return Embedding{stars_};
    }

private:
    bool place(std::size_t pos, Vertex prev_centre) {
        if (pos == order_.size()) return true;
        if (remaining_ > free_) return false;
        const int idx = order_[pos];
        const int size = forest_.sizes()[idx];
        const bool same_as_prev = pos > 0 && forest_.sizes()[order_[pos - 1]] == size;
        for (Vertex c = same_as_prev ? prev_centre + 1 : 0; c < g_.vertex_count(); ++c) {
            if (used_[c] || g_.degree(c) < size - 1) continue;
            std::vector<Vertex> free_nbrs;
            for (Vertex w : g_.neighbors(c))
                if (!used_[w]) free_nbrs.push_back(w);
            if (static_cast<int>(free_nbrs.size()) < size - 1) continue;
            used_[c] = 1;
            std::vector<Vertex> chosen;
            if (choose_leaves(pos, c, free_nbrs, 0, size - 1, chosen)) return true;
            used_[c] = 0;
        }
        return false;
    }

    bool choose_leaves(std::size_t pos, Vertex c, const std::vector<Vertex>& cand, std::size_t from, int need,
                       std::vector<Vertex>& chosen) {
        if (need == 0) {
            const int idx = order_[pos];
            stars_[idx] = {c};
            stars_[idx].insert(stars_[idx].end(), chosen.begin(), chosen.end());
            const int size = forest_.sizes()[idx];
            free_ -= size;
            remaining_ -= size;
            if (place(pos + 1, c)) return true;
            free_ += size;
            remaining_ += size;
            return false;
        }
        for (std::size_t i = from; i + need <= cand.size(); ++i) {
            used_[cand[i]] = 1;
            chosen.push_back(cand[i]);
            if (choose_leaves(pos, c, cand, i + 1, need - 1, chosen)) return true;
            chosen.pop_back();
            used_[cand[i]] = 0;
        }
        return false;
    }

    const Graph& g_;
    const StarForest& forest_;
    std::vector<char> used_;
    std::vector<int> order_;
    std::vector<std::vector<Vertex>> stars_;
    long free_ = 0, remaining_ = 0;
};

// One colour-coding trial: is there a colourful copy of the forest under
// `colour`? Stars are added one at a time; reach[i] holds the colour sets
// covered by the first i stars.
inline std::optional<Embedding> colourful_embedding(const Graph& g, const StarForest& forest,
                                                    const std::vector<int>& colour, int colours) {
    const int n = g.vertex_count();
    const std::uint32_t full = colours >= 32 ? ~0u : (1u << colours) - 1;
    std::vector<std::uint32_t> nbr_colours(n, 0);
    for (Vertex v = 0; v < n; ++v)
        for (Vertex w : g.neighbors(v)) nbr_colours[v] |= 1u << colour[w];

    // centre_for[T] = a vertex coloured inside T whose neighbours carry every
    // other colour of T, or -1.
    std::vector<int> centre_for(std::size_t(full) + 1, -1);
    for (Vertex c = 0; c < n; ++c) {
        const std::uint32_t own = 1u << colour[c];
        const std::uint32_t others = nbr_colours[c] & ~own;
        for (std::uint32_t sub = others;; sub = (sub - 1) & others) {
            std::uint32_t t = sub | own;
            if (centre_for[t] < 0 && sub != 0) centre_for[t] = c;
            if (sub == 0) break;
        }
    }

    const auto& sizes = forest.sizes();
    const std::size_t k = sizes.size();
    // pred[i][S] = colour set of star i-1 used to reach S, 0 if unreached.
    std::vector<std::vector<std::uint32_t>> pred(k + 1, std::vector<std::uint32_t>(std::size_t(full) + 1, 0));
    std::vector<char> reach(std::size_t(full) + 1, 0), next(std::size_t(full) + 1, 0);
    reach[0] = 1;
    std::vector<std::vector<std::uint32_t>> by_size(colours + 2);
    for (std::uint32_t t = 1; t <= full; ++t)
        if (centre_for[t] >= 0) by_size[__builtin_popcount(t)].push_back(t);
    for (std::size_t i = 0; i < k; ++i) {
        std::fill(next.begin(), next.end(), 0);
        bool any = false;
        if (sizes[i] <= colours) {
            for (std::uint32_t s = 0; s <= full; ++s) {
                if (!reach[s]) continue;
                for (std::uint32_t t : by_size[sizes[i]]) {
                    if (s & t || next[s | t]) continue;
                    next[s | t] = 1;
                    pred[i + 1][s | t] = t;
                    any = true;
                }
            }
        }
        if (!any) return std::nullopt;
        reach.swap(next);
    }
    std::uint32_t s = 0;
    while (s <= full && !reach[s]) ++s;
    Embedding emb;
    emb.stars.resize(k);
    for (std::size_t i = k; i-- > 0;) {
        const std::uint32_t t = pred[i + 1][s];
        const Vertex c = centre_for[t];
        auto& star = emb.stars[i];
        star.push_back(c);
        std::uint32_t want = t & ~(1u << colour[c]);
        for (Vertex w : g.neighbors(c))
            if (want >> colour[w] & 1) {
                star.push_back(w);
                want &= ~(1u << colour[w]);
            }
        s &= ~t;
    }
    return emb;
}

} // namespace detail

// Randomized: colour coding with the configured (or automatic) number of
// trials; a miss may be a false negative. Exact: backtracking over centres in
// non-increasing star size.
inline std::optional<Embedding> embeds_star_forest(const Graph& g, const StarForest& forest, EmbedMode mode,
                                                   const ColorCodingConfig& cfg = {}) {
    cfg.validate();
    const long h = forest.total_vertices();
    if (mode == EmbedMode::automatic) mode = h <= 12 ? EmbedMode::exact : EmbedMode::randomized;
    if (h > g.vertex_count()) return std::nullopt;
    if (forest.star_count() == 0) return Embedding{};
    if (mode == EmbedMode::exact) return detail::ExactEmbedder(g, forest).run();

    if (h > 20) throw ResourceError("colour coding supports at most 20 forest vertices");
    const int colours = static_cast<int>(h);
    const long trials = cfg.trials > 0 ? cfg.trials : auto_trials(h, cfg.failure_probability);
    std::vector<int> colour(g.vertex_count());
    std::uniform_int_distribution<int> pick(0, colours - 1);
    for (long t = 0; t < trials; ++t) {
        std::mt19937_64 rng(splitmix64(cfg.rng_seed + static_cast<std::uint64_t>(t)));
        for (auto& c : colour) c = pick(rng);
        if (auto emb = detail::colourful_embedding(g, forest, colour, colours)) return emb;
    }
    return std::nullopt;
}

struct Certificate {
    StarForest forest;
    Embedding emb1;
    Embedding emb2;
};

struct HResult {
    bool yes = false;
    std::optional<Certificate> certificate;
    std::string route;  // "trivial", "matching", "partition" or "none"
};

// Decides whether g1 and g2 share a star forest on at least h vertices.
inline HResult solve_h(const Instance& inst, const ColorCodingConfig& cfg = {},
                       EmbedMode mode = EmbedMode::automatic) {
    cfg.validate();
    if (inst.h < 0) throw PreconditionError("negative h");
    if (inst.h == 0) return {true, Certificate{}, "trivial"};
    const long half = (inst.h + 1) / 2;
    auto m1 = max_matching(inst.g1);
    auto m2 = max_matching(inst.g2);
    if (static_cast<long>(m1.size()) >= half && static_cast<long>(m2.size()) >= half) {
        m1.resize(half);
        m2.resize(half);
        auto [forest, emb1] = matching_forest(m1);
        auto emb2 = matching_forest(m2).second;
        return {true, Certificate{forest, emb1, emb2}, "matching"};
    }
    if (inst.h > std::min(inst.g1.vertex_count(), inst.g2.vertex_count())) return {false, std::nullopt, "none"};
    for (const auto& forest : comb::enum_star_partitions(static_cast<int>(inst.h))) {
        auto emb1 = embeds_star_forest(inst.g1, forest, mode, cfg);
        if (!emb1) continue;
        auto emb2 = embeds_star_forest(inst.g2, forest, mode, cfg);
        if (!emb2) continue;
        return {true, Certificate{forest, *emb1, *emb2}, "partition"};
    }
    return {false, std::nullopt, "none"};
}

} // namespace mcsf
