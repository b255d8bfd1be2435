#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "mcsf/eptas.hpp"
#include "mcsf/generators.hpp"
#include "mcsf/oracle.hpp"

using namespace mcsf;

TEST(EptasConfig, K) {
    EXPECT_EQ(EptasConfig{0.5}.k(), 4);
    EXPECT_EQ(EptasConfig{0.4}.k(), 5);
    EXPECT_EQ(EptasConfig{0.3}.k(), 7);
    EXPECT_EQ(EptasConfig{0.8}.k(), 3);
    EXPECT_EQ(EptasConfig{0.9}.k(), 3);
    EXPECT_THROW(EptasConfig{0.0}.k(), PreconditionError);
    EXPECT_THROW(EptasConfig{1.0}.k(), PreconditionError);
}

TEST(PruneLevels, Examples) {
    auto p8 = prune_levels(graphs::path(8), 0, 2);
    EXPECT_EQ(p8.original, (std::vector<Vertex>{0, 1, 3, 4, 5, 6, 7}));
    EXPECT_EQ(p8.graph.edge_count(), 5);

    auto k3 = prune_levels(graphs::complete(3), 0, 3);
    EXPECT_EQ(k3.graph, graphs::complete(3));

    // Levels of P5 are 0..4; with k=2, r=1 the removed residue is 5.
    EXPECT_EQ(prune_levels(graphs::path(5), 1, 2).graph, graphs::path(5));
    EXPECT_THROW(prune_levels(graphs::path(3), 2, 2), PreconditionError);
}

TEST(PruneLevels, RemovesExactlyTheResidueClass) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        auto g = gen::random_graph(20, 0.15, rng);
        const auto level = bfs_levels(g);
        for (int k = 2; k <= 4; ++k)
            for (int r = 0; r < k; ++r) {
                auto sub = prune_levels(g, r, k);
                for (Vertex v = 0; v < g.vertex_count(); ++v) {
                    bool removed = false;
                    for (int j = 0; 3 * (j * k + r) + 2 <= level[v]; ++j)
                        removed = removed || level[v] == 3 * (j * k + r) + 2;
                    const bool kept = std::find(sub.original.begin(), sub.original.end(), v) != sub.original.end();
                    EXPECT_EQ(kept, !removed);
                }
            }
    }
}

TEST(SolveEptas, Examples) {
    auto r = solve_eptas(graphs::path(2), graphs::path(2), {0.5});
    EXPECT_EQ(r.size, 2);
    EXPECT_EQ(r.k, 4);
    EXPECT_EQ(r.r1, 0);
    EXPECT_EQ(r.r2, 0);

    r = solve_eptas(graphs::path(4), graphs::star(3), {0.9});
    EXPECT_GE(r.size, 1);
    EXPECT_LE(r.size, 3);
}

TEST(SolveEptas, StarsSpanAtMostThreeLevels) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        auto g = gen::random_planar_grid(10, 3, 0.8, rng);
        const auto level = bfs_levels(g);
        const auto best = opt_common_brute(g, g);
        for (const auto& star : best.emb1.stars) {
            int lo = level[star[0]], hi = level[star[0]];
            for (Vertex v : star) lo = std::min(lo, level[v]), hi = std::max(hi, level[v]);
            EXPECT_LE(hi - lo, 2);
        }
    }
}

TEST(SolveEptas, ApproximationBoundOnPlanarGraphs) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        auto g1 = trial % 2 ? gen::random_planar_grid(10, 3, 0.8, rng) : gen::random_outerplanar(9, 3, rng);
        auto g2 = gen::random_planar_grid(4 + trial % 7, 3, 0.7, rng);
        const long opt = opt_common_brute(g1, g2).size;
        for (double eps : {0.3, 0.5, 0.8}) {
            const auto r = solve_eptas(g1, g2, {eps});
            EXPECT_LE(r.size, opt);
            EXPECT_GE(static_cast<double>(r.size), (1.0 - eps) * static_cast<double>(opt) - 1e-9);
        }
    }
}

TEST(SolveEptas, ShiftPairReproducesValue) {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        auto g1 = gen::random_planar_grid(12, 3, 0.9, rng);
        auto g2 = gen::random_planar_grid(12, 3, 0.9, rng);
        const auto r = solve_eptas(g1, g2, {0.5});
        const auto again = tw::solve_tw(prune_levels(g1, r.r1, r.k).graph, prune_levels(g2, r.r2, r.k).graph);
        EXPECT_EQ(again.size, r.size);
        EXPECT_EQ(solve_eptas(g1, g2, {0.5}).size, r.size);
    }
}
