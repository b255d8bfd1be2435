#include <gtest/gtest.h>

#include <random>

#include "brute.hpp"
#include "mcsf/generators.hpp"
#include "mcsf/matching.hpp"

using namespace mcsf;

TEST(MaxMatching, Examples) {
    EXPECT_EQ(max_matching(graphs::complete(3)).size(), 1u);
    EXPECT_EQ(max_matching(graphs::cycle(4)).size(), 2u);
    auto petersen = graphs::petersen();
    EXPECT_EQ(brute::matching_size(petersen), 5);
    auto m = max_matching(petersen);
    EXPECT_EQ(m.size(), 5u);
    EXPECT_TRUE(is_matching(petersen, m));
}

TEST(MaxMatching, AgreesWithSubsetSearch) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 300; ++trial) {
        auto g = gen::random_graph(2 + trial % 8, 0.15 + 0.1 * (trial % 5), rng);
        if (g.edge_count() > 18) continue;
        auto m = max_matching(g);
        ASSERT_TRUE(is_matching(g, m));
        ASSERT_EQ(static_cast<int>(m.size()), brute::matching_size(g));
    }
}

static void expect_spanning_star_forest(const Graph& g, const EdgeCover& c) {
    EXPECT_TRUE(verify_embedding(g, c.forest, c.embedding).ok);
    EXPECT_EQ(c.forest.total_vertices(), g.vertex_count());
    EXPECT_EQ(static_cast<long>(c.edges.size()), c.forest.total_vertices() - c.forest.star_count());
}

TEST(MinEdgeCover, Examples) {
    auto k2 = min_edge_cover(graphs::path(2));
    EXPECT_EQ(k2.edges.size(), 1u);
    EXPECT_EQ(k2.forest.sizes(), (std::vector<int>{2}));

    auto p4 = min_edge_cover(graphs::path(4));
    EXPECT_EQ(brute::edge_cover_size(graphs::path(4)), 2);
    EXPECT_EQ(p4.edges.size(), 2u);
    EXPECT_TRUE(p4.forest.same_shape(StarForest({2, 2})));

    auto k13 = min_edge_cover(graphs::star(3));
    EXPECT_EQ(k13.edges.size(), 3u);
    EXPECT_EQ(k13.forest.sizes(), (std::vector<int>{4}));
    expect_spanning_star_forest(graphs::star(3), k13);
}

TEST(MinEdgeCover, IsolatedVertexIsNamed) {
    try {
        min_edge_cover(Graph(3, {{0, 1}}));
        FAIL();
    } catch (const PreconditionError& e) {
        EXPECT_NE(std::string(e.what()).find("vertex 2"), std::string::npos);
    }
}

// Every graph without isolated vertices on up to 6 vertices, then a sample
// on 7.
TEST(MinEdgeCover, GallaiIdentity) {
    auto check = [](const Graph& g) {
        if (!g.isolated_vertices().empty()) return;
        auto cover = min_edge_cover(g);
        auto m = max_matching(g);
        ASSERT_EQ(cover.edges.size() + m.size(), static_cast<std::size_t>(g.vertex_count()));
        ASSERT_EQ(static_cast<int>(cover.edges.size()), brute::edge_cover_size(g));
        expect_spanning_star_forest(g, cover);
    };
    for (int n = 2; n <= 6; ++n)
        for (std::uint64_t label = 0; label < (1ull << (n * (n - 1) / 2)); ++label)
            check(gen::graph_from_bits(n, label));
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::uint64_t> pick(0, (1ull << 21) - 1);
    for (int i = 0; i < 3000; ++i) check(gen::graph_from_bits(7, pick(rng)));
}

TEST(MinVertexCover, Examples) {
    auto k3 = min_vertex_cover(graphs::complete(3), 2);
    ASSERT_TRUE(k3);
    EXPECT_EQ(k3->size(), 2u);
    EXPECT_FALSE(min_vertex_cover(graphs::path(4), 1));
    auto star = min_vertex_cover(graphs::star(5), 1);
    ASSERT_TRUE(star);
    EXPECT_EQ(*star, (std::vector<Vertex>{0}));
}

TEST(MinVertexCover, MinimumAgainstSubsets) {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 200; ++trial) {
        auto g = gen::random_graph(2 + trial % 9, 0.3, rng);
        int best = brute::vertex_cover_size(g);
        auto c = min_vertex_cover(g, g.vertex_count());
        ASSERT_TRUE(c);
        EXPECT_EQ(static_cast<int>(c->size()), best);
        EXPECT_TRUE(is_vertex_cover(g, *c));
        EXPECT_FALSE(best > 0 && min_vertex_cover(g, best - 1));
    }
}
