#include <gtest/gtest.h>

#include <random>

#include "mcsf/fpt_h.hpp"
#include "mcsf/generators.hpp"
#include "mcsf/oracle.hpp"

using namespace mcsf;

static void expect_certificate(const Instance& inst, const HResult& r) {
    ASSERT_TRUE(r.yes);
    ASSERT_TRUE(r.certificate);
    const auto& c = *r.certificate;
    EXPECT_GE(c.forest.total_vertices(), inst.h);
    EXPECT_TRUE(verify_embedding(inst.g1, c.forest, c.emb1).ok);
    EXPECT_TRUE(verify_embedding(inst.g2, c.forest, c.emb2).ok);
}

TEST(SolveH, Examples) {
    Instance c4{graphs::cycle(4), graphs::cycle(4), 4};
    auto r = solve_h(c4);
    expect_certificate(c4, r);
    EXPECT_EQ(r.route, "matching");
    EXPECT_EQ(r.certificate->forest.sizes(), (std::vector<int>{2, 2}));

    Instance mixed{graphs::path(4), graphs::star(3), 4};
    EXPECT_EQ(opt_common_brute(mixed.g1, mixed.g2).size, 3);
    EXPECT_FALSE(solve_h(mixed).yes);

    Instance zero{graphs::complete(3), Graph(2), 0};
    auto z = solve_h(zero);
    EXPECT_TRUE(z.yes);
    EXPECT_EQ(z.certificate->forest.star_count(), 0);
}

TEST(EmbedsStarForest, Examples) {
    auto hub = embeds_star_forest(graphs::star(3), StarForest({4}), EmbedMode::exact);
    ASSERT_TRUE(hub);
    EXPECT_EQ(hub->stars[0][0], 0);
    auto p4 = embeds_star_forest(graphs::path(4), StarForest({2, 2}), EmbedMode::exact);
    ASSERT_TRUE(p4);
    EXPECT_EQ(p4->stars, (std::vector<std::vector<Vertex>>{{0, 1}, {2, 3}}));
    EXPECT_FALSE(embeds_star_forest(graphs::complete(3), StarForest({4}), EmbedMode::exact));
    ColorCodingConfig cfg;
    cfg.rng_seed = 1;
    EXPECT_FALSE(embeds_star_forest(graphs::complete(3), StarForest({4}), EmbedMode::randomized, cfg));
    auto rnd = embeds_star_forest(graphs::path(4), StarForest({2, 2}), EmbedMode::randomized, cfg);
    ASSERT_TRUE(rnd);
    EXPECT_TRUE(verify_embedding(graphs::path(4), StarForest({2, 2}), *rnd).ok);
}

TEST(EmbedsStarForest, StarOrderFollowsForest) {
    Graph g(7, {{0, 1}, {2, 3}, {2, 4}, {2, 5}, {5, 6}});
    StarForest forest({2, 4});
    for (auto mode : {EmbedMode::exact, EmbedMode::randomized}) {
        auto emb = embeds_star_forest(g, forest, mode);
        ASSERT_TRUE(emb);
        EXPECT_TRUE(verify_embedding(g, forest, *emb).ok);
    }
}

TEST(EmbedsStarForest, ExactMatchesOracleFamily) {
    std::mt19937_64 rng(51);
    for (int trial = 0; trial < 60; ++trial) {
        auto g = gen::random_graph(7, 0.4, rng);
        auto fam = enum_star_vectors_brute(g, 6);
        for (int h = 2; h <= 7; ++h)
            for (const auto& forest : comb::enum_star_partitions(h)) {
                auto emb = embeds_star_forest(g, forest, EmbedMode::exact);
                ASSERT_EQ(emb.has_value(), fam.contains(forest.to_vector()));
                if (emb) EXPECT_TRUE(verify_embedding(g, forest, *emb).ok);
            }
    }
}

TEST(SolveH, ExactModeAgreesWithOracle) {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 300; ++trial) {
        auto g1 = gen::random_graph(2 + trial % 9, 0.2 + 0.2 * (trial % 3), rng);
        auto g2 = gen::random_graph(2 + (trial / 3) % 9, 0.2 + 0.2 * ((trial / 2) % 3), rng);
        const long opt = opt_common_brute(g1, g2).size;
        for (long h = 0; h <= std::min<long>(opt + 1, 8); ++h) {
            Instance inst{g1, g2, h};
            auto r = solve_h(inst, {}, EmbedMode::exact);
            ASSERT_EQ(r.yes, opt >= h) << "trial " << trial << " h=" << h;
            if (r.yes) expect_certificate(inst, r);
        }
    }
}

TEST(SolveH, RandomizedYesAlwaysCertified) {
    std::mt19937_64 rng(57);
    for (int trial = 0; trial < 60; ++trial) {
        auto g1 = gen::random_graph(7, 0.3, rng);
        auto g2 = gen::random_graph(7, 0.3, rng);
        const long opt = opt_common_brute(g1, g2).size;
        ColorCodingConfig cfg;
        cfg.rng_seed = trial;
        cfg.trials = 5;
        for (long h = 1; h <= opt + 1; ++h) {
            Instance inst{g1, g2, h};
            auto r = solve_h(inst, cfg, EmbedMode::randomized);
            if (h > opt) EXPECT_FALSE(r.yes);
            if (r.yes) expect_certificate(inst, r);
        }
    }
}

TEST(ColorCoding, SameSeedSameAnswer) {
    std::mt19937_64 rng(59);
    auto g = gen::random_graph(9, 0.4, rng);
    ColorCodingConfig cfg;
    cfg.rng_seed = 99;
    cfg.trials = 3;
    auto a = embeds_star_forest(g, StarForest({3, 2, 2}), EmbedMode::randomized, cfg);
    auto b = embeds_star_forest(g, StarForest({3, 2, 2}), EmbedMode::randomized, cfg);
    EXPECT_EQ(a, b);
    EXPECT_EQ(auto_trials(6, 0.01), static_cast<long>(std::ceil(std::exp(6.0) * std::log(100.0))));
}

TEST(ColorCoding, ConfigValidation) {
    ColorCodingConfig bad;
    bad.failure_probability = 1.5;
    EXPECT_THROW(embeds_star_forest(graphs::path(2), StarForest({2}), EmbedMode::randomized, bad),
                 PreconditionError);
}
