#include <gtest/gtest.h>

#include <random>

#include "mcsf/generators.hpp"
#include "mcsf/oracle.hpp"
#include "mcsf/vc_ilp.hpp"

using namespace mcsf;

TEST(TwinClasses, Examples) {
    auto star = twin_classes(graphs::star(3), {0});
    ASSERT_EQ(star.classes.size(), 1u);
    EXPECT_EQ(star.key_vertices(star.classes.begin()->first), (std::vector<Vertex>{0}));
    EXPECT_EQ(star.classes.begin()->second.size(), 3u);

    auto p4 = twin_classes(graphs::path(4), {1, 2});
    ASSERT_EQ(p4.classes.size(), 2u);
    EXPECT_EQ(p4.classes.at(0b01), (std::vector<Vertex>{0}));
    EXPECT_EQ(p4.classes.at(0b10), (std::vector<Vertex>{3}));

    auto c4 = twin_classes(graphs::cycle(4), {0, 2});
    ASSERT_EQ(c4.classes.size(), 1u);
    EXPECT_EQ(c4.class_size(0b11), 2);
}

TEST(TwinClasses, RejectsNonCover) {
    try {
        twin_classes(graphs::path(4), {1});
        FAIL();
    } catch (const PreconditionError& e) {
        EXPECT_NE(std::string(e.what()).find("{2,3}"), std::string::npos);
    }
}

TEST(TwinClasses, PartitionIndependentSet) {
    std::mt19937_64 rng(73);
    for (int trial = 0; trial < 50; ++trial) {
        auto g = gen::random_graph(9, 0.3, rng);
        auto cover = *min_vertex_cover(g, 9);
        auto tc = twin_classes(g, cover);
        std::size_t total = 0;
        for (const auto& [key, members] : tc.classes) {
            total += members.size();
            auto expected = tc.key_vertices(key);
            for (Vertex v : members) {
                std::vector<Vertex> nbrs(g.neighbors(v).begin(), g.neighbors(v).end());
                EXPECT_EQ(nbrs, expected);
            }
        }
        EXPECT_EQ(total, static_cast<std::size_t>(g.vertex_count()) - cover.size());
    }
}

static bool has_guess(const Graph& g1, const Graph& g2, std::vector<Vertex> c1, std::vector<Vertex> c2,
                      const std::function<bool(const GuessPair&)>& pred) {
    bool found = false;
    enumerate_guesses(g1, g2, twin_classes(g1, c1), twin_classes(g2, c2),
                      [&](const GuessPair& p) { found |= pred(p); });
    return found;
}

TEST(EnumerateGuesses, Examples) {
    auto k2 = graphs::path(2);
    EXPECT_TRUE(has_guess(k2, k2, {0}, {0}, [](const GuessPair& p) {
        return p.side1->p() == 1 && p.side1->q() == 0 && p.side2->p() == 1 && p.side2->q() == 0 && p.pi[0] == 0;
    }));
    auto p3 = graphs::path(3);
    EXPECT_TRUE(has_guess(p3, p3, {1}, {1}, [](const GuessPair& p) {
        return p.side1->p() == 1 && p.side1->type1_centres[0] == 0 && p.side2->p() == 1;
    }));
    int count = 0;
    enumerate_guesses(Graph(3), Graph(2), twin_classes(Graph(3), {}), twin_classes(Graph(2), {}),
                      [&](const GuessPair& p) {
                          ++count;
                          EXPECT_EQ(p.side1->stars(), 0);
                      });
    EXPECT_EQ(count, 1);
}

TEST(EnumerateGuesses, SanityChecksHold) {
    std::mt19937_64 rng(79);
    for (int trial = 0; trial < 20; ++trial) {
        auto g = gen::random_graph(7, 0.3, rng);
        auto cover = *min_vertex_cover(g, 7);
        if (cover.size() > 3) continue;
        auto tc = twin_classes(g, cover);
        enumerate_side_guesses(g, tc, [&](const SideGuess& s) {
            EXPECT_LE(s.stars(), static_cast<int>(cover.size()));
            for (const auto& t : s.type2) {
                EXPECT_EQ(t.leaves & ~t.cls, 0u);
                EXPECT_GE(tc.class_size(t.cls), 1);
            }
            for (const auto& [cls, avail] : s.available) EXPECT_GE(avail, 0);
            for (std::size_t i = 0; i < cover.size(); ++i)
                if (s.roles[i].kind == CoverRole::type1_leaf)
                    EXPECT_TRUE(g.has_edge(cover[i], cover[s.type1_centres[s.roles[i].star]]));
        });
    }
}

static long model_optimum(const Graph& g1, const Graph& g2, std::vector<Vertex> c1, std::vector<Vertex> c2,
                          const std::function<bool(const GuessPair&)>& pick) {
    auto tc1 = twin_classes(g1, c1), tc2 = twin_classes(g2, c2);
    long best = -1;
    enumerate_guesses(g1, g2, tc1, tc2, [&](const GuessPair& p) {
        if (!pick(p)) return;
        auto sol = solve(build_vc_model(p, tc1, tc2, g1.vertex_count(), g2.vertex_count()));
        best = sol.optimal() ? sol.objective_value : -2;
    });
    return best;
}

TEST(BuildVcModel, Examples) {
    auto one_type1 = [](const GuessPair& p) {
        return p.side1->p() == 1 && p.side1->q() == 0 && p.side2->p() == 1 && p.side2->q() == 0 &&
               p.side1->beta[0] == 1 && p.side2->beta[0] == 1;
    };
    auto k2 = graphs::path(2);
    EXPECT_EQ(model_optimum(k2, k2, {0}, {0}, one_type1), 2);
    EXPECT_EQ(model_optimum(graphs::star(3), graphs::star(2), {0}, {0}, one_type1), 3);
    EXPECT_EQ(opt_common_brute(graphs::star(3), graphs::star(2)).size, 3);
    // A type-I centre with no admissible class and no cover leaf: alpha = 1 is
    // forced, which the floor of 2 makes infeasible.
    Graph g(3, {{0, 1}});
    EXPECT_EQ(model_optimum(g, g, {0, 2}, {0, 2}, [](const GuessPair& p) {
                  return p.side1->p() == 1 && p.side1->type1_centres[0] == 1 && p.side1->q() == 0 &&
                         p.side2->p() == 1 && p.side2->type1_centres[0] == 1;
              }),
              -2);
}

// Each model mirrors the displayed program: variables, class capacities,
// zeroed non-adjacent classes, size equations and matching equations.
TEST(BuildVcModel, StructureMatchesProgram) {
    std::mt19937_64 rng(83);
    for (int trial = 0; trial < 10; ++trial) {
        auto g1 = gen::random_graph(6, 0.35, rng), g2 = gen::random_graph(6, 0.35, rng);
        auto c1 = *min_vertex_cover(g1, 6), c2 = *min_vertex_cover(g2, 6);
        if (c1.size() > 3 || c2.size() > 3) continue;
        auto tc1 = twin_classes(g1, c1), tc2 = twin_classes(g2, c2);
        enumerate_guesses(g1, g2, tc1, tc2, [&](const GuessPair& p) {
            auto m = build_vc_model(p, tc1, tc2, 6, 6);
            const int p1 = p.side1->p(), r = p.side2->p();
            const int expected_vars = p1 * (1 + static_cast<int>(tc1.classes.size())) +
                                      r * (1 + static_cast<int>(tc2.classes.size()));
            ASSERT_EQ(m.var_count(), expected_vars);
            int nonadjacent = 0, size = 0, klass = 0, match = 0;
            for (const auto& c : m.constraints) {
                nonadjacent += c.name == "nonadjacent";
                size += c.name == "size";
                klass += c.name == "class";
                match += c.name == "match";
            }
            int expected_zero = 0;
            for (int i = 0; i < p1; ++i)
                for (const auto& [cls, mem] : tc1.classes) expected_zero += !(cls >> p.side1->type1_centres[i] & 1);
            for (int i = 0; i < r; ++i)
                for (const auto& [cls, mem] : tc2.classes) expected_zero += !(cls >> p.side2->type1_centres[i] & 1);
            EXPECT_EQ(nonadjacent, expected_zero);
            EXPECT_EQ(size, p1 + r);
            EXPECT_EQ(klass, (p1 ? static_cast<int>(tc1.classes.size()) : 0) +
                                 (r ? static_cast<int>(tc2.classes.size()) : 0));
            int pairs_with_type1 = 0;
            for (int i = 0; i < p.side1->stars(); ++i)
                pairs_with_type1 += p.side1->is_type1(i) || p.side2->is_type1(p.pi[i]);
            EXPECT_EQ(match, pairs_with_type1);
            for (const auto& v : m.variables)
                if (v.name.rfind("alpha", 0) == 0 || v.name.rfind("gamma", 0) == 0) EXPECT_EQ(v.lo, 2);
        });
    }
}

TEST(SolveVc, Examples) {
    EXPECT_EQ(solve_vc(graphs::complete(3), graphs::complete(3), 2).size, 3);
    EXPECT_EQ(solve_vc(graphs::path(4), graphs::star(3), 2).size, 3);
    EXPECT_EQ(solve_vc(Graph(3), Graph(4), 0).size, 0);
}

TEST(SolveVc, ReportsActualCoverSize) {
    try {
        solve_vc(graphs::complete(4), graphs::path(2), 2);
        FAIL();
    } catch (const PreconditionError& e) {
        EXPECT_NE(std::string(e.what()).find("size 3"), std::string::npos);
    }
}

TEST(SolveVc, AgreesWithOracle) {
    std::mt19937_64 rng(89);
    int checked = 0;
    while (checked < 100) {
        auto g1 = gen::random_small_cover_graph(3 + checked % 7, 1 + checked % 3, 0.3 + 0.2 * (checked % 3), rng);
        auto g2 = gen::random_small_cover_graph(3 + (checked / 2) % 7, 1 + (checked / 3) % 3, 0.5, rng);
        auto r = solve_vc(g1, g2, 3);
        auto o = opt_common_brute(g1, g2);
        ASSERT_EQ(r.size, o.size) << serialize_graph(g1) << "---\n" << serialize_graph(g2);
        EXPECT_EQ(r.vector.total_vertices(), r.size);
        ++checked;
    }
}
