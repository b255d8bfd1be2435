#include <gtest/gtest.h>

#include <random>

#include "mcsf/bip.hpp"

using namespace mcsf;

TEST(Bip, Examples) {
    {
        BipModel m;
        int x = m.add_variable("x", 0, 10);
        m.add_constraint({{x, 1}}, Relation::le, 3);
        m.add_objective(x, 1);
        auto s = solve(m);
        ASSERT_TRUE(s.optimal());
        EXPECT_EQ(s.assignment[x], 3);
    }
    {
        BipModel m;
        int x = m.add_variable("x", 0, 2), y = m.add_variable("y", 0, 2);
        m.add_constraint({{x, 1}, {y, 1}}, Relation::eq, 5);
        m.add_objective(x, 1);
        m.add_objective(y, 1);
        EXPECT_EQ(solve(m).status, BipStatus::infeasible);
    }
    {
        BipModel m;
        int a = m.add_variable("a", 0, 3), b = m.add_variable("b", 0, 3);
        m.add_constraint({{a, 1}, {b, 1}}, Relation::le, 4);
        m.add_objective(a, 2);
        m.add_objective(b, 1);
        auto s = solve(m);
        EXPECT_EQ(s.objective_value, 7);
        EXPECT_EQ(s.assignment, (std::vector<long>{3, 1}));
    }
}

TEST(Bip, ModelChecks) {
    BipModel m;
    m.add_variable("x", 0, 1);
    EXPECT_THROW(m.add_variable("x", 0, 1), PreconditionError);
    EXPECT_THROW(m.add_variable("y", 2, 1), PreconditionError);
    EXPECT_THROW(m.add_constraint({{3, 1}}, Relation::le, 0), PreconditionError);
    EXPECT_NE(m.dump().find("var x in [0,1]"), std::string::npos);
}

TEST(Bip, NodeBudget) {
    BipModel m;
    std::vector<Term> sum;
    for (int i = 0; i < 12; ++i) sum.push_back({m.add_variable("x" + std::to_string(i), 0, 1), 2});
    m.add_constraint(sum, Relation::eq, 11);  // parity makes it infeasible
    EXPECT_THROW(solve(m, {.node_budget = 10}), ResourceError);
    EXPECT_EQ(solve(m).status, BipStatus::infeasible);
}

struct RandomModel {
    BipModel model;
    std::vector<long> lo, hi;
};

static RandomModel random_model(std::mt19937_64& rng) {
    RandomModel r;
    std::uniform_int_distribution<int> nvars(1, 6), ncons(0, 4), coef(-3, 3), bound(0, 8);
    const int n = nvars(rng);
    for (int i = 0; i < n; ++i) {
        long a = bound(rng), b = bound(rng);
        if (a > b) std::swap(a, b);
        r.model.add_variable("v" + std::to_string(i), a, b);
        r.lo.push_back(a);
        r.hi.push_back(b);
        r.model.add_objective(i, coef(rng));
    }
    const int m = ncons(rng);
    for (int c = 0; c < m; ++c) {
        std::vector<Term> terms;
        for (int i = 0; i < n; ++i)
            if (rng() % 2) terms.push_back({i, coef(rng)});
        auto rel = static_cast<Relation>(rng() % 3);
        r.model.add_constraint(terms, rel, std::uniform_int_distribution<int>(-5, 15)(rng));
    }
    return r;
}

// Full grid enumeration as the reference.
static std::optional<long> grid_optimum(const RandomModel& r) {
    const int n = r.model.var_count();
    std::vector<long> x(r.lo);
    std::optional<long> best;
    for (;;) {
        if (satisfies(r.model, x)) {
            long v = objective_value(r.model, x);
            if (!best || v > *best) best = v;
        }
        int i = 0;
        while (i < n && x[i] == r.hi[i]) x[i] = r.lo[i], ++i;
        if (i == n) break;
        ++x[i];
    }
    return best;
}

TEST(Bip, AgreesWithGridEnumeration) {
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 200; ++trial) {
        auto r = random_model(rng);
        auto expected = grid_optimum(r);
        auto s = solve(r.model);
        ASSERT_EQ(s.optimal(), expected.has_value()) << r.model.dump();
        if (!expected) continue;
        EXPECT_EQ(s.objective_value, *expected) << r.model.dump();
        EXPECT_TRUE(satisfies(r.model, s.assignment));
        EXPECT_EQ(objective_value(r.model, s.assignment), s.objective_value);
    }
}

TEST(Bip, ScalingKeepsOptimalAssignments) {
    std::mt19937_64 rng(67);
    for (int trial = 0; trial < 100; ++trial) {
        auto r = random_model(rng);
        auto s = solve(r.model);
        BipModel scaled = r.model;
        const long k = 2 + trial % 4;
        for (auto& c : scaled.constraints) {
            for (auto& t : c.terms) t.coef *= k;
            c.rhs *= k;
        }
        for (auto& t : scaled.objective) t.coef *= k;
        auto t = solve(scaled);
        ASSERT_EQ(s.optimal(), t.optimal());
        if (!s.optimal()) continue;
        EXPECT_EQ(t.objective_value, k * s.objective_value);
        // Each solver's argmax is optimal for the other model.
        EXPECT_TRUE(satisfies(r.model, t.assignment));
        EXPECT_EQ(objective_value(r.model, t.assignment), s.objective_value);
    }
}

TEST(Bip, DeclarationOrderDoesNotChangeValue) {
    std::mt19937_64 rng(71);
    for (int trial = 0; trial < 100; ++trial) {
        auto r = random_model(rng);
        const int n = r.model.var_count();
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        BipModel p;
        for (int i = 0; i < n; ++i) {
            const auto& v = r.model.variables[perm[i]];
            p.add_variable(v.name, v.lo, v.hi);
        }
        std::vector<int> where(n);
        for (int i = 0; i < n; ++i) where[perm[i]] = i;
        for (const auto& c : r.model.constraints) {
            std::vector<Term> terms;
            for (auto t : c.terms) terms.push_back({where[t.var], t.coef});
            p.add_constraint(terms, c.rel, c.rhs);
        }
        for (auto t : r.model.objective) p.add_objective(where[t.var], t.coef);
        auto a = solve(r.model), b = solve(p);
        ASSERT_EQ(a.optimal(), b.optimal());
        if (a.optimal()) EXPECT_EQ(a.objective_value, b.objective_value);
    }
}
