#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "mcsf/bip.hpp"
#include "mcsf/graph.hpp"
#include "mcsf/matching.hpp"

namespace mcsf {

// Independent-set vertices grouped by their exact neighbourhood inside the
// cover. Keys are bitmasks over positions in `cover`.
struct TwinClasses {
    std::vector<Vertex> cover;
    std::map<std::uint32_t, std::vector<Vertex>> classes;

    int class_size(std::uint32_t key) const {
        auto it = classes.find(key);
        return it == classes.end() ? 0 : static_cast<int>(it->second.size());
    }

    std::vector<Vertex> key_vertices(std::uint32_t key) const {
        std::vector<Vertex> out;
        for (std::size_t i = 0; i < cover.size(); ++i)
            if (key >> i & 1) out.push_back(cover[i]);
        return out;
    }

    std::string key_name(std::uint32_t key) const {
        std::string out = "{";
        for (Vertex v : key_vertices(key)) out += (out.size() > 1 ? "," : "") + std::to_string(v);
        return out + "}";
    }
};

inline TwinClasses twin_classes(const Graph& g, std::vector<Vertex> cover) {
    std::sort(cover.begin(), cover.end());
    cover.erase(std::unique(cover.begin(), cover.end()), cover.end());
    if (cover.size() > 30) throw ResourceError("vertex cover too large for twin classes");
    std::vector<int> pos(g.vertex_count(), -1);
    for (std::size_t i = 0; i < cover.size(); ++i) {
        if (cover[i] < 0 || cover[i] >= g.vertex_count()) throw PreconditionError("cover vertex out of range");
        pos[cover[i]] = static_cast<int>(i);
    }
    for (auto [u, v] : g.edges())
        if (pos[u] < 0 && pos[v] < 0)
            throw PreconditionError("not a vertex cover: edge {" + std::to_string(u) + "," + std::to_string(v) +
                                    "} is uncovered");
    TwinClasses tc;
    tc.cover = cover;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (pos[v] >= 0) continue;
        std::uint32_t key = 0;
        for (Vertex w : g.neighbors(v)) key |= 1u << pos[w];
        tc.classes[key].push_back(v);
    }
    return tc;
}

// A star whose centre sits in twin class `cls` and whose leaves are exactly
// the cover positions in `leaves`.
struct Type2Star {
    std::uint32_t cls = 0;
    std::uint32_t leaves = 0;

    int size() const { return 1 + __builtin_popcount(leaves); }
    auto operator<=>(const Type2Star&) const = default;
};

struct CoverRole {
    enum Kind { unused, centre, type1_leaf, type2_leaf };
    Kind kind = unused;
    int star = -1;
};

// Every guessed ingredient for one side. Type-I stars come first (indices
// 0..p-1), type-II stars follow (p..p+q-1).
struct SideGuess {
    std::vector<int> type1_centres;  // cover positions
    std::vector<int> beta;           // cover vertices in each type-I star
    std::vector<Type2Star> type2;
    std::vector<CoverRole> roles;    // per cover position
    std::map<std::uint32_t, int> available;  // a_X: class size minus type-II centres

    int p() const { return static_cast<int>(type1_centres.size()); }
    int q() const { return static_cast<int>(type2.size()); }
    int stars() const { return p() + q(); }
    bool is_type1(int star) const { return star < p(); }
    int constant_size(int star) const { return type2[star - p()].size(); }
};

struct GuessPair {
    const SideGuess* side1 = nullptr;
    const SideGuess* side2 = nullptr;
    std::vector<int> pi;  // star i of side 1 matches star pi[i] of side 2
};

namespace detail {

inline void enumerate_type1_leaves(const Graph& g, const TwinClasses& tc, SideGuess& guess, std::size_t pos,
                                   const std::function<void(const SideGuess&)>& emit) {
    if (pos == tc.cover.size()) {
        emit(guess);
        return;
    }
    if (guess.roles[pos].kind != CoverRole::unused) {
        enumerate_type1_leaves(g, tc, guess, pos + 1, emit);
        return;
    }
    enumerate_type1_leaves(g, tc, guess, pos + 1, emit);
    for (int i = 0; i < guess.p(); ++i) {
        if (!g.has_edge(tc.cover[pos], tc.cover[guess.type1_centres[i]])) continue;
        guess.roles[pos] = {CoverRole::type1_leaf, i};
        ++guess.beta[i];
        enumerate_type1_leaves(g, tc, guess, pos + 1, emit);
        --guess.beta[i];
        guess.roles[pos] = {};
    }
}

// Type-II stars as a non-decreasing sequence of (class, leaves) pairs.
inline void enumerate_type2(const Graph& g, const TwinClasses& tc, SideGuess& guess, std::uint32_t used,
                            const std::function<void(const SideGuess&)>& emit) {
    enumerate_type1_leaves(g, tc, guess, 0, emit);
    const std::uint32_t free = ((tc.cover.size() >= 32 ? 0u : 1u << tc.cover.size()) - 1) & ~used;
    for (const auto& [cls, members] : tc.classes) {
        if (guess.available.at(cls) == 0) continue;
        const std::uint32_t options = cls & free;
        for (std::uint32_t leaves = options; leaves; leaves = (leaves - 1) & options) {
            Type2Star star{cls, leaves};
            if (!guess.type2.empty() && star < guess.type2.back()) continue;
            const int idx = guess.p() + guess.q();
            guess.type2.push_back(star);
            --guess.available[cls];
            for (std::size_t i = 0; i < tc.cover.size(); ++i)
                if (leaves >> i & 1) guess.roles[i] = {CoverRole::type2_leaf, idx};
            enumerate_type2(g, tc, guess, used | leaves, emit);
            for (std::size_t i = 0; i < tc.cover.size(); ++i)
                if (leaves >> i & 1) guess.roles[i] = {};
            ++guess.available[cls];
            guess.type2.pop_back();
        }
    }
}

} // namespace detail

// Streams every consistent guess for one side.
inline void enumerate_side_guesses(const Graph& g, const TwinClasses& tc,
                                   const std::function<void(const SideGuess&)>& emit) {
    const std::size_t a = tc.cover.size();
    for (std::uint32_t centres = 0; centres < (1u << a); ++centres) {
        SideGuess guess;
        guess.roles.assign(a, {});
        for (std::size_t i = 0; i < a; ++i)
            if (centres >> i & 1) {
                guess.roles[i] = {CoverRole::centre, guess.p()};
                guess.type1_centres.push_back(static_cast<int>(i));
                guess.beta.push_back(1);
            }
        for (const auto& [cls, members] : tc.classes) guess.available[cls] = static_cast<int>(members.size());
        detail::enumerate_type2(g, tc, guess, centres, emit);
    }
}

inline std::vector<SideGuess> side_guesses(const Graph& g, const TwinClasses& tc) {
    std::vector<SideGuess> out;
    enumerate_side_guesses(g, tc, [&](const SideGuess& s) { out.push_back(s); });
    return out;
}

// Streams every consistent pairing of side guesses with a bijection pi.
// Bijections that only swap equal-size type-II stars give identical models
// and are emitted once.
inline void enumerate_guesses(const std::vector<SideGuess>& left, const std::vector<SideGuess>& right,
                              const std::function<void(const GuessPair&)>& emit) {
    for (const auto& s1 : left)
        for (const auto& s2 : right) {
            if (s1.stars() != s2.stars()) continue;
            std::vector<int> pi(s1.stars());
            std::iota(pi.begin(), pi.end(), 0);
            std::set<std::vector<std::pair<int, int>>> seen;
            do {
                bool ok = true;
                std::vector<std::pair<int, int>> key;
                for (int i = 0; i < s1.stars() && ok; ++i) {
                    const int j = pi[i];
                    const bool t1 = s1.is_type1(i), t2 = s2.is_type1(j);
                    if (!t1 && !t2 && s1.constant_size(i) != s2.constant_size(j)) ok = false;
                    key.emplace_back(t1 ? i : -s1.constant_size(i), t2 ? j : -s2.constant_size(j));
                }
                if (!ok) continue;
                std::sort(key.begin(), key.end());
                if (!seen.insert(key).second) continue;
                emit(GuessPair{&s1, &s2, pi});
            } while (std::next_permutation(pi.begin(), pi.end()));
        }
}

inline void enumerate_guesses(const Graph& g1, const Graph& g2, const TwinClasses& tc1, const TwinClasses& tc2,
                              const std::function<void(const GuessPair&)>& emit) {
    enumerate_guesses(side_guesses(g1, tc1), side_guesses(g2, tc2), emit);
}

// The integer program for one guess. Variable names: alpha_i, gamma_i,
// x_i_{X}, y_i_{Y} with 1-based star indices.
inline BipModel build_vc_model(const GuessPair& pair, const TwinClasses& tc1, const TwinClasses& tc2,
                               int n1, int n2) {
    BipModel m;
    const SideGuess& s1 = *pair.side1;
    const SideGuess& s2 = *pair.side2;
    struct Side {
        const SideGuess& guess;
        const TwinClasses& tc;
        int n;
        const char* size_name;
        const char* class_name;
        std::vector<int> size_var;
    };
    Side sides[2] = {{s1, tc1, n1, "alpha", "x", {}}, {s2, tc2, n2, "gamma", "y", {}}};
    for (int si = 0; si < 2; ++si) {
        Side& side = sides[si];
        std::map<std::uint32_t, std::vector<Term>> per_class;
        for (int i = 0; i < side.guess.p(); ++i) {
            const std::string idx = std::to_string(i + 1);
            // Stars are non-trivial, hence the floor of 2.
            const int sv = m.add_variable(std::string(side.size_name) + "_" + idx, 2, std::max(2, side.n));
            side.size_var.push_back(sv);
            std::vector<Term> sum{{sv, 1}};
            const std::uint32_t centre_bit = 1u << side.guess.type1_centres[i];
            for (const auto& [cls, members] : side.tc.classes) {
                const int avail = side.guess.available.at(cls);
                const int xv = m.add_variable(std::string(side.class_name) + "_" + idx + "_" + side.tc.key_name(cls),
                                              0, avail);
                if (!(cls & centre_bit)) m.add_constraint({{xv, 1}}, Relation::eq, 0, "nonadjacent");
                per_class[cls].push_back({xv, 1});
                sum.push_back({xv, -1});
            }
            m.add_constraint(sum, Relation::eq, side.guess.beta[i], "size");
            if (si == 0) m.add_objective(sv, 1);
        }
        for (auto& [cls, terms] : per_class)
            m.add_constraint(terms, Relation::le, side.guess.available.at(cls), "class");
    }
    for (int i = 0; i < s1.stars(); ++i) {
        const int j = pair.pi[i];
        const bool t1 = s1.is_type1(i), t2 = s2.is_type1(j);
        if (t1 && t2) {
            m.add_constraint({{sides[0].size_var[i], 1}, {sides[1].size_var[j], -1}}, Relation::eq, 0, "match");
        } else if (t1) {
            m.add_constraint({{sides[0].size_var[i], 1}}, Relation::eq, s2.constant_size(j), "match");
        } else if (t2) {
            m.add_constraint({{sides[1].size_var[j], 1}}, Relation::eq, s1.constant_size(i), "match");
        }
    }
    for (int i = s1.p(); i < s1.stars(); ++i) m.objective_constant += s1.constant_size(i);
    return m;
}

// Largest size star i of a side guess could reach.
inline long star_bound(const SideGuess& s, int i) {
    if (!s.is_type1(i)) return s.constant_size(i);
    long total = s.beta[i];
    for (const auto& [cls, avail] : s.available)
        if (cls >> s.type1_centres[i] & 1) total += avail;
    return total;
}

// Upper bound on the objective of a guess pair: matched stars share a size.
inline long pair_bound(const GuessPair& pair) {
    long total = 0;
    for (int i = 0; i < pair.side1->stars(); ++i)
        total += std::min(star_bound(*pair.side1, i), star_bound(*pair.side2, pair.pi[i]));
    return total;
}

struct VcResult {
    long size = 0;
    StarCountVector vector;
    long guesses = 0;
    long models = 0;
};

inline VcResult solve_vc(const Graph& g1, const Graph& g2, int k, const BipOptions& options = {}) {
    if (k < 0) throw PreconditionError("negative cover bound");
    std::vector<Vertex> covers[2];
    const Graph* gs[2] = {&g1, &g2};
    for (int side = 0; side < 2; ++side) {
        auto c = min_vertex_cover(*gs[side], k);
        if (!c) {
            auto actual = min_vertex_cover(*gs[side], gs[side]->vertex_count());
            throw PreconditionError("G" + std::to_string(side + 1) + " has minimum vertex cover of size " +
                                    std::to_string(actual->size()) + " > k = " + std::to_string(k));
        }
        covers[side] = *c;
    }
    const auto tc1 = twin_classes(g1, covers[0]);
    const auto tc2 = twin_classes(g2, covers[1]);
    const auto left = side_guesses(g1, tc1);
    const auto right = side_guesses(g2, tc2);
    VcResult best;
    enumerate_guesses(left, right, [&](const GuessPair& pair) {
        ++best.guesses;
        if (pair_bound(pair) <= best.size) return;
        auto model = build_vc_model(pair, tc1, tc2, g1.vertex_count(), g2.vertex_count());
        ++best.models;
        auto sol = solve(model, options);
        if (!sol.optimal() || sol.objective_value <= best.size) return;
        best.size = sol.objective_value;
        std::vector<int> sizes;
        for (int i = 0; i < pair.side1->stars(); ++i)
            sizes.push_back(pair.side1->is_type1(i)
                                ? static_cast<int>(sol.assignment[model.find("alpha_" + std::to_string(i + 1))])
                                : pair.side1->constant_size(i));
        best.vector = StarCountVector::from_sizes(sizes);
    });
    return best;
}

} // namespace mcsf
