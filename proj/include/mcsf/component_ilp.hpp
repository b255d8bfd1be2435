#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "mcsf/bip.hpp"
#include "mcsf/graph.hpp"

namespace mcsf {

constexpr int max_component_bound = 8;

// Canonical form of a small graph: the minimum upper-triangle adjacency
// bitstring over all vertex orders, pair (0,1) as the most significant bit.
struct CanonicalShape {
    int n = 0;
    std::uint64_t code = 0;

    auto operator<=>(const CanonicalShape&) const = default;
};

namespace detail {

inline std::uint64_t triangle_code(const Graph& g, const std::vector<int>& order) {
    const int n = g.vertex_count();
    std::uint64_t code = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) code = (code << 1) | (g.has_edge(order[i], order[j]) ? 1u : 0u);
    return code;
}

inline Graph graph_from_code(int n, std::uint64_t code) {
    std::vector<Edge> edges;
    int bit = n * (n - 1) / 2;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (code >> --bit & 1) edges.emplace_back(i, j);
    return Graph(n, edges);
}

} // namespace detail

inline CanonicalShape canonical_shape(const Graph& g) {
    const int n = g.vertex_count();
    if (n > max_component_bound)
        throw ResourceError("canonical form limited to " + std::to_string(max_component_bound) + " vertices");
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    CanonicalShape best{n, ~std::uint64_t{0}};
    do {
        best.code = std::min(best.code, detail::triangle_code(g, order));
    } while (std::next_permutation(order.begin(), order.end()));
    return best;
}

struct ComponentCatalog {
    int k = 0;
    std::vector<CanonicalShape> shapes;
    std::vector<Graph> shape_graphs;  // canonical labelling
    std::vector<long> counts1;        // p_i
    std::vector<long> counts2;        // q_i
};

inline ComponentCatalog catalog_components(const Graph& g1, const Graph& g2, int k) {
    if (k > max_component_bound)
        throw ResourceError("component bound k = " + std::to_string(k) + " exceeds the canonicalization limit of " +
                            std::to_string(max_component_bound));
    if (k < 1) throw PreconditionError("component bound must be positive");
    ComponentCatalog cat;
    cat.k = k;
    std::map<CanonicalShape, int> index;
    // Canonicalization cached by the labelled code of each component.
    std::map<std::pair<int, std::uint64_t>, CanonicalShape> seen;
    const Graph* graphs[2] = {&g1, &g2};
    for (int side = 0; side < 2; ++side) {
        for (const auto& comp : connected_components(*graphs[side])) {
            if (static_cast<int>(comp.size()) > k)
                throw PreconditionError("G" + std::to_string(side + 1) + " has a component of " +
                                        std::to_string(comp.size()) + " vertices containing vertex " +
                                        std::to_string(comp.front()) + ", above k = " + std::to_string(k));
            auto sub = induced_subgraph(*graphs[side], comp).graph;
            std::vector<int> identity(sub.vertex_count());
            std::iota(identity.begin(), identity.end(), 0);
            const std::pair<int, std::uint64_t> raw{sub.vertex_count(), detail::triangle_code(sub, identity)};
            auto it = seen.find(raw);
            if (it == seen.end()) it = seen.emplace(raw, canonical_shape(sub)).first;
            auto [slot, inserted] = index.emplace(it->second, static_cast<int>(cat.shapes.size()));
            if (inserted) {
                cat.shapes.push_back(it->second);
                cat.shape_graphs.push_back(detail::graph_from_code(it->second.n, it->second.code));
                cat.counts1.push_back(0);
                cat.counts2.push_back(0);
            }
            ++(side == 0 ? cat.counts1 : cat.counts2)[slot->second];
        }
    }
    return cat;
}

// counts[j-1] = number of stars with j leaves.
using Signature = std::vector<int>;

namespace detail {

// Lowest unassigned vertex v is unused, the centre of a star with a nonempty
// set of free neighbours as leaves, or a leaf of a free neighbour c that
// also takes any further free neighbours.
class Realiser {
public:
    Realiser(const Graph& g, int k) : g_(g), k_(k), assigned_(g.vertex_count(), 0), sig_(k, 0) {}

    std::set<Signature> run() {
        rec();
        return out_;
    }

private:
    void rec() {
        Vertex v = 0;
        while (v < g_.vertex_count() && assigned_[v]) ++v;
        if (v == g_.vertex_count()) {
            out_.insert(sig_);
            return;
        }
        assigned_[v] = 1;
        rec();
        with_star(v, -1);
        for (Vertex c : g_.neighbors(v))
            if (!assigned_[c]) with_star(c, v);
        assigned_[v] = 0;
    }

    // Star at centre c; `forced` is a leaf already fixed (or -1).
    void with_star(Vertex c, Vertex forced) {
        const char was = assigned_[c];
        assigned_[c] = 1;
        std::vector<Vertex> free;
        for (Vertex w : g_.neighbors(c))
            if (!assigned_[w]) free.push_back(w);
        const std::uint32_t subsets = 1u << free.size();
        for (std::uint32_t s = forced >= 0 ? 0 : 1; s < subsets; ++s) {
            const int leaves = __builtin_popcount(s) + (forced >= 0 ? 1 : 0);
            for (std::size_t i = 0; i < free.size(); ++i)
                if (s >> i & 1) assigned_[free[i]] = 1;
            ++sig_[leaves - 1];
            rec();
            --sig_[leaves - 1];
            for (std::size_t i = 0; i < free.size(); ++i)
                if (s >> i & 1) assigned_[free[i]] = 0;
        }
        assigned_[c] = was;
    }

    const Graph& g_;
    int k_;
    std::vector<char> assigned_;
    Signature sig_;
    std::set<Signature> out_;
};

} // namespace detail

// Signatures (length k) realisable by star-forest edge subsets of g.
inline std::set<Signature> realisable_signatures(const Graph& g, int k) {
    if (g.vertex_count() > k) throw PreconditionError("shape larger than the component bound");
    return detail::Realiser(g, k).run();
}

struct RealisationTable {
    std::vector<Signature> signatures;      // S_1..S_K: union over shapes, sorted
    std::vector<std::vector<char>> br;      // br[i][l]
};

inline RealisationTable realisation_table(const ComponentCatalog& cat) {
    std::vector<std::set<Signature>> per_shape;
    std::set<Signature> all;
    for (const auto& g : cat.shape_graphs) {
        per_shape.push_back(realisable_signatures(g, cat.k));
        all.insert(per_shape.back().begin(), per_shape.back().end());
    }
    RealisationTable t;
    t.signatures.assign(all.begin(), all.end());
    for (const auto& sigs : per_shape) {
        std::vector<char> row(t.signatures.size(), 0);
        for (std::size_t l = 0; l < t.signatures.size(); ++l) row[l] = sigs.count(t.signatures[l]) ? 1 : 0;
        t.br.push_back(std::move(row));
    }
    return t;
}

// x_{i,l} and y_{i,l} exist only where br[i][l] holds and the shape occurs on
// that side; the rest are fixed at zero by omission.
inline BipModel build_cc_model(const ComponentCatalog& cat, const RealisationTable& table) {
    BipModel m;
    const int k = cat.k;
    std::vector<std::vector<Term>> balance(k);
    for (int side = 0; side < 2; ++side) {
        const auto& counts = side == 0 ? cat.counts1 : cat.counts2;
        const char* name = side == 0 ? "x" : "y";
        for (std::size_t i = 0; i < cat.shapes.size(); ++i) {
            if (counts[i] == 0) continue;
            std::vector<Term> total;
            for (std::size_t l = 0; l < table.signatures.size(); ++l) {
                if (!table.br[i][l]) continue;
                const int v = m.add_variable(std::string(name) + "_" + std::to_string(i + 1) + "_" +
                                                 std::to_string(l + 1),
                                             0, counts[i]);
                total.push_back({v, 1});
                const auto& sig = table.signatures[l];
                long weight = 0;
                for (int j = 1; j <= k; ++j) {
                    if (sig[j - 1] == 0) continue;
                    balance[j - 1].push_back({v, side == 0 ? sig[j - 1] : -sig[j - 1]});
                    weight += static_cast<long>(j + 1) * sig[j - 1];
                }
                if (side == 0 && weight) m.add_objective(v, weight);
            }
            m.add_constraint(total, Relation::eq, counts[i], std::string(side == 0 ? "p_" : "q_") + std::to_string(i + 1));
        }
    }
    for (int j = 1; j <= k; ++j)
        if (!balance[j - 1].empty())
            m.add_constraint(balance[j - 1], Relation::eq, 0, "balance_" + std::to_string(j));
    return m;
}

struct CcResult {
    long size = 0;
    StarCountVector vector;
    int shapes = 0;
    int signatures = 0;
};

inline CcResult solve_cc(const Graph& g1, const Graph& g2, int k, const BipOptions& options = {}) {
    const auto cat = catalog_components(g1, g2, k);
    const auto table = realisation_table(cat);
    const auto model = build_cc_model(cat, table);
    const auto sol = solve(model, options);
    if (!sol.optimal()) throw Error("component program infeasible; the empty realisation should always fit");
    CcResult out;
    out.size = sol.objective_value;
    out.shapes = static_cast<int>(cat.shapes.size());
    out.signatures = static_cast<int>(table.signatures.size());
    std::vector<long> stars(k, 0);
    for (int v = 0; v < model.var_count(); ++v) {
        const auto& name = model.variables[v].name;
        if (name[0] != 'x' || sol.assignment[v] == 0) continue;
        const auto l = std::stoul(name.substr(name.rfind('_') + 1)) - 1;
        for (int j = 1; j <= k; ++j) stars[j - 1] += table.signatures[l][j - 1] * sol.assignment[v];
    }
    for (int j = 1; j <= k; ++j)
        if (stars[j - 1]) out.vector.add(j + 1, static_cast<int>(stars[j - 1]));
    return out;
}

inline int max_component_size(const Graph& g) {
    int best = 0;
    for (const auto& c : connected_components(g)) best = std::max(best, static_cast<int>(c.size()));
    return best;
}

// Bounded treedepth and degree bound every component size; the actual
// largest component is what matters, so it is measured directly.
inline CcResult solve_td_deg(const Graph& g1, const Graph& g2, const BipOptions& options = {}) {
    const int k = std::max({1, max_component_size(g1), max_component_size(g2)});
    if (k > max_component_bound)
        throw ResourceError("largest component has " + std::to_string(k) + " vertices, above the limit of " +
                            std::to_string(max_component_bound));
    return solve_cc(g1, g2, k, options);
}

} // namespace mcsf
