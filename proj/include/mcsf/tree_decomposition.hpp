#pragma once

#include <algorithm>
#include <functional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "mcsf/graph.hpp"

namespace mcsf::tw {

// Rooted tree of bags; parent[root] == -1. Bags are sorted.
struct TreeDecomposition {
    std::vector<std::vector<Vertex>> bags;
    std::vector<int> parent;

    int node_count() const { return static_cast<int>(bags.size()); }

    int width() const {
        int w = 0;
        for (const auto& b : bags) w = std::max(w, static_cast<int>(b.size()));
        return w - 1;
    }

    int root() const {
        for (int i = 0; i < node_count(); ++i)
            if (parent[i] < 0) return i;
        return -1;
    }

    std::vector<std::vector<int>> children() const {
        std::vector<std::vector<int>> out(bags.size());
        for (int i = 0; i < node_count(); ++i)
            if (parent[i] >= 0) out[parent[i]].push_back(i);
        return out;
    }
};

// A path decomposition as a tree: bag i+1 hangs below bag i.
inline TreeDecomposition path_decomposition(std::vector<std::vector<Vertex>> bags) {
    TreeDecomposition td;
    for (auto& b : bags) std::sort(b.begin(), b.end());
    td.bags = std::move(bags);
    td.parent.resize(td.bags.size());
    for (std::size_t i = 0; i < td.bags.size(); ++i) td.parent[i] = static_cast<int>(i) - 1;
    return td;
}

inline bool verify_decomposition(const Graph& g, const TreeDecomposition& td, std::string* why = nullptr) {
    auto fail = [&](std::string reason) {
        if (why) *why = std::move(reason);
        return false;
    };
    const int m = td.node_count();
    if (static_cast<int>(td.parent.size()) != m) return fail("parent array size mismatch");
    if (m == 0) return g.vertex_count() == 0 ? true : fail("no bags");
    int roots = 0;
    for (int i = 0; i < m; ++i) {
        if (td.parent[i] < 0) ++roots;
        else if (td.parent[i] >= m) return fail("parent index out of range");
    }
    if (roots != 1) return fail("expected exactly one root, found " + std::to_string(roots));
    // Acyclic: every node reaches the root within m steps.
    for (int i = 0; i < m; ++i) {
        int cur = i, steps = 0;
        while (cur >= 0 && steps <= m) cur = td.parent[cur], ++steps;
        if (cur >= 0) return fail("parent pointers contain a cycle");
    }
    const int n = g.vertex_count();
    std::vector<int> owners(n, 0);
    std::vector<std::vector<char>> in_bag(m, std::vector<char>(n, 0));
    for (int i = 0; i < m; ++i)
        for (Vertex v : td.bags[i]) {
            if (v < 0 || v >= n) return fail("bag " + std::to_string(i) + " holds unknown vertex " + std::to_string(v));
            in_bag[i][v] = 1;
        }
    for (Vertex v = 0; v < n; ++v) {
        int tops = 0, seen = 0;
        for (int i = 0; i < m; ++i) {
            if (!in_bag[i][v]) continue;
            ++seen;
            if (td.parent[i] < 0 || !in_bag[td.parent[i]][v]) ++tops;
        }
        if (seen == 0) return fail("vertex " + std::to_string(v) + " is in no bag");
        if (tops != 1) return fail("bags holding vertex " + std::to_string(v) + " are not connected");
    }
    for (auto [u, v] : g.edges()) {
        bool found = false;
        for (int i = 0; i < m && !found; ++i) found = in_bag[i][u] && in_bag[i][v];
        if (!found) return fail("edge {" + std::to_string(u) + "," + std::to_string(v) + "} is in no bag");
    }
    return true;
}

namespace detail {

// Greedy elimination; `score` rates a vertex against the current fill graph.
inline std::vector<Vertex> greedy_order(const Graph& g,
                                        const std::function<long(const std::vector<std::set<Vertex>>&, Vertex)>& score) {
    const int n = g.vertex_count();
    std::vector<std::set<Vertex>> adj(n);
    for (Vertex v = 0; v < n; ++v) adj[v] = {g.neighbors(v).begin(), g.neighbors(v).end()};
    std::vector<char> done(n, 0);
    std::vector<Vertex> order;
    for (int step = 0; step < n; ++step) {
        Vertex best = -1;
        long best_score = 0;
        for (Vertex v = 0; v < n; ++v) {
            if (done[v]) continue;
            long s = score(adj, v);
            if (best < 0 || s < best_score) best = v, best_score = s;
        }
        order.push_back(best);
        done[best] = 1;
        std::vector<Vertex> nb(adj[best].begin(), adj[best].end());
        for (std::size_t i = 0; i < nb.size(); ++i) {
            adj[nb[i]].erase(best);
            for (std::size_t j = i + 1; j < nb.size(); ++j) {
                adj[nb[i]].insert(nb[j]);
                adj[nb[j]].insert(nb[i]);
            }
        }
        adj[best].clear();
    }
    return order;
}

} // namespace detail

// Min-fill elimination order, ties to the lowest vertex.
inline std::vector<Vertex> min_fill_order(const Graph& g) {
    return detail::greedy_order(g, [](const std::vector<std::set<Vertex>>& adj, Vertex v) {
        long fill = 0;
        for (auto a = adj[v].begin(); a != adj[v].end(); ++a)
            for (auto b = std::next(a); b != adj[v].end(); ++b)
                if (!adj[*a].count(*b)) ++fill;
        return fill;
    });
}

inline std::vector<Vertex> min_degree_order(const Graph& g) {
    return detail::greedy_order(
        g, [](const std::vector<std::set<Vertex>>& adj, Vertex v) { return static_cast<long>(adj[v].size()); });
}

// Bag of v = v plus its neighbours eliminated after it in the fill graph;
// its parent is the bag of the earliest of those. Separate components are
// chained under the first root.
inline TreeDecomposition decomposition_from_order(const Graph& g, const std::vector<Vertex>& order) {
    const int n = g.vertex_count();
    TreeDecomposition td;
    if (n == 0) {
        td.bags = {{}};
        td.parent = {-1};
        return td;
    }
    std::vector<int> pos(n, -1);
    for (int i = 0; i < n; ++i) pos[order[i]] = i;
    std::vector<std::set<Vertex>> adj(n);
    for (Vertex v = 0; v < n; ++v) adj[v] = {g.neighbors(v).begin(), g.neighbors(v).end()};
    td.bags.resize(n);
    td.parent.assign(n, -1);
    for (int i = 0; i < n; ++i) {
        const Vertex v = order[i];
        std::vector<Vertex> later;
        for (Vertex w : adj[v])
            if (pos[w] > i) later.push_back(w);
        for (std::size_t a = 0; a < later.size(); ++a)
            for (std::size_t b = a + 1; b < later.size(); ++b) {
                adj[later[a]].insert(later[b]);
                adj[later[b]].insert(later[a]);
            }
        td.bags[i] = later;
        td.bags[i].push_back(v);
        std::sort(td.bags[i].begin(), td.bags[i].end());
        if (!later.empty()) {
            Vertex next = *std::min_element(later.begin(), later.end(),
                                            [&](Vertex a, Vertex b) { return pos[a] < pos[b]; });
            td.parent[i] = pos[next];
        }
    }
    int first_root = -1;
    for (int i = 0; i < n; ++i) {
        if (td.parent[i] >= 0) continue;
        if (first_root < 0) first_root = i;
        else td.parent[i] = first_root;
    }
    return td;
}

inline TreeDecomposition heuristic_decomposition(const Graph& g) {
    return decomposition_from_order(g, min_fill_order(g));
}

enum class NodeKind { leaf, introduce, forget, join };

struct NiceNode {
    NodeKind kind = NodeKind::leaf;
    Vertex vertex = -1;              // introduced / forgotten vertex
    std::vector<Vertex> bag;         // sorted
    std::vector<int> children;
};

struct NiceTreeDecomposition {
    std::vector<NiceNode> nodes;
    int root = -1;

    int width() const {
        int w = 0;
        for (const auto& n : nodes) w = std::max(w, static_cast<int>(n.bag.size()));
        return w - 1;
    }

    // Children before parents.
    std::vector<int> post_order() const {
        std::vector<int> out, stack{root};
        while (!stack.empty()) {
            int t = stack.back();
            stack.pop_back();
            out.push_back(t);
            for (int c : nodes[t].children) stack.push_back(c);
        }
        std::reverse(out.begin(), out.end());
        return out;
    }

    TreeDecomposition as_tree() const {
        TreeDecomposition td;
        td.bags.resize(nodes.size());
        td.parent.assign(nodes.size(), -1);
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            td.bags[i] = nodes[i].bag;
            for (int c : nodes[i].children) td.parent[c] = static_cast<int>(i);
        }
        return td;
    }
};

// Structural rules of a nice decomposition (leaf bags empty, one vertex per
// introduce/forget, joins copy their bag, empty root).
inline bool verify_nice(const NiceTreeDecomposition& nice, std::string* why = nullptr) {
    auto fail = [&](std::string reason) {
        if (why) *why = std::move(reason);
        return false;
    };
    if (nice.root < 0 || !nice.nodes[nice.root].bag.empty()) return fail("root bag must be empty");
    for (std::size_t i = 0; i < nice.nodes.size(); ++i) {
        const auto& t = nice.nodes[i];
        auto with = [&](const std::vector<Vertex>& b, Vertex v) {
            auto out = b;
            out.push_back(v);
            std::sort(out.begin(), out.end());
            return out;
        };
        switch (t.kind) {
        case NodeKind::leaf:
            if (!t.children.empty() || !t.bag.empty()) return fail("bad leaf " + std::to_string(i));
            break;
        case NodeKind::introduce: {
            if (t.children.size() != 1) return fail("introduce needs one child");
            const auto& c = nice.nodes[t.children[0]].bag;
            if (std::binary_search(c.begin(), c.end(), t.vertex) || with(c, t.vertex) != t.bag)
                return fail("bad introduce " + std::to_string(i));
            break;
        }
        case NodeKind::forget: {
            if (t.children.size() != 1) return fail("forget needs one child");
            const auto& c = nice.nodes[t.children[0]].bag;
            if (std::binary_search(t.bag.begin(), t.bag.end(), t.vertex) || with(t.bag, t.vertex) != c)
                return fail("bad forget " + std::to_string(i));
            break;
        }
        case NodeKind::join:
            if (t.children.size() != 2) return fail("join needs two children");
            for (int c : t.children)
                if (nice.nodes[c].bag != t.bag) return fail("join bags differ at " + std::to_string(i));
            break;
        }
    }
    return true;
}

inline NiceTreeDecomposition to_nice(const TreeDecomposition& td) {
    NiceTreeDecomposition nice;
    auto add = [&](NodeKind kind, Vertex v, std::vector<Vertex> bag, std::vector<int> children) {
        nice.nodes.push_back({kind, v, std::move(bag), std::move(children)});
        return static_cast<int>(nice.nodes.size()) - 1;
    };
    // Walk from node `from` (bag `have`) to bag `want`: forget, then introduce.
    auto morph = [&](int from, std::vector<Vertex> have, const std::vector<Vertex>& want) {
        for (Vertex v : std::vector<Vertex>(have)) {
            if (std::binary_search(want.begin(), want.end(), v)) continue;
            have.erase(std::find(have.begin(), have.end(), v));
            from = add(NodeKind::forget, v, have, {from});
        }
        for (Vertex v : want) {
            if (std::binary_search(have.begin(), have.end(), v)) continue;
            have.insert(std::upper_bound(have.begin(), have.end(), v), v);
            from = add(NodeKind::introduce, v, have, {from});
        }
        return from;
    };
    if (td.node_count() == 0) {
        nice.root = add(NodeKind::leaf, -1, {}, {});
        return nice;
    }
    const auto children = td.children();
    std::vector<int> built(td.node_count(), -1);
    // Iterative post-order over the input tree.
    std::vector<std::pair<int, bool>> stack{{td.root(), false}};
    while (!stack.empty()) {
        auto [t, expanded] = stack.back();
        stack.pop_back();
        if (!expanded) {
            stack.push_back({t, true});
            for (int c : children[t]) stack.push_back({c, false});
            continue;
        }
        const auto& bag = td.bags[t];
        std::vector<int> branches;
        for (int c : children[t]) branches.push_back(morph(built[c], td.bags[c], bag));
        if (branches.empty()) branches.push_back(morph(add(NodeKind::leaf, -1, {}, {}), {}, bag));
        int cur = branches[0];
        for (std::size_t i = 1; i < branches.size(); ++i) cur = add(NodeKind::join, -1, bag, {cur, branches[i]});
        built[t] = cur;
    }
    const int top = td.root();
    nice.root = morph(built[top], td.bags[top], {});
    return nice;
}

inline void write_decomposition(std::ostream& out, const TreeDecomposition& td) {
    out << "nodes " << td.node_count() << " width " << td.width() << "\n";
    for (int i = 0; i < td.node_count(); ++i) {
        out << i << " parent " << td.parent[i] << " bag";
        for (Vertex v : td.bags[i]) out << ' ' << v;
        out << "\n";
    }
}

// --- treedepth ------------------------------------------------------------

// parent[v] is v's parent in a rooted forest on V(g) (-1 for roots). The
// forest certifies treedepth <= depth when every edge joins an ancestor and a
// descendant and no root-to-leaf path has more than `depth` vertices.
inline bool verify_elimination_forest(const Graph& g, const std::vector<Vertex>& parent, int depth,
                                      std::string* why = nullptr) {
    auto fail = [&](std::string reason) {
        if (why) *why = std::move(reason);
        return false;
    };
    const int n = g.vertex_count();
    if (static_cast<int>(parent.size()) != n) return fail("parent array size mismatch");
    std::vector<int> level(n, 0);
    for (Vertex v = 0; v < n; ++v) {
        int d = 1;
        for (Vertex u = parent[v]; u >= 0; u = parent[u]) {
            if (++d > n) return fail("cycle through vertex " + std::to_string(v));
        }
        level[v] = d;
        if (d > depth) return fail("vertex " + std::to_string(v) + " at depth " + std::to_string(d));
    }
    auto is_ancestor = [&](Vertex a, Vertex b) {
        for (Vertex u = parent[b]; u >= 0; u = parent[u])
            if (u == a) return true;
        return false;
    };
    for (auto [u, v] : g.edges())
        if (!is_ancestor(u, v) && !is_ancestor(v, u))
            return fail("edge {" + std::to_string(u) + "," + std::to_string(v) + "} crosses branches");
    return true;
}

// Exact test by recursive elimination; exponential, small graphs only.
inline bool treedepth_at_most(const Graph& g, int depth) {
    if (g.vertex_count() == 0) return true;
    if (depth <= 0) return false;
    auto comps = connected_components(g);
    if (comps.size() > 1) {
        for (const auto& c : comps)
            if (!treedepth_at_most(induced_subgraph(g, c).graph, depth)) return false;
        return true;
    }
    if (g.vertex_count() == 1) return true;
    for (Vertex root = 0; root < g.vertex_count(); ++root) {
        std::vector<Vertex> rest;
        for (Vertex v = 0; v < g.vertex_count(); ++v)
            if (v != root) rest.push_back(v);
        if (treedepth_at_most(induced_subgraph(g, rest).graph, depth - 1)) return true;
    }
    return false;
}

} // namespace mcsf::tw
