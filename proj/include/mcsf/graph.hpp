#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <queue>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mcsf/errors.hpp"

namespace mcsf {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;

// Simple undirected graph on vertices 0..n-1 with sorted, duplicate-free
// adjacency lists.
class Graph {
public:
    Graph() = default;

    explicit Graph(int vertex_count) : adjacency_(checked_count(vertex_count)) {}

    // Duplicate edges (in either orientation) collapse to one. Self-loops and
    // out-of-range endpoints throw PreconditionError.
    Graph(int vertex_count, std::span<const Edge> edges) : Graph(vertex_count) {
        for (auto [u, v] : edges) {
            check_endpoints(u, v);
            adjacency_[u].push_back(v);
            adjacency_[v].push_back(u);
        }
        for (auto& list : adjacency_) {
            std::sort(list.begin(), list.end());
            list.erase(std::unique(list.begin(), list.end()), list.end());
        }
        recount();
    }

    Graph(int vertex_count, std::initializer_list<Edge> edges)
        : Graph(vertex_count, std::span<const Edge>(edges.begin(), edges.size())) {}

    int vertex_count() const noexcept { return static_cast<int>(adjacency_.size()); }
    int edge_count() const noexcept { return edge_count_; }

    std::span<const Vertex> neighbors(Vertex v) const { return adjacency_[v]; }
    int degree(Vertex v) const { return static_cast<int>(adjacency_[v].size()); }

    int max_degree() const {
        int best = 0;
        for (const auto& list : adjacency_) best = std::max(best, static_cast<int>(list.size()));
        return best;
    }

    bool has_edge(Vertex u, Vertex v) const {
        if (u < 0 || v < 0 || u >= vertex_count() || v >= vertex_count()) return false;
        const auto& list = adjacency_[u];
        return std::binary_search(list.begin(), list.end(), v);
    }

    // Edges with u < v, sorted lexicographically.
    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        out.reserve(edge_count_);
        for (Vertex u = 0; u < vertex_count(); ++u)
            for (Vertex v : adjacency_[u])
                if (u < v) out.emplace_back(u, v);
        return out;
    }

    std::vector<Vertex> isolated_vertices() const {
        std::vector<Vertex> out;
        for (Vertex v = 0; v < vertex_count(); ++v)
            if (adjacency_[v].empty()) out.push_back(v);
        return out;
    }

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    static std::size_t checked_count(int n) {
        if (n < 0) throw PreconditionError("negative vertex count");
        return static_cast<std::size_t>(n);
    }

    void check_endpoints(Vertex u, Vertex v) const {
        if (u < 0 || v < 0 || u >= vertex_count() || v >= vertex_count())
            throw PreconditionError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                                    ") out of range");
        if (u == v) throw PreconditionError("self-loop at vertex " + std::to_string(u));
    }

    void recount() {
        std::size_t twice = 0;
        for (const auto& list : adjacency_) twice += list.size();
        edge_count_ = static_cast<int>(twice / 2);
    }

    std::vector<std::vector<Vertex>> adjacency_;
    int edge_count_ = 0;
};

// Number of stars of each size. counts[d] is the number of stars on d
// vertices; entries 0 and 1 are always zero and trailing zeros are trimmed,
// so equal vectors mean isomorphic star forests.
class StarCountVector {
public:
    StarCountVector() = default;

    static StarCountVector from_sizes(std::span<const int> sizes) {
        StarCountVector out;
        for (int d : sizes) out.add(d, 1);
        return out;
    }

    int count(int size) const {
        return size >= 0 && size < static_cast<int>(counts_.size()) ? counts_[size] : 0;
    }

    void add(int size, int delta) {
        if (size < 2) throw PreconditionError("star size must be at least 2");
        if (size >= static_cast<int>(counts_.size())) counts_.resize(size + 1, 0);
        counts_[size] += delta;
        if (counts_[size] < 0) throw PreconditionError("negative star count");
        trim();
    }

    // Largest star size present, or 0 for the empty forest.
    int max_size() const { return counts_.empty() ? 0 : static_cast<int>(counts_.size()) - 1; }

    long total_vertices() const {
        long total = 0;
        for (std::size_t d = 0; d < counts_.size(); ++d) total += static_cast<long>(d) * counts_[d];
        return total;
    }

    int star_count() const { return std::accumulate(counts_.begin(), counts_.end(), 0); }
    bool empty() const { return counts_.empty(); }

    // Star sizes in non-increasing order.
    std::vector<int> sizes() const {
        std::vector<int> out;
        for (int d = max_size(); d >= 2; --d)
            for (int c = 0; c < counts_[d]; ++c) out.push_back(d);
        return out;
    }

    std::string to_string() const {
        std::string out = "{";
        bool first = true;
        for (int d = 2; d <= max_size(); ++d) {
            if (counts_[d] == 0) continue;
            if (!first) out += ",";
            out += std::to_string(d) + ":" + std::to_string(counts_[d]);
            first = false;
        }
        return out + "}";
    }

    friend auto operator<=>(const StarCountVector&, const StarCountVector&) = default;
    friend bool operator==(const StarCountVector&, const StarCountVector&) = default;

private:
    void trim() {
        while (!counts_.empty() && counts_.back() == 0) counts_.pop_back();
    }

    std::vector<int> counts_;
};

// A star forest shape: the list of star sizes (each >= 2). The order is the
// order in which an Embedding lists its stars.
class StarForest {
public:
    StarForest() = default;

    explicit StarForest(std::vector<int> sizes) : sizes_(std::move(sizes)) {
        for (int d : sizes_)
            if (d < 2) throw PreconditionError("star size " + std::to_string(d) + " is below 2");
    }

    static StarForest from_vector(const StarCountVector& v) { return StarForest(v.sizes()); }

    const std::vector<int>& sizes() const noexcept { return sizes_; }
    int star_count() const noexcept { return static_cast<int>(sizes_.size()); }
    long total_vertices() const { return std::accumulate(sizes_.begin(), sizes_.end(), 0L); }
    StarCountVector to_vector() const { return StarCountVector::from_sizes(sizes_); }

    // Isomorphism of star forests.
    bool same_shape(const StarForest& other) const { return to_vector() == other.to_vector(); }

    friend bool operator==(const StarForest&, const StarForest&) = default;

private:
    std::vector<int> sizes_;
};

// stars[i][0] is the image of the centre of star i, stars[i][1..] the images
// of its leaves.
struct Embedding {
    std::vector<std::vector<Vertex>> stars;

    StarForest shape() const {
        std::vector<int> sizes;
        sizes.reserve(stars.size());
        for (const auto& s : stars) sizes.push_back(static_cast<int>(s.size()));
        return StarForest(std::move(sizes));
    }

    friend bool operator==(const Embedding&, const Embedding&) = default;
};

// The set of star-count vectors realisable as vertex-disjoint stars of
// size at most delta+1 in one graph.
struct VectorFamily {
    int delta = 1;
    std::set<StarCountVector> vectors;

    bool contains(const StarCountVector& v) const { return vectors.count(v) > 0; }
    friend bool operator==(const VectorFamily&, const VectorFamily&) = default;
};

// Reorders stars by non-increasing size (stable), matching
// StarForest::from_vector.
inline void sort_stars(Embedding& emb) {
    std::stable_sort(emb.stars.begin(), emb.stars.end(),
                     [](const auto& a, const auto& b) { return a.size() > b.size(); });
}

struct Instance {
    Graph g1;
    Graph g2;
    long h = 0;
};

struct VerifyResult {
    bool ok = true;
    std::string violation;

    explicit operator bool() const noexcept { return ok; }
};

// Checks injectivity, that every centre-leaf pair is a host edge, and that
// star i of the embedding has exactly forest.sizes()[i] vertices.
inline VerifyResult verify_embedding(const Graph& host, const StarForest& forest,
                                     const Embedding& emb) {
    auto fail = [](std::string why) { return VerifyResult{false, std::move(why)}; };
    if (static_cast<int>(emb.stars.size()) != forest.star_count())
        return fail("embedding has " + std::to_string(emb.stars.size()) + " stars, forest has " +
                    std::to_string(forest.star_count()));
    std::vector<int> owner(host.vertex_count(), -1);
    for (std::size_t i = 0; i < emb.stars.size(); ++i) {
        const auto& star = emb.stars[i];
        if (static_cast<int>(star.size()) != forest.sizes()[i])
            return fail("star " + std::to_string(i) + " has " + std::to_string(star.size()) +
                        " vertices, expected " + std::to_string(forest.sizes()[i]));
        for (std::size_t pos = 0; pos < star.size(); ++pos) {
            Vertex v = star[pos];
            if (v < 0 || v >= host.vertex_count())
                return fail("star " + std::to_string(i) + " maps to vertex " + std::to_string(v) +
                            " outside the host");
            if (owner[v] >= 0)
                return fail("vertex " + std::to_string(v) + " used by stars " +
                            std::to_string(owner[v]) + " and " + std::to_string(i));
            owner[v] = static_cast<int>(i);
            if (pos > 0 && !host.has_edge(star[0], v))
                return fail("star " + std::to_string(i) + ": {" + std::to_string(star[0]) + "," +
                            std::to_string(v) + "} is not an edge");
        }
    }
    return {};
}

// ---------------------------------------------------------------------------
// Text formats
// ---------------------------------------------------------------------------

namespace detail {

struct LineReader {
    std::istream& in;
    int line_no = 0;

    // Next non-blank line, trimmed of trailing whitespace.
    std::optional<std::string> next() {
        std::string line;
        while (std::getline(in, line)) {
            ++line_no;
            auto end = line.find_last_not_of(" \t\r");
            if (end == std::string::npos) continue;
            line.erase(end + 1);
            return line;
        }
        return std::nullopt;
    }
};

inline std::vector<long> parse_ints(const std::string& line, int line_no, std::size_t expected) {
    std::istringstream ss(line);
    std::vector<long> out;
    std::string tok;
    while (ss >> tok) {
        std::size_t used = 0;
        long value = 0;
        try {
            value = std::stol(tok, &used);
        } catch (const std::exception&) {
            throw ParseError(line_no, "expected an integer, got '" + tok + "'");
        }
        if (used != tok.size()) throw ParseError(line_no, "expected an integer, got '" + tok + "'");
        out.push_back(value);
    }
    if (out.size() != expected)
        throw ParseError(line_no, "expected " + std::to_string(expected) + " integers, got " +
                                      std::to_string(out.size()));
    return out;
}

inline Graph read_graph_block(LineReader& reader) {
    auto header = reader.next();
    if (!header) throw ParseError(reader.line_no, "missing graph header 'n m'");
    auto nm = parse_ints(*header, reader.line_no, 2);
    if (nm[0] < 0 || nm[1] < 0) throw ParseError(reader.line_no, "negative n or m in header");
    const long n = nm[0];
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(nm[1]));
    for (long i = 0; i < nm[1]; ++i) {
        auto line = reader.next();
        if (!line || *line == "---")
            throw ParseError(reader.line_no, "expected " + std::to_string(nm[1]) +
                                                 " edge lines, found " + std::to_string(i));
        auto uv = parse_ints(*line, reader.line_no, 2);
        if (uv[0] < 0 || uv[0] >= n || uv[1] < 0 || uv[1] >= n)
            throw ParseError(reader.line_no, "vertex index out of range [0," + std::to_string(n) + ")");
        if (uv[0] == uv[1]) throw ParseError(reader.line_no, "self-loop");
        edges.emplace_back(static_cast<Vertex>(uv[0]), static_cast<Vertex>(uv[1]));
    }
    return Graph(static_cast<int>(n), edges);
}

} // namespace detail

inline Graph parse_graph(std::istream& in) {
    detail::LineReader reader{in};
    Graph g = detail::read_graph_block(reader);
    if (auto extra = reader.next()) throw ParseError(reader.line_no, "trailing content after edges");
    return g;
}

inline Graph parse_graph(const std::string& text) {
    std::istringstream in(text);
    return parse_graph(in);
}

inline void write_graph(std::ostream& out, const Graph& g) {
    out << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

inline std::string serialize_graph(const Graph& g) {
    std::ostringstream out;
    write_graph(out, g);
    return out.str();
}

inline Instance parse_instance(std::istream& in) {
    detail::LineReader reader{in};
    auto first = reader.next();
    if (!first) throw ParseError(reader.line_no, "missing target line 'h'");
    auto h = detail::parse_ints(*first, reader.line_no, 1);
    if (h[0] < 0) throw ParseError(reader.line_no, "negative target h");
    Instance inst;
    inst.h = h[0];
    inst.g1 = detail::read_graph_block(reader);
    auto sep = reader.next();
    if (!sep || *sep != "---") throw ParseError(reader.line_no, "expected separator '---'");
    inst.g2 = detail::read_graph_block(reader);
    if (auto extra = reader.next()) throw ParseError(reader.line_no, "trailing content after second graph");
    return inst;
}

inline Instance parse_instance(const std::string& text) {
    std::istringstream in(text);
    return parse_instance(in);
}

inline std::string serialize_instance(const Instance& inst) {
    std::ostringstream out;
    out << inst.h << '\n';
    write_graph(out, inst.g1);
    out << "---\n";
    write_graph(out, inst.g2);
    return out.str();
}

// ---------------------------------------------------------------------------
// Traversal helpers
// ---------------------------------------------------------------------------

// BFS level of every vertex; each component is rooted at its lowest index.
inline std::vector<int> bfs_levels(const Graph& g) {
    std::vector<int> level(g.vertex_count(), -1);
    std::queue<Vertex> queue;
    for (Vertex root = 0; root < g.vertex_count(); ++root) {
        if (level[root] >= 0) continue;
        level[root] = 0;
        queue.push(root);
        while (!queue.empty()) {
            Vertex u = queue.front();
            queue.pop();
            for (Vertex w : g.neighbors(u)) {
                if (level[w] >= 0) continue;
                level[w] = level[u] + 1;
                queue.push(w);
            }
        }
    }
    return level;
}

// Connected components, each sorted, ordered by smallest vertex.
inline std::vector<std::vector<Vertex>> connected_components(const Graph& g) {
    std::vector<int> comp(g.vertex_count(), -1);
    std::vector<std::vector<Vertex>> out;
    for (Vertex root = 0; root < g.vertex_count(); ++root) {
        if (comp[root] >= 0) continue;
        const int id = static_cast<int>(out.size());
        out.emplace_back();
        std::vector<Vertex> stack{root};
        comp[root] = id;
        while (!stack.empty()) {
            Vertex u = stack.back();
            stack.pop_back();
            out[id].push_back(u);
            for (Vertex w : g.neighbors(u))
                if (comp[w] < 0) {
                    comp[w] = id;
                    stack.push_back(w);
                }
        }
        std::sort(out[id].begin(), out[id].end());
    }
    return out;
}

struct Subgraph {
    Graph graph;
    std::vector<Vertex> original;  // subgraph vertex -> host vertex
};

// Induced subgraph on `keep`; new index i corresponds to keep[i].
inline Subgraph induced_subgraph(const Graph& g, std::span<const Vertex> keep) {
    std::vector<int> index(g.vertex_count(), -1);
    for (std::size_t i = 0; i < keep.size(); ++i) index[keep[i]] = static_cast<int>(i);
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < keep.size(); ++i)
        for (Vertex w : g.neighbors(keep[i]))
            if (index[w] > static_cast<int>(i)) edges.emplace_back(static_cast<int>(i), index[w]);
    return {Graph(static_cast<int>(keep.size()), edges), std::vector<Vertex>(keep.begin(), keep.end())};
}

// Disjoint union; vertices of b are shifted by a.vertex_count().
inline Graph disjoint_union(const Graph& a, const Graph& b) {
    auto edges = a.edges();
    for (auto [u, v] : b.edges()) edges.emplace_back(u + a.vertex_count(), v + a.vertex_count());
    return Graph(a.vertex_count() + b.vertex_count(), edges);
}

// Common small graphs used throughout tests and generators.
namespace graphs {

inline Graph path(int n) {
    std::vector<Edge> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return Graph(n, e);
}

inline Graph cycle(int n) {
    std::vector<Edge> e;
    for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
    return Graph(n, e);
}

inline Graph complete(int n) {
    std::vector<Edge> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return Graph(n, e);
}

// K_{1,leaves}, centre 0.
inline Graph star(int leaves) {
    std::vector<Edge> e;
    for (int i = 1; i <= leaves; ++i) e.emplace_back(0, i);
    return Graph(leaves + 1, e);
}

inline Graph petersen() {
    std::vector<Edge> e;
    for (int i = 0; i < 5; ++i) {
        e.emplace_back(i, (i + 1) % 5);
        e.emplace_back(i, i + 5);
        e.emplace_back(5 + i, 5 + (i + 2) % 5);
    }
    return Graph(10, e);
}

inline Graph grid(int rows, int cols) {
    std::vector<Edge> e;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            int v = r * cols + c;
            if (c + 1 < cols) e.emplace_back(v, v + 1);
            if (r + 1 < rows) e.emplace_back(v, v + cols);
        }
    return Graph(rows * cols, e);
}

// Disjoint union of `copies` copies of g.
inline Graph copies(const Graph& g, int copies) {
    Graph out(0);
    for (int i = 0; i < copies; ++i) out = disjoint_union(out, g);
    return out;
}

} // namespace graphs

} // namespace mcsf
