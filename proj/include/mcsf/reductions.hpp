#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mcsf/combinatorics.hpp"
#include "mcsf/fpt_h.hpp"
#include "mcsf/graph.hpp"
#include "mcsf/tree_decomposition.hpp"

namespace mcsf::red {

// Split items into k bins of sum C each.
struct KwayInstance {
    std::vector<long> items;
    int k = 1;
    long C = 0;

    int n() const { return static_cast<int>(items.size()); }
    long total() const { return std::accumulate(items.begin(), items.end(), 0L); }
    long largest() const { return items.empty() ? 0 : *std::max_element(items.begin(), items.end()); }
    bool balanced() const { return static_cast<long>(k) * C == total(); }

    KwayInstance sorted() const {
        KwayInstance out = *this;
        std::sort(out.items.begin(), out.items.end(), std::greater<>());
        return out;
    }
};

// bin[i] in [0, k) for every item i.
using Partition = std::vector<int>;

inline bool is_partition(const KwayInstance& kw, const Partition& part) {
    if (static_cast<int>(part.size()) != kw.n()) return false;
    std::vector<long> load(kw.k, 0);
    for (int i = 0; i < kw.n(); ++i) {
        if (part[i] < 0 || part[i] >= kw.k) return false;
        load[part[i]] += kw.items[i];
    }
    return std::all_of(load.begin(), load.end(), [&](long x) { return x == kw.C; });
}

// Backtracking over items in order; an item only opens the first empty bin.
inline std::optional<Partition> kway_brute(const KwayInstance& kw, int max_items = 20) {
    if (kw.n() > max_items)
        throw ResourceError("k-way partition search limited to " + std::to_string(max_items) + " items");
    if (kw.k < 1) throw PreconditionError("k must be positive");
    if (!kw.balanced()) return std::nullopt;
    for (long x : kw.items)
        if (x <= 0) throw PreconditionError("items must be positive");
    Partition part(kw.n(), -1);
    std::vector<long> load(kw.k, 0);
    std::function<bool(int)> rec = [&](int i) {
        if (i == kw.n()) return true;
        for (int b = 0; b < kw.k; ++b) {
            if (load[b] + kw.items[i] > kw.C) continue;
            const bool opening = load[b] == 0;
            load[b] += kw.items[i];
            part[i] = b;
            if (rec(i + 1)) return true;
            load[b] -= kw.items[i];
            if (opening) break;
        }
        return false;
    };
    if (!rec(0)) return std::nullopt;
    return part;
}

// Scales items and capacity by 2k+10, which also makes every item even.
inline KwayInstance rescale(const KwayInstance& kw) {
    KwayInstance out = kw;
    const long factor = 2L * kw.k + 10;
    for (auto& x : out.items) x *= factor;
    out.C *= factor;
    return out;
}

struct LabeledInstance {
    std::string kind;  // domset, p3, kway-td5, kway-pw4
    Instance instance;
    std::vector<std::string> names1;  // index -> label
    std::vector<std::string> names2;
    std::map<std::string, Vertex> labels1;
    std::map<std::string, Vertex> labels2;
    std::map<std::string, long> params;
    KwayInstance kway;  // the normalised source, for the partition generators

    Vertex v1(const std::string& name) const { return lookup(labels1, name, 1); }
    Vertex v2(const std::string& name) const { return lookup(labels2, name, 2); }

private:
    static Vertex lookup(const std::map<std::string, Vertex>& table, const std::string& name, int side) {
        auto it = table.find(name);
        if (it == table.end()) throw PreconditionError("G" + std::to_string(side) + " has no vertex " + name);
        return it->second;
    }
};

namespace detail {

inline std::string sub(std::initializer_list<long> idx) {
    std::string out = "_{";
    bool first = true;
    for (long x : idx) {
        if (!first) out += ',';
        out += std::to_string(x);
        first = false;
    }
    return out + "}";
}

inline std::string sup(std::initializer_list<long> idx) {
    std::string out = "^{(";
    bool first = true;
    for (long x : idx) {
        if (!first) out += ',';
        out += std::to_string(x);
        first = false;
    }
    return out + ")}";
}

class Builder {
public:
    Vertex add(std::string name) {
        const Vertex v = static_cast<Vertex>(names_.size());
        if (!labels_.emplace(name, v).second) throw Error("duplicate label " + name);
        names_.push_back(std::move(name));
        return v;
    }
    Vertex at(const std::string& name) const { return labels_.at(name); }
    void edge(const std::string& a, const std::string& b) { edges_.emplace_back(at(a), at(b)); }
    void edge(Vertex a, Vertex b) { edges_.emplace_back(a, b); }

    // Centre `centre` and leaves name_1..name_leaves.
    void star(const std::string& stem, std::initializer_list<long> idx, long leaves) {
        std::vector<long> base(idx);
        auto name = [&](long last) {
            std::string out = stem + "_{";
            for (long x : base) out += std::to_string(x) + ",";
            return out + std::to_string(last) + "}";
        };
        const Vertex c = add(name(0));
        for (long l = 1; l <= leaves; ++l) edge(c, add(name(l)));
    }

    Graph graph() const { return Graph(static_cast<int>(names_.size()), edges_); }

    void finish(LabeledInstance& out, int side) {
        (side == 1 ? out.instance.g1 : out.instance.g2) = graph();
        (side == 1 ? out.names1 : out.names2) = std::move(names_);
        (side == 1 ? out.labels1 : out.labels2) = std::move(labels_);
        names_.clear();
        labels_.clear();
        edges_.clear();
    }

private:
    std::vector<std::string> names_;
    std::map<std::string, Vertex> labels_;
    std::vector<Edge> edges_;
};

inline std::string star_name(const std::string& stem, std::vector<long> idx, long last) {
    std::string out = stem + "_{";
    for (long x : idx) out += std::to_string(x) + ",";
    return out + std::to_string(last) + "}";
}

inline void require_kway(const KwayInstance& kw) {
    if (kw.k < 1) throw PreconditionError("k must be positive");
    if (kw.items.empty()) throw PreconditionError("k-way partition instance has no items");
    for (long x : kw.items)
        if (x < 1) throw PreconditionError("items must be positive, got " + std::to_string(x));
    if (!kw.balanced())
        throw PreconditionError("k*C = " + std::to_string(static_cast<long>(kw.k) * kw.C) + " differs from M = " +
                                std::to_string(kw.total()));
}

} // namespace detail

// G1 = g, G2 = k stars with n-1 leaves each, h = n.
inline LabeledInstance gen_domset(const Graph& g, int k) {
    if (k < 1) throw PreconditionError("k must be positive");
    const auto iso = g.isolated_vertices();
    if (!iso.empty()) throw PreconditionError("vertex " + std::to_string(iso.front()) + " is isolated");
    const int n = g.vertex_count();
    LabeledInstance out;
    out.kind = "domset";
    detail::Builder b1;
    for (Vertex v = 0; v < n; ++v) b1.add("x" + detail::sub({v}));
    for (auto [u, v] : g.edges()) b1.edge(u, v);
    b1.finish(out, 1);
    detail::Builder b2;
    for (int i = 1; i <= k; ++i) {
        const Vertex c = b2.add("c" + detail::sub({i}));
        for (int j = 1; j <= n - 1; ++j) b2.edge(c, b2.add("v" + detail::sub({i}) + detail::sup({j})));
    }
    b2.finish(out, 2);
    out.instance.h = n;
    out.params = {{"n", n}, {"k", k}};
    return out;
}

// Spanning stars centred on a minimum dominating set, matched into the first
// |D| stars of G2.
inline Certificate embed_from_dominating_set(const LabeledInstance& inst, const std::vector<Vertex>& d) {
    if (inst.kind != "domset") throw PreconditionError("not a dominating-set instance");
    const Graph& g = inst.instance.g1;
    if (static_cast<long>(d.size()) > inst.params.at("k")) throw PreconditionError("dominating set larger than k");
    const auto matching = comb::dominating_matching(g, d);
    std::map<Vertex, int> star_of;
    std::vector<std::vector<Vertex>> stars;
    for (Vertex u : d) {
        star_of[u] = static_cast<int>(stars.size());
        stars.push_back({u});
    }
    std::vector<char> used(g.vertex_count(), 0);
    for (Vertex u : d) used[u] = 1;
    for (auto [a, b] : matching) {
        const Vertex in_d = star_of.count(a) ? a : b;
        const Vertex other = in_d == a ? b : a;
        stars[star_of[in_d]].push_back(other);
        used[other] = 1;
    }
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (used[v]) continue;
        Vertex owner = -1;
        for (Vertex w : g.neighbors(v))
            if (star_of.count(w)) owner = owner < 0 ? w : std::min(owner, w);
        if (owner < 0) throw PreconditionError("vertex " + std::to_string(v) + " is not dominated");
        stars[star_of[owner]].push_back(v);
    }
    Certificate cert;
    cert.emb1.stars = stars;
    for (std::size_t i = 0; i < stars.size(); ++i) {
        std::vector<Vertex> s{inst.v2("c" + detail::sub({static_cast<long>(i + 1)}))};
        for (std::size_t j = 1; j < stars[i].size(); ++j)
            s.push_back(inst.v2("v" + detail::sub({static_cast<long>(i + 1)}) + detail::sup({static_cast<long>(j)})));
        cert.emb2.stars.push_back(std::move(s));
    }
    cert.forest = cert.emb1.shape();
    return cert;
}

// G1 = g, G2 = n/3 disjoint copies of P3, h = n.
inline LabeledInstance gen_p3(const Graph& g) {
    const int n = g.vertex_count();
    if (n % 3 != 0) throw PreconditionError("vertex count " + std::to_string(n) + " is not divisible by 3");
    LabeledInstance out;
    out.kind = "p3";
    detail::Builder b1;
    for (Vertex v = 0; v < n; ++v) b1.add("x" + detail::sub({v}));
    for (auto [u, v] : g.edges()) b1.edge(u, v);
    b1.finish(out, 1);
    detail::Builder b2;
    for (int i = 1; i <= n / 3; ++i) b2.star("p", {i}, 2);
    b2.finish(out, 2);
    out.instance.h = n;
    out.params = {{"n", n}};
    return out;
}

inline long td5_vertex_count(const KwayInstance& kw) {
    const long n = kw.n(), k = kw.k, M = kw.total(), D = M + 20;
    return n * (D + k) + M * (k * k + 7 * k);
}

inline long pw4_vertex_count(const KwayInstance& kw) {
    const long n = kw.n(), k = kw.k, M = kw.total(), a = kw.largest();
    return n * (2 * a * k * k + 11 * a * k - 3 * k + 8) - (k * k + k) * M;
}

// Trees T_i of depth 5 against stars P, Q, R, S; both sides have
// n(D+k) + M(k^2+7k) vertices.
inline LabeledInstance gen_kway_td5(const KwayInstance& input) {
    detail::require_kway(input);
    const KwayInstance kw = input.sorted();
    const long k = kw.k, M = kw.total(), C = kw.C, D = M + 20;
    for (int i = 0; i < kw.n(); ++i) {
        const long x = kw.items[i];
        if (x % 2 != 0 || x < 2 * k + 10)
            throw PreconditionError("item " + std::to_string(x) + " must be even and at least 2k+10 = " +
                                    std::to_string(2 * k + 10));
    }
    LabeledInstance out;
    out.kind = "kway-td5";
    out.kway = kw;
    using detail::sub;
    using detail::sup;
    detail::Builder b1;
    for (long i = 1; i <= kw.n(); ++i) {
        const long ai = kw.items[i - 1];
        const std::string r = "r" + sub({i});
        b1.add(r);
        for (long x = 1; x <= D - 1; ++x) {
            b1.add("h" + sub({i, x}));
            b1.edge(r, "h" + sub({i, x}));
        }
        for (long j = 1; j <= k; ++j) {
            b1.add("s" + sub({i, j}));
            b1.edge(r, "s" + sub({i, j}));
        }
        for (long j = 1; j <= k; ++j)
            for (long l = 1; l <= ai; ++l) {
                const std::string t = "t" + sub({i, j}) + sup({l}), u = "u" + sub({i, j}) + sup({l});
                b1.add(t);
                b1.edge("s" + sub({i, j}), t);
                b1.add(u);
                b1.edge(t, u);
                for (long x = 1; x <= 2 * j + 4; ++x) {
                    const std::string v = "v" + sub({i, j}) + sup({l, x});
                    b1.add(v);
                    b1.edge(u, v);
                }
            }
    }
    b1.finish(out, 1);
    detail::Builder b2;
    for (long i = 1; i <= kw.n(); ++i) b2.star("alpha", {i}, D);
    for (long i = 1; i <= kw.n(); ++i)
        for (long j = 1; j <= k - 1; ++j) b2.star("beta", {i, j}, kw.items[i - 1]);
    for (long j = 1; j <= k; ++j)
        for (long l = 1; l <= C; ++l) b2.star("gamma", {j, l}, 2 * j + 5);
    for (long j = 1; j <= k; ++j)
        for (long l = 1; l <= M - C; ++l) b2.star("delta", {j, l}, 2 * j + 4);
    b2.finish(out, 2);
    out.instance.h = out.instance.g1.vertex_count();
    out.params = {{"n", kw.n()}, {"k", k}, {"C", C}, {"M", M}, {"D", D}, {"n_prime", td5_vertex_count(kw)}};
    return out;
}

// Pathwidth-4 trees against stars P, Q, R, S, U, W, Y with D = 2k+8 and
// E = 2k+6.
inline LabeledInstance gen_kway_pw4(const KwayInstance& input) {
    detail::require_kway(input);
    const KwayInstance kw = input.sorted();
    const long k = kw.k, M = kw.total(), C = kw.C, a = kw.largest(), D = 2 * k + 8, E = 2 * k + 6;
    if (a < 3)
        throw PreconditionError("largest item is " + std::to_string(a) +
                                "; the construction needs at least 3 for its s/y/z chains");
    LabeledInstance out;
    out.kind = "kway-pw4";
    out.kway = kw;
    using detail::sub;
    using detail::sup;
    detail::Builder b1;
    for (long i = 1; i <= kw.n(); ++i) {
        const long ai = kw.items[i - 1];
        const std::string r = "r" + sub({i});
        b1.add(r);
        for (long x = 1; x <= D - 1; ++x) {
            b1.add("h" + sub({i, x}));
            b1.edge(r, "h" + sub({i, x}));
        }
        for (long j = 1; j <= k; ++j) {
            b1.add("s" + sub({i, j}) + sup({0}));
            b1.edge(r, "s" + sub({i, j}) + sup({0}));
        }
        for (long j = 1; j <= k; ++j) {
            auto s = [&](long l) { return "s" + sub({i, j}) + sup({l}); };
            auto y = [&](long l) { return "y" + sub({i, j}) + sup({l}); };
            auto z = [&](long l) { return "z" + sub({i, j}) + sup({l}); };
            auto t = [&](long l) { return "t" + sub({i, j}) + sup({l}); };
            auto u = [&](long l) { return "u" + sub({i, j}) + sup({l}); };
            for (long l = 1; l <= a - 2; ++l) b1.add(s(l));
            for (long l = 1; l <= a - 2; ++l) b1.add(y(l));
            for (long l = 1; l <= a - 2; ++l) b1.add(z(l));
            for (long l = 1; l <= a; ++l) b1.add(t(l));
            for (long l = 1; l <= a; ++l) b1.add(u(l));
            for (long l = 1; l <= a - 2; ++l) {
                b1.edge(s(l), z(l));
                b1.edge(z(l), y(l));
                b1.edge(y(l), s(l - 1));
                b1.edge(t(l), s(l - 1));
            }
            b1.edge(t(a - 1), s(a - 2));
            b1.edge(t(a), s(a - 2));
            for (long l = 1; l <= a; ++l) {
                b1.edge(u(l), t(l));
                const long leaves = l <= ai ? 2 * j + 4 : E;
                for (long x = 1; x <= leaves; ++x) {
                    const std::string v = "v" + sub({i, j}) + sup({l, x});
                    b1.add(v);
                    b1.edge(u(l), v);
                }
            }
        }
    }
    b1.finish(out, 1);
    detail::Builder b2;
    for (long i = 1; i <= kw.n(); ++i) b2.star("alpha", {i}, D);
    for (long j = 1; j <= k; ++j)
        for (long l = 1; l <= C; ++l) b2.star("beta", {j, l}, 2 * j + 5);
    for (long j = 1; j <= k; ++j)
        for (long l = 1; l <= M - C; ++l) b2.star("gamma", {j, l}, 2 * j + 4);
    for (long i = 1; i <= kw.n(); ++i)
        for (long j = 1; j <= a + k - 3; ++j) b2.star("delta", {i, j}, 2);
    for (long i = 1; i <= kw.n(); ++i)
        for (long j = 1; j <= k - 1; ++j)
            for (long l = 1; l <= a - 2; ++l) b2.star("epsilon", {i, j, l}, 3);
    for (long l = 1; l <= kw.n() * a - M; ++l) b2.star("zeta", {l}, E + 1);
    for (long l = 1; l <= (k - 1) * (kw.n() * a - M); ++l) b2.star("eta", {l}, E);
    b2.finish(out, 2);
    out.instance.h = out.instance.g1.vertex_count();
    out.params = {{"n", kw.n()}, {"k", k},         {"C", C},        {"M", M},
                  {"a", a},      {"D", D},         {"E", E},        {"n_prime", pw4_vertex_count(kw)}};
    return out;
}

// Index offsets of the forward embedding; items and bins are 1-based here as
// in the construction, vectors are indexed by item i-1 (and bin j-1).
struct ForwardOffsets {
    std::vector<int> b;                  // bin of item i, 1-based
    std::vector<long> p;                 // same-bin items before i
    std::vector<std::vector<long>> q;    // q[i][j]: items outside bin j before i
    std::vector<long> e;                 // sum of (a - a_i') over i' < i
    std::vector<std::vector<long>> f;    // f[i][j] for j != b_i
};

inline ForwardOffsets forward_offsets(const KwayInstance& kw, const Partition& part) {
    if (!is_partition(kw, part)) throw PreconditionError("not a valid k-way partition of the instance");
    const int n = kw.n(), k = kw.k;
    const long a = kw.largest();
    ForwardOffsets o;
    o.b.resize(n);
    o.p.assign(n, 0);
    o.q.assign(n, std::vector<long>(k, 0));
    o.e.assign(n, 0);
    o.f.assign(n, std::vector<long>(k, 0));
    for (int i = 0; i < n; ++i) o.b[i] = part[i] + 1;
    for (int i = 0; i < n; ++i)
        for (int i2 = 0; i2 < i; ++i2) {
            if (part[i2] == part[i]) o.p[i] += kw.items[i2];
            for (int j = 0; j < k; ++j)
                if (part[i2] != j) o.q[i][j] += kw.items[i2];
            o.e[i] += a - kw.items[i2];
        }
    for (int i = 0; i < n; ++i) {
        int rank = 0;  // |[j] \ {b_i}| - 1 for the current j
        for (int j = 1; j <= k; ++j) {
            if (j == o.b[i]) continue;
            o.f[i][j - 1] = (k - 1) * o.e[i] + (a - kw.items[i]) * rank;
            ++rank;
        }
    }
    return o;
}

// Certificate that G2 (a star forest on all n' vertices) sits inside G1,
// built from a solution of the source partition instance.
inline Certificate embed_from_partition(const LabeledInstance& inst, const Partition& part) {
    const bool td5 = inst.kind == "kway-td5";
    if (!td5 && inst.kind != "kway-pw4") throw PreconditionError("not a k-way partition instance");
    const KwayInstance& kw = inst.kway;
    const auto o = forward_offsets(kw, part);
    const long k = kw.k, a = kw.largest();
    const long D = inst.params.at("D");
    using detail::star_name;
    using detail::sub;
    using detail::sup;
    Certificate cert;
    // One G2 star onto a centre and leaf list in G1.
    auto place = [&](const std::string& stem, std::vector<long> idx, long leaves, const std::string& centre,
                     const std::vector<std::string>& images) {
        if (static_cast<long>(images.size()) != leaves) throw Error("forward embedding size mismatch at " + stem);
        std::vector<Vertex> s2{inst.v2(star_name(stem, idx, 0))}, s1{inst.v1(centre)};
        for (long l = 1; l <= leaves; ++l) {
            s2.push_back(inst.v2(star_name(stem, idx, l)));
            s1.push_back(inst.v1(images[l - 1]));
        }
        cert.emb1.stars.push_back(std::move(s1));
        cert.emb2.stars.push_back(std::move(s2));
    };
    auto vs = [&](long i, long j, long l, long count) {
        std::vector<std::string> out;
        for (long x = 1; x <= count; ++x) out.push_back("v" + sub({i, j}) + sup({l, x}));
        return out;
    };
    for (long i = 1; i <= kw.n(); ++i) {
        const long ai = kw.items[i - 1];
        const long bi = o.b[i - 1];
        std::vector<std::string> p_leaves;
        for (long x = 1; x <= D - 1; ++x) p_leaves.push_back("h" + sub({i, x}));
        const std::string zero = td5 ? "" : sup({0});
        p_leaves.push_back("s" + sub({i, bi}) + zero);
        place("alpha", {i}, D, "r" + sub({i}), p_leaves);
        if (td5) {
            long jr = 0;
            for (long j = 1; j <= k; ++j) {
                if (j == bi) continue;
                ++jr;
                std::vector<std::string> ts;
                for (long l = 1; l <= ai; ++l) ts.push_back("t" + sub({i, j}) + sup({l}));
                place("beta", {i, jr}, ai, "s" + sub({i, j}), ts);
            }
            for (long l = 1; l <= ai; ++l) {
                auto leaves = vs(i, bi, l, 2 * bi + 4);
                leaves.push_back("t" + sub({i, bi}) + sup({l}));
                place("gamma", {bi, l + o.p[i - 1]}, 2 * bi + 5, "u" + sub({i, bi}) + sup({l}), leaves);
            }
            for (long j = 1; j <= k; ++j) {
                if (j == bi) continue;
                for (long l = 1; l <= ai; ++l)
                    place("delta", {j, l + o.q[i - 1][j - 1]}, 2 * j + 4, "u" + sub({i, j}) + sup({l}),
                          vs(i, j, l, 2 * j + 4));
            }
            continue;
        }
        const long E = inst.params.at("E");
        auto nm = [&](const char* stem, long j, long l) { return std::string(stem) + sub({i, j}) + sup({l}); };
        for (long l = 1; l <= a - 2; ++l)
            place("delta", {i, l}, 2, nm("z", bi, l), {nm("y", bi, l), nm("s", bi, l)});
        long jr = 0;
        for (long j = 1; j <= k; ++j) {
            if (j == bi) continue;
            ++jr;
            place("delta", {i, a - 2 + jr}, 2, nm("s", j, 0), {nm("t", j, 1), nm("y", j, 1)});
            for (long l = 1; l <= a - 3; ++l)
                place("epsilon", {i, jr, l}, 3, nm("s", j, l), {nm("z", j, l), nm("t", j, l + 1), nm("y", j, l + 1)});
            place("epsilon", {i, jr, a - 2}, 3, nm("s", j, a - 2), {nm("z", j, a - 2), nm("t", j, a - 1), nm("t", j, a)});
        }
        for (long l = 1; l <= ai; ++l) {
            auto leaves = vs(i, bi, l, 2 * bi + 4);
            leaves.push_back(nm("t", bi, l));
            place("beta", {bi, l + o.p[i - 1]}, 2 * bi + 5, nm("u", bi, l), leaves);
        }
        for (long j = 1; j <= k; ++j) {
            if (j == bi) continue;
            for (long l = 1; l <= ai; ++l)
                place("gamma", {j, l + o.q[i - 1][j - 1]}, 2 * j + 4, nm("u", j, l), vs(i, j, l, 2 * j + 4));
        }
        for (long l = 1; l <= a - ai; ++l) {
            auto leaves = vs(i, bi, l + ai, E);
            leaves.push_back(nm("t", bi, l + ai));
            place("zeta", {l + o.e[i - 1]}, E + 1, nm("u", bi, l + ai), leaves);
        }
        for (long j = 1; j <= k; ++j) {
            if (j == bi) continue;
            for (long l = 1; l <= a - ai; ++l)
                place("eta", {l + o.f[i - 1][j - 1]}, E, nm("u", j, l + ai), vs(i, j, l + ai, E));
        }
    }
    cert.forest = cert.emb2.shape();
    return cert;
}

// Elimination forest of the td5 trees: BFS parents from every r_i.
inline std::vector<Vertex> td5_elimination_forest(const LabeledInstance& inst) {
    const Graph& g = inst.instance.g1;
    std::vector<Vertex> parent(g.vertex_count(), -1);
    std::vector<char> seen(g.vertex_count(), 0);
    for (long i = 1; i <= inst.kway.n(); ++i) {
        const Vertex root = inst.v1("r" + detail::sub({i}));
        std::vector<Vertex> queue{root};
        seen[root] = 1;
        for (std::size_t head = 0; head < queue.size(); ++head)
            for (Vertex w : g.neighbors(queue[head]))
                if (!seen[w]) {
                    seen[w] = 1;
                    parent[w] = queue[head];
                    queue.push_back(w);
                }
    }
    return parent;
}

// The explicit width-4 path decomposition of the pw4 trees: per branch the
// X/Z bags of each l anchored at s^{(min(l-1, a-2))}, followed by A^{(l)} for
// l <= a-2, with r_i added to every bag.
inline tw::TreeDecomposition pw4_path_decomposition(const LabeledInstance& inst) {
    if (inst.kind != "kway-pw4") throw PreconditionError("not a pathwidth-4 instance");
    const KwayInstance& kw = inst.kway;
    const long k = kw.k, a = kw.largest(), D = inst.params.at("D"), E = inst.params.at("E");
    using detail::sub;
    using detail::sup;
    std::vector<std::vector<Vertex>> bags;
    for (long i = 1; i <= kw.n(); ++i) {
        const long ai = kw.items[i - 1];
        const Vertex r = inst.v1("r" + sub({i}));
        for (long x = 1; x <= D - 1; ++x) bags.push_back({r, inst.v1("h" + sub({i, x}))});
        for (long j = 1; j <= k; ++j) {
            auto v = [&](const char* stem, long l) { return inst.v1(std::string(stem) + sub({i, j}) + sup({l})); };
            for (long l = 1; l <= a; ++l) {
                const Vertex anchor = v("s", std::min(l - 1, a - 2));
                const long leaves = l <= ai ? 2 * j + 4 : E;
                for (long x = 1; x <= leaves; ++x)
                    bags.push_back({r, anchor, v("t", l), v("u", l), inst.v1("v" + sub({i, j}) + sup({l, x}))});
                if (l <= a - 2) bags.push_back({r, v("s", l - 1), v("y", l), v("z", l), v("s", l)});
            }
        }
    }
    return tw::path_decomposition(std::move(bags));
}

} // namespace mcsf::red
