#pragma once

#include <algorithm>
#include <cstdint>
#include <iostream>
#include <set>
#include <vector>

#include "mcsf/graph.hpp"
#include "mcsf/matching.hpp"

namespace mcsf::comb {

using Partition = std::vector<int>;  // non-increasing parts

namespace detail {

inline void partition_rec(std::vector<int>& s, int sum, int h, std::vector<Partition>& out) {
    Partition p(s.rbegin(), s.rend());
    p.insert(p.begin(), h - sum);
    out.push_back(std::move(p));
    const int lo = s.empty() ? 1 : s.back();
    for (int i = lo; i <= (h - sum) / 2; ++i) {
        s.push_back(i);
        partition_rec(s, sum + i, h, out);
        s.pop_back();
    }
}

} // namespace detail

// All partitions of h. Parts are grown non-decreasingly and the remainder
// closes each branch, so the remainder is always the largest part.
inline std::vector<Partition> enum_partitions(int h) {
    if (h < 0) throw PreconditionError("enum_partitions: negative h");
    std::vector<Partition> out;
    if (h == 0) {
        out.emplace_back();
        return out;
    }
    std::vector<int> s;
    detail::partition_rec(s, 0, h, out);
    return out;
}

// Partitions of h with every part >= 2, lexicographically decreasing.
inline std::vector<StarForest> enum_star_partitions(int h) {
    std::vector<Partition> kept;
    for (auto& p : enum_partitions(h))
        if (std::all_of(p.begin(), p.end(), [](int x) { return x >= 2; })) kept.push_back(std::move(p));
    std::sort(kept.begin(), kept.end(), std::greater<>());
    std::vector<StarForest> out;
    out.reserve(kept.size());
    for (auto& p : kept) out.emplace_back(std::move(p));
    return out;
}

// Partition numbers p(0..h) by the recurrence p(n,k) = p(n-k,k) + p(n,k-1).
inline std::vector<std::uint64_t> partition_counts(int h) {
    std::vector<std::uint64_t> p(h + 1, 0);
    p[0] = 1;
    for (int k = 1; k <= h; ++k)
        for (int n = k; n <= h; ++n) p[n] += p[n - k];
    return p;
}

// A set of d-dimensional vectors with coordinates in [0, bound].
struct IntVectorSet {
    int dim = 1;
    int bound = 0;
    std::vector<std::vector<int>> members;  // sorted, unique

    IntVectorSet() = default;
    IntVectorSet(int d, int n, std::vector<std::vector<int>> m) : dim(d), bound(n), members(std::move(m)) {
        if (d < 1) throw PreconditionError("IntVectorSet: dimension must be positive");
        for (const auto& v : members) {
            if (static_cast<int>(v.size()) != d) throw PreconditionError("IntVectorSet: member of wrong dimension");
            for (int x : v)
                if (x < 0 || x > n) throw PreconditionError("IntVectorSet: coordinate outside [0, bound]");
        }
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
    }

    std::size_t size() const { return members.size(); }
    friend bool operator==(const IntVectorSet&, const IntVectorSet&) = default;
};

inline IntVectorSet sumset_naive(const IntVectorSet& a, const IntVectorSet& b) {
    if (a.dim != b.dim) throw PreconditionError("sumset: dimension mismatch");
    std::set<std::vector<int>> out;
    std::vector<int> s(a.dim);
    for (const auto& x : a.members)
        for (const auto& y : b.members) {
            for (int i = 0; i < a.dim; ++i) s[i] = x[i] + y[i];
            out.insert(s);
        }
    return IntVectorSet(a.dim, a.bound + b.bound, {out.begin(), out.end()});
}

namespace ntt {

constexpr std::uint32_t mod = 998244353;
constexpr std::uint32_t root = 3;
constexpr int max_log = 23;

inline std::uint32_t pow_mod(std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    b %= mod;
    while (e) {
        if (e & 1) r = r * b % mod;
        b = b * b % mod;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(r);
}

inline void transform(std::vector<std::uint32_t>& a, bool invert) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        std::uint64_t w = pow_mod(root, (mod - 1) / len);
        if (invert) w = pow_mod(w, mod - 2);
        for (std::size_t i = 0; i < n; i += len) {
            std::uint64_t wn = 1;
            for (std::size_t j = 0; j < len / 2; ++j) {
                std::uint32_t u = a[i + j];
                std::uint32_t v = static_cast<std::uint32_t>(a[i + j + len / 2] * wn % mod);
                a[i + j] = u + v < mod ? u + v : u + v - mod;
                a[i + j + len / 2] = u >= v ? u - v : u + mod - v;
                wn = wn * w % mod;
            }
        }
    }
    if (invert) {
        std::uint64_t inv = pow_mod(n, mod - 2);
        for (auto& x : a) x = static_cast<std::uint32_t>(x * inv % mod);
    }
}

// Product of two 0/1 polynomials. Coefficients count representations, which
// stay below min(|A|,|B|) < mod, so nonzero residues are exact.
inline std::vector<std::uint32_t> multiply(std::vector<std::uint32_t> a, std::vector<std::uint32_t> b) {
    std::size_t need = a.size() + b.size() - 1, n = 1;
    while (n < need) n <<= 1;
    a.resize(n);
    b.resize(n);
    transform(a, false);
    transform(b, false);
    for (std::size_t i = 0; i < n; ++i) a[i] = static_cast<std::uint32_t>(std::uint64_t(a[i]) * b[i] % mod);
    transform(a, true);
    a.resize(need);
    return a;
}

} // namespace ntt

// Length of the encoded polynomial product, or 0 when it exceeds the
// transform size.
inline std::uint64_t sumset_transform_length(int dim, int bound) {
    const std::uint64_t base = 2 * static_cast<std::uint64_t>(bound) + 1;
    std::uint64_t len = 1;
    for (int i = 0; i < dim; ++i) {
        len *= base;
        if (len > (std::uint64_t(1) << ntt::max_log)) return 0;
    }
    return len;
}

// Sumset through base-(2n+1) encoding and one polynomial product. n is the
// largest coordinate actually present, which keeps the encoding tight.
inline IntVectorSet sumset_transform(const IntVectorSet& a, const IntVectorSet& b) {
    if (a.dim != b.dim) throw PreconditionError("sumset: dimension mismatch");
    if (a.members.empty() || b.members.empty()) return IntVectorSet(a.dim, a.bound + b.bound, {});
    int n = 0;
    for (const auto* s : {&a, &b})
        for (const auto& v : s->members)
            for (int x : v) n = std::max(n, x);
    const std::uint64_t len = sumset_transform_length(a.dim, n);
    if (len == 0) {
        std::clog << "mcsf: sumset encoding (2*" << n << "+1)^" << a.dim
                  << " exceeds transform size, using pairwise sums\n";
        return sumset_naive(a, b);
    }
    const std::uint64_t base = 2 * static_cast<std::uint64_t>(n) + 1;
    auto encode = [&](const IntVectorSet& s) {
        std::uint64_t top = 0;
        std::vector<std::uint64_t> codes;
        for (const auto& v : s.members) {
            std::uint64_t code = 0, weight = 1;
            for (int x : v) {
                code += static_cast<std::uint64_t>(x) * weight;
                weight *= base;
            }
            codes.push_back(code);
            top = std::max(top, code);
        }
        std::vector<std::uint32_t> poly(top + 1, 0);
        for (auto c : codes) poly[c] = 1;
        return poly;
    };
    auto prod = ntt::multiply(encode(a), encode(b));
    std::vector<std::vector<int>> out;
    for (std::uint64_t code = 0; code < prod.size(); ++code) {
        if (prod[code] == 0) continue;
        std::vector<int> v(a.dim);
        std::uint64_t rest = code;
        for (int i = 0; i < a.dim; ++i) {
            v[i] = static_cast<int>(rest % base);
            rest /= base;
        }
        out.push_back(std::move(v));
    }
    return IntVectorSet(a.dim, a.bound + b.bound, std::move(out));
}

// Picks the pairwise loop for small inputs and the transform otherwise.
inline IntVectorSet sumset(const IntVectorSet& a, const IntVectorSet& b) {
    if (a.dim != b.dim) throw PreconditionError("sumset: dimension mismatch");
    if (a.size() * b.size() <= 4096) return sumset_naive(a, b);
    return sumset_transform(a, b);
}

// Matching of size |D| between D and V \ D. Exists when D is a minimum
// dominating set of a graph without isolated vertices (Konig on the cut
// edges).
inline std::vector<Edge> dominating_matching(const Graph& g, const std::vector<Vertex>& d) {
    std::vector<int> right_index(g.vertex_count(), -1);
    std::vector<char> in_d(g.vertex_count(), 0);
    for (Vertex v : d) {
        if (v < 0 || v >= g.vertex_count()) throw PreconditionError("dominating_matching: vertex out of range");
        in_d[v] = 1;
    }
    std::vector<Vertex> right;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (!in_d[v]) {
            right_index[v] = static_cast<int>(right.size());
            right.push_back(v);
        }
    std::vector<std::vector<int>> adj(d.size());
    for (std::size_t i = 0; i < d.size(); ++i)
        for (Vertex w : g.neighbors(d[i]))
            if (!in_d[w]) adj[i].push_back(right_index[w]);
    auto match = hopcroft_karp(adj, static_cast<int>(right.size()));
    std::vector<Edge> out;
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (match[i] < 0) throw PreconditionError("D not a minimum dominating set");
        out.emplace_back(d[i], right[match[i]]);
    }
    return out;
}

} // namespace mcsf::comb
