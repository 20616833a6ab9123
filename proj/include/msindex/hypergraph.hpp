#pragma once

// r-uniform hypergraphs with edges kept in colex order.
//
// Vertices are 0-based in memory and 1-based in the text format:
//
//   r n m
//   v_1 ... v_r      (m lines, ascending)
//
// Blank lines and lines starting with '#' are ignored on input.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "msindex/errors.hpp"

namespace msindex {

using Vertex = std::uint32_t;

/// Colex comparison of two ascending r-sets: compare from the largest element down.
inline bool colex_less(std::span<const Vertex> a, std::span<const Vertex> b) {
    for (std::size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] < b[i];
    return false;
}

/// Exact binomial coefficient, saturating at UINT64_MAX.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 result = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        result = result * (n - k + i) / i;
        if (result > UINT64_MAX) return UINT64_MAX;
    }
    return static_cast<std::uint64_t>(result);
}

class Hypergraph {
public:
    Hypergraph() = default;

    /// Validates and sorts `edges` (each an r-set of 0-based vertices, any order).
    Hypergraph(std::size_t r, std::size_t n, std::vector<std::vector<Vertex>> edges) : r_(r), n_(n) {
        if (r < 1) throw DomainError("uniformity must be at least 1");
        for (auto& e : edges) {
            if (e.size() != r)
                throw DomainError("edge has " + std::to_string(e.size()) + " vertices, expected " +
                                  std::to_string(r));
            std::sort(e.begin(), e.end());
            if (std::adjacent_find(e.begin(), e.end()) != e.end())
                throw DomainError("edge repeats a vertex");
            if (e.back() >= n) throw DomainError("edge vertex out of range");
        }
        std::sort(edges.begin(), edges.end(),
                  [](const auto& a, const auto& b) { return colex_less(a, b); });
        if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
            throw DomainError("duplicate edge");
        flat_.reserve(edges.size() * r);
        for (const auto& e : edges) flat_.insert(flat_.end(), e.begin(), e.end());
    }

    std::size_t r() const noexcept { return r_; }
    std::size_t n() const noexcept { return n_; }
    std::size_t m() const noexcept { return r_ == 0 ? 0 : flat_.size() / r_; }

    std::span<const Vertex> edge(std::size_t j) const {
        return std::span<const Vertex>(flat_).subspan(j * r_, r_);
    }

    std::vector<std::vector<Vertex>> edge_list() const {
        std::vector<std::vector<Vertex>> out;
        out.reserve(m());
        for (std::size_t j = 0; j < m(); ++j) out.emplace_back(edge(j).begin(), edge(j).end());
        return out;
    }

    /// Subgraph induced by `keep` (ascending), relabelled 0..keep.size()-1.
    Hypergraph induced(std::span<const Vertex> keep) const {
        std::vector<std::int64_t> relabel(n_, -1);
        for (std::size_t i = 0; i < keep.size(); ++i) relabel[keep[i]] = static_cast<std::int64_t>(i);
        std::vector<std::vector<Vertex>> edges;
        for (std::size_t j = 0; j < m(); ++j) {
            std::vector<Vertex> e;
            for (Vertex v : edge(j)) {
                if (relabel[v] < 0) break;
                e.push_back(static_cast<Vertex>(relabel[v]));
            }
            if (e.size() == r_) edges.push_back(std::move(e));
        }
        return Hypergraph(r_, keep.size(), std::move(edges));
    }

    /// Edge lists compared in colex order of edges, then by length.
    friend bool colex_graph_less(const Hypergraph& a, const Hypergraph& b) {
        const std::size_t common = std::min(a.m(), b.m());
        for (std::size_t j = 0; j < common; ++j) {
            if (colex_less(a.edge(j), b.edge(j))) return true;
            if (colex_less(b.edge(j), a.edge(j))) return false;
        }
        return a.m() < b.m();
    }

    friend bool operator==(const Hypergraph&, const Hypergraph&) = default;

private:
    std::size_t r_ = 0;
    std::size_t n_ = 0;
    std::vector<Vertex> flat_;
};

/// First m r-subsets of {1, 2, ...} in colex order; n is the largest vertex used.
inline Hypergraph colex_segment(std::size_t r, std::uint64_t m) {
    if (r < 2) throw DomainError("colex_segment requires r >= 2");
    std::vector<std::vector<Vertex>> edges;
    edges.reserve(m);
    std::vector<Vertex> cur(r);
    for (std::size_t i = 0; i < r; ++i) cur[i] = static_cast<Vertex>(i);
    std::size_t n = 0;
    for (std::uint64_t j = 0; j < m; ++j) {
        edges.push_back(cur);
        n = std::max<std::size_t>(n, cur.back() + 1);
        // successor: bump the lowest element that has room, reset those below it
        std::size_t i = 0;
        while (i + 1 < r && cur[i] + 1 == cur[i + 1]) ++i;
        ++cur[i];
        for (std::size_t l = 0; l < i; ++l) cur[l] = static_cast<Vertex>(l);
    }
    return Hypergraph(r, n, std::move(edges));
}

/// All r-subsets of t vertices, generated lexicographically.
inline Hypergraph complete_graph(std::size_t r, std::size_t t) {
    if (r < 2 || t < r) throw DomainError("complete_graph requires t >= r >= 2");
    std::vector<std::vector<Vertex>> edges;
    std::vector<Vertex> cur(r);
    for (std::size_t i = 0; i < r; ++i) cur[i] = static_cast<Vertex>(i);
    while (true) {
        edges.push_back(cur);
        std::size_t i = r;
        while (i-- > 0 && cur[i] == t - r + i) {}
        if (i == static_cast<std::size_t>(-1)) break;
        ++cur[i];
        for (std::size_t l = i + 1; l < r; ++l) cur[l] = cur[l - 1] + 1;
    }
    return Hypergraph(r, t, std::move(edges));
}

inline Hypergraph parse_hypergraph(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    auto next_content = [&](std::string& out) {
        while (std::getline(in, out)) {
            ++lineno;
            const auto first = out.find_first_not_of(" \t\r");
            if (first == std::string::npos || out[first] == '#') continue;
            return true;
        }
        return false;
    };
    auto read_ints = [&](const std::string& text) {
        std::istringstream fields(text);
        std::vector<long long> values;
        std::string token;
        while (fields >> token) {
            std::size_t used = 0;
            long long v = 0;
            try {
                v = std::stoll(token, &used);
            } catch (const std::exception&) {
                throw ParseError(lineno, "not an integer: '" + token + "'");
            }
            if (used != token.size()) throw ParseError(lineno, "not an integer: '" + token + "'");
            values.push_back(v);
        }
        return values;
    };

    if (!next_content(line)) throw ParseError(lineno, "missing header 'r n m'");
    const auto header = read_ints(line);
    if (header.size() != 3) throw ParseError(lineno, "header must be 'r n m'");
    const long long r = header[0], n = header[1], m = header[2];
    if (r < 2) throw ParseError(lineno, "uniformity r must be at least 2");
    if (n < 0 || m < 0) throw ParseError(lineno, "n and m must be nonnegative");
    if (static_cast<std::uint64_t>(m) > binomial(static_cast<std::uint64_t>(n), r))
        throw ParseError(lineno, "m exceeds C(n, r)");

    std::vector<std::vector<Vertex>> edges;
    edges.reserve(static_cast<std::size_t>(m));
    std::set<std::vector<Vertex>> seen;
    for (long long j = 0; j < m; ++j) {
        if (!next_content(line))
            throw ParseError(lineno, "expected " + std::to_string(m) + " edges, found " +
                                         std::to_string(j));
        const auto values = read_ints(line);
        if (values.size() != static_cast<std::size_t>(r))
            throw ParseError(lineno, "edge must list exactly " + std::to_string(r) + " vertices");
        std::vector<Vertex> e;
        for (long long v : values) {
            if (v < 1 || v > n)
                throw ParseError(lineno, "vertex " + std::to_string(v) + " out of range 1.." +
                                             std::to_string(n));
            e.push_back(static_cast<Vertex>(v - 1));
        }
        for (std::size_t i = 1; i < e.size(); ++i) {
            if (e[i] == e[i - 1]) throw ParseError(lineno, "edge repeats a vertex");
            if (e[i] < e[i - 1]) throw ParseError(lineno, "edge vertices must be ascending");
        }
        if (!seen.insert(e).second) throw ParseError(lineno, "duplicate edge");
        edges.push_back(std::move(e));
    }
    if (next_content(line)) throw ParseError(lineno, "unexpected content after the last edge");
    return Hypergraph(static_cast<std::size_t>(r), static_cast<std::size_t>(n), std::move(edges));
}

inline Hypergraph parse_hypergraph(const std::string& text) {
    std::istringstream in(text);
    return parse_hypergraph(in);
}

inline void serialize(std::ostream& out, const Hypergraph& g) {
    out << g.r() << ' ' << g.n() << ' ' << g.m() << '\n';
    for (std::size_t j = 0; j < g.m(); ++j) {
        const auto e = g.edge(j);
        for (std::size_t i = 0; i < e.size(); ++i) out << (i ? " " : "") << e[i] + 1;
        out << '\n';
    }
}

inline std::string serialize(const Hypergraph& g) {
    std::ostringstream out;
    serialize(out, g);
    return out.str();
}

}  // namespace msindex
