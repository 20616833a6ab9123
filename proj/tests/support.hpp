#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "msindex/hypergraph.hpp"
#include "msindex/sampling.hpp"

namespace msindex::testing {

/// Uniformly random r-graph on n vertices with min(m, C(n, r)) edges.
inline Hypergraph random_graph(std::size_t r, std::size_t n, std::size_t m, Rng& rng) {
    auto pool = complete_graph(r, n).edge_list();
    m = std::min(m, pool.size());
    for (std::size_t i = 0; i < m; ++i) std::swap(pool[i], pool[i + rng.below(pool.size() - i)]);
    pool.resize(m);
    return Hypergraph(r, n, std::move(pool));
}

/// Random point of the simplex in vertex order.
inline std::vector<double> random_point(std::size_t n, Rng& rng) {
    std::vector<double> x(n);
    double sum = 0.0;
    for (double& v : x) sum += v = rng.exponential();
    for (double& v : x) v /= sum;
    return x;
}

}  // namespace msindex::testing
