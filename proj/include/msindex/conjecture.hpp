#pragma once

// Verification of mu(G) <= m t^{-r}, where m = C(t, r), for r-graphs with m
// edges, together with the eigenvector bounds mu <= m sigma^r <= m q^r.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "msindex/bounds.hpp"
#include "msindex/errors.hpp"
#include "msindex/hypergraph.hpp"
#include "msindex/optimize.hpp"
#include "msindex/sampling.hpp"
#include "msindex/symfun.hpp"

namespace msindex {

/// Slack below this is a falsification alarm.
inline constexpr double kSlackAlarm = -1e-9;
inline constexpr double kTightTolerance = 1e-9;

enum class TheoremBranch { r_le_5, t_large, outside };

inline std::string_view to_string(TheoremBranch b) {
    switch (b) {
        case TheoremBranch::r_le_5: return "r_le_5";
        case TheoremBranch::t_large: return "t_large";
        case TheoremBranch::outside: return "outside";
    }
    return "outside";
}

struct ConjectureBound {
    double t = 0.0;
    double bound = 0.0;          // m t^{-r}
    double bound_product = 0.0;  // (1/r!)(1 - 1/t)...(1 - (r-1)/t)
};

inline ConjectureBound conjecture_bound(std::uint64_t m, std::size_t r) {
    if (r < 3) throw DomainError("the conjectured bound is stated for r >= 3");
    ConjectureBound out;
    if (m == 0) {
        out.t = static_cast<double>(r) - 1.0;
        return out;
    }
    const double md = static_cast<double>(m);
    out.t = invert_binomial(md, r);
    out.bound = md * std::pow(out.t, -static_cast<double>(r));
    out.bound_product = scaled_binomial(1.0 / out.t, r);
    return out;
}

inline TheoremBranch classify_branch(std::size_t r, double t) {
    if (r <= 5) return TheoremBranch::r_le_5;
    const double rd = static_cast<double>(r);
    if (t >= 4.0 * (rd - 1.0) * (rd - 2.0)) return TheoremBranch::t_large;
    return TheoremBranch::outside;
}

struct TsinReport {
    BoundReport sigma_form;  // P_G(x) <= m sigma(x)^r
    BoundReport q_form;      // P_G(x) <= m q(x)^r
};

/// Eigenvector bounds at a stationary point. Inapplicable when
/// kkt_residual(G, x) exceeds `kkt_tol`.
inline TsinReport check_tsin(const Hypergraph& g, const VertexWeights& x, double kkt_tol = 1e-6) {
    const double value = evaluate_form(g, x);
    const bool stationary = kkt_residual(g, x) <= kkt_tol;
    const double m = static_cast<double>(g.m());
    const double rd = static_cast<double>(g.r());
    const SimplexVector sx = x.sorted();
    const double s = sigma(sx);
    const double q = power_sums(sx).q;
    auto make = [&](BoundId id, double rhs) {
        return BoundReport{.bound_id = id,
                           .k = g.r(),
                           .applicable = stationary,
                           .lhs = value,
                           .rhs = rhs,
                           .margin = rhs - value,
                           .equality_case = sx.nonzero_entries_equal(),
                           .constraint_slack = kkt_tol - kkt_residual(g, x)};
    };
    return TsinReport{make(BoundId::lemma_sigma, m * std::pow(s, rd)),
                      make(BoundId::lemma_q, m * std::pow(q, rd))};
}

struct ConjectureVerdict {
    std::size_t r = 0;
    std::uint64_t m = 0;
    double t = 0.0;
    double bound = 0.0;
    double mu_estimate = 0.0;
    double slack = 0.0;
    bool tight = false;
    TheoremBranch theorem_branch = TheoremBranch::r_le_5;
    bool alarm = false;          // slack < -1e-9
    bool evidence_only = false;  // no proved case covers the instance
    bool converged = false;
    double kkt_residual = 0.0;
    double x_max = 0.0;
    bool vertex_weight_ok = true;  // x_max <= 1/r at converged points with mu > 0
    std::optional<TsinReport> lemma;
    Hypergraph graph;
    VertexWeights best_x;

    bool flagged() const noexcept {
        return alarm || !vertex_weight_ok ||
               (lemma && (lemma->sigma_form.applicable && lemma->sigma_form.margin < kSlackAlarm)) ||
               (lemma && (lemma->q_form.applicable && lemma->q_form.margin < kSlackAlarm));
    }
};

/// ms_index followed by re-optimization on the subgraph induced by the
/// support of the best point, keeping whichever is better.
inline OptimizationResult ms_index_reduced(const Hypergraph& g, const OptimizerOptions& opts) {
    OptimizationResult best = ms_index(g, opts);
    const auto support = best.best_x.support();
    if (g.m() == 0 || support.size() == g.n()) return best;
    const Hypergraph h = g.induced(support);
    if (h.m() == 0) return best;
    const OptimizationResult sub = ms_index(h, opts);
    std::vector<double> lifted(g.n(), 0.0);
    for (std::size_t i = 0; i < support.size(); ++i) lifted[support[i]] = sub.best_x[i];
    OptimizationResult candidate = sub;
    candidate.best_x = VertexWeights(std::move(lifted));
    candidate.mu = evaluate_form(g, candidate.best_x);
    candidate.kkt_residual = kkt_residual(g, candidate.best_x);
    candidate.converged = candidate.kkt_residual <= opts.kkt_tol;
    candidate.restarts_used += best.restarts_used;
    candidate.iterations_total += best.iterations_total;
    if (candidate.mu > best.mu ||
        (candidate.mu == best.mu && candidate.kkt_residual < best.kkt_residual))
        return candidate;
    best.restarts_used = candidate.restarts_used;
    best.iterations_total = candidate.iterations_total;
    return best;
}

inline ConjectureVerdict check_conjecture(const Hypergraph& g, const OptimizerOptions& opts = {}) {
    if (g.r() < 3) throw DomainError("the conjectured bound is stated for r >= 3");
    const OptimizationResult opt = ms_index_reduced(g, opts);
    const ConjectureBound cb = conjecture_bound(g.m(), g.r());

    ConjectureVerdict v;
    v.r = g.r();
    v.m = g.m();
    v.t = cb.t;
    v.bound = cb.bound;
    v.mu_estimate = opt.mu;
    v.slack = cb.bound - opt.mu;
    v.tight = std::abs(v.slack) <= kTightTolerance && std::abs(v.t - std::round(v.t)) <= 1e-9;
    v.theorem_branch = classify_branch(g.r(), cb.t);
    v.alarm = v.slack < kSlackAlarm;
    v.evidence_only = v.theorem_branch == TheoremBranch::outside;
    v.converged = opt.converged;
    v.kkt_residual = opt.kkt_residual;
    v.x_max = opt.best_x.max();
    if (opt.converged && opt.mu > 0.0)
        v.vertex_weight_ok = v.x_max <= 1.0 / static_cast<double>(g.r()) + 1e-9;
    if (opt.converged && g.n() > 0) v.lemma = check_tsin(g, opt.best_x);
    v.graph = g;
    v.best_x = opt.best_x;
    return v;
}

enum class SearchMode { colex, random, exhaustive };

inline std::string_view to_string(SearchMode m) {
    switch (m) {
        case SearchMode::colex: return "colex";
        case SearchMode::random: return "random";
        case SearchMode::exhaustive: return "exhaustive";
    }
    return "colex";
}

inline std::optional<SearchMode> search_mode_from_string(std::string_view s) {
    if (s == "colex") return SearchMode::colex;
    if (s == "random") return SearchMode::random;
    if (s == "exhaustive") return SearchMode::exhaustive;
    return std::nullopt;
}

struct SearchLimits {
    std::size_t n_max = 0;            // vertex count for random / exhaustive
    std::uint64_t count = 100;        // graphs drawn in random mode
    std::uint64_t budget = 1000000;   // exhaustive refuses above this many graphs
};

namespace detail {

inline std::vector<Hypergraph> search_candidates(std::size_t r, std::uint64_t m, SearchMode mode,
                                                 const SearchLimits& limits, std::uint64_t seed) {
    std::vector<Hypergraph> graphs;
    if (mode == SearchMode::colex) {
        graphs.push_back(colex_segment(r, m));
        return graphs;
    }
    if (limits.n_max < r) throw ConfigError("n_max must be at least r");
    const auto rsets = complete_graph(r, limits.n_max).edge_list();
    const std::uint64_t pool = rsets.size();
    if (m > pool)
        throw ConfigError("m = " + std::to_string(m) + " exceeds C(n_max, r) = " +
                          std::to_string(pool));
    auto build = [&](const std::vector<std::uint64_t>& pick) {
        std::vector<std::vector<Vertex>> edges;
        edges.reserve(pick.size());
        for (auto idx : pick) edges.push_back(rsets[idx]);
        return Hypergraph(r, limits.n_max, std::move(edges));
    };

    if (mode == SearchMode::random) {
        for (std::uint64_t j = 0; j < limits.count; ++j) {
            // Floyd's algorithm for a uniform m-subset
            Rng rng = Rng::stream(seed ^ 0x5851f42d4c957f2dULL, j);
            std::set<std::uint64_t> chosen;
            for (std::uint64_t i = pool - m; i < pool; ++i) {
                const std::uint64_t v = rng.below(i + 1);
                if (!chosen.insert(v).second) chosen.insert(i);
            }
            graphs.push_back(build({chosen.begin(), chosen.end()}));
        }
        return graphs;
    }

    const std::uint64_t total = binomial(pool, m);
    if (total > limits.budget) throw BudgetExceededError(total, limits.budget);
    graphs.reserve(total);
    std::vector<std::uint64_t> pick(m);
    for (std::uint64_t i = 0; i < m; ++i) pick[i] = i;
    while (true) {
        graphs.push_back(build(pick));
        std::size_t i = m;
        while (i-- > 0 && pick[i] == pool - m + i) {}
        if (i == static_cast<std::size_t>(-1)) break;
        ++pick[i];
        for (std::size_t l = i + 1; l < m; ++l) pick[l] = pick[l - 1] + 1;
    }
    return graphs;
}

}  // namespace detail

/// Verdicts for a family of r-graphs with m edges, sorted by decreasing
/// mu_estimate and then by colex order of the edge lists. Graph j is
/// optimized with a seed derived from (opts.seed, j), so the output does not
/// depend on opts.threads.
inline std::vector<ConjectureVerdict> search(std::size_t r, std::uint64_t m, SearchMode mode,
                                             const SearchLimits& limits,
                                             const OptimizerOptions& opts = {}) {
    if (r < 3) throw DomainError("the conjectured bound is stated for r >= 3");
    const auto graphs = detail::search_candidates(r, m, mode, limits, opts.seed);
    std::vector<ConjectureVerdict> verdicts(graphs.size());
    OptimizerOptions per_graph = opts;
    per_graph.threads = 1;
    auto run = [&](std::size_t j) {
        OptimizerOptions o = per_graph;
        if (mode != SearchMode::colex) o.seed = Rng::stream(opts.seed, j)();
        verdicts[j] = check_conjecture(graphs[j], o);
    };
    const unsigned threads =
        std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(graphs.size())));
    if (threads <= 1) {
        for (std::size_t j = 0; j < graphs.size(); ++j) run(j);
    } else {
        std::vector<std::jthread> workers;
        for (unsigned t = 0; t < threads; ++t)
            workers.emplace_back([&, t] {
                for (std::size_t j = t; j < graphs.size(); j += threads) run(j);
            });
    }
    std::stable_sort(verdicts.begin(), verdicts.end(),
                     [](const ConjectureVerdict& a, const ConjectureVerdict& b) {
                         if (a.mu_estimate != b.mu_estimate) return a.mu_estimate > b.mu_estimate;
                         return colex_graph_less(a.graph, b.graph);
                     });
    return verdicts;
}

}  // namespace msindex
