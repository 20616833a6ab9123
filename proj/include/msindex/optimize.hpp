#pragma once

// The polynomial form P_G of a hypergraph and its maximum over the simplex,
// computed by the multiplicative growth transform with random restarts.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "msindex/errors.hpp"
#include "msindex/hypergraph.hpp"
#include "msindex/sampling.hpp"
#include "msindex/symfun.hpp"

namespace msindex {

/// A simplex point indexed by vertex. Unlike SimplexVector the order is kept,
/// since coordinate i belongs to vertex i.
class VertexWeights {
public:
    VertexWeights() = default;

    explicit VertexWeights(std::vector<double> w, Normalize normalize = Normalize::no)
        : w_(std::move(w)) {
        if (w_.empty()) return;
        double sum = 0.0;
        for (double v : w_) {
            if (!std::isfinite(v) || v < 0.0)
                throw DomainError("vertex weights must be finite and nonnegative");
            sum += v;
        }
        if (normalize == Normalize::yes) {
            if (sum <= 0.0) throw DomainError("cannot normalize a zero vector");
            for (double& v : w_) v /= sum;
        } else if (std::abs(sum - 1.0) > kSimplexSumTolerance) {
            throw DomainError("vertex weights sum to " + std::to_string(sum) + ", expected 1");
        }
    }

    static VertexWeights uniform(std::size_t n) {
        return n == 0 ? VertexWeights() : VertexWeights(std::vector<double>(n, 1.0 / static_cast<double>(n)));
    }

    std::span<const double> values() const noexcept { return w_; }
    std::size_t size() const noexcept { return w_.size(); }
    double operator[](std::size_t i) const { return w_[i]; }

    double max() const noexcept { return w_.empty() ? 0.0 : *std::max_element(w_.begin(), w_.end()); }

    std::size_t support_size() const noexcept {
        return static_cast<std::size_t>(
            std::count_if(w_.begin(), w_.end(), [](double v) { return v > 0.0; }));
    }

    std::vector<Vertex> support() const {
        std::vector<Vertex> s;
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] > 0.0) s.push_back(static_cast<Vertex>(i));
        return s;
    }

    /// The same point as a sorted SimplexVector, for symmetric statistics.
    SimplexVector sorted() const { return SimplexVector(w_); }

    friend bool operator==(const VertexWeights&, const VertexWeights&) = default;

private:
    std::vector<double> w_;
};

namespace detail {

inline void require_dimension(const Hypergraph& g, std::size_t n) {
    if (g.n() != n)
        throw DomainError("weight vector has " + std::to_string(n) + " entries, graph has " +
                          std::to_string(g.n()) + " vertices");
}

// Adds the gradient of P_G at x into grad (size n) and returns P_G(x).
// Leave-one-out products use prefix/suffix products so zeros are exact.
inline double form_value_and_gradient(const Hypergraph& g, std::span<const double> x,
                                      std::span<double> grad) {
    const std::size_t r = g.r();
    std::vector<double> prefix(r + 1);
    double value = 0.0;
    for (std::size_t j = 0; j < g.m(); ++j) {
        const auto e = g.edge(j);
        prefix[0] = 1.0;
        for (std::size_t i = 0; i < r; ++i) prefix[i + 1] = prefix[i] * x[e[i]];
        value += prefix[r];
        double suffix = 1.0;
        for (std::size_t i = r; i-- > 0;) {
            grad[e[i]] += prefix[i] * suffix;
            suffix *= x[e[i]];
        }
    }
    return value;
}

}  // namespace detail

/// P_G(x): sum over edges of the product of their coordinates.
inline double evaluate_form(const Hypergraph& g, std::span<const double> x) {
    detail::require_dimension(g, x.size());
    double value = 0.0;
    for (std::size_t j = 0; j < g.m(); ++j) {
        double prod = 1.0;
        for (Vertex v : g.edge(j)) prod *= x[v];
        value += prod;
    }
    return value;
}

inline double evaluate_form(const Hypergraph& g, const VertexWeights& x) {
    return evaluate_form(g, x.values());
}

inline std::vector<double> form_gradient(const Hypergraph& g, std::span<const double> x) {
    detail::require_dimension(g, x.size());
    std::vector<double> grad(x.size(), 0.0);
    detail::form_value_and_gradient(g, x, grad);
    return grad;
}

inline std::vector<double> form_gradient(const Hypergraph& g, const VertexWeights& x) {
    return form_gradient(g, x.values());
}

/// x'_i = x_i (dP/dx_i) / (r P). Never decreases P; zero coordinates stay zero.
inline VertexWeights baum_eagon_step(const Hypergraph& g, const VertexWeights& x) {
    detail::require_dimension(g, x.size());
    std::vector<double> w(x.size(), 0.0);
    const double value = detail::form_value_and_gradient(g, x.values(), w);
    if (!(value > 0.0)) throw DegeneratePointError("P_G vanishes at the current point");
    // sum_i x_i dP/dx_i = r P, so normalizing by the computed sum is the same map
    double sum = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        w[i] *= x[i];
        sum += w[i];
    }
    for (double& v : w) v /= sum;
    return VertexWeights(std::move(w));
}

/// Largest violation of the stationarity conditions dP/dx_i = r P on the
/// support and dP/dx_i <= r P off it.
inline double kkt_residual(const Hypergraph& g, std::span<const double> x) {
    detail::require_dimension(g, x.size());
    std::vector<double> grad(x.size(), 0.0);
    const double value = detail::form_value_and_gradient(g, x, grad);
    const double target = static_cast<double>(g.r()) * value;
    double worst = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = grad[i] - target;
        worst = std::max(worst, x[i] > 0.0 ? std::abs(d) : std::max(0.0, d));
    }
    return worst;
}

inline double kkt_residual(const Hypergraph& g, const VertexWeights& x) {
    return kkt_residual(g, x.values());
}

struct OptimizerOptions {
    std::size_t restarts = 64;
    std::uint64_t max_iters = 100000;
    double tol = 1e-14;      // relative P increase that ends a run
    double kkt_tol = 1e-8;   // certification threshold
    std::uint64_t seed = 0;
    unsigned threads = 1;
};

struct OptimizationResult {
    VertexWeights best_x;
    double mu = 0.0;
    double kkt_residual = 0.0;
    std::size_t support_size = 0;
    std::size_t restarts_used = 0;
    std::uint64_t iterations_total = 0;
    bool converged = false;
};

namespace detail {

// Coordinates below this are treated as having left the support.
inline constexpr double kSnapThreshold = 1e-10;

struct AscentRun {
    std::vector<double> x;
    double value = 0.0;
    std::uint64_t iterations = 0;
};

// Extra iterations allowed after the objective stalls while the residual
// on the surviving coordinates is still above target.
inline constexpr std::uint64_t kPostStallIters = 20000;

// Stationarity residual of the point that snapping would leave behind:
// coordinates below the snap threshold count as off the support.
inline double surviving_residual(std::span<const double> x, std::span<const double> grad,
                                 double target) {
    double worst = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = grad[i] - target;
        worst = std::max(worst, x[i] >= kSnapThreshold ? std::abs(d) : std::max(0.0, d));
    }
    return worst;
}

// Growth-transform iterations until P stalls (relative increase <= tol) with
// the surviving residual below kkt_target, P stops increasing, or the
// iteration budget runs out.
inline void ascend(const Hypergraph& g, AscentRun& run, std::uint64_t max_iters, double tol,
                   double kkt_target) {
    const std::size_t n = run.x.size();
    const double rd = static_cast<double>(g.r());
    std::vector<double> grad(n), next(n);
    std::uint64_t stalled_iters = 0;
    while (run.iterations < max_iters) {
        std::fill(grad.begin(), grad.end(), 0.0);
        form_value_and_gradient(g, run.x, grad);
        if (stalled_iters > 0 &&
            (surviving_residual(run.x, grad, rd * run.value) <= kkt_target ||
             stalled_iters > kPostStallIters))
            break;
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            next[i] = run.x[i] * grad[i];
            sum += next[i];
        }
        if (!(sum > 0.0)) break;
        for (double& v : next) v /= sum;
        const double next_value = evaluate_form(g, next);
        ++run.iterations;
        if (next_value <= run.value && stalled_iters > 0) break;  // rounding floor reached
        if (next_value < run.value) break;
        const bool stalled = next_value - run.value <= tol * run.value;
        run.x.swap(next);
        run.value = next_value;
        if (stalled) ++stalled_iters;
    }
}

inline std::vector<double> restart_start(const Hypergraph& g, const OptimizerOptions& opts,
                                         std::size_t restart) {
    const std::size_t n = g.n();
    Rng rng = Rng::stream(opts.seed, restart);
    std::vector<double> x(n, 0.0);
    if (restart % 2 == 0 || n <= g.r()) {
        for (double& v : x) v = rng.uniform(0.5, 1.5);
    } else {
        // uniform weights on a random support of size in [r, n]
        const std::size_t size = g.r() + rng.below(n - g.r() + 1);
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        for (std::size_t i = 0; i < size; ++i) {
            std::swap(perm[i], perm[i + rng.below(n - i)]);
            x[perm[i]] = 1.0;
        }
    }
    const double sum = std::accumulate(x.begin(), x.end(), 0.0);
    for (double& v : x) v /= sum;
    return x;
}

struct RestartOutcome {
    std::optional<AscentRun> run;
    double kkt = 0.0;
};

inline RestartOutcome run_restart(const Hypergraph& g, const OptimizerOptions& opts,
                                  std::size_t restart) {
    RestartOutcome out;
    AscentRun run{restart_start(g, opts, restart), 0.0, 0};
    run.value = evaluate_form(g, run.x);
    if (!(run.value > 0.0)) return out;  // support misses every edge
    ascend(g, run, opts.max_iters, opts.tol, 0.01 * opts.kkt_tol);

    // Drop coordinates that have decayed away and polish on the remaining face.
    AscentRun snapped = run;
    bool changed = false;
    for (double& v : snapped.x)
        if (v > 0.0 && v < kSnapThreshold) {
            v = 0.0;
            changed = true;
        }
    if (changed) {
        const double sum = std::accumulate(snapped.x.begin(), snapped.x.end(), 0.0);
        for (double& v : snapped.x) v /= sum;
        snapped.value = evaluate_form(g, snapped.x);
        if (snapped.value > 0.0) {
            ascend(g, snapped, opts.max_iters, opts.tol, 0.01 * opts.kkt_tol);
            if (snapped.value >= run.value * (1.0 - 1e-12)) run = std::move(snapped);
            else run.iterations = snapped.iterations;
        }
    }
    out.kkt = kkt_residual(g, run.x);
    out.run = std::move(run);
    return out;
}

}  // namespace detail

/// mu(G) = max of P_G over the simplex, estimated as the best of
/// `opts.restarts` growth-transform runs. Even restarts start from a jittered
/// full-support point, odd restarts from the uniform point of a random
/// vertex subset. The result is a valid lower bound on mu(G) regardless of
/// convergence.
inline OptimizationResult ms_index(const Hypergraph& g, const OptimizerOptions& opts = {}) {
    OptimizationResult result;
    if (g.m() == 0) {
        result.best_x = VertexWeights::uniform(g.n());
        result.mu = 0.0;
        result.support_size = g.n();
        result.converged = true;
        return result;
    }
    const std::size_t restarts = std::max<std::size_t>(opts.restarts, 1);
    std::vector<detail::RestartOutcome> outcomes(restarts);
    const unsigned threads = std::max(1u, std::min<unsigned>(opts.threads, restarts));
    if (threads == 1) {
        for (std::size_t j = 0; j < restarts; ++j) outcomes[j] = detail::run_restart(g, opts, j);
    } else {
        std::vector<std::jthread> workers;
        for (unsigned t = 0; t < threads; ++t)
            workers.emplace_back([&, t] {
                for (std::size_t j = t; j < restarts; j += threads)
                    outcomes[j] = detail::run_restart(g, opts, j);
            });
    }

    std::optional<std::size_t> best;
    for (std::size_t j = 0; j < restarts; ++j) {
        const auto& o = outcomes[j];
        result.iterations_total += o.run ? o.run->iterations : 0;
        if (!o.run) continue;
        if (!best) {
            best = j;
            continue;
        }
        const auto& b = outcomes[*best];
        if (o.run->value > b.run->value || (o.run->value == b.run->value && o.kkt < b.kkt))
            best = j;
    }
    result.restarts_used = restarts;
    if (!best) {
        // unreachable while even restarts keep full support
        result.best_x = VertexWeights::uniform(g.n());
        result.mu = evaluate_form(g, result.best_x);
        result.kkt_residual = kkt_residual(g, result.best_x);
        return result;
    }
    auto& winner = outcomes[*best];
    result.best_x = VertexWeights(std::move(winner.run->x));
    result.mu = evaluate_form(g, result.best_x);
    result.kkt_residual = winner.kkt;
    result.support_size = result.best_x.support_size();
    result.converged = result.kkt_residual <= opts.kkt_tol;
    return result;
}

}  // namespace msindex
