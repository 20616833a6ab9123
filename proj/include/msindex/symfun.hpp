#pragma once

// Elementary symmetric functions, power sums and related statistics of
// points on the standard simplex.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <istream>
#include <limits>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "msindex/errors.hpp"

namespace msindex {

inline constexpr double kSimplexSumTolerance = 1e-9;
inline constexpr double kEqualEntriesTolerance = 1e-12;

enum class Normalize : bool { no = false, yes = true };

/// A point of the standard simplex with entries sorted non-increasingly.
class SimplexVector {
public:
    SimplexVector() = default;

    explicit SimplexVector(std::vector<double> entries, Normalize normalize = Normalize::no)
        : entries_(std::move(entries)) {
        if (entries_.empty()) throw DomainError("simplex vector must have at least one entry");
        double sum = 0.0;
        for (double v : entries_) {
            if (!std::isfinite(v) || v < 0.0)
                throw DomainError("simplex vector entries must be finite and nonnegative");
            sum += v;
        }
        if (normalize == Normalize::yes) {
            if (sum <= 0.0) throw DomainError("cannot normalize a zero vector");
            for (double& v : entries_) v /= sum;
        } else if (std::abs(sum - 1.0) > kSimplexSumTolerance) {
            throw DomainError("simplex vector entries sum to " + std::to_string(sum) +
                              ", expected 1");
        }
        std::sort(entries_.begin(), entries_.end(), std::greater<>());
    }

    static SimplexVector uniform(std::size_t n) { return uniform_on_support(n, n); }

    /// `support` equal entries 1/support followed by n - support zeros.
    static SimplexVector uniform_on_support(std::size_t support, std::size_t n) {
        if (support == 0 || support > n) throw DomainError("support must lie in [1, n]");
        std::vector<double> e(n, 0.0);
        std::fill_n(e.begin(), support, 1.0 / static_cast<double>(support));
        return SimplexVector(std::move(e));
    }

    std::span<const double> entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    double operator[](std::size_t i) const { return entries_[i]; }
    double max() const noexcept { return entries_.front(); }

    std::size_t nonzero_count() const noexcept {
        return static_cast<std::size_t>(
            std::count_if(entries_.begin(), entries_.end(), [](double v) { return v != 0.0; }));
    }

    /// True when all nonzero entries agree within `tol`.
    bool nonzero_entries_equal(double tol = kEqualEntriesTolerance) const noexcept {
        return entries_.front() - entries_[nonzero_count() - 1] <= tol;
    }

    friend bool operator==(const SimplexVector&, const SimplexVector&) = default;

private:
    std::vector<double> entries_;
};

/// S_0..S_K by the forward prefix recurrence. Terms are nonnegative, so no
/// cancellation occurs; S_k is exactly 0 when k exceeds the nonzero count.
inline std::vector<double> elementary_symmetric_all(std::span<const double> x, std::size_t K) {
    std::vector<double> s(K + 1, 0.0);
    s[0] = 1.0;
    std::size_t seen = 0;
    for (double xi : x) {
        ++seen;
        for (std::size_t k = std::min(seen, K); k >= 1; --k) s[k] += xi * s[k - 1];
    }
    return s;
}

inline std::vector<double> elementary_symmetric_all(const SimplexVector& x, std::size_t K) {
    return elementary_symmetric_all(x.entries(), K);
}

/// dS_k/dx_i = S_{k-1}(x without entry i), via prefix and suffix tables.
inline std::vector<double> esp_gradient(std::span<const double> x, std::size_t k) {
    if (k < 1) throw DomainError("esp_gradient requires k >= 1");
    const std::size_t n = x.size();
    const std::size_t d = k - 1;
    // prefix[i][j] = S_j(x_0..x_{i-1}), suffix[i][j] = S_j(x_i..x_{n-1}), j <= d
    std::vector<double> prefix((n + 1) * (d + 1), 0.0);
    std::vector<double> suffix((n + 1) * (d + 1), 0.0);
    auto P = [&](std::size_t i, std::size_t j) -> double& { return prefix[i * (d + 1) + j]; };
    auto Q = [&](std::size_t i, std::size_t j) -> double& { return suffix[i * (d + 1) + j]; };
    P(0, 0) = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        P(i + 1, 0) = 1.0;
        for (std::size_t j = 1; j <= d; ++j) P(i + 1, j) = P(i, j) + x[i] * P(i, j - 1);
    }
    Q(n, 0) = 1.0;
    for (std::size_t i = n; i-- > 0;) {
        Q(i, 0) = 1.0;
        for (std::size_t j = 1; j <= d; ++j) Q(i, j) = Q(i + 1, j) + x[i] * Q(i + 1, j - 1);
    }
    std::vector<double> grad(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j <= d; ++j) acc += P(i, j) * Q(i + 1, d - j);
        grad[i] = acc;
    }
    return grad;
}

inline std::vector<double> esp_gradient(const SimplexVector& x, std::size_t k) {
    return esp_gradient(x.entries(), k);
}

struct PowerSums {
    double q = 0.0;   // sum of squares
    double p = 0.0;   // sum of cubes
    double t4 = 0.0;  // sum of fourth powers
};

inline PowerSums power_sums(std::span<const double> x) {
    PowerSums s;
    for (double v : x) {
        const double v2 = v * v;
        s.q += v2;
        s.p += v2 * v;
        s.t4 += v2 * v2;
    }
    return s;
}

inline PowerSums power_sums(const SimplexVector& x) { return power_sums(x.entries()); }

/// prod x_i^{x_i} with 0^0 = 1, evaluated in log space.
inline double sigma(std::span<const double> x) {
    double log_sigma = 0.0;
    for (double v : x)
        if (v > 0.0) log_sigma += v * std::log(v);
    return std::exp(log_sigma);
}

inline double sigma(const SimplexVector& x) { return sigma(x.entries()); }

/// Power mean family (sum x_i^{1+t})^{1/t}; the t = 0 member is sigma.
inline double phi(const SimplexVector& x, double t) {
    if (t < -1.0) throw DomainError("phi requires t >= -1");
    if (t == 0.0) return sigma(x);
    // Factor out x_max so large |t| neither underflows nor overflows.
    const double top = x.max();
    double scaled = 0.0;
    for (double v : x.entries()) scaled += std::pow(v / top, 1.0 + t);
    return std::exp((1.0 + t) / t * std::log(top) + std::log(scaled) / t);
}

/// t(t-1)...(t-k+1)/k! for real t.
inline double generalized_binomial(double t, std::size_t k) {
    double result = 1.0;
    for (std::size_t j = 0; j < k; ++j) {
        const double factor = t - static_cast<double>(j);
        if (factor == 0.0) return 0.0;
        result *= factor / static_cast<double>(j + 1);
    }
    return result;
}

/// x^k C(1/x, k) = (1/k!) (1 - x)(1 - 2x)...(1 - (k-1)x).
inline double scaled_binomial(double x, std::size_t k) {
    double result = 1.0;
    for (std::size_t j = 0; j < k; ++j)
        result *= (1.0 - static_cast<double>(j) * x) / static_cast<double>(j + 1);
    return result;
}

/// The unique t >= r - 1 with C(t, r) = m.
inline double invert_binomial(double m, std::size_t r) {
    if (!(m >= 0.0) || !std::isfinite(m)) throw DomainError("invert_binomial requires m >= 0");
    if (r < 2) throw DomainError("invert_binomial requires r >= 2");
    double lo = static_cast<double>(r) - 1.0;
    if (m == 0.0) return lo;
    double hi = static_cast<double>(r) + m;
    for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (generalized_binomial(mid, r) < m) lo = mid;
        else hi = mid;
    }
    double t = 0.5 * (lo + hi);
    auto residual = [&](double s) { return generalized_binomial(s, r) - m; };
    for (int it = 0; it < 5; ++it) {
        const double c = generalized_binomial(t, r);
        double dlog = 0.0;
        for (std::size_t j = 0; j < r; ++j) dlog += 1.0 / (t - static_cast<double>(j));
        const double deriv = c * dlog;
        if (!(deriv > 0.0)) break;
        const double next = t - (c - m) / deriv;
        if (!std::isfinite(next) || std::abs(residual(next)) >= std::abs(residual(t))) break;
        t = next;
    }
    const double nearest = std::round(t);
    if (std::abs(t - nearest) <= 1e-9 && nearest >= static_cast<double>(r) &&
        generalized_binomial(nearest, r) == m)
        t = nearest;
    return t;
}

/// Statistics of a simplex vector, computed once.
struct StatBundle {
    double sigma = 0.0;
    double q = 0.0;
    double p = 0.0;
    double t4 = 0.0;
    double x_max = 0.0;
    std::size_t n_prime = 0;
    std::vector<double> esp;  // S_0..S_K
};

inline StatBundle compute_stats(const SimplexVector& x, std::size_t K) {
    const PowerSums ps = power_sums(x);
    return StatBundle{.sigma = sigma(x),
                      .q = ps.q,
                      .p = ps.p,
                      .t4 = ps.t4,
                      .x_max = x.max(),
                      .n_prime = x.nonzero_count(),
                      .esp = elementary_symmetric_all(x, K)};
}

/// Reads whitespace-separated decimals; `#` starts a comment line.
inline SimplexVector parse_vector(std::istream& in, Normalize normalize = Normalize::no) {
    std::vector<double> values;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream fields(line);
        std::string token;
        while (fields >> token) {
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(token, &used);
            } catch (const std::exception&) {
                throw ParseError(lineno, "not a number: '" + token + "'");
            }
            if (used != token.size()) throw ParseError(lineno, "not a number: '" + token + "'");
            if (!std::isfinite(v) || v < 0.0)
                throw ParseError(lineno, "entries must be finite and nonnegative");
            values.push_back(v);
        }
    }
    if (values.empty()) throw ParseError(lineno, "no vector entries found");
    try {
        return SimplexVector(std::move(values), normalize);
    } catch (const DomainError& e) {
        throw ParseError(lineno, e.what());
    }
}

}  // namespace msindex
