#pragma once

// Checkers for the inequalities on elementary symmetric functions of simplex
// points. Every checker reports both sides and a margin that is nonnegative
// exactly when the inequality holds.

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "msindex/errors.hpp"
#include "msindex/symfun.hpp"

namespace msindex {

/// Margins below this on applicable inputs count as violations.
inline constexpr double kViolationThreshold = -1e-12;

enum class BoundId {
    maclaurin,
    thm1_upper,
    thm1_remark,
    thm2_lower,
    thm3_partial,
    prop2_rec,
    prop3_rec,
    prop1_chain,
    claim_sigma_rec,
    claim_moment,
    claim_insig,
    lemma_sigma,
    lemma_q,
};

inline constexpr std::array<std::pair<BoundId, std::string_view>, 13> kBoundNames{{
    {BoundId::maclaurin, "maclaurin"},
    {BoundId::thm1_upper, "thm1_upper"},
    {BoundId::thm1_remark, "thm1_remark"},
    {BoundId::thm2_lower, "thm2_lower"},
    {BoundId::thm3_partial, "thm3_partial"},
    {BoundId::prop2_rec, "prop2_rec"},
    {BoundId::prop3_rec, "prop3_rec"},
    {BoundId::prop1_chain, "prop1_chain"},
    {BoundId::claim_sigma_rec, "claim_sigma_rec"},
    {BoundId::claim_moment, "claim_moment"},
    {BoundId::claim_insig, "claim_insig"},
    {BoundId::lemma_sigma, "lemma_sigma"},
    {BoundId::lemma_q, "lemma_q"},
}};

inline std::string_view to_string(BoundId id) {
    for (const auto& [b, name] : kBoundNames)
        if (b == id) return name;
    return "unknown";
}

inline std::optional<BoundId> bound_from_string(std::string_view name) {
    for (const auto& [b, n] : kBoundNames)
        if (n == name) return b;
    return std::nullopt;
}

struct BoundReport {
    BoundId bound_id = BoundId::maclaurin;
    std::size_t k = 0;  // order of the inequality (sub-claim index for proof claims)
    bool applicable = false;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;  // amount by which the inequality holds
    bool equality_case = false;
    double constraint_slack = 0.0;  // precondition threshold minus x_max
    bool experimental = false;      // violations are informational only

    bool violated() const noexcept {
        return applicable && !experimental && margin < kViolationThreshold;
    }
};

enum class Thm1Variant { standard, remark, relaxed };

namespace detail {

inline BoundReport upper_report(BoundId id, std::size_t k, const SimplexVector& x, double lhs,
                                double rhs, double threshold, bool applicable) {
    return BoundReport{.bound_id = id,
                       .k = k,
                       .applicable = applicable,
                       .lhs = lhs,
                       .rhs = rhs,
                       .margin = rhs - lhs,
                       .equality_case = x.nonzero_entries_equal(),
                       .constraint_slack = threshold - x.max()};
}

inline BoundReport lower_report(BoundId id, std::size_t k, const SimplexVector& x, double lhs,
                                double rhs, double threshold, bool applicable) {
    BoundReport r = upper_report(id, k, x, lhs, rhs, threshold, applicable);
    r.margin = lhs - rhs;
    return r;
}

// Unconditional inequalities report slack against the trivial threshold 1.
inline constexpr double kNoThreshold = 1.0;

inline double thm1_threshold(std::size_t k) { return 1.0 / (4.0 * static_cast<double>(k - 2)); }

}  // namespace detail

/// S_k(x) <= n^{-k} C(n, k).
inline BoundReport check_maclaurin(const SimplexVector& x, std::size_t k) {
    if (k < 2) throw DomainError("maclaurin check requires k >= 2");
    const std::size_t n = x.size();
    if (n < k) throw DomainError("maclaurin check requires n >= k");
    const double lhs = elementary_symmetric_all(x, k)[k];
    const double rhs = scaled_binomial(1.0 / static_cast<double>(n), k);
    return detail::upper_report(BoundId::maclaurin, k, x, lhs, rhs, detail::kNoThreshold, true);
}

/// Upper bound on S_k in terms of sigma, under a cap on the largest entry.
inline BoundReport check_thm1_upper(const SimplexVector& x, std::size_t k,
                                    Thm1Variant variant = Thm1Variant::standard) {
    if (k < 3) throw DomainError("thm1_upper requires k >= 3");
    double threshold = detail::thm1_threshold(k);
    if (variant == Thm1Variant::relaxed) {
        if (k == 3) threshold = 3.0 / 8.0;
        else if (k == 4) threshold = 11.0 / 48.0;
        else throw UnsupportedError("relaxed thm1_upper threshold is only known for k = 3, 4");
    }
    const auto esp = elementary_symmetric_all(x, k);
    const double s = sigma(x);
    double rhs = scaled_binomial(s, k);
    BoundId id = BoundId::thm1_upper;
    if (variant == Thm1Variant::remark) {
        // (1/k!) (1 - q)(1 - 2 sigma)...(1 - (k-1) sigma)
        rhs = (1.0 - power_sums(x).q) / 2.0;
        for (std::size_t j = 2; j < k; ++j)
            rhs *= (1.0 - static_cast<double>(j) * s) / static_cast<double>(j + 1);
        id = BoundId::thm1_remark;
    }
    BoundReport r = detail::upper_report(id, k, x, esp[k], rhs, threshold, x.max() <= threshold);
    r.experimental = variant == Thm1Variant::relaxed;
    return r;
}

/// S_k(x) >= q^k C(1/q, k) when x_max < 1/(k-1).
inline BoundReport check_thm2_lower(const SimplexVector& x, std::size_t k) {
    if (k < 3) throw DomainError("thm2_lower requires k >= 3");
    const double threshold = 1.0 / static_cast<double>(k - 1);
    const double lhs = elementary_symmetric_all(x, k)[k];
    const double rhs = scaled_binomial(power_sums(x).q, k);
    return detail::lower_report(BoundId::thm2_lower, k, x, lhs, rhs, threshold,
                                x.max() < threshold);
}

/// dS_k/dx_1 <= k sigma^k C(1/sigma, k) when x_max <= 1/k. Proven for k = 3, 4, 5;
/// k = 6 is accepted only with `experimental`.
inline BoundReport check_thm3_partial(const SimplexVector& x, std::size_t k,
                                      bool experimental = false) {
    const bool proven = k >= 3 && k <= 5;
    if (!proven && !(experimental && k == 6))
        throw UnsupportedError("thm3_partial supports k in {3, 4, 5} (6 with experimental)");
    const double threshold = 1.0 / static_cast<double>(k);
    const double lhs = esp_gradient(x, k)[0];
    const double rhs = static_cast<double>(k) * scaled_binomial(sigma(x), k);
    BoundReport r = detail::upper_report(BoundId::thm3_partial, k, x, lhs, rhs, threshold,
                                         x.max() <= threshold);
    r.experimental = !proven;
    return r;
}

struct RecurrenceReports {
    BoundReport prop2;  // k S_k >= (1 - (k-1) q) S_{k-1}
    BoundReport prop3;  // k S_k <= S_{k-1} - (q - (k-2) p) S_{k-2}
};

inline RecurrenceReports check_recurrences(const SimplexVector& x, std::size_t k) {
    if (k < 2) throw DomainError("recurrence checks require k >= 2");
    const auto esp = elementary_symmetric_all(x, k);
    const PowerSums ps = power_sums(x);
    const double kd = static_cast<double>(k);
    const double lhs = kd * esp[k];
    RecurrenceReports out;
    out.prop2 = detail::lower_report(BoundId::prop2_rec, k, x, lhs,
                                     (1.0 - (kd - 1.0) * ps.q) * esp[k - 1],
                                     detail::kNoThreshold, true);
    if (k >= 3) {
        out.prop3 = detail::upper_report(BoundId::prop3_rec, k, x, lhs,
                                         esp[k - 1] - (ps.q - (kd - 2.0) * ps.p) * esp[k - 2],
                                         detail::kNoThreshold, true);
    } else {
        out.prop3 = detail::upper_report(BoundId::prop3_rec, k, x, lhs, lhs, detail::kNoThreshold,
                                         false);
    }
    return out;
}

/// 1/n' <= sigma <= q <= p^{1/2} <= t4^{1/3} <= x_max; margin is the smallest gap.
inline BoundReport check_prop1_chain(const SimplexVector& x) {
    const PowerSums ps = power_sums(x);
    const std::array<double, 6> chain{1.0 / static_cast<double>(x.nonzero_count()), sigma(x),
                                      ps.q, std::sqrt(ps.p), std::cbrt(ps.t4), x.max()};
    double margin = chain[1] - chain[0];
    std::size_t worst = 0;
    for (std::size_t i = 1; i + 1 < chain.size(); ++i) {
        const double gap = chain[i + 1] - chain[i];
        if (gap < margin) {
            margin = gap;
            worst = i;
        }
    }
    BoundReport r = detail::lower_report(BoundId::prop1_chain, 0, x, chain[worst + 1],
                                         chain[worst], detail::kNoThreshold, true);
    return r;
}

/// Intermediate inequalities from the proofs of the upper bounds:
///   moment:    q - (i-2) p >= sigma (1 - (i-2) sigma)          for i = 3..k
///   sigma_rec: i S_i <= (1 - (i-1) sigma) S_{i-1}               for i = 3..k
/// both under x_max <= 1/(4(k-2)), and, under x_max <= 1/5 with x = x_max,
///   insig:     -c q + 8(1-x) p - 6 t4 <= -c sigma + 8(1-x) sigma^2 - 6 sigma^3,
///              c = (106 - 160x)/25.
inline std::vector<BoundReport> check_proof_claims(const SimplexVector& x, std::size_t k) {
    if (k < 3) throw DomainError("proof claims require k >= 3");
    const auto esp = elementary_symmetric_all(x, k);
    const PowerSums ps = power_sums(x);
    const double s = sigma(x);
    const double threshold = detail::thm1_threshold(k);
    const bool chain_ok = x.max() <= threshold;

    std::vector<BoundReport> out;
    for (std::size_t i = 3; i <= k; ++i) {
        const double id = static_cast<double>(i);
        out.push_back(detail::lower_report(BoundId::claim_moment, i, x, ps.q - (id - 2.0) * ps.p,
                                           s * (1.0 - (id - 2.0) * s), threshold, chain_ok));
        out.push_back(detail::upper_report(BoundId::claim_sigma_rec, i, x, id * esp[i],
                                           (1.0 - (id - 1.0) * s) * esp[i - 1], threshold,
                                           chain_ok));
    }
    const double xm = x.max();
    const double c = (106.0 - 160.0 * xm) / 25.0;
    const double lhs = -c * ps.q + 8.0 * (1.0 - xm) * ps.p - 6.0 * ps.t4;
    const double rhs = -c * s + 8.0 * (1.0 - xm) * s * s - 6.0 * s * s * s;
    out.push_back(
        detail::upper_report(BoundId::claim_insig, 5, x, lhs, rhs, 0.2, xm <= 0.2));
    return out;
}

}  // namespace msindex
