#pragma once

// Seeded simplex sampling and the bulk sweep driver over bound checkers.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "msindex/bounds.hpp"
#include "msindex/errors.hpp"
#include "msindex/symfun.hpp"

namespace msindex {

/// SplitMix64; satisfies UniformRandomBitGenerator.
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t state) noexcept : state_(state) {}

    /// Independent stream for item `index` of a run seeded with `seed`.
    static Rng stream(std::uint64_t seed, std::uint64_t index) noexcept {
        Rng mixer(seed ^ 0x6a09e667f3bcc909ULL);
        const std::uint64_t a = mixer();
        Rng keyed(a ^ (index * 0x9e3779b97f4a7c15ULL + 0xbb67ae8584caa73bULL));
        return Rng(keyed());
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

    /// Uniform on {0, ..., bound - 1}; bound must be positive.
    std::uint64_t below(std::uint64_t bound) noexcept {
        const std::uint64_t limit = max() - max() % bound;
        std::uint64_t v;
        do v = (*this)();
        while (v >= limit);
        return v % bound;
    }

    double exponential() noexcept { return -std::log1p(-uniform()); }

private:
    std::uint64_t state_;
};

/// Uniform point of the simplex: normalized standard exponentials.
inline SimplexVector sample_simplex(std::size_t n, Rng& rng) {
    if (n < 1) throw DomainError("sample_simplex requires n >= 1");
    std::vector<double> e(n);
    double sum = 0.0;
    for (double& v : e) {
        v = rng.exponential();
        sum += v;
    }
    if (sum == 0.0) return SimplexVector::uniform(n);
    for (double& v : e) v /= sum;
    return SimplexVector(std::move(e), Normalize::no);
}

namespace detail {

inline bool cap_feasible(std::size_t n, double cap) {
    return static_cast<double>(n) * cap >= 1.0 - 1e-12;
}

inline bool cap_forces_uniform(std::size_t n, double cap) {
    return static_cast<double>(n) * cap <= 1.0 + 1e-12;
}

// Moves y along a segment so that its largest entry becomes `target`:
// toward the uniform point when y_max > target, toward the vertex at the
// argmax otherwise. The result never exceeds `cap`.
inline SimplexVector blend_to_max(const SimplexVector& y, double target, double cap) {
    const std::size_t n = y.size();
    const double u = 1.0 / static_cast<double>(n);
    target = std::min(std::max(target, u), cap);
    const double ymax = y.max();
    std::vector<double> x(n);
    for (int attempt = 0; attempt < 64; ++attempt) {
        if (ymax > target) {
            const double lambda = (target - u) / (ymax - u);
            for (std::size_t i = 0; i < n; ++i) x[i] = lambda * y[i] + (1.0 - lambda) * u;
        } else {
            // entries are sorted, so y[0] is the argmax
            const double lambda = (1.0 - target) / (1.0 - ymax);
            for (std::size_t i = 0; i < n; ++i) x[i] = lambda * y[i];
            x[0] += 1.0 - lambda;
        }
        if (*std::max_element(x.begin(), x.end()) <= cap) break;
        target -= std::ldexp(cap, -50 + attempt);
    }
    return SimplexVector(std::move(x));
}

}  // namespace detail

/// Simplex point with x_max <= cap: up to 64 rejection draws, then the last
/// draw is shrunk toward the uniform point just enough to meet the cap.
inline SimplexVector sample_capped(std::size_t n, double cap, Rng& rng) {
    if (n < 1) throw DomainError("sample_capped requires n >= 1");
    if (!detail::cap_feasible(n, cap))
        throw InfeasibleCapError("no point of the simplex with n = " + std::to_string(n) +
                                 " has every entry <= " + std::to_string(cap));
    if (detail::cap_forces_uniform(n, cap)) return SimplexVector::uniform(n);
    std::optional<SimplexVector> y;
    for (int attempt = 0; attempt < 64; ++attempt) {
        y = sample_simplex(n, rng);
        if (y->max() <= cap) return *std::move(y);
    }
    return detail::blend_to_max(*y, cap, cap);
}

/// Simplex point whose largest entry lies in [0.95 cap, cap] (clamped to >= 1/n).
inline SimplexVector sample_near_cap(std::size_t n, double cap, Rng& rng) {
    if (n < 1) throw DomainError("sample_near_cap requires n >= 1");
    if (!detail::cap_feasible(n, cap))
        throw InfeasibleCapError("no point of the simplex with n = " + std::to_string(n) +
                                 " has every entry <= " + std::to_string(cap));
    if (detail::cap_forces_uniform(n, cap)) return SimplexVector::uniform(n);
    const double target = rng.uniform(0.95 * cap, cap);
    return detail::blend_to_max(sample_simplex(n, rng), target, cap);
}

enum class CapPolicy { none, threshold, boundary };

inline std::string_view to_string(CapPolicy p) {
    switch (p) {
        case CapPolicy::none: return "none";
        case CapPolicy::threshold: return "threshold";
        case CapPolicy::boundary: return "boundary";
    }
    return "none";
}

inline std::optional<CapPolicy> cap_policy_from_string(std::string_view s) {
    if (s == "none") return CapPolicy::none;
    if (s == "threshold") return CapPolicy::threshold;
    if (s == "boundary") return CapPolicy::boundary;
    return std::nullopt;
}

/// One line of a sweep configuration.
struct SweepSpec {
    BoundId bound = BoundId::prop1_chain;
    std::size_t k = 3;
    std::size_t n_min = 4;
    std::size_t n_max = 4;  // inclusive; each sample draws n uniformly from [n_min, n_max]
    std::uint64_t samples = 10000;
    CapPolicy cap_policy = CapPolicy::none;
    std::optional<double> cap;  // overrides the bound's precondition threshold
    std::uint64_t seed = 0;
    bool relaxed = false;       // thm1_upper with the relaxed threshold
    bool experimental = false;  // thm3_partial at k = 6
};

struct SweepReport {
    BoundId bound_id = BoundId::prop1_chain;
    std::size_t k = 0;
    std::size_t n_min = 0;
    std::size_t n_max = 0;
    CapPolicy cap_policy = CapPolicy::none;
    double cap = 1.0;
    std::uint64_t samples_total = 0;
    std::uint64_t samples_applicable = 0;
    std::uint64_t equality_samples = 0;
    double min_margin = std::numeric_limits<double>::infinity();
    std::uint64_t argmin_index = 0;
    SimplexVector argmin_vector;
    std::uint64_t violations = 0;
    std::uint64_t seed = 0;
    bool experimental = false;
};

/// Precondition threshold on x_max for a bound, or nullopt if unconditional.
inline std::optional<double> precondition_threshold(BoundId bound, std::size_t k, bool relaxed) {
    switch (bound) {
        case BoundId::thm1_upper:
        case BoundId::thm1_remark:
            if (relaxed) return k == 3 ? 3.0 / 8.0 : 11.0 / 48.0;
            return 1.0 / (4.0 * static_cast<double>(k - 2));
        case BoundId::thm2_lower:
            // strict inequality in the hypothesis
            return 1.0 / static_cast<double>(k - 1) * (1.0 - 1e-6);
        case BoundId::thm3_partial: return 1.0 / static_cast<double>(k);
        case BoundId::claim_moment:
        case BoundId::claim_sigma_rec: return 1.0 / (4.0 * static_cast<double>(k - 2));
        case BoundId::claim_insig: return 0.2;
        default: return std::nullopt;
    }
}

inline void validate(const SweepSpec& spec) {
    const auto bad = [&](const std::string& why) {
        throw ConfigError(std::string(to_string(spec.bound)) + " with k = " +
                          std::to_string(spec.k) + ": " + why);
    };
    if (spec.n_min < 1 || spec.n_max < spec.n_min) bad("invalid n range");
    switch (spec.bound) {
        case BoundId::maclaurin:
            if (spec.k < 2) bad("requires k >= 2");
            if (spec.n_min < spec.k) bad("requires n >= k");
            break;
        case BoundId::thm1_upper:
        case BoundId::thm1_remark:
            if (spec.k < 3) bad("requires k >= 3");
            if (spec.relaxed && (spec.bound != BoundId::thm1_upper || (spec.k != 3 && spec.k != 4)))
                bad("relaxed threshold is only known for thm1_upper with k = 3, 4");
            break;
        case BoundId::thm2_lower:
        case BoundId::prop3_rec:
        case BoundId::claim_moment:
        case BoundId::claim_sigma_rec:
        case BoundId::claim_insig:
            if (spec.k < 3) bad("requires k >= 3");
            break;
        case BoundId::thm3_partial:
            if (!(spec.k >= 3 && spec.k <= 5) && !(spec.experimental && spec.k == 6))
                bad("requires k in {3, 4, 5} (6 with --experimental)");
            break;
        case BoundId::prop2_rec:
            if (spec.k < 2) bad("requires k >= 2");
            break;
        case BoundId::prop1_chain: break;
        case BoundId::lemma_sigma:
        case BoundId::lemma_q: bad("hypergraph bounds are not sampled on the simplex");
    }
    if (spec.cap_policy != CapPolicy::none) {
        const auto cap = spec.cap ? spec.cap : precondition_threshold(spec.bound, spec.k,
                                                                      spec.relaxed);
        if (!cap) bad("cap policy requires a precondition threshold or an explicit cap");
        if (!detail::cap_feasible(spec.n_min, *cap))
            bad("cap " + std::to_string(*cap) + " is infeasible for n = " +
                std::to_string(spec.n_min));
    }
}

/// All reports of one bound for a single vector.
inline std::vector<BoundReport> evaluate_bound(BoundId bound, std::size_t k,
                                               const SimplexVector& x, bool relaxed = false,
                                               bool experimental = false) {
    switch (bound) {
        case BoundId::maclaurin: return {check_maclaurin(x, k)};
        case BoundId::thm1_upper:
            return {check_thm1_upper(x, k, relaxed ? Thm1Variant::relaxed : Thm1Variant::standard)};
        case BoundId::thm1_remark: return {check_thm1_upper(x, k, Thm1Variant::remark)};
        case BoundId::thm2_lower: return {check_thm2_lower(x, k)};
        case BoundId::thm3_partial: return {check_thm3_partial(x, k, experimental)};
        case BoundId::prop2_rec: return {check_recurrences(x, k).prop2};
        case BoundId::prop3_rec: return {check_recurrences(x, k).prop3};
        case BoundId::prop1_chain: return {check_prop1_chain(x)};
        case BoundId::claim_sigma_rec:
        case BoundId::claim_moment:
        case BoundId::claim_insig: {
            std::vector<BoundReport> all = check_proof_claims(x, k);
            std::erase_if(all, [&](const BoundReport& r) { return r.bound_id != bound; });
            return all;
        }
        case BoundId::lemma_sigma:
        case BoundId::lemma_q: break;
    }
    throw ConfigError("bound " + std::string(to_string(bound)) + " has no simplex checker");
}

namespace detail {

struct SweepPartial {
    std::uint64_t applicable = 0;
    std::uint64_t equality = 0;
    std::uint64_t violations = 0;
    double min_margin = std::numeric_limits<double>::infinity();
    std::uint64_t argmin = std::numeric_limits<std::uint64_t>::max();
    std::optional<SimplexVector> argmin_vector;

    // Associative and commutative: ties on the margin go to the lower index.
    void merge(SweepPartial&& other) {
        applicable += other.applicable;
        equality += other.equality;
        violations += other.violations;
        if (other.min_margin < min_margin ||
            (other.min_margin == min_margin && other.argmin < argmin)) {
            min_margin = other.min_margin;
            argmin = other.argmin;
            argmin_vector = std::move(other.argmin_vector);
        }
    }
};

inline SimplexVector draw_sweep_sample(const SweepSpec& spec, double cap, std::uint64_t index) {
    Rng rng = Rng::stream(spec.seed, index);
    std::size_t n = spec.n_min;
    if (spec.n_max > spec.n_min) n += rng.below(spec.n_max - spec.n_min + 1);
    switch (spec.cap_policy) {
        case CapPolicy::none: return sample_simplex(n, rng);
        case CapPolicy::threshold: return sample_capped(n, cap, rng);
        case CapPolicy::boundary: return sample_near_cap(n, cap, rng);
    }
    return sample_simplex(n, rng);
}

inline SweepPartial sweep_range(const SweepSpec& spec, double cap, std::uint64_t begin,
                                std::uint64_t end) {
    SweepPartial part;
    for (std::uint64_t i = begin; i < end; ++i) {
        const SimplexVector x = draw_sweep_sample(spec, cap, i);
        const auto reports = evaluate_bound(spec.bound, spec.k, x, spec.relaxed, spec.experimental);
        bool any_applicable = false;
        bool violated = false;
        double sample_min = std::numeric_limits<double>::infinity();
        for (const BoundReport& r : reports) {
            if (!r.applicable) continue;
            any_applicable = true;
            sample_min = std::min(sample_min, r.margin);
            violated = violated || r.margin < kViolationThreshold;
        }
        if (!any_applicable) continue;
        ++part.applicable;
        if (x.nonzero_entries_equal()) ++part.equality;
        if (violated) ++part.violations;
        if (sample_min < part.min_margin) {
            part.min_margin = sample_min;
            part.argmin = i;
            part.argmin_vector = x;
        }
    }
    return part;
}

}  // namespace detail

/// Runs one sweep. Sample i depends only on (seed, i), and partial results
/// merge associatively, so the report is identical for every thread count.
inline SweepReport run_sweep(const SweepSpec& spec, unsigned threads = 1) {
    validate(spec);
    const double cap = spec.cap ? *spec.cap
                                : precondition_threshold(spec.bound, spec.k, spec.relaxed)
                                      .value_or(1.0);
    threads = std::max(1u, threads);
    const std::uint64_t chunks = std::min<std::uint64_t>(threads, std::max<std::uint64_t>(spec.samples, 1));
    std::vector<detail::SweepPartial> parts(chunks);
    {
        std::vector<std::jthread> workers;
        for (std::uint64_t c = 0; c < chunks; ++c) {
            const std::uint64_t begin = spec.samples * c / chunks;
            const std::uint64_t end = spec.samples * (c + 1) / chunks;
            auto task = [&, c, begin, end] { parts[c] = detail::sweep_range(spec, cap, begin, end); };
            if (chunks == 1) task();
            else workers.emplace_back(task);
        }
    }
    detail::SweepPartial total;
    for (auto& p : parts) total.merge(std::move(p));

    SweepReport report;
    report.bound_id = spec.bound;
    report.k = spec.k;
    report.n_min = spec.n_min;
    report.n_max = spec.n_max;
    report.cap_policy = spec.cap_policy;
    report.cap = spec.cap_policy == CapPolicy::none ? 1.0 : cap;
    report.samples_total = spec.samples;
    report.samples_applicable = total.applicable;
    report.equality_samples = total.equality;
    report.min_margin = total.min_margin;
    report.argmin_index = total.argmin_vector ? total.argmin : 0;
    if (total.argmin_vector) report.argmin_vector = std::move(*total.argmin_vector);
    report.violations = total.violations;
    report.seed = spec.seed;
    report.experimental = spec.experimental && spec.bound == BoundId::thm3_partial && spec.k == 6;
    if (spec.relaxed) report.experimental = true;
    return report;
}

inline std::vector<SweepReport> run_bound_sweep(const std::vector<SweepSpec>& config,
                                                unsigned threads = 1) {
    for (const auto& spec : config) validate(spec);
    std::vector<SweepReport> out;
    out.reserve(config.size());
    for (const auto& spec : config) out.push_back(run_sweep(spec, threads));
    return out;
}

}  // namespace msindex
