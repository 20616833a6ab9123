#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "msindex/sampling.hpp"

namespace msindex {
namespace {

double sum_of(const SimplexVector& x) {
    return std::accumulate(x.entries().begin(), x.entries().end(), 0.0);
}

TEST(Rng, StreamsAreReproducibleAndDistinct) {
    Rng a = Rng::stream(42, 7), b = Rng::stream(42, 7), c = Rng::stream(42, 8), d = Rng::stream(43, 7);
    const auto va = a();
    EXPECT_EQ(va, b());
    EXPECT_NE(va, c());
    EXPECT_NE(va, d());
    Rng r(1);
    for (int i = 0; i < 1000; ++i) {
        const double u = r.uniform();
        EXPECT_GE(u, 0.0);
        EXPECT_LT(u, 1.0);
        EXPECT_LT(r.below(5), 5u);
    }
}

TEST(SampleSimplex, Basics) {
    Rng rng(1);
    const auto one = sample_simplex(1, rng);
    EXPECT_EQ(one.size(), 1u);
    EXPECT_EQ(one[0], 1.0);
    for (std::size_t n = 1; n <= 40; ++n) {
        const auto x = sample_simplex(n, rng);
        EXPECT_NEAR(sum_of(x), 1.0, 1e-12);
        for (double v : x.entries()) EXPECT_GE(v, 0.0);
    }
    EXPECT_THROW(sample_simplex(0, rng), DomainError);
}

TEST(SampleSimplex, MeanIsUniform) {
    Rng rng(2024);
    // sorted entries lose the coordinate identity, so average a random coordinate
    double total = 0.0;
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) total += sample_simplex(4, rng)[rng.below(4)];
    EXPECT_NEAR(total / draws, 0.25, 0.005);
}

TEST(SampleCapped, Examples) {
    Rng rng(3);
    EXPECT_THROW(sample_capped(10, 1.0 / 12.0, rng), InfeasibleCapError);
    for (int i = 0; i < 2000; ++i) {
        const auto x = sample_capped(20, 1.0 / 12.0, rng);
        EXPECT_LE(x.max(), 1.0 / 12.0);
        EXPECT_NEAR(sum_of(x), 1.0, 1e-12);
    }
    const auto u = sample_capped(4, 0.25, rng);
    for (double v : u.entries()) EXPECT_EQ(v, 0.25);
}

TEST(SampleNearCap, LandsInWindow) {
    Rng rng(4);
    for (std::size_t n : {9u, 20u, 50u}) {
        for (int i = 0; i < 2000; ++i) {
            const double cap = 1.0 / 8.0;
            const auto x = sample_near_cap(n, cap, rng);
            EXPECT_LE(x.max(), cap);
            EXPECT_GE(x.max(), 0.95 * cap - 1e-15);
            EXPECT_NEAR(sum_of(x), 1.0, 1e-12);
        }
    }
}

TEST(CapPolicy, Names) {
    for (auto p : {CapPolicy::none, CapPolicy::threshold, CapPolicy::boundary})
        EXPECT_EQ(cap_policy_from_string(to_string(p)), p);
    EXPECT_FALSE(cap_policy_from_string("tight"));
}

SweepSpec thm1_spec(std::uint64_t seed) {
    SweepSpec s;
    s.bound = BoundId::thm1_upper;
    s.k = 3;
    s.n_min = s.n_max = 16;
    s.samples = 10000;
    s.cap_policy = CapPolicy::threshold;
    s.seed = seed;
    return s;
}

bool same_report(const SweepReport& a, const SweepReport& b) {
    return a.samples_applicable == b.samples_applicable && a.equality_samples == b.equality_samples &&
           a.min_margin == b.min_margin && a.argmin_index == b.argmin_index &&
           a.argmin_vector.entries().size() == b.argmin_vector.entries().size() &&
           std::equal(a.argmin_vector.entries().begin(), a.argmin_vector.entries().end(),
                      b.argmin_vector.entries().begin()) &&
           a.violations == b.violations;
}

TEST(Sweep, Thm1NoViolations) {
    const auto r = run_sweep(thm1_spec(42));
    EXPECT_EQ(r.samples_total, 10000u);
    EXPECT_EQ(r.samples_applicable, 10000u);
    EXPECT_EQ(r.violations, 0u);
    EXPECT_GE(r.min_margin, kViolationThreshold);
    EXPECT_LE(r.argmin_vector.max(), 0.25);
}

TEST(Sweep, DeterministicAcrossThreadsAndRuns) {
    const auto one = run_sweep(thm1_spec(42), 1);
    EXPECT_TRUE(same_report(one, run_sweep(thm1_spec(42), 1)));
    EXPECT_TRUE(same_report(one, run_sweep(thm1_spec(42), 3)));
    EXPECT_TRUE(same_report(one, run_sweep(thm1_spec(42), 8)));
    EXPECT_FALSE(same_report(one, run_sweep(thm1_spec(43), 1)));
}

TEST(Sweep, Prop1MixedLengths) {
    SweepSpec s;
    s.bound = BoundId::prop1_chain;
    s.n_min = 2;
    s.n_max = 8;
    s.samples = 10000;
    s.seed = 5;
    const auto r = run_sweep(s, 4);
    EXPECT_EQ(r.samples_applicable, 10000u);
    EXPECT_EQ(r.violations, 0u);
    EXPECT_GE(r.argmin_vector.size(), 2u);
    EXPECT_LE(r.argmin_vector.size(), 8u);
}

TEST(Sweep, ConfigErrors) {
    SweepSpec s = thm1_spec(1);
    s.n_min = s.n_max = 3;  // cap 1/4 needs n >= 4
    EXPECT_THROW(run_sweep(s), ConfigError);
    s = thm1_spec(1);
    s.k = 2;
    EXPECT_THROW(run_sweep(s), ConfigError);
    s = thm1_spec(1);
    s.n_min = 10;
    s.n_max = 5;
    EXPECT_THROW(run_sweep(s), ConfigError);
    s = thm1_spec(1);
    s.bound = BoundId::thm3_partial;
    s.k = 6;
    EXPECT_THROW(run_sweep(s), ConfigError);
    s.experimental = true;
    s.samples = 100;
    s.n_min = s.n_max = 12;
    EXPECT_TRUE(run_sweep(s).experimental);
    s = thm1_spec(1);
    s.bound = BoundId::prop1_chain;
    s.cap_policy = CapPolicy::threshold;
    EXPECT_THROW(run_sweep(s), ConfigError);
    s.bound = BoundId::lemma_q;
    s.cap_policy = CapPolicy::none;
    EXPECT_THROW(run_sweep(s), ConfigError);
}

TEST(Sweep, ClaimsOnlyCountTheirOwnId) {
    SweepSpec s;
    s.bound = BoundId::claim_moment;
    s.k = 4;
    s.n_min = s.n_max = 12;
    s.samples = 2000;
    s.cap_policy = CapPolicy::threshold;
    s.seed = 9;
    const auto r = run_sweep(s, 2);
    EXPECT_EQ(r.samples_applicable, 2000u);
    EXPECT_EQ(r.violations, 0u);
}

}  // namespace
}  // namespace msindex
