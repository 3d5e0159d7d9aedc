#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "test_support.hpp"
#include "wchaos/families.hpp"
#include "wchaos/gamma_law.hpp"
#include "wchaos/montecarlo.hpp"

using namespace wchaos;
using wtest::random_kernel;

TEST_CASE("gaussian stream: determinism and marginals") {
    const MCConfig cfg{123, 1'000'000, 1};
    CHECK(gaussian_stream(cfg, 17, 5) == gaussian_stream(cfg, 17, 5));
    CHECK(gaussian_stream(cfg, 17, 5) != gaussian_stream(cfg, 18, 5));

    std::vector<double> xs(static_cast<std::size_t>(cfg.samples));
    for (long long i = 0; i < cfg.samples; ++i)
        xs[static_cast<std::size_t>(i)] = gaussian_stream(cfg, i, 1)[0];
    const SampleSummary s = summarize(xs);
    CHECK(std::abs(s.mean.value) < 4.0 * s.mean.stderr_);
    CHECK(std::abs(s.var.value - 1.0) < 4.0 * s.var.stderr_);
    CHECK(std::abs(lag1_autocorrelation(xs)) < 4.0 / std::sqrt(double(cfg.samples)));

    // batch stderr of an i.i.d. mean is 1/sqrt(N) up to noise
    CHECK(s.mean.stderr_ > 0.5 / std::sqrt(double(cfg.samples)));
    CHECK(s.mean.stderr_ < 2.0 / std::sqrt(double(cfg.samples)));
}

TEST_CASE("moment estimates track closed forms") {
    const ChaosElement F = make_chaos(fixed_point(1));
    const SampleSummary s = estimate_moments(F, {2024, 1'000'000, 1});
    CHECK(std::abs(s.var.value - 2.0) < 5.0 * s.var.stderr_);
    CHECK(std::abs(s.m3_hat.value - 8.0) < 5.0 * s.m3_hat.stderr_);

    const SampleSummary g = estimate_moments(make_chaos(basis_vector(1, 1)), {7, 200'000, 1});
    CHECK(std::abs(g.m4_hat.value - 3.0) < 5.0 * g.m4_hat.stderr_);

    const SampleSummary p =
        estimate_moments(make_chaos(prop41_family(2, 1, 8)), {11, 100'000, 1});
    CHECK(std::abs(p.var.value - 2.5) < 5.0 * p.var.stderr_);
}

TEST_CASE("summarize input validation") {
    CHECK_THROWS_AS(summarize(std::vector<double>(100, 1.0)), std::invalid_argument);
}

TEST_CASE("reproducibility across worker counts") {
    const ChaosElement F = make_chaos(prop41_family(2, 1, 4));
    const auto one = sample_chaos(F, {555, 40'000, 1});
    const auto four = sample_chaos(F, {555, 40'000, 4});
    CHECK(one == four);  // bit-identical, not approximately equal

    const SampleSummary s1 = summarize(one), s4 = summarize(four);
    CHECK(s1.mean.value == s4.mean.value);
    CHECK(s1.var.value == s4.var.value);
    CHECK(s1.m3_hat.value == s4.m3_hat.value);
    CHECK(s1.m4_hat.value == s4.m4_hat.value);
    CHECK(s1.var.stderr_ == s4.var.stderr_);
}

TEST_CASE("KS self-calibration: target samples stay under the 1% threshold") {
    const long N = 100'000;
    const GammaLimitLaw law(1.0);
    int ok = 0;
    for (int rep = 0; rep < 100; ++rep) {
        CounterRng rng(static_cast<std::uint64_t>(rep), 9001);
        std::vector<double> xs(static_cast<std::size_t>(N));
        for (auto& x : xs) x = law.sample_gamma_rep(rng);
        const double ks = ks_statistic(xs, [&](double v) { return law.cdf(v); });
        ok += (ks < ks_threshold(kKsQuantile01, N)) ? 1 : 0;
    }
    CHECK(ok >= 99);
}

TEST_CASE("KS of constant samples hits the analytic value") {
    const GammaLimitLaw law(1.0);
    const std::vector<double> xs(1000, 0.3);
    const double c = law.cdf(0.3);
    CHECK(ks_statistic(xs, [&](double v) { return law.cdf(v); }) ==
          Catch::Approx(std::max(c, 1.0 - c)).margin(1e-12));
}

TEST_CASE("two-sample KS separates laws") {
    const long N = 50'000;
    const GammaLimitLaw law(2.0);
    CounterRng r1(5, 1), r2(6, 2), r3(7, 3);
    std::vector<double> a(N), b(N), c(N);
    for (auto& x : a) x = law.sample_gamma_rep(r1);
    for (auto& x : b) x = law.sample_gamma_rep(r2);
    for (auto& x : c) x = law.sample_gamma_rep(r3) + 0.25;  // shifted law
    CHECK(ks_two_sample(a, b) < ks_two_sample_threshold(kKsQuantile01, N, N));
    CHECK(ks_two_sample(a, c) > 2.0 * ks_two_sample_threshold(kKsQuantile01, N, N));
}

TEST_CASE("empirical CF concentrates on the target CF") {
    const long N = 100'000;
    const GammaLimitLaw law(1.0);
    CounterRng rng(31, 0);
    std::vector<double> xs(static_cast<std::size_t>(N));
    for (auto& x : xs) x = law.sample_gamma_rep(rng);
    const std::vector<double> grid{-2.0, -1.0, 0.0, 1.0, 2.0};
    const double d = ecf_distance(xs, [&](double l) { return law.cf(l); }, grid);
    CHECK(d < 5.0 / std::sqrt(double(N)));
}

TEST_CASE("pathwise product and gradient expansions at sampled points") {
    std::mt19937_64 gen(77);
    const MCConfig cfg{404, 1000, 1};
    for (int rep = 0; rep < 3; ++rep) {
        const int n = 2 + rep;
        const ChaosElement F = make_chaos(random_kernel(gen, n, 3, 8));
        const ChaosExpansion sq = square_expansion(F);
        const ChaosExpansion gr = gradsq_expansion(F);
        for (long long i = 0; i < cfg.samples; ++i) {
            const GaussPoint z = gaussian_stream(cfg, i, 3);
            const double v = evaluate(F, z);
            CHECK(std::abs(v * v - evaluate(sq, z)) < 1e-8 * (1.0 + v * v));
            const double g = grad_sq(F, z);
            CHECK(std::abs(g - evaluate(gr, z)) < 1e-8 * (1.0 + std::abs(g)));
        }
    }
}

TEST_CASE("distance covariance: signal vs independence") {
    const std::size_t N = 4000;
    CounterRng rng(8, 8);
    std::vector<double> x(N), y(N), z(N);
    for (std::size_t i = 0; i < N; ++i) {
        x[i] = rng.normal();
        y[i] = rng.normal();
        z[i] = x[i] * x[i] + 0.1 * rng.normal();  // nonlinear dependence
    }
    const double indep = distance_covariance(x, y);
    const double dep = distance_covariance(x, z);
    CHECK(dep > 10.0 * indep);

    // shifted-pairs trick decorrelates a dependent pair: baseline comparator
    std::vector<double> zs(z.begin() + 1, z.end());
    zs.push_back(z.front());
    CHECK(distance_covariance(x, zs) < 0.3 * dep);
}
