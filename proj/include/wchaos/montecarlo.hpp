#pragma once

// Seeded, reproducible, parallelizable sampling and statistics. The
// reproducibility contract: every sampled value is a pure function of
// (seed, sample index), workers only partition the index range, and all
// reductions run in a fixed order over the materialized sample vector --
// so results are bit-identical for any worker count.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <future>
#include <stdexcept>
#include <vector>

#include "wchaos/chaos.hpp"
#include "wchaos/rng.hpp"

namespace wchaos {

struct MCConfig {
    std::uint64_t seed = 0;
    long long samples = 100000;
    int workers = 1;
};

struct Estimate {
    double value = 0.0;
    double stderr_ = 0.0;
};

struct SampleSummary {
    Estimate mean, var, m3_hat, m4_hat;  // central moments of order 1,2,3,4
    long long n = 0;
};

// Asymptotic one-sample Kolmogorov-Smirnov thresholds K_alpha / sqrt(N).
inline constexpr double kKsQuantile05 = 1.358;
inline constexpr double kKsQuantile01 = 1.628;

inline double ks_threshold(double k_alpha, long long n) {
    return k_alpha / std::sqrt(static_cast<double>(n));
}

inline double ks_two_sample_threshold(double k_alpha, long long n, long long m) {
    return k_alpha * std::sqrt((static_cast<double>(n) + static_cast<double>(m)) /
                               (static_cast<double>(n) * static_cast<double>(m)));
}

namespace detail {

// Fill out[i] = fn(i) for i in [lo, hi) with `workers` async tasks over a
// midpoint-split tree; identical output for any worker count by construction.
inline void parallel_fill(std::vector<double>& out, long long lo, long long hi, int workers,
                          const std::function<double(long long)>& fn) {
    if (workers <= 1 || hi - lo < 2048) {
        for (long long i = lo; i < hi; ++i) out[static_cast<std::size_t>(i)] = fn(i);
        return;
    }
    const long long mid = lo + (hi - lo) / 2;
    auto right = std::async(std::launch::async, [&] {
        parallel_fill(out, mid, hi, workers - workers / 2, fn);
    });
    parallel_fill(out, lo, mid, workers / 2, fn);
    right.get();
}

// Pairwise (tree) summation in fixed index order: deterministic and
// rounding-stable regardless of how the samples were produced.
inline double pairwise_sum(const double* x, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += x[i];
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(x, half) + pairwise_sum(x + half, n - half);
}

inline double pairwise_sum(const std::vector<double>& x) {
    return x.empty() ? 0.0 : pairwise_sum(x.data(), x.size());
}

}  // namespace detail

// One standard-normal point per sample index; stream = index.
inline GaussPoint gaussian_stream(const MCConfig& cfg, long long index, int dim) {
    CounterRng rng(cfg.seed, static_cast<std::uint64_t>(index));
    GaussPoint z(static_cast<std::size_t>(dim));
    for (auto& v : z) v = rng.normal();
    return z;
}

// Materialize fn(index) for index in [0, N).
inline std::vector<double> sample_indexed(const MCConfig& cfg,
                                          const std::function<double(long long)>& fn) {
    if (cfg.samples < 1) throw std::invalid_argument("sample_indexed: samples must be >= 1");
    if (cfg.workers < 1) throw std::invalid_argument("sample_indexed: workers must be >= 1");
    std::vector<double> out(static_cast<std::size_t>(cfg.samples));
    detail::parallel_fill(out, 0, cfg.samples, cfg.workers, fn);
    return out;
}

// Draws of I_n(f) at i.i.d. Gaussian points.
inline std::vector<double> sample_chaos(const ChaosElement& F, const MCConfig& cfg) {
    return sample_indexed(cfg, [&](long long i) {
        return evaluate(F, gaussian_stream(cfg, i, F.kernel.dim));
    });
}

// Central-moment estimates with batch-means standard errors: the sample is
// cut into kBatches contiguous index blocks, the statistic is computed per
// block, and stderr = sd(block values)/sqrt(B). Deterministic given
// (seed, N) and independent of worker count.
inline constexpr int kBatches = 128;

inline SampleSummary summarize(const std::vector<double>& xs) {
    const long long n = static_cast<long long>(xs.size());
    if (n < 2 * kBatches)
        throw std::invalid_argument("summarize: need at least 2*128 samples");
    SampleSummary s;
    s.n = n;

    const double mean = detail::pairwise_sum(xs) / static_cast<double>(n);
    std::vector<double> c2(xs.size()), c3(xs.size()), c4(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double d = xs[i] - mean;
        c2[i] = d * d;
        c3[i] = d * d * d;
        c4[i] = d * d * d * d;
    }
    s.mean.value = mean;
    s.var.value = detail::pairwise_sum(c2) / static_cast<double>(n);
    s.m3_hat.value = detail::pairwise_sum(c3) / static_cast<double>(n);
    s.m4_hat.value = detail::pairwise_sum(c4) / static_cast<double>(n);

    // Batch means per statistic (each batch centered at its own mean).
    std::vector<double> bm(kBatches), bv(kBatches), b3(kBatches), b4(kBatches);
    for (int b = 0; b < kBatches; ++b) {
        const std::size_t lo = static_cast<std::size_t>(b) * xs.size() / kBatches;
        const std::size_t hi = static_cast<std::size_t>(b + 1) * xs.size() / kBatches;
        const std::size_t m = hi - lo;
        const double bmean = detail::pairwise_sum(xs.data() + lo, m) / static_cast<double>(m);
        double s2 = 0.0, s3 = 0.0, s4 = 0.0;
        for (std::size_t i = lo; i < hi; ++i) {
            const double d = xs[i] - bmean;
            s2 += d * d;
            s3 += d * d * d;
            s4 += d * d * d * d;
        }
        bm[b] = bmean;
        bv[b] = s2 / static_cast<double>(m);
        b3[b] = s3 / static_cast<double>(m);
        b4[b] = s4 / static_cast<double>(m);
    }
    auto batch_stderr = [](const std::vector<double>& v) {
        double mean = 0.0;
        for (double x : v) mean += x;
        mean /= static_cast<double>(v.size());
        double ss = 0.0;
        for (double x : v) ss += (x - mean) * (x - mean);
        return std::sqrt(ss / (static_cast<double>(v.size()) - 1.0)) /
               std::sqrt(static_cast<double>(v.size()));
    };
    s.mean.stderr_ = batch_stderr(bm);
    s.var.stderr_ = batch_stderr(bv);
    s.m3_hat.stderr_ = batch_stderr(b3);
    s.m4_hat.stderr_ = batch_stderr(b4);
    return s;
}

inline SampleSummary estimate_moments(const ChaosElement& F, const MCConfig& cfg) {
    return summarize(sample_chaos(F, cfg));
}

// One-sample KS statistic sup_x |ECDF(x) - cdf(x)|.
inline double ks_statistic(std::vector<double> samples,
                           const std::function<double(double)>& cdf) {
    if (samples.empty()) throw std::invalid_argument("ks_statistic: empty sample");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double c = cdf(samples[i]);
        d = std::max(d, std::max(c - static_cast<double>(i) / n,
                                 static_cast<double>(i + 1) / n - c));
    }
    return d;
}

// Two-sample KS statistic between empirical CDFs.
inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j])
            ++i;
        else
            ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / static_cast<double>(a.size()) -
                                 static_cast<double>(j) / static_cast<double>(b.size())));
    }
    return d;
}

// max over the grid of |ECF(lambda) - cf(lambda)|.
inline double ecf_distance(const std::vector<double>& samples,
                           const std::function<std::complex<double>(double)>& cf,
                           const std::vector<double>& lambda_grid) {
    if (samples.empty() || lambda_grid.empty())
        throw std::invalid_argument("ecf_distance: empty input");
    double worst = 0.0;
    for (double l : lambda_grid) {
        std::complex<double> acc(0.0, 0.0);
        for (double x : samples) acc += std::complex<double>(std::cos(l * x), std::sin(l * x));
        acc /= static_cast<double>(samples.size());
        worst = std::max(worst, std::abs(acc - cf(l)));
    }
    return worst;
}

// Sample distance covariance (Szekely): dCov^2 = S1 + S2 - 2 S3 over the
// double-centered absolute-difference matrices, computed from row sums
// without materializing the N x N matrices. O(N^2) time, O(N) memory.
inline double distance_covariance(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.empty())
        throw std::invalid_argument("distance_covariance: bad input");
    const std::size_t n = x.size();
    const double dn = static_cast<double>(n);
    std::vector<double> rx(n, 0.0), ry(n, 0.0);
    double s1 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double a = std::abs(x[i] - x[j]);
            const double b = std::abs(y[i] - y[j]);
            rx[i] += a;
            rx[j] += a;
            ry[i] += b;
            ry[j] += b;
            s1 += 2.0 * a * b;
        }
    }
    s1 /= dn * dn;
    double sx = 0.0, sy = 0.0, s3 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += rx[i];
        sy += ry[i];
        s3 += rx[i] * ry[i];
    }
    const double s2 = (sx / (dn * dn)) * (sy / (dn * dn));
    s3 /= dn * dn * dn;
    const double v = s1 + s2 - 2.0 * s3;
    return std::sqrt(std::max(0.0, v));
}

inline double lag1_autocorrelation(const std::vector<double>& x) {
    if (x.size() < 3) throw std::invalid_argument("lag1_autocorrelation: too few samples");
    const double n = static_cast<double>(x.size());
    const double mean = detail::pairwise_sum(x) / n;
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - mean;
        den += d * d;
        if (i + 1 < x.size()) num += d * (x[i + 1] - mean);
    }
    return num / den;
}

}  // namespace wchaos
