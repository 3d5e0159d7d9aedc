#pragma once

// The limit law F(nu) = 2 G(nu/2) - nu, G(a) ~ Gamma(shape a, scale 1):
// support (-nu, inf), mean 0, variance 2 nu; a centered chi-square with nu
// degrees of freedom when nu is an integer. Characteristic function
//   phi(l) = (e^{-il} / sqrt(1-2il))^nu
// (principal branch; 1-2il never crosses the cut for real l), satisfying
//   (1-2il) phi'(l) + 2 l nu phi(l) = 0,  phi(0) = 1.

#include <cmath>
#include <complex>
#include <stdexcept>

#include "wchaos/rng.hpp"

namespace wchaos {

struct LawMoments {
    double m1, m2, m3, m4;
};

// Regularized lower incomplete gamma P(a, x), |error| ~ 1e-14: power series
// on x < a, Lentz continued fraction for Q(a, x) on x >= a.
inline double regularized_gamma_p(double a, double x) {
    if (a <= 0.0) throw std::invalid_argument("regularized_gamma_p: a must be > 0");
    if (x <= 0.0) return 0.0;
    const double lg = std::lgamma(a);
    if (x < a) {
        // P(a,x) = x^a e^-x / Gamma(a) * sum_{k>=0} x^k / (a (a+1) ... (a+k))
        double term = 1.0 / a, sum = term;
        for (int k = 1; k < 10000; ++k) {
            term *= x / (a + k);
            sum += term;
            if (std::abs(term) < std::abs(sum) * 1e-17) break;
        }
        return sum * std::exp(-x + a * std::log(x) - lg);
    }
    // Q(a,x) = x^a e^-x / Gamma(a) * 1/(x+1-a- 1(1-a)/(x+3-a- 2(2-a)/...))
    const double tiny = 1e-300;
    double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i < 10000; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    const double q = h * std::exp(-x + a * std::log(x) - lg);
    return 1.0 - q;
}

class GammaLimitLaw {
  public:
    explicit GammaLimitLaw(double nu) : nu_(nu) {
        if (!(nu > 0.0)) throw std::invalid_argument("GammaLimitLaw: nu must be > 0");
    }

    double nu() const { return nu_; }

    LawMoments moments() const {
        return {0.0, 2.0 * nu_, 8.0 * nu_, 12.0 * nu_ * nu_ + 48.0 * nu_};
    }

    std::complex<double> cf(double lambda) const {
        const std::complex<double> i(0.0, 1.0);
        // exp(nu (-il - log(1-2il)/2)), principal log
        return std::exp(nu_ * (-i * lambda - 0.5 * std::log(1.0 - 2.0 * i * lambda)));
    }

    // phi'(l) = -2 l nu phi(l) / (1 - 2 i l), by differentiating the exponent.
    std::complex<double> cf_derivative(double lambda) const {
        const std::complex<double> i(0.0, 1.0);
        return -2.0 * lambda * nu_ * cf(lambda) / (1.0 - 2.0 * i * lambda);
    }

    std::complex<double> ode_residual(double lambda) const {
        const std::complex<double> i(0.0, 1.0);
        return (1.0 - 2.0 * i * lambda) * cf_derivative(lambda) + 2.0 * lambda * nu_ * cf(lambda);
    }

    // F = 2G - nu with G ~ Gamma(nu/2, 1): cdf(x) = P(nu/2, (x+nu)/2).
    double cdf(double x) const {
        if (x <= -nu_) return 0.0;
        return regularized_gamma_p(nu_ / 2.0, (x + nu_) / 2.0);
    }

    double density(double x) const {
        if (x <= -nu_) return 0.0;
        const double a = nu_ / 2.0, t = (x + nu_) / 2.0;
        return 0.5 * std::exp((a - 1.0) * std::log(t) - t - std::lgamma(a));
    }

    // Draw via the Gamma representation: 2 * Gamma(nu/2) - nu. Marsaglia-Tsang
    // squeeze for shape >= 1; shapes < 1 are boosted by one and corrected with
    // the U^{1/a} factor. Consumes a variable number of rng draws (rejection).
    double sample_gamma_rep(CounterRng& rng) const {
        const double a = nu_ / 2.0;
        double boost = 1.0;
        double shape = a;
        if (shape < 1.0) {
            boost = std::pow(rng.uniform01(), 1.0 / a);
            shape += 1.0;
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = rng.normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = rng.uniform01();
            if (u < 1.0 - 0.0331 * x * x * x * x) return 2.0 * boost * d * v - nu_;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v)))
                return 2.0 * boost * d * v - nu_;
        }
    }

    // Draw via the chi-square representation sum_{i<=nu} (N_i^2 - 1);
    // integer nu only.
    double sample_chisq_rep(CounterRng& rng) const {
        const double r = std::round(nu_);
        if (std::abs(nu_ - r) > 1e-12 || r < 1.0)
            throw std::invalid_argument("sample_chisq_rep: nu must be a positive integer");
        double s = 0.0;
        for (long i = 0; i < static_cast<long>(r); ++i) {
            const double z = rng.normal();
            s += z * z - 1.0;
        }
        return s;
    }

  private:
    double nu_;
};

}  // namespace wchaos
