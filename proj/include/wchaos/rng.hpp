#pragma once

// Counter-based RNG: a pure hash from (seed, stream, counter) to 64 random
// bits, so sample #i is a function of (seed, i) alone and any partition of
// the index range across workers produces bit-identical results. The hash is
// two rounds of the splitmix64 finalizer over a Weyl-sequence input; one
// round is already equidistribution-grade, the second decouples the stream
// and counter words.

#include <cmath>
#include <cstdint>

namespace wchaos {

namespace detail {
inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}
}  // namespace detail

class CounterRng {
  public:
    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : key_(detail::mix64(seed ^ (0xd1b54a32d192ed03ULL * stream)) ^ stream), ctr_(0) {}

    std::uint64_t next_u64() {
        const std::uint64_t z = key_ + 0x9e3779b97f4a7c15ULL * (++ctr_);
        return detail::mix64(detail::mix64(z));
    }

    // Uniform on the open interval (0,1): 53 random bits centered in their
    // bucket, so 0 and 1 are unreachable and log/quantile transforms are safe.
    double uniform01() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    double normal() { return normal_quantile(uniform01()); }

    // Inverse standard normal CDF (Wichura's PPND16 rational approximation,
    // |error| ~ 1e-16 over (0,1)); monotone in p, which keeps the
    // uniform -> normal map reproducible and branch-stable across platforms.
    static double normal_quantile(double p) {
        const double q = p - 0.5;
        if (q > -0.425 && q < 0.425) {
            const double r = 0.180625 - q * q;
            return q *
                   (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                         6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
                       1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
                     1.3314166789178437745e2) * r + 3.3871328727963666080e0) /
                   (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                         3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
                       5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
                     4.2313330701600911252e1) * r + 1.0);
        }
        double r = (q < 0.0) ? p : 1.0 - p;
        r = std::sqrt(-std::log(r));
        double x;
        if (r <= 5.0) {
            r -= 1.6;
            x = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                      2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
                    3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
                  4.63033784615654529590e0) * r + 1.42343711074968357734e0) /
                (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                      1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                    6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
                  2.05319162663775882187e0) * r + 1.0);
        } else {
            r -= 5.0;
            x = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                      1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                    2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
                  5.46378491116411436990e0) * r + 6.65790464350110377720e0) /
                (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                      1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                    1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
                  5.99832206555887937690e-1) * r + 1.0);
        }
        return (q < 0.0) ? -x : x;
    }

  private:
    std::uint64_t key_;
    std::uint64_t ctr_;
};

}  // namespace wchaos
