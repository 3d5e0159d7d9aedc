#pragma once

// Exact integer combinatorics for the moment formulas. Everything here is
// computed in unsigned __int128 and converted to double at the call site;
// (2n-2p)! is the fastest-growing factor and caps the usable chaos order
// at n <= 12 (22! < 2^127, and all intermediate products stay exact).

#include <cstdint>
#include <stdexcept>

namespace wchaos {

using u128 = unsigned __int128;

// Largest argument for which n! fits in u128 with headroom for products.
inline constexpr int kMaxFactorialArg = 33;

inline u128 factorial_u128(int n) {
    if (n < 0 || n > kMaxFactorialArg)
        throw std::overflow_error("factorial: argument out of exact range [0,33]");
    u128 r = 1;
    for (int i = 2; i <= n; ++i) r *= static_cast<u128>(i);
    return r;
}

inline double factorial(int n) { return static_cast<double>(factorial_u128(n)); }

// Exact binomial via the multiplicative form; intermediate products are exact
// because each prefix is itself a binomial times a factorial.
inline u128 binomial_u128(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    u128 r = 1;
    for (int i = 1; i <= k; ++i) {
        r *= static_cast<u128>(n - k + i);
        r /= static_cast<u128>(i);
    }
    return r;
}

inline double binomial(int n, int k) { return static_cast<double>(binomial_u128(n, k)); }

// (m-1)!! for even m >= 0: the Gaussian moment E[Z^m]; odd m handled by caller.
inline double gaussian_even_moment(int m) {
    if (m < 0 || m % 2 != 0)
        throw std::invalid_argument("gaussian_even_moment: m must be even and >= 0");
    double r = 1.0;
    for (int t = m - 1; t > 1; t -= 2) r *= static_cast<double>(t);
    return r;
}

}  // namespace wchaos
