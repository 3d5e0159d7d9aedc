#pragma once

// Independent ground truth for every closed-form identity: expand I_n(f)
// as an explicit polynomial in the Gaussian coordinates and take exact
// expectations by moment factorization. Uses only the Hermite coefficient
// recurrence and polynomial arithmetic -- none of the contraction-based
// formulas it is used to check.

#include <vector>

#include "wchaos/chaos.hpp"
#include "wchaos/polynomial.hpp"

namespace wchaos {

// Integer coefficient vector of He_m: He_m(x) = sum_i coef[i] x^i, built from
// He_{m+1} = x He_m - m He_{m-1}. Exact in double well past m = 12.
inline std::vector<double> hermite_coefficients(int m) {
    std::vector<double> prev{1.0};         // He_0
    if (m == 0) return prev;
    std::vector<double> cur{0.0, 1.0};     // He_1
    for (int j = 1; j < m; ++j) {
        std::vector<double> next(cur.size() + 1, 0.0);
        for (std::size_t i = 0; i < cur.size(); ++i) next[i + 1] += cur[i];
        for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= j * prev[i];
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

// Expand the Hermite representation of I_n(f) into a plain polynomial.
inline Polynomial to_polynomial(const ChaosElement& F) {
    const int d = F.kernel.dim;
    long long budget = 0;
    Polynomial out = poly_zero(d);
    for (const auto& [alpha, c] : F.kernel.entries) {
        Polynomial term = poly_const(d, c * orbit_count(alpha));
        std::size_t i = 0;
        while (i < alpha.size()) {
            std::size_t j = i;
            while (j < alpha.size() && alpha[j] == alpha[i]) ++j;
            const int var = alpha[i] - 1;
            const auto coefs = hermite_coefficients(static_cast<int>(j - i));
            Polynomial he = poly_zero(d);
            for (std::size_t deg = 0; deg < coefs.size(); ++deg) {
                if (coefs[deg] == 0.0) continue;
                std::vector<std::int32_t> e(static_cast<std::size_t>(d), 0);
                e[static_cast<std::size_t>(var)] = static_cast<std::int32_t>(deg);
                poly_add_term(he, e, coefs[deg]);
            }
            term = poly_mul(term, he, budget);
            i = j;
        }
        out = poly_add(out, term);
    }
    return out;
}

// E[I_n(f)^k] by brute force; throws oracle_budget_error past the term budget.
inline double oracle_moment(const ChaosElement& F, int k) {
    if (k < 1) throw std::invalid_argument("oracle_moment: k must be >= 1");
    long long budget = 0;
    return gaussian_expectation(poly_pow(to_polynomial(F), k, budget));
}

// sum_j (d/dz_j P)^2 -- the polynomial of ||DF||^2.
inline Polynomial gradient_square_polynomial(const ChaosElement& F, long long& budget_used) {
    const Polynomial P = to_polynomial(F);
    Polynomial g = poly_zero(P.dim);
    for (int j = 0; j < P.dim; ++j) {
        const Polynomial dj = poly_deriv(P, j);
        g = poly_add(g, poly_mul(dj, dj, budget_used));
    }
    return g;
}

// E[F^s ||DF||^2] by brute force; s = 0 gives E||DF||^2.
inline double oracle_mixed(const ChaosElement& F, int s) {
    if (s < 0) throw std::invalid_argument("oracle_mixed: s must be >= 0");
    long long budget = 0;
    Polynomial g = gradient_square_polynomial(F, budget);
    if (s > 0) g = poly_mul(g, poly_pow(to_polynomial(F), s, budget), budget);
    return gaussian_expectation(g);
}

// E ||DF||^4 by brute force (used to accept the closed form).
inline double oracle_gradsq_sq(const ChaosElement& F) {
    long long budget = 0;
    const Polynomial g = gradient_square_polynomial(F, budget);
    return gaussian_expectation(poly_mul(g, g, budget));
}

}  // namespace wchaos
