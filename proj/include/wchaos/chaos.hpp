#pragma once

// Semantics of the multiple integral I_n(f) over H = R^d. The evaluation map
//   I_n(f)(z) = sum_alpha (n!/alpha!) f_alpha prod_j He_{a_j}(z_j)
// (probabilists' Hermite polynomials, a_j = occurrences of j in alpha) is the
// unique linear isometry with I_1(h) = <h,z> and E[I_n(f) I_m(g)] =
// delta_{nm} n! <f,g>; it is this artifact's definition of I_n. All moment
// identities below are closed forms in contraction norms and are accepted
// against the independent polynomial oracle, never against themselves.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "wchaos/sym_tensor.hpp"

namespace wchaos {

// Probabilists' Hermite: He_0 = 1, He_1 = x, He_{m+1} = x He_m - m He_{m-1}.
inline double hermite(int m, double x) {
    if (m < 0) throw std::invalid_argument("hermite: m < 0");
    double h0 = 1.0, h1 = x;
    if (m == 0) return h0;
    for (int j = 2; j <= m; ++j) {
        const double h2 = x * h1 - (j - 1) * h0;
        h0 = h1;
        h1 = h2;
    }
    return h1;
}

struct ChaosElement {
    int order = 1;       // n >= 1
    SymTensor kernel;    // order n, dim d
};

using GaussPoint = std::vector<double>;

inline ChaosElement make_chaos(const SymTensor& f) {
    if (f.order < 1) throw std::invalid_argument("make_chaos: order must be >= 1");
    return ChaosElement{f.order, f};
}

namespace detail {

// He_m(z_j) for all coordinates j and all m <= max_order, one column per j.
inline std::vector<std::vector<double>> hermite_table(const GaussPoint& z, int max_order) {
    std::vector<std::vector<double>> t(z.size());
    for (std::size_t j = 0; j < z.size(); ++j) {
        auto& col = t[j];
        col.resize(static_cast<std::size_t>(max_order) + 1);
        col[0] = 1.0;
        if (max_order >= 1) col[1] = z[j];
        for (int m = 2; m <= max_order; ++m)
            col[m] = z[j] * col[m - 1] - (m - 1) * col[m - 2];
    }
    return t;
}

inline double evaluate_with_table(const SymTensor& f,
                                  const std::vector<std::vector<double>>& he) {
    double s = 0.0;
    for (const auto& [alpha, c] : f.entries) {
        double term = c * orbit_count(alpha);
        std::size_t i = 0;
        while (i < alpha.size()) {
            std::size_t j = i;
            while (j < alpha.size() && alpha[j] == alpha[i]) ++j;
            term *= he[static_cast<std::size_t>(alpha[i] - 1)][j - i];
            i = j;
        }
        s += term;
    }
    return s;
}

}  // namespace detail

inline double evaluate(const ChaosElement& F, const GaussPoint& z) {
    if (static_cast<int>(z.size()) != F.kernel.dim)
        throw std::invalid_argument("evaluate: point dim mismatch");
    return detail::evaluate_with_table(F.kernel, detail::hermite_table(z, F.order));
}

// The order-(n-1) slice f(., e_j): slice_beta = f_{sort(beta + j)}; the
// canonical coefficient carries over unchanged (occupancy counts are
// absorbed by the n!/alpha! weights, which is what makes
// D_j I_n(f) = n I_{n-1}(f(., e_j)) hold term by term).
inline SymTensor kernel_slice(const SymTensor& f, int j) {
    SymTensor out = zero_tensor(f.order - 1, f.dim);
    for (const auto& [alpha, c] : f.entries) {
        auto it = std::lower_bound(alpha.begin(), alpha.end(), static_cast<std::int32_t>(j));
        if (it == alpha.end() || *it != j) continue;
        MultiIndex beta;
        beta.reserve(alpha.size() - 1);
        beta.insert(beta.end(), alpha.begin(), it);
        beta.insert(beta.end(), std::next(it), alpha.end());
        out.entries.emplace(std::move(beta), c);
    }
    return out;
}

// ||D I_n(f)(z)||^2 = sum_j [n I_{n-1}(f(., e_j))(z)]^2, the squared
// Euclidean gradient of evaluate in z.
inline double grad_sq(const ChaosElement& F, const GaussPoint& z) {
    if (static_cast<int>(z.size()) != F.kernel.dim)
        throw std::invalid_argument("grad_sq: point dim mismatch");
    const auto he = detail::hermite_table(z, F.order);
    const double n = F.order;
    double s = 0.0;
    for (int j = 1; j <= F.kernel.dim; ++j) {
        const double dj = n * detail::evaluate_with_table(kernel_slice(F.kernel, j), he);
        s += dj * dj;
    }
    return s;
}

// E[I_n(f)^2] = n! ||f||^2.
inline double moment2(const ChaosElement& F) {
    return factorial(F.order) * norm2_sym(F.kernel);
}

// E[I_n(f)^3] = n! (n/2)! C(n, n/2)^2 <f, f (x~)_{n/2} f>; identically zero
// for odd n (odd-order integrals have symmetric laws' odd moments vanish).
inline double moment3(const ChaosElement& F) {
    const int n = F.order;
    if (n % 2 != 0) return 0.0;
    const SymTensor half = sym_contract(F.kernel, F.kernel, n / 2);
    return factorial(n) * factorial(n / 2) * binomial(n, n / 2) * binomial(n, n / 2) *
           inner(F.kernel, half);
}

// E[I_n(f)^4] = 3 (n! ||f||^2)^2
//   + (3/n) sum_{p=1}^{n-1} n^2 (p-1)! C(n-1,p-1)^2 p! C(n,p)^2 (2n-2p)! ||f (x~)_p f||^2.
inline double moment4(const ChaosElement& F) {
    const int n = F.order;
    const double m2 = moment2(F);
    double sum = 0.0;
    for (int p = 1; p <= n - 1; ++p) {
        const SymTensor sp = sym_contract(F.kernel, F.kernel, p);
        const double w = static_cast<double>(n) * n * factorial(p - 1) *
                         binomial(n - 1, p - 1) * binomial(n - 1, p - 1) * factorial(p) *
                         binomial(n, p) * binomial(n, p) * factorial(2 * n - 2 * p);
        sum += w * norm2_sym(sp);
    }
    return 3.0 * m2 * m2 + (3.0 / n) * sum;
}

// E[I_n(f) ||D I_n(f)||^2] = n^2 (n/2-1)! C(n-1, n/2-1)^2 n! <f (x~)_{n/2} f, f>,
// n even (zero for odd n by symmetry of the law).
inline double e_F_gradsq(const ChaosElement& F) {
    const int n = F.order;
    if (n % 2 != 0) return 0.0;
    const SymTensor half = sym_contract(F.kernel, F.kernel, n / 2);
    return static_cast<double>(n) * n * factorial(n / 2 - 1) * binomial(n - 1, n / 2 - 1) *
           binomial(n - 1, n / 2 - 1) * factorial(n) * inner(half, F.kernel);
}

// E ||D I_n(f)||^4 = n^4 sum_{p=1}^{n} (p-1)!^2 C(n-1,p-1)^4 (2n-2p)! ||f (x~)_p f||^2.
// The p = n term degenerates to (n-1)!^2 <f,f>^2, i.e. (E||DF||^2)^2.
inline double e_gradsq_sq(const ChaosElement& F) {
    const int n = F.order;
    double sum = 0.0;
    for (int p = 1; p <= n; ++p) {
        const double norm2 = (p == n)
                                 ? norm2_sym(F.kernel) * norm2_sym(F.kernel)
                                 : norm2_sym(sym_contract(F.kernel, F.kernel, p));
        const double b = binomial(n - 1, p - 1);
        sum += factorial(p - 1) * factorial(p - 1) * b * b * b * b *
               factorial(2 * n - 2 * p) * norm2;
    }
    const double n4 = static_cast<double>(n) * n * static_cast<double>(n) * n;
    return n4 * sum;
}

// c_n = 1/((n/2)! C(n-1, n/2-1)^2) = 4/((n/2)! C(n, n/2)^2); both closed
// forms are evaluated and must agree exactly.
inline double c_const(int n) {
    if (n < 2 || n % 2 != 0) throw std::invalid_argument("c_const: n must be even, >= 2");
    const double b1 = binomial(n - 1, n / 2 - 1);
    const double b2 = binomial(n, n / 2);
    const double v1 = 1.0 / (factorial(n / 2) * b1 * b1);
    const double v2 = 4.0 / (factorial(n / 2) * b2 * b2);
    if (v1 != v2) throw std::logic_error("c_const: the two closed forms disagree");
    return v1;
}

// One term of a chaos expansion: coefficient * I_{order}(kernel).
struct ChaosExpansion {
    double constant = 0.0;
    std::vector<ChaosElement> terms;  // coefficients folded into the kernels
};

inline double evaluate(const ChaosExpansion& e, const GaussPoint& z) {
    double s = e.constant;
    for (const auto& t : e.terms) s += evaluate(t, z);
    return s;
}

// I_n(f)^2 = n! ||f||^2 + sum_{p=0}^{n-1} p! C(n,p)^2 I_{2(n-p)}(f (x~)_p f);
// a pathwise identity, tested at sampled points.
inline ChaosExpansion square_expansion(const ChaosElement& F) {
    const int n = F.order;
    ChaosExpansion out;
    out.constant = moment2(F);
    for (int p = 0; p <= n - 1; ++p) {
        const double w = factorial(p) * binomial(n, p) * binomial(n, p);
        SymTensor kern = scale(w, sym_contract(F.kernel, F.kernel, p));
        out.terms.push_back(ChaosElement{2 * (n - p), std::move(kern)});
    }
    return out;
}

// ||D I_n(f)||^2 = n n! ||f||^2
//   + n^2 sum_{p=1}^{n-1} (p-1)! C(n-1,p-1)^2 I_{2(n-p)}(f (x~)_p f).
inline ChaosExpansion gradsq_expansion(const ChaosElement& F) {
    const int n = F.order;
    ChaosExpansion out;
    out.constant = n * moment2(F);
    for (int p = 1; p <= n - 1; ++p) {
        const double b = binomial(n - 1, p - 1);
        const double w = static_cast<double>(n) * n * factorial(p - 1) * b * b;
        SymTensor kern = scale(w, sym_contract(F.kernel, F.kernel, p));
        out.terms.push_back(ChaosElement{2 * (n - p), std::move(kern)});
    }
    return out;
}

// E(||DF||^2 - 2nF - 2n nu)^2 assembled from closed-form pieces:
//   E||DF||^4 - 4n E[F ||DF||^2] + 4n^2 E[F^2] + 4n^2 nu^2 - 4n nu E||DF||^2,
// with E||DF||^2 = n E[F^2] and E[F] = 0. Nonnegative by construction.
inline double v_statistic(const ChaosElement& F, double nu) {
    if (nu <= 0.0) throw std::invalid_argument("v_statistic: nu must be > 0");
    const int n = F.order;
    if (n % 2 != 0) throw std::invalid_argument("v_statistic: order must be even");
    const double m2 = moment2(F);
    return e_gradsq_sq(F) - 4.0 * n * e_F_gradsq(F) + 4.0 * n * n * m2 +
           4.0 * n * n * nu * nu - 4.0 * n * nu * (n * m2);
}

}  // namespace wchaos
