#pragma once

// Kernel families driving the verification studies.
//
// block family ("prop41"): g_k^i = (m! k)^{-1/2} sum_{j in B_i} e_j^{(x)m}
// over nu disjoint blocks B_i of size k (dim = nu k), f_k = sum_i g^i (x~) g^i.
// Exactly per k: m! <g^i, g^j> = delta_ij and ||g^i (x)_p g^i||^2 = 1/(m!^2 k)
// for 1 <= p <= m-1, so I_{2m}(f_k) converges in law to F(nu).
//
// clt family: (n! k)^{-1/2} sum_{j<=k} e_j^{(x)n}, unit variance, a Gaussian-
// limit negative control. fixed_point(nu) realizes F(nu) exactly in chaos 2.

#include <stdexcept>

#include "wchaos/sym_tensor.hpp"

namespace wchaos {

// The block constituent g_k^i (blocks are 0-indexed).
inline SymTensor prop41_block(int m, int nu, int k, int block) {
    if (m < 2) throw std::invalid_argument("prop41: m must be >= 2");
    if (nu < 1 || k < 1 || block < 0 || block >= nu)
        throw std::invalid_argument("prop41: bad nu/k/block");
    SymTensor g = zero_tensor(m, nu * k);
    const double c = 1.0 / std::sqrt(factorial(m) * k);
    for (int j = block * k + 1; j <= (block + 1) * k; ++j)
        g.entries.emplace(MultiIndex(static_cast<std::size_t>(m), j), c);
    return g;
}

inline SymTensor prop41_family(int m, int nu, int k) {
    SymTensor f = zero_tensor(2 * m, nu * k);
    for (int i = 0; i < nu; ++i) {
        const SymTensor g = prop41_block(m, nu, k, i);
        f = axpy(1.0, sym_tensor_product(g, g), f);
    }
    return f;
}

inline SymTensor clt_family(int n, int k) {
    if (n < 2 || k < 1) throw std::invalid_argument("clt_family: need n >= 2, k >= 1");
    SymTensor f = zero_tensor(n, k);
    const double c = 1.0 / std::sqrt(factorial(n) * k);
    for (int j = 1; j <= k; ++j)
        f.entries.emplace(MultiIndex(static_cast<std::size_t>(n), j), c);
    return f;
}

// sum_{i<=nu} e_i (x) e_i: I_2 of it has the law F(nu) exactly.
inline SymTensor fixed_point(int nu) {
    if (nu < 1) throw std::invalid_argument("fixed_point: nu must be >= 1");
    SymTensor f = zero_tensor(2, nu);
    for (int i = 1; i <= nu; ++i) f.entries.emplace(MultiIndex{i, i}, 1.0);
    return f;
}

// The rank-one kernel h (x) h with h = e1: every marginal diagnostic of the
// F(1) fixed point, but joint convergence with I_1(h) fails.
inline SymTensor rank_one_counterexample() {
    SymTensor f = zero_tensor(2, 1);
    f.entries.emplace(MultiIndex{1, 1}, 1.0);
    return f;
}

}  // namespace wchaos
