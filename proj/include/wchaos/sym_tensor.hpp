#pragma once

// Sparse symmetric tensor algebra over H = R^d with the standard basis.
//
// SymTensor models f in the n-fold symmetric power of H: one stored
// coefficient per canonical (sorted) multi-index, equal to the common value
// of f over the whole permutation orbit. BiTensor models a contraction
// f (x)_p g, an element of H^((a+b)) that is symmetric within its first a
// and last b slots separately but not across them. The empty index group
// (a = 0 or b = 0) is a length-0 MultiIndex, so full contractions come out
// as 0x0 BiTensors holding a single scalar entry.

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wchaos/multi_index.hpp"

namespace wchaos {

struct SymTensor {
    int order = 0;
    int dim = 1;
    std::map<MultiIndex, double> entries;  // canonical index -> orbit-common value
};

struct BiTensor {
    int left_order = 0;
    int right_order = 0;
    int dim = 1;
    std::map<std::pair<MultiIndex, MultiIndex>, double> entries;
};

namespace detail {

inline void check_same_shape(const SymTensor& f, const SymTensor& g, const char* who) {
    if (f.order != g.order)
        throw std::invalid_argument(std::string(who) + ": order mismatch");
    if (f.dim != g.dim) throw std::invalid_argument(std::string(who) + ": dim mismatch");
}

inline void prune_zeros(std::map<MultiIndex, double>& m) {
    for (auto it = m.begin(); it != m.end();)
        it = (it->second == 0.0) ? m.erase(it) : std::next(it);
}

}  // namespace detail

// Add c at a canonical index (validating), used by builders and IO.
inline void add_entry(SymTensor& f, const MultiIndex& idx, double c) {
    if (static_cast<int>(idx.size()) != f.order)
        throw std::invalid_argument("add_entry: index length != tensor order");
    if (!is_canonical(idx, f.dim))
        throw std::invalid_argument("add_entry: index not canonical or out of 1..dim");
    auto [it, fresh] = f.entries.emplace(idx, c);
    if (!fresh) it->second += c;
    if (it->second == 0.0) f.entries.erase(it);
}

inline SymTensor zero_tensor(int order, int dim) {
    if (order < 0 || dim < 1) throw std::invalid_argument("zero_tensor: bad shape");
    return SymTensor{order, dim, {}};
}

// Basis vector e_j as an order-1 tensor.
inline SymTensor basis_vector(int j, int dim) {
    SymTensor h = zero_tensor(1, dim);
    add_entry(h, {static_cast<std::int32_t>(j)}, 1.0);
    return h;
}

// <f,g> = sum_alpha mult(alpha) f_alpha g_alpha over the shared support.
inline double inner(const SymTensor& f, const SymTensor& g) {
    detail::check_same_shape(f, g, "inner");
    const auto& small = f.entries.size() <= g.entries.size() ? f : g;
    const auto& big = f.entries.size() <= g.entries.size() ? g : f;
    double s = 0.0;
    for (const auto& [a, c] : small.entries) {
        auto it = big.entries.find(a);
        if (it != big.entries.end()) s += orbit_count(a) * c * it->second;
    }
    return s;
}

inline double norm2_sym(const SymTensor& f) { return inner(f, f); }
inline double norm_sym(const SymTensor& f) { return std::sqrt(norm2_sym(f)); }

inline double norm2_bi(const BiTensor& t) {
    double s = 0.0;
    for (const auto& [key, c] : t.entries)
        s += orbit_count(key.first) * orbit_count(key.second) * c * c;
    return s;
}
inline double norm_bi(const BiTensor& t) { return std::sqrt(norm2_bi(t)); }

// <t,u> in H^(a+b) for two group-symmetric tensors with identical grouping.
inline double inner_bi(const BiTensor& t, const BiTensor& u) {
    if (t.left_order != u.left_order || t.right_order != u.right_order || t.dim != u.dim)
        throw std::invalid_argument("inner_bi: shape mismatch");
    const auto& small = t.entries.size() <= u.entries.size() ? t : u;
    const auto& big = t.entries.size() <= u.entries.size() ? u : t;
    double s = 0.0;
    for (const auto& [key, c] : small.entries) {
        auto it = big.entries.find(key);
        if (it != big.entries.end())
            s += orbit_count(key.first) * orbit_count(key.second) * c * it->second;
    }
    return s;
}

inline SymTensor scale(double a, const SymTensor& f) {
    SymTensor out = f;
    if (a == 0.0) {
        out.entries.clear();
        return out;
    }
    for (auto& [idx, c] : out.entries) c *= a;
    return out;
}

// a*f + g, canonical-form result.
inline SymTensor axpy(double a, const SymTensor& f, const SymTensor& g) {
    detail::check_same_shape(f, g, "axpy");
    SymTensor out = g;
    for (const auto& [idx, c] : f.entries) {
        auto [it, fresh] = out.entries.emplace(idx, a * c);
        if (!fresh) it->second += a * c;
    }
    detail::prune_zeros(out.entries);
    return out;
}

// f (x)_p g: sum over p-multisets S with ordering multiplicity p!/S!,
//   (f (x)_p g)(T;U) = sum_S mult(S) f_{sort(T+S)} g_{sort(U+S)}.
// The sum over ordered contraction tuples collapses to multisets because
// both factors are symmetric. p = 0 is the plain tensor product; p = n = m
// leaves a 0x0 BiTensor whose single entry equals <f,g>.
inline BiTensor contract(const SymTensor& f, const SymTensor& g, int p) {
    if (f.dim != g.dim) throw std::invalid_argument("contract: dim mismatch");
    if (p < 0 || p > std::min(f.order, g.order))
        throw std::invalid_argument("contract: p out of range");

    // Index g by its size-p sub-multisets.
    std::map<MultiIndex, std::vector<std::pair<MultiIndex, double>>> g_by_sub;
    for (const auto& [beta, cg] : g.entries)
        for (auto& [s, u] : submultisets(beta, p)) g_by_sub[s].emplace_back(u, cg);

    BiTensor out;
    out.left_order = f.order - p;
    out.right_order = g.order - p;
    out.dim = f.dim;
    for (const auto& [alpha, cf] : f.entries) {
        for (auto& [s, t] : submultisets(alpha, p)) {
            auto it = g_by_sub.find(s);
            if (it == g_by_sub.end()) continue;
            const double w = orbit_count(s) * cf;
            for (const auto& [u, cg] : it->second) {
                auto [slot, fresh] = out.entries.emplace(std::make_pair(t, u), w * cg);
                if (!fresh) slot->second += w * cg;
            }
        }
    }
    for (auto it = out.entries.begin(); it != out.entries.end();)
        it = (it->second == 0.0) ? out.entries.erase(it) : std::next(it);
    return out;
}

// Canonical symmetrization. For an entry (A;B) with |A| = a, |B| = b and
// combined sorted index gamma = sort(A+B), exactly
//   (#orderings with first a slots = A as a multiset) = prod_v C(c_v(gamma), c_v(A))
// out of (a+b)!/(a! b!) distinct group splits select (A,B), so the entry
// contributes [prod_v C(c_v(gamma), c_v(A))] * a! b!/(a+b)! * coeff to gamma.
// This equals the naive average over all (a+b)! slot permutations (tested
// against brute force, never assumed).
inline SymTensor symmetrize(const BiTensor& t) {
    SymTensor out = zero_tensor(t.left_order + t.right_order, t.dim);
    const double base = factorial(t.left_order) * factorial(t.right_order) /
                        factorial(t.left_order + t.right_order);
    for (const auto& [key, c] : t.entries) {
        const auto& [a, b] = key;
        MultiIndex gamma = merge_sorted(a, b);
        auto gamma_counts = value_counts(gamma);
        double ways = 1.0;
        std::size_t i = 0;
        while (i < a.size()) {  // product over distinct values of A
            std::size_t j = i;
            while (j < a.size() && a[j] == a[i]) ++j;
            ways *= binomial(gamma_counts[a[i]], static_cast<int>(j - i));
            i = j;
        }
        auto [slot, fresh] = out.entries.emplace(std::move(gamma), base * ways * c);
        if (!fresh) slot->second += base * ways * c;
    }
    detail::prune_zeros(out.entries);
    return out;
}

// f (x~) g: canonical symmetrization of the tensor product.
inline SymTensor sym_tensor_product(const SymTensor& f, const SymTensor& g) {
    return symmetrize(contract(f, g, 0));
}

// Symmetrized contraction f (x~)_p g as a SymTensor.
inline SymTensor sym_contract(const SymTensor& f, const SymTensor& g, int p) {
    return symmetrize(contract(f, g, p));
}

// Value of a 0x0 BiTensor (full contraction).
inline double as_scalar(const BiTensor& t) {
    if (t.left_order != 0 || t.right_order != 0)
        throw std::invalid_argument("as_scalar: BiTensor is not 0x0");
    return t.entries.empty() ? 0.0 : t.entries.begin()->second;
}

}  // namespace wchaos
