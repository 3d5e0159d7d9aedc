#pragma once

// Canonical multi-indices: a length-n nondecreasing list of basis indices in
// 1..d, the unique representative of its permutation orbit. A symmetric
// tensor stores one coefficient per orbit; all orbit-size bookkeeping
// (norms, contractions, symmetrization weights) lives here.

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "wchaos/combinatorics.hpp"

namespace wchaos {

using MultiIndex = std::vector<std::int32_t>;

inline bool is_canonical(const MultiIndex& a, int dim) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] < 1 || a[i] > dim) return false;
        if (i > 0 && a[i - 1] > a[i]) return false;
    }
    return true;
}

// Value -> occurrence count of a canonical index (runs are contiguous).
inline std::map<std::int32_t, int> value_counts(const MultiIndex& a) {
    std::map<std::int32_t, int> c;
    for (auto v : a) ++c[v];
    return c;
}

// Orbit size n!/prod_j(count_j!): number of distinct orderings of alpha.
inline u128 orbit_count_u128(const MultiIndex& a) {
    u128 r = factorial_u128(static_cast<int>(a.size()));
    std::size_t i = 0;
    while (i < a.size()) {
        std::size_t j = i;
        while (j < a.size() && a[j] == a[i]) ++j;
        r /= factorial_u128(static_cast<int>(j - i));
        i = j;
    }
    return r;
}

inline double orbit_count(const MultiIndex& a) {
    return static_cast<double>(orbit_count_u128(a));
}

// Merge two sorted index lists into a sorted list.
inline MultiIndex merge_sorted(const MultiIndex& a, const MultiIndex& b) {
    MultiIndex out(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), out.begin());
    return out;
}

// All distinct sub-multisets of size p, paired with the complementary rest.
// Both outputs are sorted. The enumeration walks the distinct values of
// alpha and chooses how many copies of each to take.
inline std::vector<std::pair<MultiIndex, MultiIndex>> submultisets(const MultiIndex& alpha,
                                                                   int p) {
    std::vector<std::pair<MultiIndex, MultiIndex>> out;
    if (p < 0 || p > static_cast<int>(alpha.size())) return out;

    // Run-length encode alpha.
    std::vector<std::pair<std::int32_t, int>> runs;
    std::size_t i = 0;
    while (i < alpha.size()) {
        std::size_t j = i;
        while (j < alpha.size() && alpha[j] == alpha[i]) ++j;
        runs.emplace_back(alpha[i], static_cast<int>(j - i));
        i = j;
    }

    MultiIndex sub, rest;
    auto rec = [&](auto&& self, std::size_t r, int need) -> void {
        if (r == runs.size()) {
            if (need == 0) out.emplace_back(sub, rest);
            return;
        }
        auto [v, c] = runs[r];
        int remaining_capacity = 0;
        for (std::size_t t = r; t < runs.size(); ++t) remaining_capacity += runs[t].second;
        if (need > remaining_capacity) return;  // prune: cannot fill p slots
        for (int take = 0; take <= std::min(c, need); ++take) {
            sub.insert(sub.end(), static_cast<std::size_t>(take), v);
            rest.insert(rest.end(), static_cast<std::size_t>(c - take), v);
            self(self, r + 1, need - take);
            sub.resize(sub.size() - static_cast<std::size_t>(take));
            rest.resize(rest.size() - static_cast<std::size_t>(c - take));
        }
    };
    rec(rec, 0, p);
    return out;
}

}  // namespace wchaos
