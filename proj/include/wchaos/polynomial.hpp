#pragma once

// Sparse multivariate polynomials in the Gaussian coordinates z_1..z_d:
// the brute-force oracle's representation. Exponent vectors are dense
// length-d keys; coefficients are doubles. Multiplication carries an
// explicit work budget: the oracle must fail loudly, never truncate.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "wchaos/combinatorics.hpp"

namespace wchaos {

struct oracle_budget_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Polynomial {
    int dim = 1;
    std::map<std::vector<std::int32_t>, double> terms;  // exponents -> coefficient
};

// Total term-products a single oracle computation may accumulate.
inline constexpr long long kOracleBudget = 10'000'000;

inline Polynomial poly_zero(int dim) { return Polynomial{dim, {}}; }

inline Polynomial poly_const(int dim, double c) {
    Polynomial p = poly_zero(dim);
    if (c != 0.0) p.terms.emplace(std::vector<std::int32_t>(dim, 0), c);
    return p;
}

inline void poly_add_term(Polynomial& p, const std::vector<std::int32_t>& expo, double c) {
    auto [it, fresh] = p.terms.emplace(expo, c);
    if (!fresh) it->second += c;
    if (it->second == 0.0) p.terms.erase(it);
}

inline Polynomial poly_add(const Polynomial& a, const Polynomial& b) {
    if (a.dim != b.dim) throw std::invalid_argument("poly_add: dim mismatch");
    Polynomial out = a;
    for (const auto& [e, c] : b.terms) poly_add_term(out, e, c);
    return out;
}

// budget_used accumulates across one logical oracle computation so a chain
// of multiplications cannot exceed kOracleBudget in total.
inline Polynomial poly_mul(const Polynomial& a, const Polynomial& b, long long& budget_used) {
    if (a.dim != b.dim) throw std::invalid_argument("poly_mul: dim mismatch");
    budget_used += static_cast<long long>(a.terms.size()) * static_cast<long long>(b.terms.size());
    if (budget_used > kOracleBudget)
        throw oracle_budget_error("oracle infeasible: term budget exceeded");
    Polynomial out = poly_zero(a.dim);
    std::vector<std::int32_t> e(static_cast<std::size_t>(a.dim));
    for (const auto& [ea, ca] : a.terms) {
        for (const auto& [eb, cb] : b.terms) {
            for (int j = 0; j < a.dim; ++j) e[static_cast<std::size_t>(j)] = ea[j] + eb[j];
            poly_add_term(out, e, ca * cb);
        }
    }
    return out;
}

inline Polynomial poly_pow(const Polynomial& p, int k, long long& budget_used) {
    if (k < 0) throw std::invalid_argument("poly_pow: negative power");
    Polynomial r = poly_const(p.dim, 1.0);
    Polynomial base = p;
    int e = k;
    while (e > 0) {  // binary powering keeps intermediates collapsed
        if (e & 1) r = poly_mul(r, base, budget_used);
        e >>= 1;
        if (e > 0) base = poly_mul(base, base, budget_used);
    }
    return r;
}

inline Polynomial poly_deriv(const Polynomial& p, int j) {
    if (j < 0 || j >= p.dim) throw std::invalid_argument("poly_deriv: variable out of range");
    Polynomial out = poly_zero(p.dim);
    for (const auto& [e, c] : p.terms) {
        if (e[static_cast<std::size_t>(j)] == 0) continue;
        auto e2 = e;
        e2[static_cast<std::size_t>(j)] -= 1;
        poly_add_term(out, e2, c * e[static_cast<std::size_t>(j)]);
    }
    return out;
}

inline double poly_eval(const Polynomial& p, const std::vector<double>& z) {
    if (static_cast<int>(z.size()) != p.dim)
        throw std::invalid_argument("poly_eval: point dim mismatch");
    double s = 0.0;
    for (const auto& [e, c] : p.terms) {
        double t = c;
        for (int j = 0; j < p.dim; ++j)
            for (int r = 0; r < e[static_cast<std::size_t>(j)]; ++r)
                t *= z[static_cast<std::size_t>(j)];
        s += t;
    }
    return s;
}

// E[p(Z)] for Z i.i.d. standard normal, by moment factorization:
// E[Z^m] = (m-1)!! for even m, 0 for odd m.
inline double gaussian_expectation(const Polynomial& p) {
    double s = 0.0;
    for (const auto& [e, c] : p.terms) {
        double w = 1.0;
        for (int j = 0; j < p.dim && w != 0.0; ++j) {
            const int m = e[static_cast<std::size_t>(j)];
            w = (m % 2 != 0) ? 0.0 : w * gaussian_even_moment(m);
        }
        s += c * w;
    }
    return s;
}

}  // namespace wchaos
