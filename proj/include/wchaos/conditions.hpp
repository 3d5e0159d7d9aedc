#pragma once

// The six equivalent Gamma-convergence certificates for F = I_n(f), n even,
// evaluated as named per-kernel numbers (a single kernel cannot "converge";
// families are swept by the study driver and the decay is asserted there):
//   (i)  third/fourth moments match the target: m3 -> 8 nu, m4 -> 12 nu^2+48 nu
//   (ii) m4 - 12 m3 -> 12 nu^2 - 48 nu
//   (iii)/(iv) the middle contraction approaches the fixed point,
//        ||f (x~)_{n/2} f - c_n f|| -> 0, and the off-middle contractions
//        vanish (plain norms dominate symmetrized ones)
//   (v)  E(||DF||^2 - 2nF - 2n nu)^2 -> 0
//   (vi) convergence in law, certified by KS distance against the CDF plus
//        an empirical-CF distance (protocol choices; recorded with results).
// The Gaussian-limit certificates (m2 -> 1, m4 - 3 m2^2 -> 0, all plain
// contraction norms -> 0) share the report so a CLT control is one call.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "wchaos/chaos.hpp"
#include "wchaos/gamma_law.hpp"
#include "wchaos/montecarlo.hpp"

namespace wchaos {

struct ConditionReport {
    int n = 0;
    int dim = 0;
    double nu = std::numeric_limits<double>::quiet_NaN();
    bool thm_gamma_applicable = false;  // false for odd n: no Gamma-law certificates

    double m2 = 0.0, m3 = 0.0, m4 = 0.0;

    // Gamma certificates (NaN when inapplicable).
    double gap_i_m3 = std::numeric_limits<double>::quiet_NaN();   // |m3 - 8 nu|
    double gap_i_m4 = std::numeric_limits<double>::quiet_NaN();   // |m4 - 12 nu^2 - 48 nu|
    double gap_ii = std::numeric_limits<double>::quiet_NaN();     // m4 - 12 m3 - (12 nu^2 - 48 nu)
    double sym_fixed_point = std::numeric_limits<double>::quiet_NaN();
    std::vector<std::pair<int, double>> sym_offdiag;    // p != n/2: ||f (x~)_p f||
    std::vector<std::pair<int, double>> plain_offdiag;  // p != n/2: ||f (x)_p f||
    double v_stat = std::numeric_limits<double>::quiet_NaN();

    // Gaussian-limit certificates (always computed).
    double clt_gap = 0.0;                                   // m4 - 3 m2^2
    std::vector<std::pair<int, double>> clt_contractions;   // p = 1..n-1: ||f (x)_p f||
};

// All Gamma-law certificates from closed forms; no Monte Carlo involved.
inline ConditionReport check_thm_gamma(const SymTensor& f, double nu) {
    if (!(nu > 0.0)) throw std::invalid_argument("check_thm_gamma: nu must be > 0");
    const ChaosElement F = make_chaos(f);
    const int n = f.order;

    ConditionReport r;
    r.n = n;
    r.dim = f.dim;
    r.nu = nu;
    r.m2 = moment2(F);
    r.m3 = moment3(F);
    r.m4 = moment4(F);
    r.clt_gap = r.m4 - 3.0 * r.m2 * r.m2;
    for (int p = 1; p <= n - 1; ++p)
        r.clt_contractions.emplace_back(p, norm_bi(contract(f, f, p)));

    if (n % 2 != 0) return r;  // odd order: Gamma certificates inapplicable
    r.thm_gamma_applicable = true;

    r.gap_i_m3 = std::abs(r.m3 - 8.0 * nu);
    r.gap_i_m4 = std::abs(r.m4 - 12.0 * nu * nu - 48.0 * nu);
    r.gap_ii = r.m4 - 12.0 * r.m3 - (12.0 * nu * nu - 48.0 * nu);
    for (int p = 1; p <= n - 1; ++p) {
        const SymTensor sp = sym_contract(f, f, p);
        if (p == n / 2) {
            r.sym_fixed_point = norm_sym(axpy(-c_const(n), f, sp));
        } else {
            r.sym_offdiag.emplace_back(p, norm_sym(sp));
            r.plain_offdiag.emplace_back(
                p, r.clt_contractions[static_cast<std::size_t>(p - 1)].second);
        }
    }
    r.v_stat = v_statistic(F, nu);
    return r;
}

// Gaussian-limit certificates only (any order).
inline ConditionReport check_clt(const SymTensor& f) {
    const ChaosElement F = make_chaos(f);
    ConditionReport r;
    r.n = f.order;
    r.dim = f.dim;
    r.m2 = moment2(F);
    r.m3 = moment3(F);
    r.m4 = moment4(F);
    r.clt_gap = r.m4 - 3.0 * r.m2 * r.m2;
    for (int p = 1; p <= f.order - 1; ++p)
        r.clt_contractions.emplace_back(p, norm_bi(contract(f, f, p)));
    return r;
}

// The symmetrized-vs-plain contraction lists for p != n/2 (their joint
// vanishing is the content of the equivalence; callers assert decay).
inline std::pair<std::vector<std::pair<int, double>>, std::vector<std::pair<int, double>>>
check_contraction_equivalence(const SymTensor& f) {
    if (f.order < 4 || f.order % 2 != 0)
        throw std::invalid_argument("check_contraction_equivalence: need even order >= 4");
    std::vector<std::pair<int, double>> sym, plain;
    for (int p = 1; p <= f.order - 1; ++p) {
        if (p == f.order / 2) continue;
        sym.emplace_back(p, norm_sym(sym_contract(f, f, p)));
        plain.emplace_back(p, norm_bi(contract(f, f, p)));
    }
    return {sym, plain};
}

// Strict-inequality margin m4 - 12 m3 - (12 nu^2 - 48 nu) with nu = m2/2:
// positive for every nonzero kernel of even order >= 4 (no chaos of order
// >= 4 realizes the law F(nu) exactly).
inline double strict_gamma_margin(const SymTensor& f) {
    if (f.order < 4 || f.order % 2 != 0)
        throw std::invalid_argument("strict_gamma_margin: need even order >= 4");
    if (f.entries.empty()) throw std::invalid_argument("strict_gamma_margin: zero kernel");
    const ChaosElement F = make_chaos(f);
    const double nu = moment2(F) / 2.0;
    return moment4(F) - 12.0 * moment3(F) - (12.0 * nu * nu - 48.0 * nu);
}

// Joint-convergence diagnostics of I_n(f) against first-chaos directions:
// value = <f (x)_{n-1} f, h (x) h> (= ||f (x)_1 h||^2 for n >= 2, computed
// both ways), with the Cauchy-Schwarz envelope bound = ||f (x)_{n-1} f|| ||h||^2.
// Vanishing values certify asymptotic joint independence; the rank-one
// kernel with h = e1 pins value 1.
struct JointDiagnostic {
    double value = 0.0;      // <f (x)_{n-1} f, h (x) h>
    double direct = 0.0;     // ||f (x)_1 h||^2, must equal value
    double bound = 0.0;      // ||f (x)_{n-1} f|| * ||h||^2
};

inline std::vector<JointDiagnostic> check_joint(const SymTensor& f,
                                                const std::vector<SymTensor>& hs) {
    if (f.order < 2) throw std::invalid_argument("check_joint: kernel order must be >= 2");
    const BiTensor top = contract(f, f, f.order - 1);
    const double top_norm = norm_bi(top);
    std::vector<JointDiagnostic> out;
    for (const auto& h : hs) {
        if (h.order != 1 || h.dim != f.dim)
            throw std::invalid_argument("check_joint: directions must be order-1, same dim");
        JointDiagnostic d;
        d.value = inner_bi(top, contract(h, h, 0));
        d.direct = norm2_bi(contract(f, h, 1));
        d.bound = top_norm * norm2_sym(h);
        out.push_back(d);
    }
    return out;
}

struct KsResult {
    double ks = 0.0;
    double threshold = 0.0;  // K_alpha / sqrt(N) for the requested alpha
    long long samples = 0;
};

// One-sample KS of sampled I_n(f) values against the F(nu) CDF.
inline KsResult ks_convergence(const SymTensor& f, double nu, const MCConfig& cfg,
                               double k_alpha = kKsQuantile05) {
    if (cfg.samples < 1000)
        throw std::invalid_argument("ks_convergence: needs at least 10^3 samples");
    const GammaLimitLaw law(nu);
    const auto xs = sample_chaos(make_chaos(f), cfg);
    KsResult r;
    r.ks = ks_statistic(xs, [&](double x) { return law.cdf(x); });
    r.threshold = ks_threshold(k_alpha, cfg.samples);
    r.samples = cfg.samples;
    return r;
}

}  // namespace wchaos
