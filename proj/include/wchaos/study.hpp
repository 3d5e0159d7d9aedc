#pragma once

// The k-sweep driver: generate family members, evaluate every closed-form
// certificate plus the sampling-based ones (KS distance against the target
// CDF, empirical-CF distance on a fixed grid), and serialize to CSV or JSON.
// Floats are printed with 17 significant digits so reports round-trip
// exactly and can serve as golden fixtures.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "wchaos/conditions.hpp"
#include "wchaos/families.hpp"
#include "wchaos/kernel_io.hpp"

namespace wchaos {

// Default lambda grid for the empirical-CF distance: 17 points on [-2, 2].
inline std::vector<double> default_lambda_grid() {
    std::vector<double> g;
    for (int i = -8; i <= 8; ++i) g.push_back(0.25 * i);
    return g;
}

struct FamilySpec {
    std::string name;  // prop41 | clt | fixed | rankone
    int m = 2;         // prop41 only
    int n = 2;         // clt only
    int nu = 1;        // prop41 / fixed
};

// Parse "name:key=val,key=val" (e.g. "prop41:m=2,nu=1", "clt:n=2", "fixed:nu=3").
inline FamilySpec parse_family(const std::string& text) {
    FamilySpec spec;
    const auto colon = text.find(':');
    spec.name = text.substr(0, colon);
    if (spec.name != "prop41" && spec.name != "clt" && spec.name != "fixed" &&
        spec.name != "rankone")
        throw std::invalid_argument("unknown family: " + spec.name);
    if (colon == std::string::npos) return spec;
    std::stringstream ss(text.substr(colon + 1));
    std::string kv;
    while (std::getline(ss, kv, ',')) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("family params must be key=value: " + kv);
        const std::string key = kv.substr(0, eq);
        int val = 0;
        try {
            val = std::stoi(kv.substr(eq + 1));
        } catch (const std::exception&) {
            throw std::invalid_argument("family param not an integer: " + kv);
        }
        if (key == "m")
            spec.m = val;
        else if (key == "n")
            spec.n = val;
        else if (key == "nu")
            spec.nu = val;
        else
            throw std::invalid_argument("unknown family param: " + key);
    }
    return spec;
}

// Family member at sweep index k ("fixed" and "rankone" ignore k).
inline SymTensor make_family_kernel(const FamilySpec& spec, int k) {
    if (spec.name == "prop41") return prop41_family(spec.m, spec.nu, k);
    if (spec.name == "clt") return clt_family(spec.n, k);
    if (spec.name == "fixed") return fixed_point(spec.nu);
    return rank_one_counterexample();
}

struct StudyRow {
    int k = 0;
    ConditionReport report;
    double ks = 0.0;
    double ks_threshold_05 = 0.0;
    double ks_threshold_01 = 0.0;
    double ecf_dist = 0.0;
    MCConfig mc;
};

struct StudySpec {
    FamilySpec family;
    std::vector<int> ks;  // strictly increasing sweep
    double nu = 1.0;
    MCConfig mc;
};

inline StudyRow study_row(const SymTensor& f, double nu, int k, const MCConfig& mc) {
    StudyRow row;
    row.k = k;
    row.mc = mc;
    row.report = check_thm_gamma(f, nu);
    const GammaLimitLaw law(nu);
    const auto xs = sample_chaos(make_chaos(f), mc);
    row.ks = ks_statistic(xs, [&](double x) { return law.cdf(x); });
    row.ks_threshold_05 = ks_threshold(kKsQuantile05, mc.samples);
    row.ks_threshold_01 = ks_threshold(kKsQuantile01, mc.samples);
    row.ecf_dist =
        ecf_distance(xs, [&](double l) { return law.cf(l); }, default_lambda_grid());
    return row;
}

inline std::vector<StudyRow> run_study(const StudySpec& spec) {
    if (spec.ks.empty()) throw std::invalid_argument("run_study: empty k list");
    for (std::size_t i = 1; i < spec.ks.size(); ++i)
        if (spec.ks[i] <= spec.ks[i - 1])
            throw std::invalid_argument("run_study: k list must be strictly increasing");
    std::vector<StudyRow> rows;
    for (int k : spec.ks)
        rows.push_back(study_row(make_family_kernel(spec.family, k), spec.nu, k, spec.mc));
    return rows;
}

// ---- serialization ---------------------------------------------------------

// 17 significant digits: enough to reproduce any double exactly.
inline std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline double max_second(const std::vector<std::pair<int, double>>& xs) {
    double m = 0.0;
    for (const auto& [p, v] : xs) m = std::max(m, v);
    return m;
}

inline nlohmann::json report_to_json(const ConditionReport& r) {
    nlohmann::json j;
    j["n"] = r.n;
    j["dim"] = r.dim;
    j["m2"] = r.m2;
    j["m3"] = r.m3;
    j["m4"] = r.m4;
    j["clt_gap"] = r.clt_gap;
    j["clt_contractions"] = nlohmann::json::array();
    for (const auto& [p, v] : r.clt_contractions)
        j["clt_contractions"].push_back({{"p", p}, {"norm", v}});
    j["gamma_applicable"] = r.thm_gamma_applicable;
    if (r.thm_gamma_applicable) {
        j["nu"] = r.nu;
        j["gap_i_m3"] = r.gap_i_m3;
        j["gap_i_m4"] = r.gap_i_m4;
        j["gap_ii"] = r.gap_ii;
        j["sym_fixed_point"] = r.sym_fixed_point;
        j["v_stat"] = r.v_stat;
        j["sym_offdiag"] = nlohmann::json::array();
        for (const auto& [p, v] : r.sym_offdiag)
            j["sym_offdiag"].push_back({{"p", p}, {"norm", v}});
        j["plain_offdiag"] = nlohmann::json::array();
        for (const auto& [p, v] : r.plain_offdiag)
            j["plain_offdiag"].push_back({{"p", p}, {"norm", v}});
    } else {
        j["inapplicable"] = "odd order: Gamma-law certificates undefined";
    }
    return j;
}

inline const char* kStudyCsvHeader =
    "family,nu,k,n,dim,m2,m3,m4,gap_i_m3,gap_i_m4,gap_ii,sym_fixed_point,"
    "sym_offdiag_max,plain_offdiag_max,v_stat,clt_gap,clt_contraction_max,"
    "ks,ks_threshold_05,ks_threshold_01,ecf_dist,samples,seed,workers";

inline std::string study_row_csv(const std::string& family, double nu, const StudyRow& row) {
    const auto& r = row.report;
    std::ostringstream os;
    os << family << ',' << fmt17(nu) << ',' << row.k << ',' << r.n << ',' << r.dim << ','
       << fmt17(r.m2) << ',' << fmt17(r.m3) << ',' << fmt17(r.m4) << ','
       << fmt17(r.gap_i_m3) << ',' << fmt17(r.gap_i_m4) << ',' << fmt17(r.gap_ii) << ','
       << fmt17(r.sym_fixed_point) << ',' << fmt17(max_second(r.sym_offdiag)) << ','
       << fmt17(max_second(r.plain_offdiag)) << ',' << fmt17(r.v_stat) << ','
       << fmt17(r.clt_gap) << ',' << fmt17(max_second(r.clt_contractions)) << ','
       << fmt17(row.ks) << ',' << fmt17(row.ks_threshold_05) << ','
       << fmt17(row.ks_threshold_01) << ',' << fmt17(row.ecf_dist) << ','
       << row.mc.samples << ',' << row.mc.seed << ',' << row.mc.workers;
    return os.str();
}

inline std::string study_to_csv(const StudySpec& spec, const std::vector<StudyRow>& rows) {
    std::string out = kStudyCsvHeader;
    out += '\n';
    for (const auto& row : rows) {
        out += study_row_csv(spec.family.name, spec.nu, row);
        out += '\n';
    }
    return out;
}

inline nlohmann::json study_to_json(const StudySpec& spec, const std::vector<StudyRow>& rows) {
    nlohmann::json j;
    j["family"] = spec.family.name;
    j["nu"] = spec.nu;
    j["rows"] = nlohmann::json::array();
    for (const auto& row : rows) {
        nlohmann::json r = report_to_json(row.report);
        r["k"] = row.k;
        r["ks"] = row.ks;
        r["ks_threshold_05"] = row.ks_threshold_05;
        r["ks_threshold_01"] = row.ks_threshold_01;
        r["ecf_dist"] = row.ecf_dist;
        r["samples"] = row.mc.samples;
        r["seed"] = row.mc.seed;
        r["workers"] = row.mc.workers;
        j["rows"].push_back(std::move(r));
    }
    return j;
}

}  // namespace wchaos
