// wchaos -- command-line driver for the Wiener-chaos verification toolkit.
//
// Commands:
//   moments        closed-form / oracle / Monte Carlo moments of a kernel
//   check          every convergence certificate for one kernel, as JSON
//   study          k-sweep over a family: one CSV/JSON row per member
//   sample         draw I_n(f) samples; summary stats, optional raw dump
//   export-family  write a family member in the kernel JSON format
//
// Exit codes: 0 success, 2 input error, 3 oracle budget exceeded
// (the oracle is optional everywhere else and reported as null when
// infeasible; only --require-oracle escalates it to an exit code).

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wchaos/conditions.hpp"
#include "wchaos/families.hpp"
#include "wchaos/kernel_io.hpp"
#include "wchaos/montecarlo.hpp"
#include "wchaos/oracle.hpp"
#include "wchaos/study.hpp"

namespace {

using nlohmann::json;

void write_text(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw wchaos::io_error("cannot write output file: " + out_path);
    out << text;
    if (!text.empty() && text.back() != '\n') out << '\n';
}

json estimate_to_json(const wchaos::Estimate& e) {
    return json{{"value", e.value}, {"stderr", e.stderr_}};
}

json summary_to_json(const wchaos::SampleSummary& s) {
    return json{{"mean", estimate_to_json(s.mean)},
                {"var", estimate_to_json(s.var)},
                {"m3", estimate_to_json(s.m3_hat)},
                {"m4", estimate_to_json(s.m4_hat)},
                {"samples", s.n}};
}

std::vector<int> parse_k_list(const std::string& text) {
    std::vector<int> ks;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            ks.push_back(std::stoi(tok));
        } catch (const std::exception&) {
            throw std::invalid_argument("--k expects comma-separated integers, got: " + tok);
        }
    }
    if (ks.empty()) throw std::invalid_argument("--k list is empty");
    return ks;
}

struct CommonMc {
    long long samples = 100000;
    std::uint64_t seed = 42;
    int workers = 1;
    wchaos::MCConfig config() const { return {seed, samples, workers}; }
};

void add_mc_flags(CLI::App* cmd, CommonMc& mc) {
    cmd->add_option("--samples", mc.samples, "Monte Carlo sample count");
    cmd->add_option("--seed", mc.seed, "RNG seed");
    cmd->add_option("--workers", mc.workers, "worker threads (never changes results)");
}

int cmd_moments(const std::string& kernel_path, const CommonMc& mc, bool require_oracle,
                const std::string& out_path) {
    const wchaos::SymTensor f = wchaos::load_kernel(kernel_path);
    const wchaos::ChaosElement F = wchaos::make_chaos(f);
    json j;
    j["order"] = f.order;
    j["dim"] = f.dim;
    j["closed"] = {{"m2", wchaos::moment2(F)},
                   {"m3", wchaos::moment3(F)},
                   {"m4", wchaos::moment4(F)}};
    try {
        j["oracle"] = {{"m2", wchaos::oracle_moment(F, 2)},
                       {"m3", wchaos::oracle_moment(F, 3)},
                       {"m4", wchaos::oracle_moment(F, 4)}};
    } catch (const wchaos::oracle_budget_error& e) {
        if (require_oracle) {
            std::cerr << "error: " << e.what() << '\n';
            return 3;
        }
        j["oracle"] = nullptr;
    }
    j["mc"] = summary_to_json(wchaos::estimate_moments(F, mc.config()));
    j["mc"]["seed"] = mc.seed;
    write_text(j.dump(2), out_path);
    return 0;
}

int cmd_check(const std::string& kernel_path, double nu, const std::string& out_path) {
    const wchaos::SymTensor f = wchaos::load_kernel(kernel_path);
    json j = wchaos::report_to_json(wchaos::check_thm_gamma(f, nu));
    write_text(j.dump(2), out_path);
    return 0;  // reporting tool, not a gate: diagnostics never fail the run
}

int cmd_study(const std::string& family, const std::string& k_list, double nu,
              const CommonMc& mc, const std::string& format, const std::string& out_path) {
    wchaos::StudySpec spec;
    spec.family = wchaos::parse_family(family);
    spec.ks = parse_k_list(k_list);
    spec.nu = nu;
    spec.mc = mc.config();
    const auto rows = wchaos::run_study(spec);
    if (format == "csv")
        write_text(wchaos::study_to_csv(spec, rows), out_path);
    else
        write_text(wchaos::study_to_json(spec, rows).dump(2), out_path);
    return 0;
}

int cmd_sample(const std::string& kernel_path, const std::string& family, int k,
               const CommonMc& mc, const std::string& out_path) {
    wchaos::SymTensor f;
    if (!kernel_path.empty())
        f = wchaos::load_kernel(kernel_path);
    else if (!family.empty())
        f = wchaos::make_family_kernel(wchaos::parse_family(family), k);
    else
        throw std::invalid_argument("sample: need --kernel or --family");
    const auto xs = wchaos::sample_chaos(wchaos::make_chaos(f), mc.config());
    if (!out_path.empty()) {
        std::string text;
        for (double x : xs) {
            text += wchaos::fmt17(x);
            text += '\n';
        }
        write_text(text, out_path);
    }
    std::cout << summary_to_json(wchaos::summarize(xs)).dump(2) << '\n';
    return 0;
}

int cmd_export_family(const std::string& family, int k, const std::string& out_path) {
    if (out_path.empty()) throw std::invalid_argument("export-family: need --out PATH");
    const wchaos::SymTensor f = wchaos::make_family_kernel(wchaos::parse_family(family), k);
    wchaos::save_kernel(f, out_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"wchaos: finite-dimensional Wiener-chaos Gamma-convergence toolkit"};
    app.require_subcommand(1);

    std::string kernel_path, family, k_list, out_path, format = "json";
    double nu = 1.0;
    int k_single = 1;
    bool require_oracle = false;
    CommonMc mc;

    auto* moments = app.add_subcommand("moments", "closed-form, oracle, and MC moments");
    moments->add_option("--kernel", kernel_path, "kernel JSON path")->required();
    moments->add_flag("--require-oracle", require_oracle,
                      "exit 3 if the oracle term budget is exceeded");
    moments->add_option("--out", out_path, "write report here instead of stdout");
    add_mc_flags(moments, mc);

    auto* check = app.add_subcommand("check", "all certificates for one kernel");
    check->add_option("--kernel", kernel_path, "kernel JSON path")->required();
    check->add_option("--nu", nu, "target law parameter")->required();
    check->add_option("--out", out_path, "write report here instead of stdout");

    auto* study = app.add_subcommand("study", "k-sweep over a family");
    study->add_option("--family", family, "family spec, e.g. prop41:m=2,nu=1")->required();
    study->add_option("--k", k_list, "comma-separated strictly increasing k list")->required();
    study->add_option("--nu", nu, "target law parameter")->required();
    study->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    study->add_option("--out", out_path, "write table here instead of stdout");
    add_mc_flags(study, mc);

    auto* sample = app.add_subcommand("sample", "draw I_n(f) samples");
    sample->add_option("--kernel", kernel_path, "kernel JSON path");
    sample->add_option("--family", family, "family spec (alternative to --kernel)");
    sample->add_option("--k", k_single, "family sweep index");
    sample->add_option("--out", out_path, "write raw samples here, one per line");
    add_mc_flags(sample, mc);

    auto* exportf = app.add_subcommand("export-family", "write a family kernel as JSON");
    exportf->add_option("--family", family, "family spec")->required();
    exportf->add_option("--k", k_single, "family sweep index");
    exportf->add_option("--out", out_path, "output kernel path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (moments->parsed()) return cmd_moments(kernel_path, mc, require_oracle, out_path);
        if (check->parsed()) return cmd_check(kernel_path, nu, out_path);
        if (study->parsed()) return cmd_study(family, k_list, nu, mc, format, out_path);
        if (sample->parsed()) return cmd_sample(kernel_path, family, k_single, mc, out_path);
        if (exportf->parsed()) return cmd_export_family(family, k_single, out_path);
    } catch (const wchaos::oracle_budget_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
