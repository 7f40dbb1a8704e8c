#include "defcalc/scenario.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;

bool color_enabled() {
    const char* v = std::getenv("DEFCALC_COLOR");
    if (v == nullptr)
        return false;
    return std::string(v) != "0";
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw defcalc::ScenarioError("cannot open scenario file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out)
        throw defcalc::ScenarioError("cannot write '" + path + "'");
    out << text;
}

int do_verify(const std::string& file, const std::vector<std::string>& suites,
              const std::string& json_out) {
    defcalc::DeformationScenario sc = defcalc::parse_scenario(read_file(file));
    if (sc.truncation_warning)
        std::cerr << "warning: some expressions exceeded the truncation order N = " << sc.N
                  << "; higher t-powers were dropped\n";
    defcalc::Report report = defcalc::run_suites(sc, suites);
    std::cout << report.to_text(color_enabled());
    if (!json_out.empty())
        write_file(json_out, report.to_json_string(sc));
    return report.all_pass() ? kExitPass : kExitFail;
}

int do_random(const defcalc::RandomParams& params, uint64_t seed, int count,
              const std::string& emit_dir, const std::string& json_out) {
    bool all = true;
    std::string json_accum = "[";
    for (int k = 0; k < count; ++k) {
        defcalc::DeformationScenario sc = defcalc::random_scenario(params, seed + k);
        if (!emit_dir.empty())
            write_file(emit_dir + "/scenario_" + std::to_string(seed + k) + ".json",
                       defcalc::print_scenario(sc));
        defcalc::Report report = defcalc::run_suites(sc);
        std::cout << "seed " << (seed + k) << ":\n" << report.to_text(color_enabled()) << "\n";
        if (!json_out.empty()) {
            if (k > 0)
                json_accum += ",";
            json_accum += report.to_json_string(sc);
        }
        all = all && report.all_pass();
    }
    if (!json_out.empty())
        write_file(json_out, json_accum + "]\n");
    return all ? kExitPass : kExitFail;
}

int do_extend(const std::string& file, const std::string& form_name, int order,
              const std::string& equation) {
    defcalc::DeformationScenario sc = defcalc::parse_scenario(read_file(file));
    auto it = sc.forms.find(form_name);
    if (it == sc.forms.end())
        throw defcalc::ScenarioError("scenario has no form named '" + form_name + "'");
    const defcalc::NamedForm& nf = it->second;
    if (order < 0)
        order = sc.N;
    if (order > sc.N)
        throw defcalc::ScenarioError("requested order exceeds the scenario truncation N");

    defcalc::DeformationFamily family = [&] {
        try {
            return nf.e_valued
                       ? defcalc::DeformationFamily::make(sc.family_phi(), sc.family_psi())
                       : defcalc::DeformationFamily::make(sc.family_phi());
        } catch (const std::invalid_argument& e) {
            throw defcalc::ScenarioError(e.what());
        }
    }();

    if (!nf.value->dbar().is_zero())
        throw defcalc::ScenarioError("form '" + form_name + "' is not dbar-closed");

    defcalc::ExtensionResult res = [&] {
        if (nf.e_valued) {
            if (equation == "nq")
                throw defcalc::ScenarioError("the nq equation applies to scalar forms");
            return defcalc::extend_bundle(family, sc.conn, *nf.value);
        }
        if (equation == "nq") {
            if (nf.p != sc.n)
                throw defcalc::ScenarioError("the nq equation needs a form of type (n,q)");
            return defcalc::extend_nq(family, nf.value->as_form());
        }
        return defcalc::extend_scalar(family, nf.value->as_form());
    }();

    for (size_t m = 1; m < res.orders.size() && m <= static_cast<size_t>(order); ++m) {
        std::cout << "order " << m << " right side: " << res.rhs[m - 1].to_string() << "\n";
        std::cout << "order " << m << " solution:   " << res.orders[m].to_string() << "\n";
    }
    std::cout << "sigma(t) = " << res.sigma.to_string() << "\n";
    if (res.ok) {
        std::cout << "residual verified zero through order " << sc.N << "\n";
        return kExitPass;
    }
    std::cout << "extension failed: " << res.message << "\n";
    return kExitFail;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verification suite for deformation operator calculus on a chart"};
    app.require_subcommand(1);

    std::string file, json_out, emit_dir, form_name;
    std::vector<std::string> suites;
    defcalc::RandomParams params;
    uint64_t seed = 1;
    int count = 1;
    int order = -1;

    CLI::App* verify = app.add_subcommand("verify", "run verification suites on a scenario file");
    verify->add_option("file", file, "scenario JSON file")->required();
    verify->add_option("--suite", suites, "suite name (repeatable); default: scenario's list");
    verify->add_option("--json", json_out, "write a machine-readable report");

    CLI::App* random = app.add_subcommand("random", "generate and verify random scenarios");
    random->add_option("--n", params.n, "chart dimension")->check(CLI::Range(1, 4));
    random->add_option("--r", params.r, "bundle rank")->check(CLI::Range(1, 4));
    random->add_option("--N", params.N, "t-truncation order")->check(CLI::Range(0, 8));
    random->add_option("--degree", params.degree, "coefficient degree bound");
    random->add_option("--terms", params.terms, "monomials per generated entry");
    random->add_option("--seed", seed, "base seed");
    random->add_option("--count", count, "number of scenarios");
    random->add_option("--emit", emit_dir, "directory for generated scenario files");
    random->add_option("--json", json_out, "write machine-readable reports");

    CLI::App* extend = app.add_subcommand("extend", "extend a dbar-closed form along the family");
    std::string equation = "scalar";
    extend->add_option("file", file, "scenario JSON file")->required();
    extend->add_option("--form", form_name, "named form to extend")->required();
    extend->add_option("--order", order, "highest t-order to report (default N)");
    extend->add_option("--equation", equation, "scalar | nq (E-valued forms use the bundle equation)")
        ->check(CLI::IsMember({"scalar", "nq"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed())
            return do_verify(file, suites, json_out);
        if (random->parsed())
            return do_random(params, seed, count, emit_dir, json_out);
        if (extend->parsed())
            return do_extend(file, form_name, order, equation);
    } catch (const defcalc::ScenarioError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const defcalc::ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
