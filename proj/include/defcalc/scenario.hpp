#pragma once

#include "defcalc/correspondence.hpp"
#include "defcalc/expr_parser.hpp"
#include "defcalc/solver.hpp"

#include <cstdint>
#include <optional>
#include <random>

namespace defcalc {

/// Input-level error: malformed scenario text, dimension inconsistencies,
/// unknown suite names, preconditions of a requested suite. Mapped to exit
/// code 2 by the CLI.
class ScenarioError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct NamedForm {
    std::string name;
    int p = 0, q = 0;
    bool e_valued = false;
    std::optional<ValuedForm> value;
};

/// One verification unit: chart dimensions, truncation, connection data, a
/// deformation family (geometric via z_t, w or direct via phi, psi), named
/// test forms and the suites to run.
struct DeformationScenario {
    int n = 1, r = 1, N = 0;
    uint64_t seed = 0;
    ConnectionData conn;
    bool geometric = false;
    std::vector<PolySeries> zt; // geometric family
    SeriesMatrix w;             // geometric family
    std::optional<BeltramiField> phi_direct;
    std::optional<EndoField> psi_direct;
    std::map<std::string, NamedForm> forms;
    std::vector<std::string> suites;
    bool truncation_warning = false;

    BeltramiField family_phi() const;
    EndoField family_psi() const;
    CorrespondenceContext context() const;
};

DeformationScenario parse_scenario(const std::string& text);
/// Canonical JSON (sorted keys, expressions re-printed); stable under
/// parse o print.
std::string print_scenario(const DeformationScenario& sc);

struct RandomParams {
    int n = 2;
    int r = 1;
    int N = 2;
    int degree = 1; // max z/zb degree of generated coefficients
    int terms = 2;  // monomials per generated entry
};

/// Reproducible scenario in geometric-input mode (on-shell by construction).
DeformationScenario random_scenario(const RandomParams& params, uint64_t seed);

struct SuiteResult {
    std::string suite;
    bool pass = false;
    std::string detail;  // deterministic one-line summary
    std::string witness; // residual pretty-print on failure
    double millis = 0.0; // human report only, never serialized
};

struct Report {
    std::vector<SuiteResult> results; // sorted by suite name
    bool all_pass() const;
    std::string to_text(bool color) const;
    /// Deterministic: no timings, sorted suites, canonical scenario echo.
    std::string to_json_string(const DeformationScenario& sc) const;
};

/// Runs the scenario's suites (or the explicit subset). Unknown suite names
/// and violated suite preconditions throw ScenarioError.
Report run_suites(const DeformationScenario& sc, const std::vector<std::string>& only = {});

/// Names accepted in the suites list.
const std::vector<std::string>& known_suites();

/// Deterministic seeded form generators shared by suites and tests.
Form random_form(std::mt19937_64& rng, int n, int order, int p, int q, int degree, int terms);
ValuedForm random_e_valued(std::mt19937_64& rng, int n, int order, int r, int p, int q,
                           int degree, int terms);
/// dbar-closed seed of bidegree (p,q): holomorphic coefficients for q = 0,
/// dbar of a random (p,q-1) form otherwise.
Form random_closed_form(std::mt19937_64& rng, int n, int order, int p, int q, int degree,
                        int terms);

uint64_t fnv64(uint64_t seed, const std::string& text);

} // namespace defcalc
