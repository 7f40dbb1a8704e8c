#include "defcalc/scenario.hpp"

#include <json.hpp>

#include <chrono>
#include <sstream>

namespace defcalc {

using nlohmann::json;

uint64_t fnv64(uint64_t seed, const std::string& text) {
    uint64_t h = 14695981039346656037ull ^ seed;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

// ---------------------------------------------------------------------------
// Seeded generators
// ---------------------------------------------------------------------------

namespace {

uint64_t rand_below(std::mt19937_64& rng, uint64_t k) {
    return k == 0 ? 0 : rng() % k;
}

GaussRational random_coeff(std::mt19937_64& rng) {
    switch (rand_below(rng, 6)) {
    case 0: return GaussRational(1);
    case 1: return GaussRational(-1);
    case 2: return GaussRational(2);
    case 3: return GaussRational(-2);
    case 4: return GaussRational::i();
    default: return GaussRational(mpq_class(1), mpq_class(-1));
    }
}

PolySeries random_poly(std::mt19937_64& rng, int n, int order, int degree, int terms,
                       bool allow_t, bool allow_zb = true) {
    PolySeries out = PolySeries::zero(n, order);
    for (int k = 0; k < terms; ++k) {
        Monomial m;
        m.z_exp.assign(n, 0);
        m.zb_exp.assign(n, 0);
        int budget = degree;
        for (int ax = 0; ax < n && budget > 0; ++ax) {
            m.z_exp[ax] = static_cast<uint32_t>(rand_below(rng, budget + 1));
            budget -= m.z_exp[ax];
        }
        if (allow_zb) {
            budget = degree;
            for (int ax = 0; ax < n && budget > 0; ++ax) {
                m.zb_exp[ax] = static_cast<uint32_t>(rand_below(rng, budget + 1));
                budget -= m.zb_exp[ax];
            }
        }
        if (allow_t && order > 0)
            m.t_exp = static_cast<uint32_t>(rand_below(rng, order));
        out = out + PolySeries::monomial(n, order, m, random_coeff(rng));
    }
    return out;
}

} // namespace

Form random_form(std::mt19937_64& rng, int n, int order, int p, int q, int degree, int terms) {
    Form out(n, order);
    auto Is = multi_indices(n, p);
    auto Js = multi_indices(n, q);
    if (Is.empty() || Js.empty())
        return out;
    for (int k = 0; k < terms; ++k) {
        MultiIndex I = Is[rand_below(rng, Is.size())];
        MultiIndex J = Js[rand_below(rng, Js.size())];
        out.add_term(I, J, random_poly(rng, n, order, degree, 1, true));
    }
    return out;
}

ValuedForm random_e_valued(std::mt19937_64& rng, int n, int order, int r, int p, int q,
                           int degree, int terms) {
    ValuedForm out(FiberWord({Factor::e(r)}), n, order);
    for (int k = 1; k <= r; ++k)
        out.add({k}, random_form(rng, n, order, p, q, degree, terms));
    return out;
}

Form random_closed_form(std::mt19937_64& rng, int n, int order, int p, int q, int degree,
                        int terms) {
    Form out(n, order);
    auto Is = multi_indices(n, p);
    auto Js = multi_indices(n, q);
    if (Is.empty() || Js.empty())
        return out;
    if (q == 0) {
        for (int k = 0; k < terms; ++k) {
            MultiIndex I = Is[rand_below(rng, Is.size())];
            // Holomorphic coefficients (z and t only) are dbar-closed.
            out.add_term(I, MultiIndex::empty(),
                         random_poly(rng, n, order, degree, 1, true, false));
        }
        return out;
    }
    out = random_form(rng, n, order, p, q - 1, degree, terms).dbar();
    // A constant-coefficient term keeps the seed nonzero when the dbar image
    // collapses.
    out.add_term(Is[rand_below(rng, Is.size())], Js[rand_below(rng, Js.size())],
                 PolySeries::constant(n, order, random_coeff(rng)));
    return out;
}

// ---------------------------------------------------------------------------
// Scenario accessors
// ---------------------------------------------------------------------------

BeltramiField DeformationScenario::family_phi() const {
    if (geometric)
        return phi_from_trivialization(zt);
    if (phi_direct)
        return *phi_direct;
    return BeltramiField::zero(n, N, 1);
}

EndoField DeformationScenario::family_psi() const {
    if (geometric)
        return psi_from_transition(w, conn, family_phi());
    if (psi_direct)
        return *psi_direct;
    return EndoField::zero(n, r, N);
}

CorrespondenceContext DeformationScenario::context() const {
    CorrespondenceContext ctx;
    ctx.n = n;
    ctx.r = r;
    ctx.order = N;
    ctx.conn = conn;
    ctx.phi = family_phi();
    ctx.psiE = family_psi();
    return ctx;
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& msg) {
    throw ScenarioError(where.empty() ? msg : where + ": " + msg);
}

PolySeries parse_expr_field(const std::string& where, const std::string& text, int n, int order,
                            bool& truncated) {
    try {
        ParsedExpr e = parse_expression(text, n, order);
        truncated |= e.truncated;
        return e.value;
    } catch (const ParseError& err) {
        fail(where, err.what());
    }
}

std::vector<int> parse_int_list(const std::string& where, const std::string& text) {
    std::vector<int> out;
    if (text.empty())
        return out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            size_t used = 0;
            int v = std::stoi(item, &used);
            if (used != item.size())
                fail(where, "bad index '" + item + "'");
            out.push_back(v);
        } catch (const ScenarioError&) {
            throw;
        } catch (...) {
            fail(where, "bad index '" + item + "'");
        }
    }
    return out;
}

MultiIndex parse_multi(const std::string& where, const std::string& text, int n) {
    auto entries = parse_int_list(where, text);
    for (int e : entries)
        if (e < 1 || e > n)
            fail(where, "axis " + std::to_string(e) + " out of range for n = " + std::to_string(n));
    try {
        return MultiIndex::from_entries(entries);
    } catch (const std::exception& e) {
        fail(where, e.what());
    }
}

Form parse_one_form(const std::string& where, const json& obj, int n, int order, bool dz_axis,
                    bool& truncated) {
    // Object keyed by axis: {"1": "zb1"} means zb1*dz1 (or *dzb1).
    Form out(n, order);
    if (obj.is_null())
        return out;
    if (!obj.is_object())
        fail(where, "expected an object keyed by axis");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        int axis = 0;
        try {
            axis = std::stoi(it.key());
        } catch (...) {
            fail(where, "bad axis key '" + it.key() + "'");
        }
        if (axis < 1 || axis > n)
            fail(where, "axis " + std::to_string(axis) + " out of range");
        PolySeries c =
            parse_expr_field(where + "." + it.key(), it.value().get<std::string>(), n, order,
                             truncated);
        if (dz_axis)
            out.add_term(MultiIndex::single(axis), MultiIndex::empty(), c);
        else
            out.add_term(MultiIndex::empty(), MultiIndex::single(axis), c);
    }
    return out;
}

int require_int(const json& j, const std::string& key, int lo, int hi) {
    if (!j.contains(key) || !j[key].is_number_integer())
        fail("scenario", "missing integer field '" + key + "'");
    int v = j[key].get<int>();
    if (v < lo || v > hi)
        fail(key, "value " + std::to_string(v) + " outside [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "]");
    return v;
}

} // namespace

DeformationScenario parse_scenario(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ScenarioError(std::string("scenario is not valid JSON: ") + e.what());
    }
    DeformationScenario sc;
    sc.n = require_int(j, "n", 1, 8);
    sc.r = require_int(j, "r", 1, 6);
    sc.N = require_int(j, "N", 0, 16);
    sc.seed = j.value("seed", 0ull);
    sc.conn = ConnectionData::zero(sc.n, sc.r, sc.N);

    if (j.contains("connection")) {
        const json& c = j["connection"];
        if (c.contains("theta")) {
            const json& th = c["theta"];
            if (!th.is_array() || static_cast<int>(th.size()) != sc.r)
                fail("connection.theta", "expected an r x r array");
            for (int k = 0; k < sc.r; ++k) {
                if (static_cast<int>(th[k].size()) != sc.r)
                    fail("connection.theta", "expected an r x r array");
                for (int l = 0; l < sc.r; ++l)
                    sc.conn.theta[k][l] =
                        parse_one_form("connection.theta[" + std::to_string(k + 1) + "][" +
                                           std::to_string(l + 1) + "]",
                                       th[k][l], sc.n, sc.N, true, sc.truncation_warning);
            }
        }
        if (c.contains("gamma")) {
            if (!c["gamma"].is_object())
                fail("connection.gamma", "expected an object keyed 'k,i,j'");
            for (auto it = c["gamma"].begin(); it != c["gamma"].end(); ++it) {
                auto idx = parse_int_list("connection.gamma", it.key());
                if (idx.size() != 3)
                    fail("connection.gamma", "key '" + it.key() + "' is not 'k,i,j'");
                for (int v : idx)
                    if (v < 1 || v > sc.n)
                        fail("connection.gamma", "index out of range in '" + it.key() + "'");
                sc.conn.gamma[idx[0] - 1][idx[1] - 1][idx[2] - 1] =
                    parse_expr_field("connection.gamma['" + it.key() + "']",
                                     it.value().get<std::string>(), sc.n, sc.N,
                                     sc.truncation_warning);
            }
        }
        sc.conn.validate();
    }

    if (!j.contains("family") || !j["family"].is_object())
        fail("scenario", "missing 'family' object");
    const json& fam = j["family"];
    bool has_geo = fam.contains("zt") || fam.contains("w");
    bool has_direct = fam.contains("phi") || fam.contains("psi");
    if (has_geo && has_direct)
        fail("family", "give either geometric data (zt, w) or direct data (phi, psi), not both");
    if (has_geo) {
        sc.geometric = true;
        if (!fam.contains("zt") || static_cast<int>(fam["zt"].size()) != sc.n)
            fail("family.zt", "expected n chart functions");
        for (int k = 0; k < sc.n; ++k)
            sc.zt.push_back(parse_expr_field("family.zt[" + std::to_string(k + 1) + "]",
                                             fam["zt"][k].get<std::string>(), sc.n, sc.N,
                                             sc.truncation_warning));
        sc.w = series_identity(sc.r, sc.n, sc.N);
        if (fam.contains("w")) {
            const json& wj = fam["w"];
            if (!wj.is_array() || static_cast<int>(wj.size()) != sc.r)
                fail("family.w", "expected an r x r array");
            for (int a = 0; a < sc.r; ++a)
                for (int b = 0; b < sc.r; ++b)
                    sc.w[a][b] = parse_expr_field("family.w[" + std::to_string(a + 1) + "][" +
                                                      std::to_string(b + 1) + "]",
                                                  wj[a][b].get<std::string>(), sc.n, sc.N,
                                                  sc.truncation_warning);
        }
        // Invertibility at t = 0 for both the chart and the frame data.
        for (int k = 1; k <= sc.n; ++k)
            if (sc.zt[k - 1].at_t_zero() != PolySeries::var_z(sc.n, sc.N, k))
                fail("family.zt", "z_t must equal z at t = 0");
        if (!series_is_identity_at_t0(sc.w))
            fail("family.w", "w must equal the identity at t = 0");
    } else {
        if (fam.contains("phi")) {
            BeltramiField phi(sc.n, sc.N, 1);
            if (!fam["phi"].is_object())
                fail("family.phi", "expected an object keyed 'i,j'");
            for (auto it = fam["phi"].begin(); it != fam["phi"].end(); ++it) {
                auto idx = parse_int_list("family.phi", it.key());
                if (idx.size() != 2)
                    fail("family.phi", "key '" + it.key() + "' is not 'i,j'");
                if (idx[0] < 1 || idx[0] > sc.n || idx[1] < 1 || idx[1] > sc.n)
                    fail("family.phi", "index out of range in '" + it.key() + "'");
                phi.add(idx[0], MultiIndex::single(idx[1]),
                        parse_expr_field("family.phi['" + it.key() + "']",
                                         it.value().get<std::string>(), sc.n, sc.N,
                                         sc.truncation_warning));
            }
            sc.phi_direct = phi;
        }
        if (fam.contains("psi")) {
            const json& pj = fam["psi"];
            if (!pj.is_array() || static_cast<int>(pj.size()) != sc.r)
                fail("family.psi", "expected an r x r array");
            EndoField psi = EndoField::zero(sc.n, sc.r, sc.N);
            for (int a = 0; a < sc.r; ++a)
                for (int b = 0; b < sc.r; ++b)
                    psi.m[a][b] = parse_one_form("family.psi[" + std::to_string(a + 1) + "][" +
                                                     std::to_string(b + 1) + "]",
                                                 pj[a][b], sc.n, sc.N, false,
                                                 sc.truncation_warning);
            psi.validate();
            sc.psi_direct = psi;
        }
    }

    if (j.contains("forms")) {
        if (!j["forms"].is_object())
            fail("forms", "expected an object of named forms");
        for (auto it = j["forms"].begin(); it != j["forms"].end(); ++it) {
            const json& fj = it.value();
            NamedForm nf;
            nf.name = it.key();
            std::string where = "forms." + nf.name;
            nf.p = require_int(fj, "p", 0, sc.n);
            nf.q = require_int(fj, "q", 0, sc.n);
            std::string values = fj.value("values", "scalar");
            if (values != "scalar" && values != "E")
                fail(where, "'values' must be \"scalar\" or \"E\"");
            nf.e_valued = values == "E";
            FiberWord word = nf.e_valued ? FiberWord({Factor::e(sc.r)}) : FiberWord::scalar();
            ValuedForm v(word, sc.n, sc.N);
            if (fj.contains("components")) {
                for (auto ct = fj["components"].begin(); ct != fj["components"].end(); ++ct) {
                    std::string key = ct.key();
                    std::string cw = where + ".components['" + key + "']";
                    int e_index = 1;
                    auto semi = key.find(';');
                    if (semi != std::string::npos) {
                        if (!nf.e_valued)
                            fail(cw, "basis index given for a scalar form");
                        e_index = std::stoi(key.substr(semi + 1));
                        if (e_index < 1 || e_index > sc.r)
                            fail(cw, "frame index out of range");
                        key = key.substr(0, semi);
                    }
                    auto bar = key.find('|');
                    if (bar == std::string::npos)
                        fail(cw, "component key must look like 'I|J'");
                    MultiIndex I = parse_multi(cw, key.substr(0, bar), sc.n);
                    MultiIndex J = parse_multi(cw, key.substr(bar + 1), sc.n);
                    if (I.size() != nf.p || J.size() != nf.q)
                        fail(cw, "component bidegree does not match declared (p,q)");
                    PolySeries c = parse_expr_field(cw, ct.value().get<std::string>(), sc.n,
                                                    sc.N, sc.truncation_warning);
                    std::vector<int> basis;
                    if (nf.e_valued)
                        basis.push_back(e_index);
                    v.add(basis, Form::term(c, I, J));
                }
            }
            nf.value = v;
            sc.forms.emplace(nf.name, std::move(nf));
        }
    }

    if (j.contains("suites")) {
        for (const auto& s : j["suites"]) {
            std::string name = s.get<std::string>();
            bool ok = false;
            for (const auto& k : known_suites())
                ok = ok || k == name;
            if (!ok)
                fail("suites", "unknown suite '" + name + "'");
            sc.suites.push_back(name);
        }
    }
    return sc;
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

namespace {

json one_form_to_json(const Form& f, bool dz_axis) {
    json obj = json::object();
    for (const auto& [key, c] : f.terms()) {
        MultiIndex axis_block = dz_axis ? key.I : key.J;
        obj[std::to_string(axis_block.entries().at(0))] = c.to_string();
    }
    return obj;
}

} // namespace

std::string print_scenario(const DeformationScenario& sc) {
    json j;
    j["n"] = sc.n;
    j["r"] = sc.r;
    j["N"] = sc.N;
    j["seed"] = sc.seed;

    json conn = json::object();
    bool theta_nonzero = !matrix_is_zero(sc.conn.theta);
    if (theta_nonzero) {
        json th = json::array();
        for (int k = 0; k < sc.r; ++k) {
            json row = json::array();
            for (int l = 0; l < sc.r; ++l)
                row.push_back(one_form_to_json(sc.conn.theta[k][l], true));
            th.push_back(row);
        }
        conn["theta"] = th;
    }
    json gamma = json::object();
    for (int k = 1; k <= sc.n; ++k)
        for (int i = 1; i <= sc.n; ++i)
            for (int jj = 1; jj <= sc.n; ++jj) {
                PolySeries g = sc.conn.christoffel(k, i, jj);
                if (!g.is_zero())
                    gamma[std::to_string(k) + "," + std::to_string(i) + "," +
                          std::to_string(jj)] = g.to_string();
            }
    if (!gamma.empty())
        conn["gamma"] = gamma;
    if (!conn.empty())
        j["connection"] = conn;

    json fam = json::object();
    if (sc.geometric) {
        json zt = json::array();
        for (const auto& z : sc.zt)
            zt.push_back(z.to_string());
        fam["zt"] = zt;
        json w = json::array();
        for (int a = 0; a < sc.r; ++a) {
            json row = json::array();
            for (int b = 0; b < sc.r; ++b)
                row.push_back(sc.w[a][b].to_string());
            w.push_back(row);
        }
        fam["w"] = w;
    } else {
        if (sc.phi_direct && !sc.phi_direct->is_zero()) {
            json phi = json::object();
            for (const auto& [key, c] : sc.phi_direct->coeffs())
                phi[std::to_string(key.first) + "," +
                    MultiIndex(key.second).to_string()] = c.to_string();
            fam["phi"] = phi;
        }
        if (sc.psi_direct && !sc.psi_direct->is_zero()) {
            json psi = json::array();
            for (int a = 0; a < sc.r; ++a) {
                json row = json::array();
                for (int b = 0; b < sc.r; ++b)
                    row.push_back(one_form_to_json(sc.psi_direct->m[a][b], false));
                psi.push_back(row);
            }
            fam["psi"] = psi;
        }
        if (fam.empty())
            fam["phi"] = json::object();
    }
    j["family"] = fam;

    if (!sc.forms.empty()) {
        json forms = json::object();
        for (const auto& [name, nf] : sc.forms) {
            json fj;
            fj["p"] = nf.p;
            fj["q"] = nf.q;
            fj["values"] = nf.e_valued ? "E" : "scalar";
            json comps = json::object();
            for (const auto& [basis, comp] : nf.value->components()) {
                for (const auto& [key, c] : comp.terms()) {
                    std::string ck = key.I.to_string() + "|" + key.J.to_string();
                    if (nf.e_valued)
                        ck += ";" + std::to_string(basis[0]);
                    comps[ck] = c.to_string();
                }
            }
            fj["components"] = comps;
            forms[name] = fj;
        }
        j["forms"] = forms;
    }

    if (!sc.suites.empty())
        j["suites"] = sc.suites;
    return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Random scenarios
// ---------------------------------------------------------------------------

DeformationScenario random_scenario(const RandomParams& params, uint64_t seed) {
    std::mt19937_64 rng(fnv64(seed, "scenario"));
    DeformationScenario sc;
    sc.n = params.n;
    sc.r = params.r;
    sc.N = params.N;
    sc.seed = seed;
    sc.geometric = true;
    sc.conn = ConnectionData::zero(sc.n, sc.r, sc.N);

    PolySeries t = PolySeries::var_t(sc.n, sc.N);
    for (int k = 1; k <= sc.n; ++k) {
        PolySeries z = PolySeries::var_z(sc.n, sc.N, k);
        PolySeries pert =
            random_poly(rng, sc.n, sc.N, params.degree, params.terms, false) * t;
        if (sc.N >= 2 && rand_below(rng, 2) == 0)
            pert = pert + random_poly(rng, sc.n, sc.N, params.degree, 1, false) * t * t;
        sc.zt.push_back(z + pert);
    }
    sc.w = series_identity(sc.r, sc.n, sc.N);
    for (int a = 0; a < sc.r; ++a)
        for (int b = 0; b < sc.r; ++b)
            sc.w[a][b] =
                sc.w[a][b] + random_poly(rng, sc.n, sc.N, params.degree, 1, false) * t;

    for (int k = 0; k < sc.r; ++k)
        for (int l = 0; l < sc.r; ++l) {
            int axis = 1 + static_cast<int>(rand_below(rng, sc.n));
            sc.conn.theta[k][l] = Form::dz(sc.n, sc.N, axis) *
                                  random_poly(rng, sc.n, sc.N, params.degree, 1, false);
        }
    for (int k = 1; k <= sc.n; ++k)
        for (int i = 1; i <= sc.n; ++i)
            for (int jj = 1; jj <= sc.n; ++jj)
                if (rand_below(rng, 2) == 0)
                    sc.conn.gamma[k - 1][i - 1][jj - 1] =
                        random_poly(rng, sc.n, sc.N, params.degree, 1, false);

    sc.suites = {"mc",   "second_integrability", "lry",  "pro2",    "pro3",
                 "pro4", "thm1",                 "thm2", "nabla01", "extend_scalar",
                 "extend_bundle", "extend_nq"};
    if (sc.r == 1)
        sc.suites.push_back("coro1");
    return sc;
}

// ---------------------------------------------------------------------------
// Suites
// ---------------------------------------------------------------------------

namespace {

struct SuiteOutcome {
    bool pass = false;
    std::string detail;
    std::string witness;
};

SuiteOutcome suite_mc(const DeformationScenario& sc) {
    BeltramiField res = mc_residual(sc.family_phi());
    SuiteOutcome out;
    out.pass = res.is_zero();
    out.detail = "Maurer-Cartan residual dbar(phi) - [phi,phi]/2";
    if (!out.pass)
        out.witness = res.to_string();
    return out;
}

SuiteOutcome suite_second(const DeformationScenario& sc) {
    FormMatrix res = second_residual(sc.conn, sc.family_phi(), sc.family_psi());
    SuiteOutcome out;
    out.pass = matrix_is_zero(res);
    out.detail = "(dbar - Lie_phi)psi - psi^psi - i_phi(Theta)";
    if (!out.pass) {
        for (size_t a = 0; a < res.size(); ++a)
            for (size_t b = 0; b < res.size(); ++b)
                if (!res[a][b].is_zero())
                    out.witness += "[" + std::to_string(a + 1) + "][" + std::to_string(b + 1) +
                                   "] " + res[a][b].to_string() + "\n";
    }
    return out;
}

// Samples scalar and E-valued forms across the bidegree range.
SuiteOutcome suite_lry(const DeformationScenario& sc) {
    CorrespondenceContext ctx = sc.context();
    std::mt19937_64 rng(fnv64(sc.seed, "lry"));
    SuiteOutcome out;
    out.pass = true;
    int checked = 0;
    for (int p = 0; p <= sc.n && out.pass; ++p) {
        for (int q = 0; q <= sc.n && out.pass; ++q) {
            ValuedForm s = (p + q) % 2 == 0
                               ? ValuedForm::from_form(
                                     random_form(rng, sc.n, sc.N, p, q, 2, 2))
                               : random_e_valued(rng, sc.n, sc.N, sc.r, p, q, 2, 2);
            ValuedForm res = identity_lry(ctx, s);
            ++checked;
            if (!res.is_zero()) {
                out.pass = false;
                out.witness = "(p,q) = (" + std::to_string(p) + "," + std::to_string(q) +
                              "): " + res.to_string();
            }
        }
    }
    out.detail = "conjugation formula on " + std::to_string(checked) + " sampled forms";
    for (const auto& [name, nf] : sc.forms) {
        ValuedForm res = identity_lry(ctx, *nf.value);
        if (!res.is_zero()) {
            out.pass = false;
            out.witness = "form '" + name + "': " + res.to_string();
        }
    }
    return out;
}

SuiteOutcome suite_pro2(const DeformationScenario& sc) {
    CorrespondenceContext ctx = sc.context();
    BeltramiField defect = mc_residual(ctx.phi);
    std::mt19937_64 rng(fnv64(sc.seed, "pro2"));
    SuiteOutcome out;
    out.pass = true;
    for (int q = 0; q <= sc.n && out.pass; ++q) {
        ValuedForm sigma = random_e_valued(rng, sc.n, sc.N, sc.r, sc.n, q, 2, 2);
        ValuedForm res = identity_pro2(ctx, sigma);
        ValuedForm expected = contract(defect, sigma);
        if (!(res == expected)) {
            out.pass = false;
            out.witness = "q = " + std::to_string(q) + ": " + (res - expected).to_string();
        }
    }
    out.detail = defect.is_zero()
                     ? "(n,q) conjugation, on-shell family (residual is exactly zero)"
                     : "(n,q) conjugation, off-shell family (residual equals the defect term)";
    return out;
}

SuiteOutcome suite_pro3(const DeformationScenario& sc) {
    if (!sc.geometric)
        throw ScenarioError("suite pro3 requires geometric family data (zt, w)");
    IntegrabilityWitness wit =
        integrability_check(sc.w, sc.conn, sc.family_phi(), sc.family_psi());
    SuiteOutcome out;
    out.pass = wit.holds;
    out.detail = "(0,1)-part of (nabla + psi)(frame) matches i_phi of the (1,0)-part";
    if (!out.pass)
        out.witness = wit.to_string();
    return out;
}

SuiteOutcome suite_pro4(const DeformationScenario& sc) {
    CorrespondenceContext ctx = sc.context();
    if (!mc_residual(ctx.phi).is_zero())
        throw ScenarioError("suite pro4 requires an on-shell (Maurer-Cartan) family");
    std::mt19937_64 rng(fnv64(sc.seed, "pro4"));
    FormMatrix iphi_theta = contract(ctx.phi, curvature(ctx.conn));
    SuiteOutcome out;
    out.pass = true;
    for (int p = 0; p <= sc.n && out.pass; ++p)
        for (int q = 0; q <= sc.n && out.pass; ++q) {
            ValuedForm s = random_e_valued(rng, sc.n, sc.N, sc.r, p, q, 2, 2);
            ValuedForm res = identity_pro4(ctx, s);
            if (!res.is_zero()) {
                out.pass = false;
                out.witness = "(p,q) = (" + std::to_string(p) + "," + std::to_string(q) +
                              "): " + res.to_string();
            }
        }
    out.detail = matrix_is_zero(iphi_theta)
                     ? "(dbar - Lie10)^2 + i_phi(Theta), vacuous curvature term"
                     : "(dbar - Lie10)^2 + i_phi(Theta), curvature term nonzero";
    return out;
}

SuiteOutcome suite_thm1(const DeformationScenario& sc) {
    CorrespondenceContext ctx = sc.context();
    std::mt19937_64 rng(fnv64(sc.seed, "thm1"));
    SuiteOutcome out;
    out.pass = true;
    for (int p = 0; p <= sc.n; ++p)
        for (int q = 0; q <= sc.n; ++q) {
            ValuedForm s =
                ValuedForm::from_form(random_form(rng, sc.n, sc.N, p, q, 2, 2));
            ValuedForm res = identity_thm1(ctx, s);
            if (!res.is_zero() && out.pass) {
                out.pass = false;
                out.witness = "(p,q) = (" + std::to_string(p) + "," + std::to_string(q) +
                              "): " + res.to_string();
            }
        }
    for (const auto& [name, nf] : sc.forms) {
        if (nf.e_valued)
            continue;
        ValuedForm res = identity_thm1(ctx, *nf.value);
        if (!res.is_zero() && out.pass) {
            out.pass = false;
            out.witness = "form '" + name + "': " + res.to_string();
        }
    }
    out.detail = "scalar correspondence identity over the full (p,q) grid";
    return out;
}

SuiteOutcome suite_thm2(const DeformationScenario& sc) {
    CorrespondenceContext ctx = sc.context();
    std::mt19937_64 rng(fnv64(sc.seed, "thm2"));
    SuiteOutcome out;
    out.pass = true;
    for (int p = 0; p <= sc.n; ++p)
        for (int q = 0; q <= sc.n; ++q) {
            ValuedForm s = random_e_valued(rng, sc.n, sc.N, sc.r, p, q, 2, 2);
            ValuedForm res = identity_thm2(ctx, s);
            if (!res.is_zero() && out.pass) {
                out.pass = false;
                out.witness = "(p,q) = (" + std::to_string(p) + "," + std::to_string(q) +
                              "): " + res.to_string();
            }
        }
    for (const auto& [name, nf] : sc.forms) {
        if (!nf.e_valued)
            continue;
        ValuedForm res = identity_thm2(ctx, *nf.value);
        if (!res.is_zero() && out.pass) {
            out.pass = false;
            out.witness = "form '" + name + "': " + res.to_string();
        }
    }
    out.detail = "bundle correspondence identity over the full (p,q) grid";
    return out;
}

SuiteOutcome suite_nabla01(const DeformationScenario& sc) {
    CorrespondenceContext ctx = sc.context();
    std::mt19937_64 rng(fnv64(sc.seed, "nabla01"));
    SuiteOutcome out;
    out.pass = true;
    for (int p = 0; p <= sc.n && out.pass; ++p)
        for (int q = 0; q <= sc.n && out.pass; ++q) {
            ValuedForm s = random_e_valued(rng, sc.n, sc.N, sc.r, p, q, 2, 2);
            ValuedForm res = nabla01_cross_check(ctx, s);
            if (!res.is_zero()) {
                out.pass = false;
                out.witness = "(p,q) = (" + std::to_string(p) + "," + std::to_string(q) +
                              "): " + res.to_string();
            }
        }
    out.detail =
        "(0,1)-connection transcription: residual equals the psi-correction exactly";
    return out;
}

SuiteOutcome suite_coro1(const DeformationScenario& sc) {
    if (sc.r != 1)
        throw ScenarioError("suite coro1 requires a line bundle (r = 1)");
    CorrespondenceContext ctx = sc.context();
    Form res = coro1_residual(ctx);
    SuiteOutcome out;
    out.pass = res.is_zero();
    out.detail = "line-bundle residual (dbar - L_phi)psi - i_phi(Theta)";
    if (!out.pass)
        out.witness = res.to_string();
    return out;
}

DeformationFamily scenario_family(const DeformationScenario& sc, bool with_psi) {
    try {
        if (with_psi)
            return DeformationFamily::make(sc.family_phi(), sc.family_psi());
        return DeformationFamily::make(sc.family_phi());
    } catch (const std::invalid_argument& e) {
        throw ScenarioError(std::string("extension family: ") + e.what());
    }
}

SuiteOutcome extension_outcome(const std::vector<std::pair<std::string, ExtensionResult>>& runs,
                               const std::string& what) {
    SuiteOutcome out;
    out.pass = true;
    for (const auto& [label, res] : runs) {
        if (!res.ok) {
            out.pass = false;
            out.witness += label + ": " + res.message + "\n";
        }
    }
    out.detail = what + " on " + std::to_string(runs.size()) + " seeds";
    return out;
}

SuiteOutcome suite_extend_scalar(const DeformationScenario& sc) {
    DeformationFamily family = scenario_family(sc, false);
    std::mt19937_64 rng(fnv64(sc.seed, "extend_scalar"));
    std::vector<std::pair<std::string, ExtensionResult>> runs;
    for (const auto& [name, nf] : sc.forms)
        if (!nf.e_valued)
            runs.emplace_back("form '" + name + "'", extend_scalar(family, nf.value->as_form()));
    for (int k = 0; k < 2; ++k) {
        int p = 1 + static_cast<int>(rand_below(rng, sc.n));
        int q = static_cast<int>(rand_below(rng, sc.n));
        runs.emplace_back(
            "seed (" + std::to_string(p) + "," + std::to_string(q) + ")",
            extend_scalar(family, random_closed_form(rng, sc.n, sc.N, p, q, 2, 2)));
    }
    return extension_outcome(runs, "order-by-order solution of (dbar - L10_phi)sigma = 0");
}

SuiteOutcome suite_extend_bundle(const DeformationScenario& sc) {
    DeformationFamily family = scenario_family(sc, true);
    std::mt19937_64 rng(fnv64(sc.seed, "extend_bundle"));
    std::vector<std::pair<std::string, ExtensionResult>> runs;
    for (const auto& [name, nf] : sc.forms)
        if (nf.e_valued)
            runs.emplace_back("form '" + name + "'",
                              extend_bundle(family, sc.conn, *nf.value));
    for (int k = 0; k < 2; ++k) {
        int p = static_cast<int>(rand_below(rng, sc.n + 1));
        int q = static_cast<int>(rand_below(rng, sc.n));
        ValuedForm seed(FiberWord({Factor::e(sc.r)}), sc.n, sc.N);
        for (int a = 1; a <= sc.r; ++a)
            seed.add({a}, random_closed_form(rng, sc.n, sc.N, p, q, 2, 2));
        runs.emplace_back("seed (" + std::to_string(p) + "," + std::to_string(q) + ")",
                          extend_bundle(family, sc.conn, seed));
    }
    return extension_outcome(runs,
                             "order-by-order solution of (dbar - Lie10 + psi)sigma = 0");
}

SuiteOutcome suite_extend_nq(const DeformationScenario& sc) {
    DeformationFamily family = scenario_family(sc, false);
    std::mt19937_64 rng(fnv64(sc.seed, "extend_nq"));
    std::vector<std::pair<std::string, ExtensionResult>> runs;
    for (const auto& [name, nf] : sc.forms)
        if (!nf.e_valued && nf.p == sc.n)
            runs.emplace_back("form '" + name + "'", extend_nq(family, nf.value->as_form()));
    for (int q = 0; q <= std::min(sc.n, 2); ++q)
        runs.emplace_back(
            "seed (n," + std::to_string(q) + ")",
            extend_nq(family, random_closed_form(rng, sc.n, sc.N, sc.n, q, 2, 2)));
    return extension_outcome(runs, "obstruction equation dbar(sigma) + partial i_phi sigma = 0");
}

} // namespace

const std::vector<std::string>& known_suites() {
    static const std::vector<std::string> names = {
        "mc",   "second_integrability", "lry",     "pro2",  "pro3",
        "pro4", "thm1",                 "thm2",    "nabla01", "coro1",
        "extend_scalar", "extend_bundle", "extend_nq"};
    return names;
}

bool Report::all_pass() const {
    for (const auto& r : results)
        if (!r.pass)
            return false;
    return true;
}

std::string Report::to_text(bool color) const {
    const char* green = color ? "\033[32m" : "";
    const char* red = color ? "\033[31m" : "";
    const char* reset = color ? "\033[0m" : "";
    std::ostringstream os;
    for (const auto& r : results) {
        os << (r.pass ? green : red) << (r.pass ? "[PASS] " : "[FAIL] ") << reset << r.suite
           << " - " << r.detail;
        os << " (" << r.millis << " ms)";
        os << "\n";
        if (!r.pass && !r.witness.empty())
            os << "       witness: " << r.witness << "\n";
    }
    os << (all_pass() ? "all suites passed" : "SUITE FAILURES PRESENT") << "\n";
    return os.str();
}

std::string Report::to_json_string(const DeformationScenario& sc) const {
    json j;
    j["pass"] = all_pass();
    json rs = json::array();
    for (const auto& r : results) {
        json e;
        e["suite"] = r.suite;
        e["pass"] = r.pass;
        e["detail"] = r.detail;
        e["witness"] = r.witness;
        rs.push_back(e);
    }
    j["results"] = rs;
    j["scenario"] = json::parse(print_scenario(sc));
    return j.dump(2) + "\n";
}

Report run_suites(const DeformationScenario& sc, const std::vector<std::string>& only) {
    std::vector<std::string> todo = only.empty() ? sc.suites : only;
    if (todo.empty())
        todo = known_suites();
    for (const auto& name : todo) {
        bool ok = false;
        for (const auto& k : known_suites())
            ok = ok || k == name;
        if (!ok)
            throw ScenarioError("unknown suite '" + name + "'");
    }

    Report report;
    for (const auto& name : todo) {
        auto start = std::chrono::steady_clock::now();
        SuiteOutcome out;
        if (name == "mc")
            out = suite_mc(sc);
        else if (name == "second_integrability")
            out = suite_second(sc);
        else if (name == "lry")
            out = suite_lry(sc);
        else if (name == "pro2")
            out = suite_pro2(sc);
        else if (name == "pro3")
            out = suite_pro3(sc);
        else if (name == "pro4")
            out = suite_pro4(sc);
        else if (name == "thm1")
            out = suite_thm1(sc);
        else if (name == "thm2")
            out = suite_thm2(sc);
        else if (name == "nabla01")
            out = suite_nabla01(sc);
        else if (name == "coro1")
            out = suite_coro1(sc);
        else if (name == "extend_scalar")
            out = suite_extend_scalar(sc);
        else if (name == "extend_bundle")
            out = suite_extend_bundle(sc);
        else if (name == "extend_nq")
            out = suite_extend_nq(sc);
        auto stop = std::chrono::steady_clock::now();
        SuiteResult r;
        r.suite = name;
        r.pass = out.pass;
        r.detail = out.detail;
        r.witness = out.witness;
        r.millis = std::chrono::duration<double, std::milli>(stop - start).count();
        report.results.push_back(std::move(r));
    }
    std::sort(report.results.begin(), report.results.end(),
              [](const SuiteResult& a, const SuiteResult& b) { return a.suite < b.suite; });
    return report;
}

} // namespace defcalc
