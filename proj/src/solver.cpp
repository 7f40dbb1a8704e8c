#include "defcalc/solver.hpp"

#include <stdexcept>

namespace defcalc {

Form homotopy_h(const Form& w) {
    int n = w.dim(), order = w.order();
    Form out(n, order);
    for (const auto& [key, f] : w.terms()) {
        int q = key.J.size();
        if (q == 0)
            throw std::invalid_argument("homotopy_h: term of dzb-degree 0");
        for (const auto& [mono, c] : f.terms()) {
            long divisor = mono.zb_total() + q;
            GaussRational scaled = c * GaussRational(mpq_class(1, divisor), mpq_class(0));
            for (int j : key.J.entries()) {
                auto [sign, Jrest] = key.J.remove(j);
                Monomial m = mono;
                m.zb_exp[j - 1] += 1;
                out.add_term(key.I, Jrest,
                             PolySeries::monomial(n, order, m, sign < 0 ? -scaled : scaled));
            }
        }
    }
    return out;
}

ValuedForm homotopy_h(const ValuedForm& w) {
    ValuedForm out(w.word(), w.dim(), w.order());
    for (const auto& [basis, comp] : w.components())
        out.add(basis, homotopy_h(comp));
    return out;
}

Form dbar_solve(const Form& beta) {
    Form witness = beta.dbar();
    if (!witness.is_zero())
        throw std::invalid_argument("dbar_solve: right side is not dbar-closed; dbar(beta) = " +
                                    witness.to_string());
    return homotopy_h(beta);
}

ValuedForm dbar_solve(const ValuedForm& beta) {
    ValuedForm witness = beta.dbar();
    if (!witness.is_zero())
        throw std::invalid_argument("dbar_solve: right side is not dbar-closed; dbar(beta) = " +
                                    witness.to_string());
    return homotopy_h(beta);
}

DeformationFamily DeformationFamily::make(BeltramiField phi, std::optional<EndoField> psi) {
    if (phi.degree() != 1)
        throw std::invalid_argument("DeformationFamily: phi must have antiholomorphic degree 1");
    if (!phi.t_coeff(0).is_zero())
        throw std::invalid_argument("DeformationFamily: phi(0) must vanish");
    if (psi && !psi->t_coeff(0).is_zero())
        throw std::invalid_argument("DeformationFamily: psi(0) must vanish");
    return DeformationFamily{std::move(phi), std::move(psi)};
}

namespace {

/// Shared iteration: solves dbar(sigma) = op(sigma) order by order in t.
ExtensionResult run_extension(const ValuedForm& sigma0,
                              const std::function<ValuedForm(const ValuedForm&)>& op) {
    int order = sigma0.order();
    ExtensionResult res{false, "", sigma0, {}, {}, sigma0};
    {
        ValuedForm closed = sigma0.dbar();
        if (!closed.is_zero()) {
            res.message = "seed is not dbar-closed; dbar(sigma0) = " + closed.to_string();
            return res;
        }
    }
    res.orders.push_back(sigma0);
    ValuedForm acc = sigma0;
    for (int m = 1; m <= order; ++m) {
        ValuedForm rhs = op(acc).t_coeff(m);
        res.rhs.push_back(rhs);
        ValuedForm witness = rhs.dbar();
        if (!witness.is_zero()) {
            res.message = "right side not dbar-closed at order " + std::to_string(m) +
                          "; witness = " + witness.to_string();
            return res;
        }
        ValuedForm sol = homotopy_h(rhs);
        res.orders.push_back(sol);
        acc = acc + sol.shift_t(m);
    }
    res.sigma = acc;
    res.residual = acc.dbar() - op(acc);
    res.ok = res.residual.is_zero();
    if (!res.ok)
        res.message = "full-equation residual nonzero: " + res.residual.to_string();
    return res;
}

} // namespace

ExtensionResult extend_scalar(const DeformationFamily& family, const Form& sigma0) {
    auto op = [&family](const ValuedForm& s) {
        return ValuedForm::from_form(lie10_scalar(family.phi, s.as_form()));
    };
    return run_extension(ValuedForm::from_form(sigma0), op);
}

ExtensionResult extend_bundle(const DeformationFamily& family, const ConnectionData& conn,
                              const ValuedForm& sigma0) {
    auto op = [&family, &conn](const ValuedForm& s) {
        ValuedForm out = lie10_conn(conn, family.phi, s);
        if (family.psi)
            out = out - end_act(family.psi->m, s);
        return out;
    };
    return run_extension(sigma0, op);
}

ExtensionResult extend_nq(const DeformationFamily& family, const Form& sigma0) {
    auto deg = sigma0.bidegree();
    if (!deg || deg->first != sigma0.dim())
        throw std::invalid_argument("extend_nq: seed must be homogeneous of type (n,q)");
    auto op = [&family](const ValuedForm& s) {
        return ValuedForm::from_form(-contract(family.phi, s.as_form()).partial());
    };
    return run_extension(ValuedForm::from_form(sigma0), op);
}

} // namespace defcalc
