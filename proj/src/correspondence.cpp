#include "defcalc/correspondence.hpp"

#include <stdexcept>

namespace defcalc {

CorrespondenceContext CorrespondenceContext::make(int n, int r, int order) {
    CorrespondenceContext ctx;
    ctx.n = n;
    ctx.r = r;
    ctx.order = order;
    ctx.conn = ConnectionData::zero(n, r, order);
    ctx.phi = BeltramiField::zero(n, order, 1);
    ctx.psiE = EndoField::zero(n, r, order);
    return ctx;
}

namespace {

bool is_scalar_or_e(const FiberWord& w) {
    if (w.empty())
        return true;
    return w.size() == 1 && w[0].kind == Factor::Kind::E;
}

} // namespace

ValuedForm iso_I(const ValuedForm& s, int p, int q) {
    if (!is_scalar_or_e(s.word()))
        throw std::invalid_argument("iso_I: word must be scalar or E");
    int n = s.dim(), order = s.order();
    std::vector<Factor> word{Factor::omega_p(n, p), Factor::kinv()};
    bool e_valued = !s.word().empty();
    if (e_valued)
        word.push_back(Factor::e(s.word()[0].r));
    ValuedForm out(FiberWord(word), n, order);
    MultiIndex full = MultiIndex::full(n);
    for (const auto& [basis, comp] : s.components()) {
        if (!comp.is_homogeneous(p, q))
            throw std::invalid_argument("iso_I: input not homogeneous of the stated bidegree");
        for (const auto& [key, f] : comp.terms()) {
            std::vector<int> b{static_cast<int>(key.I.bits()), 1};
            if (e_valued)
                b.push_back(basis[0]);
            out.add(b, Form::term(f, full, key.J));
        }
    }
    return out;
}

ValuedForm iso_I_inv(const ValuedForm& sigma) {
    const FiberWord& w = sigma.word();
    bool e_valued = w.size() == 3;
    if (w.size() < 2 || w[0].kind != Factor::Kind::OmegaP || w[1].kind != Factor::Kind::Kinv ||
        (e_valued && w[2].kind != Factor::Kind::E) || w.size() > 3)
        throw std::invalid_argument("iso_I_inv: word must be Omega^p (x) K^-1 ((x) E)");
    int n = sigma.dim(), order = sigma.order();
    FiberWord out_word = e_valued ? FiberWord({Factor::e(w[2].r)}) : FiberWord::scalar();
    ValuedForm out(out_word, n, order);
    MultiIndex full = MultiIndex::full(n);
    for (const auto& [basis, comp] : sigma.components()) {
        for (const auto& [key, f] : comp.terms()) {
            if (!(key.I == full))
                throw std::invalid_argument("iso_I_inv: component not of top holomorphic degree");
            std::vector<int> b;
            if (e_valued)
                b.push_back(basis[2]);
            out.add(b, Form::term(f, MultiIndex(static_cast<uint32_t>(basis[0])), key.J));
        }
    }
    return out;
}

ValuedForm conjugated_nabla(const CorrespondenceContext& ctx, const ValuedForm& s) {
    BeltramiField neg = ctx.phi * GaussRational(-1);
    return exp_contract(neg, nabla_full(ctx.conn, exp_contract(ctx.phi, s)));
}

ValuedForm identity_lry(const CorrespondenceContext& ctx, const ValuedForm& s) {
    ValuedForm lhs = conjugated_nabla(ctx, s);
    ValuedForm rhs = nabla_full(ctx.conn, s) - lie10_conn(ctx.conn, ctx.phi, s) +
                     contract(mc_residual(ctx.phi), s);
    return lhs - rhs;
}

ValuedForm identity_pro2(const CorrespondenceContext& ctx, const ValuedForm& sigma) {
    auto deg = sigma.bidegree();
    if (!deg || deg->first != ctx.n)
        throw std::invalid_argument("identity_pro2: input must be homogeneous of type (n,q)");
    BeltramiField neg = ctx.phi * GaussRational(-1);
    ValuedForm inner = exp_contract(ctx.phi, sigma);
    ValuedForm lhs =
        exp_contract(neg, nabla_full(ctx.conn, inner) + end_act(ctx.psiE.m, inner));
    ValuedForm rhs = sigma.dbar() + nabla10(ctx.conn, contract(ctx.phi, sigma)) +
                     end_act(ctx.psiE.m, sigma);
    return lhs - rhs;
}

namespace {

std::pair<int, int> require_homogeneous(const ValuedForm& s) {
    auto deg = s.bidegree();
    if (!deg)
        throw std::invalid_argument("correspondence identity: input must be homogeneous");
    return *deg;
}

} // namespace

ValuedForm identity_thm1(const CorrespondenceContext& ctx, const ValuedForm& s) {
    auto [p, q] = require_homogeneous(s);
    ValuedForm Is = iso_I(s, p, q);
    ValuedForm lhs =
        nabla10(ctx.conn, contract(ctx.phi, Is)) + psi_tensor_act(ctx.phi, ctx.conn, Is);
    ValuedForm rhs = iso_I(ValuedForm::from_form(-lie10_scalar(ctx.phi, s.as_form())), p, q + 1);
    return lhs - rhs;
}

ValuedForm identity_thm2(const CorrespondenceContext& ctx, const ValuedForm& s) {
    auto [p, q] = require_homogeneous(s);
    ValuedForm Is = iso_I(s, p, q);
    ValuedForm lhs = nabla10(ctx.conn, contract(ctx.phi, Is)) +
                     psi_tensor_act(ctx.phi, ctx.conn, Is) + end_act(ctx.psiE.m, Is);
    ValuedForm rhs =
        iso_I(-lie10_conn(ctx.conn, ctx.phi, s) + end_act(ctx.psiE.m, s), p, q + 1);
    return lhs - rhs;
}

ValuedForm identity_nabla01(const CorrespondenceContext& ctx, const ValuedForm& s) {
    auto [p, q] = require_homogeneous(s);
    ValuedForm Is = iso_I(s, p, q);
    ValuedForm lhs = Is.dbar() + nabla10(ctx.conn, contract(ctx.phi, Is));
    ValuedForm rhs = iso_I(s.dbar() - lie10_conn(ctx.conn, ctx.phi, s), p, q + 1);
    return lhs - rhs;
}

ValuedForm nabla01_cross_check(const CorrespondenceContext& ctx, const ValuedForm& s) {
    auto [p, q] = require_homogeneous(s);
    ValuedForm Is = iso_I(s, p, q);
    ValuedForm diff = identity_thm2(ctx, s) - identity_nabla01(ctx, s);
    return diff - psi_tensor_act(ctx.phi, ctx.conn, Is);
}

ValuedForm identity_pro4(const CorrespondenceContext& ctx, const ValuedForm& s) {
    if (!mc_residual(ctx.phi).is_zero())
        throw std::invalid_argument("identity_pro4: family does not satisfy Maurer-Cartan");
    auto op = [&](const ValuedForm& x) {
        return x.dbar() - lie10_conn(ctx.conn, ctx.phi, x);
    };
    FormMatrix iphi_theta = contract(ctx.phi, curvature(ctx.conn));
    return op(op(s)) + end_act(iphi_theta, s);
}

Form coro1_residual(const CorrespondenceContext& ctx) {
    if (ctx.r != 1)
        throw std::invalid_argument("coro1_residual: requires a line bundle (r = 1)");
    // psi ^ psi vanishes identically for r = 1, so the second integrability
    // residual is exactly the displayed line-bundle equation.
    return second_residual(ctx.conn, ctx.phi, ctx.psiE)[0][0];
}

} // namespace defcalc
