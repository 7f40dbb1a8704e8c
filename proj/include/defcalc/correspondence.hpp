#pragma once

#include "defcalc/deformation.hpp"

namespace defcalc {

/// Chart data for the correspondence checks: connection, Beltrami family and
/// optional endomorphism family, all sharing n, r, N.
struct CorrespondenceContext {
    int n = 0;
    int r = 1;
    int order = 0;
    ConnectionData conn;
    BeltramiField phi{0, 0, 1};
    EndoField psiE;

    static CorrespondenceContext make(int n, int r, int order);
};

/// Relabeling isomorphism from (p,q)-forms (scalar or E-valued) to
/// (n,q)-forms valued in Omega^p (x) K^-1 ((x) E): the coefficient of
/// dzb^J ^ dz^I moves to the component dzb^J ^ <dz> at basis (dz^I, 1/<dz>).
/// Throws on inhomogeneous input.
ValuedForm iso_I(const ValuedForm& s, int p, int q);
ValuedForm iso_I_inv(const ValuedForm& sigma);

/// e^{-i_phi} o nabla o e^{i_phi}.
ValuedForm conjugated_nabla(const CorrespondenceContext& ctx, const ValuedForm& s);

/// Residual of the conjugation formula
///   e^{-i_phi} nabla e^{i_phi} = nabla - Lie10_phi + i_{dbar phi - [phi,phi]/2};
/// exactly zero for every phi, on or off shell.
ValuedForm identity_lry(const CorrespondenceContext& ctx, const ValuedForm& s);

/// Residual of e^{-i_phi}(nabla + psi_E)e^{i_phi} sigma
///   - (dbar sigma + nabla10 i_phi sigma + psi_E sigma) on (n,q) input;
/// equals i_{mc defect} sigma for any phi, hence zero on shell.
ValuedForm identity_pro2(const CorrespondenceContext& ctx, const ValuedForm& sigma);

/// Residual of the scalar correspondence identity
///   (nabla10 o i_phi + psi_{Omega^p (x) K^-1}) I(s) = I(-Lie10 s);
/// pointwise algebraic, zero for every phi and Gamma.
ValuedForm identity_thm1(const CorrespondenceContext& ctx, const ValuedForm& s);

/// Bundle version, with theta and psi_E in play:
///   (nabla10 o i_phi + psi_word) I(s) = I((-Lie10_conn + psi_E) s).
ValuedForm identity_thm2(const CorrespondenceContext& ctx, const ValuedForm& s);

/// Literal transcription of the (0,1)-connection correspondence:
///   (dbar + nabla10 o i_phi) I(s) - I((dbar - Lie10_conn) s).
ValuedForm identity_nabla01(const CorrespondenceContext& ctx, const ValuedForm& s);

/// Exact relation tying the two previous residuals:
///   identity_thm2 - identity_nabla01 = psi_{Omega^p (x) K^-1} I(s).
/// Returns the difference of the two sides (zero always).
ValuedForm nabla01_cross_check(const CorrespondenceContext& ctx, const ValuedForm& s);

/// Residual of (dbar - Lie10_conn)^2 s + (i_phi Theta) s. Requires an
/// on-shell family; throws std::invalid_argument otherwise.
ValuedForm identity_pro4(const CorrespondenceContext& ctx, const ValuedForm& s);

/// Line-bundle residual (dbar - Lie_phi) psi - i_phi Theta. Requires r = 1.
Form coro1_residual(const CorrespondenceContext& ctx);

} // namespace defcalc
