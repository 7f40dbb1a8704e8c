#pragma once

#include "defcalc/correspondence.hpp"

#include <functional>
#include <optional>

namespace defcalc {

/// Radial homotopy in the zb variables: on a monomial z^a zb^b dzb^J ^ dz^I
/// with q = |J| >= 1, h = (contraction with sum_j zb^j d/dzb^j) / (|b| + q).
/// Satisfies dbar h + h dbar = id on every form of dzb-degree >= 1.
/// Throws when some term has dzb-degree 0.
Form homotopy_h(const Form& w);
ValuedForm homotopy_h(const ValuedForm& w);

/// Solves dbar(x) = beta via the homotopy. beta must be dbar-closed of
/// dzb-degree >= 1; otherwise throws with the nonzero witness in the message.
Form dbar_solve(const Form& beta);
ValuedForm dbar_solve(const ValuedForm& beta);

/// Power-series family phi(t) (and optional psi(t)) with phi(0) = psi(0) = 0.
struct DeformationFamily {
    BeltramiField phi;
    std::optional<EndoField> psi;

    /// Validates the vanishing at t = 0.
    static DeformationFamily make(BeltramiField phi, std::optional<EndoField> psi = {});
    BeltramiField phi_order(int k) const { return phi.t_coeff(k); }
};

struct ExtensionResult {
    bool ok = false;
    std::string message;               // order and witness on failure
    ValuedForm sigma;                  // full solution sigma(t)
    std::vector<ValuedForm> orders;    // sigma_m, m = 0..N (t-free)
    std::vector<ValuedForm> rhs;       // right side at each order 1..N
    ValuedForm residual;               // full-equation residual, zero when ok
};

/// Order-by-order solution of (dbar - L10_{phi(t)}) sigma(t) = 0 from a
/// dbar-closed seed: at order m the right side sum_k L10_{phi_k} sigma_{m-k}
/// is checked dbar-closed and solved with the homotopy.
ExtensionResult extend_scalar(const DeformationFamily& family, const Form& sigma0);

/// Bundle version: (dbar - Lie10_conn + psi_E(t)) sigma(t) = 0.
ExtensionResult extend_bundle(const DeformationFamily& family, const ConnectionData& conn,
                              const ValuedForm& sigma0);

/// (n,q) obstruction equation dbar sigma(t) + partial i_{phi(t)} sigma(t) = 0.
ExtensionResult extend_nq(const DeformationFamily& family, const Form& sigma0);

} // namespace defcalc
