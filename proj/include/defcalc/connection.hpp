#pragma once

#include "defcalc/bundle.hpp"

namespace defcalc {

/// r x r matrix of Forms; entry [k][l] is the coefficient of the elementary
/// map e_k -> e_l (same convention for endomorphisms of any frame).
using FormMatrix = std::vector<std::vector<Form>>;

FormMatrix zero_matrix(int rows, int cols, int n, int order);
FormMatrix identity_matrix(int r, int n, int order);
bool matrix_is_zero(const FormMatrix& m);

/// Connection data in the holomorphic-frame gauge: theta is the (1,0)
/// connection matrix of E (nabla e_k = theta[k][l] (x) e_l), gamma the
/// Christoffel symbols of the tangent connection
/// (nabla_{d/dz^i} d/dz^j = gamma[k][i][j] d/dz^k). Both induce connections
/// on Omega, Omega^p, K^-1 and End(E).
struct ConnectionData {
    int n = 0;
    int r = 0;
    int order = 0;
    FormMatrix theta;                                        // r x r, (1,0)
    std::vector<std::vector<std::vector<PolySeries>>> gamma; // [k][i][j]

    static ConnectionData zero(int n, int r, int order);

    /// Throws unless every theta entry is homogeneous (1,0).
    void validate() const;

    PolySeries christoffel(int k, int i, int j) const { return gamma[k - 1][i - 1][j - 1]; }

    /// Connection 1-forms on the induced bundles.
    Form omega_tangent(int j, int k) const; // d/dz^j -> d/dz^k
    Form omega_cotangent(int a, int b) const; // dz^a -> dz^b: -gamma^a_{ib} dz^i
    Form omega_kinv() const;                  // gamma^l_{il} dz^i
};

/// (1,0)-part of the induced connection: partial on components plus the
/// connection term of every factor, with the connection 1-form wedged on the
/// left of the component (which encodes the (-1)^(form degree) of the
/// Leibniz rule).
ValuedForm nabla10(const ConnectionData& conn, const ValuedForm& s);

/// Full integrable connection dbar + nabla10.
ValuedForm nabla_full(const ConnectionData& conn, const ValuedForm& s);

/// Curvature (1,1)-part: dbar(theta) as an End(E)-valued form.
FormMatrix curvature(const ConnectionData& conn);
ValuedForm curvature_valued(const ConnectionData& conn);

/// Action of an End(E)-valued form on the E factors of s, extended as a
/// derivation over repeated E factors. Coefficient forms wedge on the left.
ValuedForm end_act(const FormMatrix& m, const ValuedForm& s);

/// Slot-derivation action of an End(Omega)-valued form (indexed by tangent
/// axes, dz^a -> m[a][b] (x) dz^b) on the OmegaP factors of s.
ValuedForm omega_slot_act(const FormMatrix& m, const ValuedForm& s);

/// Action of a scalar-valued form on the Kinv factors of s.
ValuedForm kinv_act(const Form& w, const ValuedForm& s);

/// Composition product of endomorphism-valued forms:
/// (a ^ b)[k][m] = sum_l a[k][l] ^ b[l][m].
FormMatrix matrix_wedge(const FormMatrix& a, const FormMatrix& b);

FormMatrix matrix_add(const FormMatrix& a, const FormMatrix& b);
FormMatrix matrix_sub(const FormMatrix& a, const FormMatrix& b);

/// Convert between an End(E)-valued matrix and the EndE fiber-word value.
ValuedForm matrix_to_valued(const FormMatrix& m, int n, int order);
FormMatrix valued_to_matrix(const ValuedForm& v);

} // namespace defcalc
