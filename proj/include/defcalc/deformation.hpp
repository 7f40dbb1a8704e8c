#pragma once

#include "defcalc/connection.hpp"

namespace defcalc {

/// Tangent-valued (0,k)-form sum phi^i_J dzb^J (x) d/dz^i. k = 1 for a
/// Beltrami family phi(t); k = 2 arises for dbar(phi) - [phi,phi]/2.
class BeltramiField {
public:
    BeltramiField(int n, int order, int k) : n_(n), order_(order), k_(k) {}

    static BeltramiField zero(int n, int order, int k = 1) { return BeltramiField(n, order, k); }

    int dim() const { return n_; }
    int order() const { return order_; }
    int degree() const { return k_; }
    bool is_zero() const { return coeffs_.empty(); }

    void add(int axis, MultiIndex J, const PolySeries& c);
    const std::map<std::pair<int, uint32_t>, PolySeries>& coeffs() const { return coeffs_; }

    /// The (0,k)-form phi^i = sum_J phi^i_J dzb^J.
    Form component_form(int axis) const;
    PolySeries coeff(int axis, MultiIndex J) const;

    BeltramiField operator+(const BeltramiField& o) const;
    BeltramiField operator-(const BeltramiField& o) const;
    BeltramiField operator*(const GaussRational& c) const;
    BeltramiField operator*(const PolySeries& f) const;
    bool operator==(const BeltramiField& o) const;

    /// Component-wise dbar, raising k by one.
    BeltramiField dbar_field() const;
    BeltramiField t_coeff(int m) const;
    BeltramiField shift_t(int m) const;
    BeltramiField at_t_zero() const { return t_coeff(0); }

    std::string to_string() const;

private:
    int n_, order_, k_;
    std::map<std::pair<int, uint32_t>, PolySeries> coeffs_; // (axis, J bits) -> coefficient
};

/// psi(t) in A^{0,1}(End E): r x r matrix of (0,1)-forms with the
/// e_k -> m[k][l] (x) e_l convention.
struct EndoField {
    int n = 0, r = 0, order = 0;
    FormMatrix m;

    static EndoField zero(int n, int r, int order);
    bool is_zero() const { return matrix_is_zero(m); }
    /// Throws unless every entry is homogeneous (0,1).
    void validate() const;
    EndoField t_coeff(int k) const;
    bool operator==(const EndoField& o) const { return m == o.m; }
};

/// Contraction i_phi: wedge the dzb-block of phi on the left of the interior
/// product of the vector part with the dz-block of each term. Lowers
/// holomorphic degree by one, raises antiholomorphic degree by k.
Form contract(const BeltramiField& phi, const Form& s);
ValuedForm contract(const BeltramiField& phi, const ValuedForm& s);
FormMatrix contract(const BeltramiField& phi, const FormMatrix& m);

/// e^{i_phi} = sum_k i_phi^k / k!, finite because each application lowers the
/// holomorphic degree. Requires k = 1.
Form exp_contract(const BeltramiField& phi, const Form& s);
ValuedForm exp_contract(const BeltramiField& phi, const ValuedForm& s);

/// [phi,psi]^k = phi^i ^ d_i psi^k + psi^i ^ d_i phi^k, a k=2 field.
BeltramiField bracket(const BeltramiField& phi, const BeltramiField& psi);

/// Maurer-Cartan residual dbar(phi) - [phi,phi]/2.
BeltramiField mc_residual(const BeltramiField& phi);

/// Holomorphic Lie derivative i_phi d - d i_phi in the (1,0) direction,
/// with d = partial (scalar), nabla10 (valued), or the full connection.
Form lie10_scalar(const BeltramiField& phi, const Form& s);
ValuedForm lie10_conn(const ConnectionData& conn, const BeltramiField& phi, const ValuedForm& s);
ValuedForm lie_full(const ConnectionData& conn, const BeltramiField& phi, const ValuedForm& s);

/// Left side of the second integrability equation for the pair deformation:
/// (dbar - Lie_phi) psi - psi ^ psi - i_phi Theta, an End(E)-valued (0,2).
FormMatrix second_residual(const ConnectionData& conn, const BeltramiField& phi,
                           const EndoField& psi);

/// Endomorphism data of the induced deformations on Omega, Omega^p and K^-1:
///   psi_Omega[k][l] = -(d_l phi^k + Gamma^k_{jl} phi^j)
///   psi_Kinv       = (d_l phi^l_m + Gamma^l_{jl} phi^j_m) dzb^m
FormMatrix psi_omega(const BeltramiField& phi, const ConnectionData& conn);
Form psi_kinv(const BeltramiField& phi, const ConnectionData& conn);
/// Slot-derivation action on the OmegaP factors of s.
ValuedForm psi_omega_p_act(const BeltramiField& phi, const ConnectionData& conn,
                           const ValuedForm& s);
/// Combined derivation over OmegaP and Kinv factors.
ValuedForm psi_tensor_act(const BeltramiField& phi, const ConnectionData& conn,
                          const ValuedForm& s);

/// Square matrices of series, used for transition data and Jacobians.
using SeriesMatrix = std::vector<std::vector<PolySeries>>;

SeriesMatrix series_identity(int size, int n, int order);
SeriesMatrix series_mat_mul(const SeriesMatrix& a, const SeriesMatrix& b);
bool series_is_identity_at_t0(const SeriesMatrix& m);
/// Neumann-series inverse of a matrix equal to the identity at t = 0.
SeriesMatrix series_mat_inverse(const SeriesMatrix& m);

/// Endomorphism family of the bundle deformation from transition data w
/// (frame change (v)_t = w (v)_0, w = id + O(t)):
///   psi[k][l] = (w^{-1})[l][j] ((dbar - L_phi) w[j][k]) + i_phi theta[k][l].
EndoField psi_from_transition(const SeriesMatrix& w, const ConnectionData& conn,
                              const BeltramiField& phi);

/// Beltrami family of the deformed chart z_t = z + O(t):
/// phi^i_j = (dz_t/dz)^{-1}[i][k] * d(z_t^k)/dzb^j.
BeltramiField phi_from_trivialization(const std::vector<PolySeries>& zt);

struct IntegrabilityWitness {
    bool holds = false;
    /// Per frame column: (0,1)-part minus i_phi((1,0)-part) of
    /// (nabla + psi) applied to the deformed frame, in the t = 0 frame.
    FormMatrix residual;
    std::string to_string() const;
};

/// Checks that nabla + psi is integrable for the deformed holomorphic
/// structure: the (0,1)-part of (nabla + psi)(e_t) must equal i_phi of its
/// (1,0)-part.
IntegrabilityWitness integrability_check(const SeriesMatrix& w, const ConnectionData& conn,
                                         const BeltramiField& phi, const EndoField& psi);

} // namespace defcalc
