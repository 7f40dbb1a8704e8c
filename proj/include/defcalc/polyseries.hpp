#pragma once

#include "defcalc/gauss_rational.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace defcalc {

/// Exponent tuple of one monomial: z^a zb^b t^m. Sizes of the exponent
/// vectors equal the chart dimension n.
struct Monomial {
    std::vector<uint32_t> z_exp;
    std::vector<uint32_t> zb_exp;
    uint32_t t_exp = 0;

    uint32_t z_total() const;
    uint32_t zb_total() const;

    // Ordered by t-power first so printed series read off in deformation order.
    bool operator<(const Monomial& o) const {
        if (t_exp != o.t_exp) return t_exp < o.t_exp;
        if (z_exp != o.z_exp) return z_exp < o.z_exp;
        return zb_exp < o.zb_exp;
    }
    bool operator==(const Monomial& o) const {
        return t_exp == o.t_exp && z_exp == o.z_exp && zb_exp == o.zb_exp;
    }
};

/// Polynomial in z1..zn, zb1..zbn over Q(i), tensored with a power series in
/// the deformation parameter t truncated at order N. Zero coefficients are
/// never stored, so representation is a normal form and == is semantic
/// equality. Values are immutable in practice: every operation returns a new
/// series.
class PolySeries {
public:
    PolySeries(int n, int order);

    static PolySeries zero(int n, int order) { return PolySeries(n, order); }
    static PolySeries constant(int n, int order, GaussRational c);
    static PolySeries monomial(int n, int order, const Monomial& m, GaussRational c);
    static PolySeries var_z(int n, int order, int axis);
    static PolySeries var_zb(int n, int order, int axis);
    static PolySeries var_t(int n, int order);

    int dim() const { return n_; }
    int order() const { return order_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Monomial, GaussRational>& terms() const { return terms_; }

    PolySeries operator+(const PolySeries& o) const;
    PolySeries operator-(const PolySeries& o) const;
    PolySeries operator-() const;
    PolySeries operator*(const PolySeries& o) const;
    PolySeries operator*(const GaussRational& c) const;
    PolySeries pow(unsigned e) const;

    bool operator==(const PolySeries& o) const;
    bool operator!=(const PolySeries& o) const { return !(*this == o); }

    /// d/dz^axis resp. d/dzb^axis; t is inert.
    PolySeries d_z(int axis) const;
    PolySeries d_zb(int axis) const;

    /// Coefficient of t^m as a t-free series (same n, N).
    PolySeries t_coeff(int m) const;
    PolySeries at_t_zero() const { return t_coeff(0); }
    /// This series multiplied by t^m (re-truncated).
    PolySeries shift_t(int m) const;
    int max_t_degree() const; // -1 for the zero series

    /// Nonzero only when the series is a single constant term (or zero).
    bool is_constant() const;
    GaussRational constant_value() const; // requires is_constant()

    /// Deterministic, parseable under the expression grammar.
    std::string to_string() const;

private:
    void add_term(const Monomial& m, const GaussRational& c);
    void check_compatible(const PolySeries& o) const;

    int n_;
    int order_;
    std::map<Monomial, GaussRational> terms_;
};

inline PolySeries operator*(const GaussRational& c, const PolySeries& p) { return p * c; }

} // namespace defcalc
