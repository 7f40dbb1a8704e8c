#pragma once

#include "defcalc/multi_index.hpp"
#include "defcalc/polyseries.hpp"

#include <map>
#include <optional>

namespace defcalc {

/// One wedge monomial dzb^J ^ dz^I (both blocks ascending, antiholomorphic
/// block first). The stored coefficient of a Form multiplies this orientation.
struct FormKey {
    MultiIndex I; // dz block
    MultiIndex J; // dzb block
    bool operator==(const FormKey& o) const { return I == o.I && J == o.J; }
};

struct FormKeyLess {
    bool operator()(const FormKey& a, const FormKey& b) const {
        if (a.J != b.J)
            return a.J.lex_less(b.J);
        return a.I.lex_less(b.I);
    }
};

/// Element of the bigraded exterior algebra on the chart, with PolySeries
/// coefficients. May be inhomogeneous. Normal form: no zero coefficients,
/// each (I,J) key at most once.
class Form {
public:
    Form(int n, int order) : n_(n), order_(order) {}

    static Form zero(int n, int order) { return Form(n, order); }
    static Form scalar(const PolySeries& f);
    static Form dz(int n, int order, int axis);
    static Form dzb(int n, int order, int axis);
    /// dz^1 ^ ... ^ dz^n, the canonical volume generator.
    static Form dz_all(int n, int order);
    /// Single term f * dzb^J ^ dz^I.
    static Form term(const PolySeries& f, MultiIndex I, MultiIndex J);

    int dim() const { return n_; }
    int order() const { return order_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<FormKey, PolySeries, FormKeyLess>& terms() const { return terms_; }

    Form operator+(const Form& o) const;
    Form operator-(const Form& o) const;
    Form operator-() const;
    Form operator*(const GaussRational& c) const;
    Form operator*(const PolySeries& f) const; // multiply coefficients (0-form action)

    bool operator==(const Form& o) const;
    bool operator!=(const Form& o) const { return !(*this == o); }

    /// Graded-commutative product; signs from sorting generators into the
    /// canonical dzb-then-dz ascending order.
    Form wedge(const Form& o) const;

    /// Dolbeault operators; the new generator is wedged on the left.
    Form partial() const;
    Form dbar() const;

    /// The (p,q)-homogeneous part.
    Form component(int p, int q) const;
    /// (p,q) when every term has the same bidegree (zero counts as any).
    std::optional<std::pair<int, int>> bidegree() const;
    bool is_homogeneous(int p, int q) const;

    int max_dz_degree() const;  // -1 when zero
    int max_dzb_degree() const; // -1 when zero

    Form t_coeff(int m) const;
    Form shift_t(int m) const;

    void add_term(MultiIndex I, MultiIndex J, const PolySeries& f);

    /// Terms ordered lexicographically by (J, I); coefficients in the
    /// expression grammar. Example: "(z1 + t*zb1)*dz1".
    std::string to_string() const;

private:
    void check_compatible(const Form& o) const;

    int n_;
    int order_;
    std::map<FormKey, PolySeries, FormKeyLess> terms_;
};

inline Form operator*(const PolySeries& f, const Form& w) { return w * f; }

} // namespace defcalc
