#pragma once

#include "defcalc/form.hpp"

#include <map>
#include <vector>

namespace defcalc {

/// One tensor factor of a fiber word. Basis index conventions:
///   E       1..r                    (frame e1..er)
///   Tangent 1..n                    (d/dz1..d/dzn)
///   OmegaP  MultiIndex bitmask      (dz^I with |I| = p)
///   Kinv    1                       (1/<dz>)
///   EndE    (k-1)*r + l, k,l in 1..r (e_k -> e_l elementary map)
struct Factor {
    enum class Kind { E, Tangent, OmegaP, Kinv, EndE };
    Kind kind;
    int n = 0; // chart dimension (Tangent, OmegaP)
    int r = 0; // bundle rank (E, EndE)
    int p = 0; // wedge degree (OmegaP)

    static Factor e(int r) { return {Kind::E, 0, r, 0}; }
    static Factor tangent(int n) { return {Kind::Tangent, n, 0, 0}; }
    static Factor omega_p(int n, int p) { return {Kind::OmegaP, n, 0, p}; }
    static Factor kinv() { return {Kind::Kinv, 0, 0, 0}; }
    static Factor end_e(int r) { return {Kind::EndE, 0, r, 0}; }

    int rank() const;
    std::vector<int> basis_indices() const;
    bool valid_index(int idx) const;
    std::string basis_label(int idx) const;

    bool operator==(const Factor& o) const {
        return kind == o.kind && n == o.n && r == o.r && p == o.p;
    }
};

/// Ordered tensor word over the basic fibers; the empty word denotes scalar
/// forms.
class FiberWord {
public:
    FiberWord() = default;
    explicit FiberWord(std::vector<Factor> factors) : factors_(std::move(factors)) {}

    static FiberWord scalar() { return FiberWord(); }

    const std::vector<Factor>& factors() const { return factors_; }
    size_t size() const { return factors_.size(); }
    bool empty() const { return factors_.empty(); }
    const Factor& operator[](size_t k) const { return factors_[k]; }

    long rank() const;
    bool operator==(const FiberWord& o) const { return factors_ == o.factors_; }

    /// Every basis tuple of the word, lexicographic in the per-factor order.
    std::vector<std::vector<int>> basis_tuples() const;

    std::string to_string() const;

private:
    std::vector<Factor> factors_;
};

/// Form-linear combination of basis elements of a fiber word. Components
/// share the chart dimension and truncation order; zero components are not
/// stored.
class ValuedForm {
public:
    ValuedForm(FiberWord word, int n, int order)
        : n_(n), order_(order), word_(std::move(word)) {}

    /// Scalar forms are valued forms over the empty word.
    static ValuedForm from_form(const Form& f);

    int dim() const { return n_; }
    int order() const { return order_; }
    const FiberWord& word() const { return word_; }
    const std::map<std::vector<int>, Form>& components() const { return comps_; }

    bool is_zero() const { return comps_.empty(); }
    Form component_at(const std::vector<int>& basis) const;
    /// The unique component of a scalar-word value.
    Form as_form() const;

    void add(const std::vector<int>& basis, const Form& f);

    ValuedForm operator+(const ValuedForm& o) const;
    ValuedForm operator-(const ValuedForm& o) const;
    ValuedForm operator-() const;
    ValuedForm operator*(const GaussRational& c) const;
    ValuedForm operator*(const PolySeries& f) const;
    bool operator==(const ValuedForm& o) const;
    bool operator!=(const ValuedForm& o) const { return !(*this == o); }

    /// a ^ (each component); used for operator coefficients, which always
    /// enter on the left.
    ValuedForm wedge_left(const Form& a) const;

    /// Component-wise Dolbeault operator (holomorphic-frame gauge).
    ValuedForm dbar() const;

    /// Bidegree projection of the form parts.
    ValuedForm component(int p, int q) const;
    /// (p,q) when every component form is homogeneous of one bidegree.
    std::optional<std::pair<int, int>> bidegree() const;

    ValuedForm t_coeff(int m) const;
    ValuedForm shift_t(int m) const;

    std::string to_string() const;

private:
    void check_compatible(const ValuedForm& o) const;

    int n_;
    int order_;
    FiberWord word_;
    std::map<std::vector<int>, Form> comps_;
};

} // namespace defcalc
