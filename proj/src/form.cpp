#include "defcalc/form.hpp"

#include <stdexcept>

namespace defcalc {

Form Form::scalar(const PolySeries& f) {
    Form w(f.dim(), f.order());
    w.add_term(MultiIndex::empty(), MultiIndex::empty(), f);
    return w;
}

Form Form::dz(int n, int order, int axis) {
    Form w(n, order);
    w.add_term(MultiIndex::single(axis), MultiIndex::empty(),
               PolySeries::constant(n, order, GaussRational::one()));
    return w;
}

Form Form::dzb(int n, int order, int axis) {
    Form w(n, order);
    w.add_term(MultiIndex::empty(), MultiIndex::single(axis),
               PolySeries::constant(n, order, GaussRational::one()));
    return w;
}

Form Form::dz_all(int n, int order) {
    Form w(n, order);
    w.add_term(MultiIndex::full(n), MultiIndex::empty(),
               PolySeries::constant(n, order, GaussRational::one()));
    return w;
}

Form Form::term(const PolySeries& f, MultiIndex I, MultiIndex J) {
    Form w(f.dim(), f.order());
    w.add_term(I, J, f);
    return w;
}

void Form::check_compatible(const Form& o) const {
    if (n_ != o.n_ || order_ != o.order_)
        throw std::invalid_argument("Form: dimension/truncation mismatch");
}

void Form::add_term(MultiIndex I, MultiIndex J, const PolySeries& f) {
    if (f.is_zero())
        return;
    FormKey key{I, J};
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(key, f);
    } else {
        PolySeries sum = it->second + f;
        if (sum.is_zero())
            terms_.erase(it);
        else
            it->second = sum;
    }
}

Form Form::operator+(const Form& o) const {
    check_compatible(o);
    Form r = *this;
    for (const auto& [k, f] : o.terms_)
        r.add_term(k.I, k.J, f);
    return r;
}

Form Form::operator-(const Form& o) const {
    check_compatible(o);
    Form r = *this;
    for (const auto& [k, f] : o.terms_)
        r.add_term(k.I, k.J, -f);
    return r;
}

Form Form::operator-() const {
    Form r(n_, order_);
    for (const auto& [k, f] : terms_)
        r.terms_.emplace(k, -f);
    return r;
}

Form Form::operator*(const GaussRational& c) const {
    Form r(n_, order_);
    if (c.is_zero())
        return r;
    for (const auto& [k, f] : terms_)
        r.terms_.emplace(k, f * c);
    return r;
}

Form Form::operator*(const PolySeries& f) const {
    Form r(n_, order_);
    for (const auto& [k, g] : terms_)
        r.add_term(k.I, k.J, g * f);
    return r;
}

bool Form::operator==(const Form& o) const {
    return n_ == o.n_ && order_ == o.order_ && terms_ == o.terms_;
}

Form Form::wedge(const Form& o) const {
    check_compatible(o);
    Form r(n_, order_);
    for (const auto& [ka, fa] : terms_) {
        for (const auto& [kb, fb] : o.terms_) {
            // (dzb^Ja ^ dz^Ia) ^ (dzb^Jb ^ dz^Ib): moving dzb^Jb left past
            // dz^Ia costs (-1)^(|Ia|*|Jb|), then both blocks merge ascending.
            auto [sj, J] = ka.J.merge(kb.J);
            if (sj == 0)
                continue;
            auto [si, I] = ka.I.merge(kb.I);
            if (si == 0)
                continue;
            int sign = si * sj;
            if ((ka.I.size() * kb.J.size()) % 2 != 0)
                sign = -sign;
            PolySeries c = fa * fb;
            if (sign < 0)
                c = -c;
            r.add_term(I, J, c);
        }
    }
    return r;
}

Form Form::partial() const {
    Form r(n_, order_);
    for (const auto& [k, f] : terms_) {
        for (int axis = 1; axis <= n_; ++axis) {
            PolySeries df = f.d_z(axis);
            if (df.is_zero())
                continue;
            auto [si, I] = k.I.insert(axis);
            if (si == 0)
                continue;
            // dz^axis enters on the left and passes the dzb block.
            int sign = (k.J.size() % 2 == 0) ? si : -si;
            r.add_term(I, k.J, sign < 0 ? -df : df);
        }
    }
    return r;
}

Form Form::dbar() const {
    Form r(n_, order_);
    for (const auto& [k, f] : terms_) {
        for (int axis = 1; axis <= n_; ++axis) {
            PolySeries df = f.d_zb(axis);
            if (df.is_zero())
                continue;
            auto [sj, J] = k.J.insert(axis);
            if (sj == 0)
                continue;
            r.add_term(k.I, J, sj < 0 ? -df : df);
        }
    }
    return r;
}

Form Form::component(int p, int q) const {
    Form r(n_, order_);
    for (const auto& [k, f] : terms_)
        if (k.I.size() == p && k.J.size() == q)
            r.terms_.emplace(k, f);
    return r;
}

std::optional<std::pair<int, int>> Form::bidegree() const {
    std::optional<std::pair<int, int>> deg;
    for (const auto& [k, f] : terms_) {
        std::pair<int, int> d{k.I.size(), k.J.size()};
        if (!deg)
            deg = d;
        else if (*deg != d)
            return std::nullopt;
    }
    if (!deg)
        return std::pair<int, int>{0, 0}; // zero form: any bidegree
    return deg;
}

bool Form::is_homogeneous(int p, int q) const {
    for (const auto& [k, f] : terms_)
        if (k.I.size() != p || k.J.size() != q)
            return false;
    return true;
}

int Form::max_dz_degree() const {
    int d = -1;
    for (const auto& [k, f] : terms_)
        d = std::max(d, k.I.size());
    return d;
}

int Form::max_dzb_degree() const {
    int d = -1;
    for (const auto& [k, f] : terms_)
        d = std::max(d, k.J.size());
    return d;
}

Form Form::t_coeff(int m) const {
    Form r(n_, order_);
    for (const auto& [k, f] : terms_)
        r.add_term(k.I, k.J, f.t_coeff(m));
    return r;
}

Form Form::shift_t(int m) const {
    Form r(n_, order_);
    for (const auto& [k, f] : terms_)
        r.add_term(k.I, k.J, f.shift_t(m));
    return r;
}

std::string Form::to_string() const {
    if (terms_.empty())
        return "0";
    std::string out;
    for (const auto& [k, f] : terms_) {
        std::string gens;
        for (int e : k.J.entries()) {
            if (!gens.empty())
                gens += "^";
            gens += "dzb" + std::to_string(e);
        }
        for (int e : k.I.entries()) {
            if (!gens.empty())
                gens += "^";
            gens += "dz" + std::to_string(e);
        }
        std::string coeff = f.to_string();
        bool needs_parens = coeff.find(' ') != std::string::npos;
        std::string piece;
        if (gens.empty())
            piece = needs_parens ? "(" + coeff + ")" : coeff;
        else if (coeff == "1")
            piece = gens;
        else if (coeff == "-1")
            piece = "-" + gens;
        else if (needs_parens)
            piece = "(" + coeff + ")*" + gens;
        else
            piece = coeff + "*" + gens;
        if (out.empty())
            out = piece;
        else if (piece[0] == '-')
            out += " - " + piece.substr(1);
        else
            out += " + " + piece;
    }
    return out;
}

} // namespace defcalc
