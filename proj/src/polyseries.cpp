#include "defcalc/polyseries.hpp"

#include <stdexcept>

namespace defcalc {

uint32_t Monomial::z_total() const {
    uint32_t s = 0;
    for (auto e : z_exp) s += e;
    return s;
}

uint32_t Monomial::zb_total() const {
    uint32_t s = 0;
    for (auto e : zb_exp) s += e;
    return s;
}

PolySeries::PolySeries(int n, int order) : n_(n), order_(order) {
    if (n < 0 || order < 0)
        throw std::invalid_argument("PolySeries: negative dimension or truncation order");
}

PolySeries PolySeries::constant(int n, int order, GaussRational c) {
    PolySeries p(n, order);
    Monomial m;
    m.z_exp.assign(n, 0);
    m.zb_exp.assign(n, 0);
    p.add_term(m, c);
    return p;
}

PolySeries PolySeries::monomial(int n, int order, const Monomial& m, GaussRational c) {
    if (static_cast<int>(m.z_exp.size()) != n || static_cast<int>(m.zb_exp.size()) != n)
        throw std::invalid_argument("PolySeries::monomial: exponent tuple length mismatch");
    PolySeries p(n, order);
    p.add_term(m, c);
    return p;
}

static void check_axis(int n, int axis) {
    if (axis < 1 || axis > n)
        throw std::out_of_range("PolySeries: axis out of range");
}

PolySeries PolySeries::var_z(int n, int order, int axis) {
    check_axis(n, axis);
    PolySeries p(n, order);
    Monomial m;
    m.z_exp.assign(n, 0);
    m.zb_exp.assign(n, 0);
    m.z_exp[axis - 1] = 1;
    p.add_term(m, GaussRational::one());
    return p;
}

PolySeries PolySeries::var_zb(int n, int order, int axis) {
    check_axis(n, axis);
    PolySeries p(n, order);
    Monomial m;
    m.z_exp.assign(n, 0);
    m.zb_exp.assign(n, 0);
    m.zb_exp[axis - 1] = 1;
    p.add_term(m, GaussRational::one());
    return p;
}

PolySeries PolySeries::var_t(int n, int order) {
    PolySeries p(n, order);
    if (order < 1)
        return p; // t truncates away at N = 0
    Monomial m;
    m.z_exp.assign(n, 0);
    m.zb_exp.assign(n, 0);
    m.t_exp = 1;
    p.add_term(m, GaussRational::one());
    return p;
}

void PolySeries::check_compatible(const PolySeries& o) const {
    if (n_ != o.n_ || order_ != o.order_)
        throw std::invalid_argument("PolySeries: dimension/truncation mismatch");
}

void PolySeries::add_term(const Monomial& m, const GaussRational& c) {
    if (c.is_zero() || m.t_exp > static_cast<uint32_t>(order_))
        return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second.is_zero())
            terms_.erase(it);
    }
}

PolySeries PolySeries::operator+(const PolySeries& o) const {
    check_compatible(o);
    PolySeries r = *this;
    for (const auto& [m, c] : o.terms_)
        r.add_term(m, c);
    return r;
}

PolySeries PolySeries::operator-(const PolySeries& o) const {
    check_compatible(o);
    PolySeries r = *this;
    for (const auto& [m, c] : o.terms_)
        r.add_term(m, -c);
    return r;
}

PolySeries PolySeries::operator-() const {
    PolySeries r(n_, order_);
    for (const auto& [m, c] : terms_)
        r.terms_.emplace(m, -c);
    return r;
}

PolySeries PolySeries::operator*(const PolySeries& o) const {
    check_compatible(o);
    PolySeries r(n_, order_);
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            if (ma.t_exp + mb.t_exp > static_cast<uint32_t>(order_))
                continue;
            Monomial m;
            m.t_exp = ma.t_exp + mb.t_exp;
            m.z_exp.resize(n_);
            m.zb_exp.resize(n_);
            for (int k = 0; k < n_; ++k) {
                m.z_exp[k] = ma.z_exp[k] + mb.z_exp[k];
                m.zb_exp[k] = ma.zb_exp[k] + mb.zb_exp[k];
            }
            r.add_term(m, ca * cb);
        }
    }
    return r;
}

PolySeries PolySeries::operator*(const GaussRational& c) const {
    if (c.is_zero())
        return PolySeries(n_, order_);
    PolySeries r(n_, order_);
    for (const auto& [m, a] : terms_)
        r.terms_.emplace(m, a * c);
    return r;
}

PolySeries PolySeries::pow(unsigned e) const {
    PolySeries r = constant(n_, order_, GaussRational::one());
    for (unsigned k = 0; k < e; ++k)
        r = r * *this;
    return r;
}

bool PolySeries::operator==(const PolySeries& o) const {
    return n_ == o.n_ && order_ == o.order_ && terms_ == o.terms_;
}

PolySeries PolySeries::d_z(int axis) const {
    check_axis(n_, axis);
    PolySeries r(n_, order_);
    for (const auto& [m, c] : terms_) {
        uint32_t e = m.z_exp[axis - 1];
        if (e == 0)
            continue;
        Monomial d = m;
        d.z_exp[axis - 1] = e - 1;
        r.add_term(d, c * GaussRational(static_cast<long>(e)));
    }
    return r;
}

PolySeries PolySeries::d_zb(int axis) const {
    check_axis(n_, axis);
    PolySeries r(n_, order_);
    for (const auto& [m, c] : terms_) {
        uint32_t e = m.zb_exp[axis - 1];
        if (e == 0)
            continue;
        Monomial d = m;
        d.zb_exp[axis - 1] = e - 1;
        r.add_term(d, c * GaussRational(static_cast<long>(e)));
    }
    return r;
}

PolySeries PolySeries::t_coeff(int m) const {
    PolySeries r(n_, order_);
    for (const auto& [mono, c] : terms_) {
        if (mono.t_exp == static_cast<uint32_t>(m)) {
            Monomial t0 = mono;
            t0.t_exp = 0;
            r.terms_.emplace(t0, c);
        }
    }
    return r;
}

PolySeries PolySeries::shift_t(int m) const {
    PolySeries r(n_, order_);
    for (const auto& [mono, c] : terms_) {
        if (mono.t_exp + m > static_cast<uint32_t>(order_))
            continue;
        Monomial s = mono;
        s.t_exp += m;
        r.terms_.emplace(s, c);
    }
    return r;
}

int PolySeries::max_t_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_)
        d = std::max(d, static_cast<int>(m.t_exp));
    return d;
}

bool PolySeries::is_constant() const {
    if (terms_.empty())
        return true;
    if (terms_.size() > 1)
        return false;
    const Monomial& m = terms_.begin()->first;
    return m.t_exp == 0 && m.z_total() == 0 && m.zb_total() == 0;
}

GaussRational PolySeries::constant_value() const {
    if (!is_constant())
        throw std::logic_error("PolySeries: not a constant");
    return terms_.empty() ? GaussRational::zero() : terms_.begin()->second;
}

std::string PolySeries::to_string() const {
    if (terms_.empty())
        return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        std::string term = c.to_string();
        bool coeff_is_one = c.is_one();
        bool coeff_is_minus_one = (-c).is_one();
        std::string vars;
        auto append_var = [&vars](const std::string& name, uint32_t e) {
            if (e == 0)
                return;
            if (!vars.empty())
                vars += "*";
            vars += name;
            if (e > 1)
                vars += "^" + std::to_string(e);
        };
        for (int k = 0; k < n_; ++k)
            append_var("z" + std::to_string(k + 1), m.z_exp[k]);
        for (int k = 0; k < n_; ++k)
            append_var("zb" + std::to_string(k + 1), m.zb_exp[k]);
        append_var("t", m.t_exp);

        std::string piece;
        if (vars.empty())
            piece = term;
        else if (coeff_is_one)
            piece = vars;
        else if (coeff_is_minus_one)
            piece = "-" + vars;
        else
            piece = term + "*" + vars;

        if (first) {
            out = piece;
            first = false;
        } else if (!piece.empty() && piece[0] == '-') {
            out += " - " + piece.substr(1);
        } else {
            out += " + " + piece;
        }
    }
    return out;
}

} // namespace defcalc
