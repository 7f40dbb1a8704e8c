#include "defcalc/bundle.hpp"

#include <stdexcept>

namespace defcalc {

int Factor::rank() const {
    switch (kind) {
    case Kind::E: return r;
    case Kind::Tangent: return n;
    case Kind::OmegaP: {
        long num = 1, den = 1;
        for (int k = 0; k < p; ++k) {
            num *= n - k;
            den *= k + 1;
        }
        return static_cast<int>(num / den);
    }
    case Kind::Kinv: return 1;
    case Kind::EndE: return r * r;
    }
    return 0;
}

std::vector<int> Factor::basis_indices() const {
    std::vector<int> out;
    switch (kind) {
    case Kind::E:
        for (int k = 1; k <= r; ++k) out.push_back(k);
        break;
    case Kind::Tangent:
        for (int k = 1; k <= n; ++k) out.push_back(k);
        break;
    case Kind::OmegaP:
        for (const MultiIndex& I : multi_indices(n, p))
            out.push_back(static_cast<int>(I.bits()));
        break;
    case Kind::Kinv:
        out.push_back(1);
        break;
    case Kind::EndE:
        for (int k = 1; k <= r; ++k)
            for (int l = 1; l <= r; ++l)
                out.push_back((k - 1) * r + l);
        break;
    }
    return out;
}

bool Factor::valid_index(int idx) const {
    switch (kind) {
    case Kind::E: return idx >= 1 && idx <= r;
    case Kind::Tangent: return idx >= 1 && idx <= n;
    case Kind::OmegaP: {
        if (idx < 0)
            return false;
        MultiIndex I(static_cast<uint32_t>(idx));
        return I.size() == p && (n == 32 || I.bits() < (1u << n));
    }
    case Kind::Kinv: return idx == 1;
    case Kind::EndE: return idx >= 1 && idx <= r * r;
    }
    return false;
}

std::string Factor::basis_label(int idx) const {
    switch (kind) {
    case Kind::E: return "e" + std::to_string(idx);
    case Kind::Tangent: return "d/dz" + std::to_string(idx);
    case Kind::OmegaP: return "dz^{" + MultiIndex(static_cast<uint32_t>(idx)).to_string() + "}";
    case Kind::Kinv: return "1/<dz>";
    case Kind::EndE: {
        int k = (idx - 1) / r + 1, l = (idx - 1) % r + 1;
        return "E(" + std::to_string(k) + "->" + std::to_string(l) + ")";
    }
    }
    return "?";
}

long FiberWord::rank() const {
    long r = 1;
    for (const Factor& f : factors_)
        r *= f.rank();
    return r;
}

std::vector<std::vector<int>> FiberWord::basis_tuples() const {
    std::vector<std::vector<int>> out{{}};
    for (const Factor& f : factors_) {
        std::vector<std::vector<int>> next;
        for (const auto& prefix : out) {
            for (int idx : f.basis_indices()) {
                auto tuple = prefix;
                tuple.push_back(idx);
                next.push_back(std::move(tuple));
            }
        }
        out = std::move(next);
    }
    return out;
}

std::string FiberWord::to_string() const {
    if (factors_.empty())
        return "scalar";
    std::string out;
    for (const Factor& f : factors_) {
        if (!out.empty())
            out += " (x) ";
        switch (f.kind) {
        case Factor::Kind::E: out += "E"; break;
        case Factor::Kind::Tangent: out += "T"; break;
        case Factor::Kind::OmegaP: out += "Omega^" + std::to_string(f.p); break;
        case Factor::Kind::Kinv: out += "K^-1"; break;
        case Factor::Kind::EndE: out += "End(E)"; break;
        }
    }
    return out;
}

ValuedForm ValuedForm::from_form(const Form& f) {
    ValuedForm v(FiberWord::scalar(), f.dim(), f.order());
    v.add({}, f);
    return v;
}

Form ValuedForm::component_at(const std::vector<int>& basis) const {
    auto it = comps_.find(basis);
    if (it != comps_.end())
        return it->second;
    return Form::zero(n_, order_);
}

Form ValuedForm::as_form() const {
    if (!word_.empty())
        throw std::logic_error("ValuedForm: not a scalar word");
    return component_at({});
}

void ValuedForm::add(const std::vector<int>& basis, const Form& f) {
    if (basis.size() != word_.size())
        throw std::invalid_argument("ValuedForm: basis tuple length mismatch");
    for (size_t k = 0; k < basis.size(); ++k)
        if (!word_[k].valid_index(basis[k]))
            throw std::invalid_argument("ValuedForm: basis index out of range");
    if (f.is_zero())
        return;
    auto it = comps_.find(basis);
    if (it == comps_.end()) {
        comps_.emplace(basis, f);
    } else {
        Form sum = it->second + f;
        if (sum.is_zero())
            comps_.erase(it);
        else
            it->second = sum;
    }
}

void ValuedForm::check_compatible(const ValuedForm& o) const {
    if (n_ != o.n_ || order_ != o.order_ || !(word_ == o.word_))
        throw std::invalid_argument("ValuedForm: word or chart mismatch");
}

ValuedForm ValuedForm::operator+(const ValuedForm& o) const {
    check_compatible(o);
    ValuedForm r = *this;
    for (const auto& [b, f] : o.comps_)
        r.add(b, f);
    return r;
}

ValuedForm ValuedForm::operator-(const ValuedForm& o) const {
    check_compatible(o);
    ValuedForm r = *this;
    for (const auto& [b, f] : o.comps_)
        r.add(b, -f);
    return r;
}

ValuedForm ValuedForm::operator-() const {
    ValuedForm r(word_, n_, order_);
    for (const auto& [b, f] : comps_)
        r.comps_.emplace(b, -f);
    return r;
}

ValuedForm ValuedForm::operator*(const GaussRational& c) const {
    ValuedForm r(word_, n_, order_);
    if (c.is_zero())
        return r;
    for (const auto& [b, f] : comps_)
        r.comps_.emplace(b, f * c);
    return r;
}

ValuedForm ValuedForm::operator*(const PolySeries& f) const {
    ValuedForm r(word_, n_, order_);
    for (const auto& [b, g] : comps_)
        r.add(b, g * f);
    return r;
}

bool ValuedForm::operator==(const ValuedForm& o) const {
    return n_ == o.n_ && order_ == o.order_ && word_ == o.word_ && comps_ == o.comps_;
}

ValuedForm ValuedForm::wedge_left(const Form& a) const {
    ValuedForm r(word_, n_, order_);
    for (const auto& [b, f] : comps_)
        r.add(b, a.wedge(f));
    return r;
}

ValuedForm ValuedForm::dbar() const {
    ValuedForm r(word_, n_, order_);
    for (const auto& [b, f] : comps_)
        r.add(b, f.dbar());
    return r;
}

ValuedForm ValuedForm::component(int p, int q) const {
    ValuedForm r(word_, n_, order_);
    for (const auto& [b, f] : comps_)
        r.add(b, f.component(p, q));
    return r;
}

std::optional<std::pair<int, int>> ValuedForm::bidegree() const {
    std::optional<std::pair<int, int>> deg;
    for (const auto& [b, f] : comps_) {
        auto d = f.bidegree();
        if (!d)
            return std::nullopt;
        if (!deg)
            deg = d;
        else if (*deg != *d)
            return std::nullopt;
    }
    if (!deg)
        return std::pair<int, int>{0, 0};
    return deg;
}

ValuedForm ValuedForm::t_coeff(int m) const {
    ValuedForm r(word_, n_, order_);
    for (const auto& [b, f] : comps_)
        r.add(b, f.t_coeff(m));
    return r;
}

ValuedForm ValuedForm::shift_t(int m) const {
    ValuedForm r(word_, n_, order_);
    for (const auto& [b, f] : comps_)
        r.add(b, f.shift_t(m));
    return r;
}

std::string ValuedForm::to_string() const {
    if (comps_.empty())
        return "0";
    std::string out;
    for (const auto& [b, f] : comps_) {
        std::string labels;
        for (size_t k = 0; k < b.size(); ++k)
            labels += " (x) " + word_[k].basis_label(b[k]);
        std::string piece = "(" + f.to_string() + ")" + labels;
        if (!out.empty())
            out += " + ";
        out += piece;
    }
    return out;
}

} // namespace defcalc
