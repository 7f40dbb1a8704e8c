#include "defcalc/deformation.hpp"

#include <stdexcept>

namespace defcalc {

void BeltramiField::add(int axis, MultiIndex J, const PolySeries& c) {
    if (axis < 1 || axis > n_)
        throw std::out_of_range("BeltramiField: tangent axis out of range");
    if (J.size() != k_)
        throw std::invalid_argument("BeltramiField: index length does not match degree");
    if (c.is_zero())
        return;
    auto key = std::make_pair(axis, J.bits());
    auto it = coeffs_.find(key);
    if (it == coeffs_.end()) {
        coeffs_.emplace(key, c);
    } else {
        PolySeries sum = it->second + c;
        if (sum.is_zero())
            coeffs_.erase(it);
        else
            it->second = sum;
    }
}

Form BeltramiField::component_form(int axis) const {
    Form f(n_, order_);
    for (const auto& [key, c] : coeffs_)
        if (key.first == axis)
            f.add_term(MultiIndex::empty(), MultiIndex(key.second), c);
    return f;
}

PolySeries BeltramiField::coeff(int axis, MultiIndex J) const {
    auto it = coeffs_.find({axis, J.bits()});
    return it == coeffs_.end() ? PolySeries::zero(n_, order_) : it->second;
}

BeltramiField BeltramiField::operator+(const BeltramiField& o) const {
    if (n_ != o.n_ || order_ != o.order_ || k_ != o.k_)
        throw std::invalid_argument("BeltramiField: mismatch");
    BeltramiField r = *this;
    for (const auto& [key, c] : o.coeffs_)
        r.add(key.first, MultiIndex(key.second), c);
    return r;
}

BeltramiField BeltramiField::operator-(const BeltramiField& o) const {
    return *this + o * GaussRational(-1);
}

BeltramiField BeltramiField::operator*(const GaussRational& c) const {
    BeltramiField r(n_, order_, k_);
    if (c.is_zero())
        return r;
    for (const auto& [key, a] : coeffs_)
        r.coeffs_.emplace(key, a * c);
    return r;
}

BeltramiField BeltramiField::operator*(const PolySeries& f) const {
    BeltramiField r(n_, order_, k_);
    for (const auto& [key, a] : coeffs_)
        r.add(key.first, MultiIndex(key.second), a * f);
    return r;
}

bool BeltramiField::operator==(const BeltramiField& o) const {
    return n_ == o.n_ && order_ == o.order_ && k_ == o.k_ && coeffs_ == o.coeffs_;
}

BeltramiField BeltramiField::dbar_field() const {
    BeltramiField r(n_, order_, k_ + 1);
    for (const auto& [key, c] : coeffs_) {
        MultiIndex J(key.second);
        for (int axis = 1; axis <= n_; ++axis) {
            PolySeries dc = c.d_zb(axis);
            if (dc.is_zero())
                continue;
            auto [sign, J2] = J.insert(axis);
            if (sign == 0)
                continue;
            r.add(key.first, J2, sign < 0 ? -dc : dc);
        }
    }
    return r;
}

BeltramiField BeltramiField::t_coeff(int m) const {
    BeltramiField r(n_, order_, k_);
    for (const auto& [key, c] : coeffs_)
        r.add(key.first, MultiIndex(key.second), c.t_coeff(m));
    return r;
}

BeltramiField BeltramiField::shift_t(int m) const {
    BeltramiField r(n_, order_, k_);
    for (const auto& [key, c] : coeffs_)
        r.add(key.first, MultiIndex(key.second), c.shift_t(m));
    return r;
}

std::string BeltramiField::to_string() const {
    if (coeffs_.empty())
        return "0";
    std::string out;
    for (const auto& [key, c] : coeffs_) {
        std::string piece = "(" + c.to_string() + ")*dzb{" + MultiIndex(key.second).to_string() +
                            "} (x) d/dz" + std::to_string(key.first);
        if (!out.empty())
            out += " + ";
        out += piece;
    }
    return out;
}

EndoField EndoField::zero(int n, int r, int order) {
    EndoField e;
    e.n = n;
    e.r = r;
    e.order = order;
    e.m = zero_matrix(r, r, n, order);
    return e;
}

void EndoField::validate() const {
    for (const auto& row : m)
        for (const Form& f : row)
            if (!f.is_homogeneous(0, 1))
                throw std::invalid_argument("EndoField: entry not of bidegree (0,1)");
}

EndoField EndoField::t_coeff(int k) const {
    EndoField e = zero(n, r, order);
    for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b)
            e.m[a][b] = m[a][b].t_coeff(k);
    return e;
}

Form contract(const BeltramiField& phi, const Form& s) {
    Form out(s.dim(), s.order());
    for (const auto& [key, c] : phi.coeffs()) {
        int axis = key.first;
        MultiIndex Jphi(key.second);
        for (const auto& [fk, f] : s.terms()) {
            auto [sr, Irest] = fk.I.remove(axis);
            if (sr == 0)
                continue;
            // Interior product passes the dzb block of the term first.
            int sign = (fk.J.size() % 2 == 0) ? sr : -sr;
            auto [sm, Jmerged] = Jphi.merge(fk.J);
            if (sm == 0)
                continue;
            sign *= sm;
            PolySeries coeff = c * f;
            if (sign < 0)
                coeff = -coeff;
            out.add_term(Irest, Jmerged, coeff);
        }
    }
    return out;
}

ValuedForm contract(const BeltramiField& phi, const ValuedForm& s) {
    ValuedForm out(s.word(), s.dim(), s.order());
    for (const auto& [basis, comp] : s.components())
        out.add(basis, contract(phi, comp));
    return out;
}

FormMatrix contract(const BeltramiField& phi, const FormMatrix& m) {
    FormMatrix out = m;
    for (auto& row : out)
        for (auto& f : row)
            f = contract(phi, f);
    return out;
}

Form exp_contract(const BeltramiField& phi, const Form& s) {
    if (phi.degree() != 1)
        throw std::invalid_argument("exp_contract: requires a degree-1 field");
    Form out = s;
    Form cur = s;
    mpq_class inv_fact(1);
    for (int k = 1; !cur.is_zero() && k <= s.dim() + 1; ++k) {
        cur = contract(phi, cur);
        inv_fact /= k;
        out = out + cur * GaussRational(mpq_class(inv_fact), mpq_class(0));
    }
    return out;
}

ValuedForm exp_contract(const BeltramiField& phi, const ValuedForm& s) {
    ValuedForm out(s.word(), s.dim(), s.order());
    for (const auto& [basis, comp] : s.components())
        out.add(basis, exp_contract(phi, comp));
    return out;
}

BeltramiField bracket(const BeltramiField& phi, const BeltramiField& psi) {
    if (phi.degree() != 1 || psi.degree() != 1)
        throw std::invalid_argument("bracket: requires degree-1 fields");
    BeltramiField out(phi.dim(), phi.order(), 2);
    auto half = [&out](const BeltramiField& a, const BeltramiField& b) {
        // a^i ^ d_i b^k
        for (const auto& [ka, ca] : a.coeffs()) {
            int i = ka.first;
            MultiIndex Ja(ka.second);
            for (const auto& [kb, cb] : b.coeffs()) {
                PolySeries d = cb.d_z(i);
                if (d.is_zero())
                    continue;
                auto [sign, J] = Ja.merge(MultiIndex(kb.second));
                if (sign == 0)
                    continue;
                PolySeries c = ca * d;
                if (sign < 0)
                    c = -c;
                out.add(kb.first, J, c);
            }
        }
    };
    half(phi, psi);
    half(psi, phi);
    return out;
}

BeltramiField mc_residual(const BeltramiField& phi) {
    return phi.dbar_field() - bracket(phi, phi) * GaussRational::fraction(1, 2);
}

Form lie10_scalar(const BeltramiField& phi, const Form& s) {
    return contract(phi, s.partial()) - contract(phi, s).partial();
}

ValuedForm lie10_conn(const ConnectionData& conn, const BeltramiField& phi, const ValuedForm& s) {
    return contract(phi, nabla10(conn, s)) - nabla10(conn, contract(phi, s));
}

ValuedForm lie_full(const ConnectionData& conn, const BeltramiField& phi, const ValuedForm& s) {
    return contract(phi, nabla_full(conn, s)) - nabla_full(conn, contract(phi, s));
}

FormMatrix second_residual(const ConnectionData& conn, const BeltramiField& phi,
                           const EndoField& psi) {
    ValuedForm v = matrix_to_valued(psi.m, psi.n, psi.order);
    ValuedForm lhs = v.dbar() - lie_full(conn, phi, v);
    FormMatrix out = valued_to_matrix(lhs);
    out = matrix_sub(out, matrix_wedge(psi.m, psi.m));
    out = matrix_sub(out, contract(phi, curvature(conn)));
    return out;
}

FormMatrix psi_omega(const BeltramiField& phi, const ConnectionData& conn) {
    int n = phi.dim(), order = phi.order();
    FormMatrix out = zero_matrix(n, n, n, order);
    for (const auto& [key, c] : phi.coeffs()) {
        int i = key.first; // phi^i_J
        MultiIndex J(key.second);
        for (int l = 1; l <= n; ++l) {
            // -(d_l phi^i) lands in [i][l]
            PolySeries d = c.d_z(l);
            if (!d.is_zero())
                out[i - 1][l - 1] = out[i - 1][l - 1] - Form::term(d, MultiIndex::empty(), J);
            // -Gamma^k_{il} phi^i lands in [k][l]
            for (int k = 1; k <= n; ++k) {
                PolySeries g = conn.christoffel(k, i, l) * c;
                if (!g.is_zero())
                    out[k - 1][l - 1] = out[k - 1][l - 1] - Form::term(g, MultiIndex::empty(), J);
            }
        }
    }
    return out;
}

Form psi_kinv(const BeltramiField& phi, const ConnectionData& conn) {
    FormMatrix w = psi_omega(phi, conn);
    Form out(phi.dim(), phi.order());
    for (int k = 0; k < phi.dim(); ++k)
        out = out - w[k][k];
    return out;
}

ValuedForm psi_omega_p_act(const BeltramiField& phi, const ConnectionData& conn,
                           const ValuedForm& s) {
    return omega_slot_act(psi_omega(phi, conn), s);
}

ValuedForm psi_tensor_act(const BeltramiField& phi, const ConnectionData& conn,
                          const ValuedForm& s) {
    return psi_omega_p_act(phi, conn, s) + kinv_act(psi_kinv(phi, conn), s);
}

SeriesMatrix series_identity(int size, int n, int order) {
    SeriesMatrix m(size, std::vector<PolySeries>(size, PolySeries::zero(n, order)));
    for (int k = 0; k < size; ++k)
        m[k][k] = PolySeries::constant(n, order, GaussRational::one());
    return m;
}

SeriesMatrix series_mat_mul(const SeriesMatrix& a, const SeriesMatrix& b) {
    size_t size = a.size();
    SeriesMatrix out(size, std::vector<PolySeries>(size, PolySeries::zero(a[0][0].dim(), a[0][0].order())));
    for (size_t i = 0; i < size; ++i)
        for (size_t j = 0; j < size; ++j)
            for (size_t k = 0; k < size; ++k)
                out[i][j] = out[i][j] + a[i][k] * b[k][j];
    return out;
}

bool series_is_identity_at_t0(const SeriesMatrix& m) {
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < m.size(); ++j) {
            PolySeries v = m[i][j].at_t_zero();
            PolySeries want = (i == j)
                                  ? PolySeries::constant(v.dim(), v.order(), GaussRational::one())
                                  : PolySeries::zero(v.dim(), v.order());
            if (v != want)
                return false;
        }
    return true;
}

SeriesMatrix series_mat_inverse(const SeriesMatrix& m) {
    if (!series_is_identity_at_t0(m))
        throw std::invalid_argument("series matrix is not the identity at t = 0");
    int size = static_cast<int>(m.size());
    int n = m[0][0].dim(), order = m[0][0].order();
    SeriesMatrix id = series_identity(size, n, order);
    // B := id - m is O(t); the Neumann series terminates at the truncation.
    SeriesMatrix b(size, std::vector<PolySeries>(size, PolySeries::zero(n, order)));
    for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j)
            b[i][j] = id[i][j] - m[i][j];
    SeriesMatrix inv = id;
    SeriesMatrix pw = b;
    for (int k = 1; k <= order; ++k) {
        bool all_zero = true;
        for (int i = 0; i < size; ++i)
            for (int j = 0; j < size; ++j) {
                inv[i][j] = inv[i][j] + pw[i][j];
                all_zero = all_zero && pw[i][j].is_zero();
            }
        if (all_zero)
            break;
        pw = series_mat_mul(pw, b);
    }
    return inv;
}

namespace {

/// (dbar - L_phi) f for a 0-form coefficient f: dbar(f) - i_phi(partial f).
Form dbar_minus_lie_scalar(const BeltramiField& phi, const PolySeries& f) {
    int n = f.dim(), order = f.order();
    Form out(n, order);
    for (int m = 1; m <= n; ++m)
        out.add_term(MultiIndex::empty(), MultiIndex::single(m), f.d_zb(m));
    for (const auto& [key, c] : phi.coeffs()) {
        PolySeries d = c * f.d_z(key.first);
        if (!d.is_zero())
            out.add_term(MultiIndex::empty(), MultiIndex(key.second), -d);
    }
    return out;
}

Form full_differential(const PolySeries& f) {
    int n = f.dim(), order = f.order();
    Form out(n, order);
    for (int i = 1; i <= n; ++i) {
        out.add_term(MultiIndex::single(i), MultiIndex::empty(), f.d_z(i));
        out.add_term(MultiIndex::empty(), MultiIndex::single(i), f.d_zb(i));
    }
    return out;
}

} // namespace

EndoField psi_from_transition(const SeriesMatrix& w, const ConnectionData& conn,
                              const BeltramiField& phi) {
    int r = static_cast<int>(w.size());
    int n = conn.n, order = conn.order;
    SeriesMatrix winv = series_mat_inverse(w);
    EndoField psi = EndoField::zero(n, r, order);
    for (int k = 1; k <= r; ++k) {
        for (int l = 1; l <= r; ++l) {
            Form acc(n, order);
            for (int j = 1; j <= r; ++j)
                acc = acc + dbar_minus_lie_scalar(phi, w[j - 1][k - 1]) * winv[l - 1][j - 1];
            acc = acc + contract(phi, conn.theta[k - 1][l - 1]);
            psi.m[k - 1][l - 1] = acc;
        }
    }
    return psi;
}

BeltramiField phi_from_trivialization(const std::vector<PolySeries>& zt) {
    int n = static_cast<int>(zt.size());
    if (n == 0)
        throw std::invalid_argument("phi_from_trivialization: empty chart");
    int order = zt[0].order();
    for (int k = 1; k <= n; ++k)
        if (zt[k - 1].at_t_zero() != PolySeries::var_z(n, order, k))
            throw std::invalid_argument(
                "phi_from_trivialization: z_t must restrict to z at t = 0");
    SeriesMatrix jac(n, std::vector<PolySeries>(n, PolySeries::zero(n, order)));
    for (int k = 1; k <= n; ++k)
        for (int i = 1; i <= n; ++i)
            jac[k - 1][i - 1] = zt[k - 1].d_z(i);
    SeriesMatrix jinv = series_mat_inverse(jac);
    BeltramiField phi(n, order, 1);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            PolySeries c = PolySeries::zero(n, order);
            for (int k = 1; k <= n; ++k)
                c = c + jinv[i - 1][k - 1] * zt[k - 1].d_zb(j);
            phi.add(i, MultiIndex::single(j), c);
        }
    return phi;
}

std::string IntegrabilityWitness::to_string() const {
    if (holds)
        return "0";
    std::string out;
    for (size_t k = 0; k < residual.size(); ++k)
        for (size_t j = 0; j < residual[k].size(); ++j)
            if (!residual[k][j].is_zero())
                out += "frame " + std::to_string(k + 1) + ", e" + std::to_string(j + 1) + ": " +
                       residual[k][j].to_string() + "\n";
    return out;
}

IntegrabilityWitness integrability_check(const SeriesMatrix& w, const ConnectionData& conn,
                                         const BeltramiField& phi, const EndoField& psi) {
    int r = static_cast<int>(w.size());
    SeriesMatrix winv = series_mat_inverse(w);
    IntegrabilityWitness wit;
    wit.residual = zero_matrix(r, r, conn.n, conn.order);
    wit.holds = true;
    for (int k = 1; k <= r; ++k) {
        for (int j = 1; j <= r; ++j) {
            // (nabla + psi) of the deformed frame column k, coefficient of e_j.
            Form beta = full_differential(winv[j - 1][k - 1]);
            for (int l = 1; l <= r; ++l) {
                beta = beta + (conn.theta[l - 1][j - 1] + psi.m[l - 1][j - 1]) *
                                  winv[l - 1][k - 1];
            }
            Form res = beta.component(0, 1) - contract(phi, beta.component(1, 0));
            wit.residual[k - 1][j - 1] = res;
            if (!res.is_zero())
                wit.holds = false;
        }
    }
    return wit;
}

} // namespace defcalc
