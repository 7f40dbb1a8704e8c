#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "defcalc/connection.hpp"
#include "defcalc/scenario.hpp"

#include "oracle.hpp"

using namespace defcalc;

namespace {

ConnectionData random_connection(std::mt19937_64& rng, int n, int r, int N) {
    ConnectionData conn = ConnectionData::zero(n, r, N);
    for (int k = 0; k < r; ++k)
        for (int l = 0; l < r; ++l)
            conn.theta[k][l] = random_form(rng, n, N, 1, 0, 2, 2);
    for (int k = 1; k <= n; ++k)
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j) {
                Form f = random_form(rng, n, N, 0, 0, 2, 1);
                if (!f.terms().empty())
                    conn.gamma[k - 1][i - 1][j - 1] = f.terms().begin()->second;
            }
    return conn;
}

// Componentwise tensor product with concatenated basis tuples.
ValuedForm tensor(const ValuedForm& a, const ValuedForm& b) {
    std::vector<Factor> word = a.word().factors();
    for (const Factor& f : b.word().factors())
        word.push_back(f);
    ValuedForm out(FiberWord(word), a.dim(), a.order());
    for (const auto& [ba, fa] : a.components())
        for (const auto& [bb, fb] : b.components()) {
            std::vector<int> basis = ba;
            basis.insert(basis.end(), bb.begin(), bb.end());
            out.add(basis, fa.wedge(fb));
        }
    return out;
}

ValuedForm random_word_form(std::mt19937_64& rng, const FiberWord& word, int n, int N, int p,
                            int q) {
    ValuedForm out(word, n, N);
    for (const auto& basis : word.basis_tuples())
        out.add(basis, random_form(rng, n, N, p, q, 2, 1));
    return out;
}

} // namespace

TEST_CASE("nabla10 reduces to partial on scalar words") {
    int n = 2, N = 1;
    std::mt19937_64 rng(3);
    ConnectionData conn = random_connection(rng, n, 1, N);
    for (int iter = 0; iter < 20; ++iter) {
        Form f = random_form(rng, n, N, 1, 1, 2, 2);
        ValuedForm s = ValuedForm::from_form(f);
        CHECK(nabla10(conn, s) == ValuedForm::from_form(f.partial()));
    }
}

TEST_CASE("induced connection on the anticanonical factor") {
    int n = 1, N = 0;
    ValuedForm s(FiberWord({Factor::kinv()}), n, N);
    s.add({1}, Form::scalar(PolySeries::constant(n, N, GaussRational::one())));

    ConnectionData flat = ConnectionData::zero(n, 1, N);
    CHECK(nabla10(flat, s).is_zero());

    ConnectionData conn = ConnectionData::zero(n, 1, N);
    conn.gamma[0][0][0] = PolySeries::var_zb(n, N, 1);
    ValuedForm expect(FiberWord({Factor::kinv()}), n, N);
    expect.add({1}, Form::dz(n, N, 1) * PolySeries::var_zb(n, N, 1));
    CHECK(nabla10(conn, s) == expect);
}

TEST_CASE("curvature is dbar(theta)") {
    int n = 1, N = 0;
    ConnectionData conn = ConnectionData::zero(n, 1, N);
    CHECK(matrix_is_zero(curvature(conn)));
    conn.theta[0][0] = Form::dz(n, N, 1) * PolySeries::var_zb(n, N, 1);
    Form expect(n, N);
    expect.add_term(MultiIndex::single(1), MultiIndex::single(1),
                    PolySeries::constant(n, N, GaussRational::one()));
    CHECK(curvature(conn)[0][0] == expect);

    int n2 = 2;
    ConnectionData conn2 = ConnectionData::zero(n2, 1, N);
    conn2.theta[0][0] = Form::dz(n2, N, 1) * PolySeries::var_zb(n2, N, 2);
    Form expect2(n2, N);
    expect2.add_term(MultiIndex::single(1), MultiIndex::single(2),
                     PolySeries::constant(n2, N, GaussRational::one()));
    CHECK(curvature(conn2)[0][0] == expect2);
}

TEST_CASE("curvature of a (1,0) matrix is homogeneous (1,1)") {
    std::mt19937_64 rng(23);
    for (int iter = 0; iter < 20; ++iter) {
        ConnectionData conn = random_connection(rng, 2, 2, 1);
        for (const auto& row : curvature(conn))
            for (const Form& f : row)
                CHECK(f.is_homogeneous(1, 1));
    }
}

TEST_CASE("endomorphism action on E factors") {
    int n = 1, N = 0, r = 2;
    FormMatrix id = identity_matrix(r, n, N);
    ValuedForm e1(FiberWord({Factor::e(r)}), n, N);
    e1.add({1}, Form::scalar(PolySeries::constant(n, N, GaussRational::one())));
    CHECK(end_act(id, e1) == e1);

    FormMatrix elem = zero_matrix(r, r, n, N);
    elem[0][1] = Form::dzb(n, N, 1); // e1 -> dzb1 (x) e2
    ValuedForm expect(FiberWord({Factor::e(r)}), n, N);
    expect.add({2}, Form::dzb(n, N, 1));
    CHECK(end_act(elem, e1) == expect);

    // Derivation over E (x) E.
    ValuedForm ee(FiberWord({Factor::e(r), Factor::e(r)}), n, N);
    ee.add({1, 1}, Form::scalar(PolySeries::constant(n, N, GaussRational::one())));
    ValuedForm expect2(FiberWord({Factor::e(r), Factor::e(r)}), n, N);
    expect2.add({2, 1}, Form::dzb(n, N, 1));
    expect2.add({1, 2}, Form::dzb(n, N, 1));
    CHECK(end_act(elem, ee) == expect2);
}

TEST_CASE("dbar-nabla10 anticommutator is the curvature action on E words") {
    std::mt19937_64 rng(31);
    for (int n : {1, 2}) {
        int N = 1, r = 2;
        for (int iter = 0; iter < 15; ++iter) {
            ConnectionData conn = random_connection(rng, n, r, N);
            ValuedForm s = random_e_valued(rng, n, N, r, static_cast<int>(rng() % (n + 1)),
                                           static_cast<int>(rng() % (n + 1)), 2, 2);
            ValuedForm lhs = nabla10(conn, s).dbar() + nabla10(conn, s.dbar());
            CHECK(lhs == end_act(curvature(conn), s));
        }
    }
}

TEST_CASE("induced connection satisfies the graded leibniz rule over words") {
    std::mt19937_64 rng(37);
    int n = 2, N = 1, r = 2;
    std::vector<FiberWord> words = {
        FiberWord({Factor::e(r)}),
        FiberWord({Factor::omega_p(n, 1)}),
        FiberWord({Factor::kinv()}),
        FiberWord({Factor::tangent(n)}),
    };
    for (int iter = 0; iter < 25; ++iter) {
        ConnectionData conn = random_connection(rng, n, r, N);
        const FiberWord& wa = words[rng() % words.size()];
        const FiberWord& wb = words[rng() % words.size()];
        int pa = static_cast<int>(rng() % (n + 1));
        int qa = static_cast<int>(rng() % (n + 1));
        ValuedForm a = random_word_form(rng, wa, n, N, pa, qa);
        ValuedForm b = random_word_form(rng, wb, n, N, static_cast<int>(rng() % (n + 1)),
                                        static_cast<int>(rng() % (n + 1)));
        ValuedForm lhs = nabla10(conn, tensor(a, b));
        ValuedForm rhs = tensor(nabla10(conn, a), b);
        ValuedForm second = tensor(a, nabla10(conn, b));
        rhs = ((pa + qa) % 2 == 0) ? rhs + second : rhs - second;
        CHECK(lhs == rhs);
    }
}

TEST_CASE("slot action matches the wedge picture on omega factors") {
    // The derivation action on dz^I agrees with expanding dz^I as an actual
    // wedge of Omega^1 generators and acting factor by factor.
    int n = 3, N = 0;
    std::mt19937_64 rng(41);
    for (int iter = 0; iter < 20; ++iter) {
        FormMatrix m = zero_matrix(n, n, n, N);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                m[a][b] = random_form(rng, n, N, 0, 1, 1, 1);
        // s = dz^{1,2} as Omega^2 value
        ValuedForm s(FiberWord({Factor::omega_p(n, 2)}), n, N);
        s.add({static_cast<int>(MultiIndex::from_entries({1, 2}).bits())},
              Form::scalar(PolySeries::constant(n, N, GaussRational::one())));
        ValuedForm acted = omega_slot_act(m, s);
        // Reference: the sign-free derivation over fiber sections, with the
        // coefficient form always out front.
        Form expect(n, N);
        for (int b = 1; b <= n; ++b) {
            Form left = m[0][b - 1].wedge(Form::dz(n, N, b).wedge(Form::dz(n, N, 2)));
            Form right = m[1][b - 1].wedge(Form::dz(n, N, 1).wedge(Form::dz(n, N, b)));
            expect = expect + left + right;
        }
        Form got(n, N);
        for (const auto& [basis, comp] : acted.components()) {
            MultiIndex I(static_cast<uint32_t>(basis[0]));
            auto fs = comp;
            // wedge the basis dz^I back in to compare in the exterior algebra
            Form gen = Form::scalar(PolySeries::constant(n, N, GaussRational::one()));
            for (int e : I.entries())
                gen = gen.wedge(Form::dz(n, N, e));
            got = got + fs.wedge(gen);
        }
        CHECK(got == expect);
    }
}
