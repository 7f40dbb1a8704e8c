#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "defcalc/form.hpp"
#include "defcalc/scenario.hpp"

#include "oracle.hpp"

using namespace defcalc;

TEST_CASE("wedge nilpotence, transposition sign, graded commutativity") {
    int n = 2, N = 1;
    Form dz1 = Form::dz(n, N, 1);
    Form dz2 = Form::dz(n, N, 2);
    Form dzb1 = Form::dzb(n, N, 1);
    CHECK(dz1.wedge(dz1).is_zero());

    Form w = dz1.wedge(dzb1);
    REQUIRE(w.terms().size() == 1);
    const auto& [key, c] = *w.terms().begin();
    CHECK(key.I == MultiIndex::single(1));
    CHECK(key.J == MultiIndex::single(1));
    CHECK(c == PolySeries::constant(n, N, GaussRational(-1)));

    Form even = dz1.wedge(dz2);
    CHECK(even.wedge(dzb1) == dzb1.wedge(even));
    CHECK(dz1.wedge(dz2) == -(dz2.wedge(dz1)));
}

TEST_CASE("dolbeault operators on basic terms") {
    int n = 1, N = 1;
    Form f = Form::scalar(PolySeries::var_zb(n, N, 1));
    CHECK(f.dbar() == Form::dzb(n, N, 1));
    Form g = Form::term(PolySeries::var_zb(n, N, 1), MultiIndex::single(1), MultiIndex::empty());
    // dbar(zb1 dz1) = dzb1 ^ dz1, the canonical key with coefficient +1
    Form expect(n, N);
    expect.add_term(MultiIndex::single(1), MultiIndex::single(1),
                    PolySeries::constant(n, N, GaussRational::one()));
    CHECK(g.dbar() == expect);
    CHECK(g.dbar() == oracle::dbar(g));
}

TEST_CASE("bidegree projection and reconstruction") {
    int n = 2, N = 1;
    Form mixed = Form::dz(n, N, 1) + Form::dzb(n, N, 1);
    CHECK(mixed.component(1, 0) == Form::dz(n, N, 1));
    CHECK(Form::dz(n, N, 1).component(0, 1).is_zero());
    std::mt19937_64 rng(5);
    for (int iter = 0; iter < 30; ++iter) {
        Form f(n, N);
        for (int p = 0; p <= n; ++p)
            for (int q = 0; q <= n; ++q)
                f = f + random_form(rng, n, N, p, q, 2, 2);
        Form rebuilt(n, N);
        for (int p = 0; p <= n; ++p)
            for (int q = 0; q <= n; ++q)
                rebuilt = rebuilt + f.component(p, q);
        CHECK(rebuilt == f);
        Form piece = random_form(rng, n, N, 1, 1, 2, 2);
        CHECK(piece.component(1, 1) == piece);
    }
}

TEST_CASE("operators match the generator-list reference on random forms") {
    std::mt19937_64 rng(11);
    for (int n : {1, 2, 3}) {
        int N = 2;
        for (int iter = 0; iter < 50; ++iter) {
            int p = static_cast<int>(rng() % (n + 1));
            int q = static_cast<int>(rng() % (n + 1));
            Form a = random_form(rng, n, N, p, q, 2, 2);
            Form b = random_form(rng, n, N, static_cast<int>(rng() % (n + 1)),
                                 static_cast<int>(rng() % (n + 1)), 2, 2);
            CHECK(a.dbar() == oracle::dbar(a));
            CHECK(a.partial() == oracle::partial(a));
            CHECK(a.wedge(b) == oracle::wedge(a, b));
        }
    }
}

TEST_CASE("complex structure identities hold exactly") {
    std::mt19937_64 rng(13);
    for (int n : {1, 2, 3}) {
        int N = 2;
        for (int iter = 0; iter < 60; ++iter) {
            Form a = random_form(rng, n, N, static_cast<int>(rng() % (n + 1)),
                                 static_cast<int>(rng() % (n + 1)), 2, 3);
            CHECK(a.partial().partial().is_zero());
            CHECK(a.dbar().dbar().is_zero());
            CHECK((a.partial().dbar() + a.dbar().partial()).is_zero());
        }
    }
}

TEST_CASE("graded commutativity and leibniz on random homogeneous forms") {
    std::mt19937_64 rng(17);
    int n = 3, N = 1;
    for (int iter = 0; iter < 80; ++iter) {
        int pa = static_cast<int>(rng() % (n + 1));
        int qa = static_cast<int>(rng() % (n + 1));
        int pb = static_cast<int>(rng() % (n + 1));
        int qb = static_cast<int>(rng() % (n + 1));
        Form a = random_form(rng, n, N, pa, qa, 1, 2);
        Form b = random_form(rng, n, N, pb, qb, 1, 2);
        int da = pa + qa, db = pb + qb;
        Form ab = a.wedge(b);
        Form ba = b.wedge(a);
        CHECK(ab == ((da * db) % 2 == 0 ? ba : -ba));
        Form leib_p = a.partial().wedge(b) +
                      ((da % 2 == 0) ? a.wedge(b.partial()) : -(a.wedge(b.partial())));
        CHECK(ab.partial() == leib_p);
        Form leib_q = a.dbar().wedge(b) +
                      ((da % 2 == 0) ? a.wedge(b.dbar()) : -(a.wedge(b.dbar())));
        CHECK(ab.dbar() == leib_q);
    }
}

TEST_CASE("printer is deterministic and ordered by (J, I)") {
    int n = 2, N = 0;
    Form f = Form::dz(n, N, 2) + Form::dz(n, N, 1) + Form::dzb(n, N, 1).wedge(Form::dz(n, N, 2));
    CHECK(f.to_string() == "dz1 + dz2 + dzb1^dz2");
    CHECK(Form::zero(n, N).to_string() == "0");
}
