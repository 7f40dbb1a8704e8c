#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "defcalc/expr_parser.hpp"
#include "defcalc/polyseries.hpp"
#include "defcalc/scenario.hpp"

using namespace defcalc;

namespace {

PolySeries z(int n, int N, int k) { return PolySeries::var_z(n, N, k); }
PolySeries zb(int n, int N, int k) { return PolySeries::var_zb(n, N, k); }
PolySeries one(int n, int N) { return PolySeries::constant(n, N, GaussRational::one()); }

PolySeries rand_poly(std::mt19937_64& rng, int n, int N) {
    Form f = random_form(rng, n, N, 0, 0, 3, 3);
    return f.terms().empty() ? PolySeries::zero(n, N) : f.terms().begin()->second;
}

} // namespace

TEST_CASE("gauss rational arithmetic is exact and canonical") {
    GaussRational a = GaussRational::fraction(2, 6);
    GaussRational b = GaussRational::fraction(1, 3);
    CHECK(a == b);
    CHECK((a - b).is_zero());
    GaussRational i = GaussRational::i();
    CHECK(i * i == GaussRational(-1));
    GaussRational c(mpq_class(1, 2), mpq_class(3));
    CHECK(c / c == GaussRational::one());
    CHECK(c * (GaussRational::one() / c) == GaussRational::one());
    CHECK(GaussRational::fraction(1, 2).to_string() == "1/2");
    CHECK((-i).to_string() == "-i");
    CHECK(GaussRational(mpq_class(2), mpq_class(-3)).to_string() == "(2-3*i)");
    CHECK_THROWS_AS(c / GaussRational::zero(), std::domain_error);
}

TEST_CASE("polyseries additive inverse and like-term collection") {
    int n = 1, N = 2;
    CHECK((z(n, N, 1) - z(n, N, 1)).is_zero());
    PolySeries t = PolySeries::var_t(n, N);
    PolySeries lhs = (one(n, N) + t * zb(n, N, 1)) + t * zb(n, N, 1);
    PolySeries rhs = one(n, N) + t * zb(n, N, 1) * PolySeries::constant(n, N, GaussRational(2));
    CHECK(lhs == rhs);
}

TEST_CASE("truncation is idempotent and products re-truncate") {
    int n = 1, N = 1;
    PolySeries t = PolySeries::var_t(n, N);
    CHECK(t + t * t * z(n, N, 1) == t); // t^2 z1 truncates away
    CHECK((t * t).is_zero());
    CHECK(z(n, N, 1) * zb(n, N, 1) == PolySeries::monomial(n, N, {{1}, {1}, 0}, GaussRational::one()));
    CHECK((z(n, N, 1) + zb(n, N, 1)) * one(n, N) == z(n, N, 1) + zb(n, N, 1));
}

TEST_CASE("partial derivatives: monomial rule, independence, power rule") {
    int n = 1, N = 2;
    PolySeries t = PolySeries::var_t(n, N);
    CHECK((z(n, N, 1) * zb(n, N, 1)).d_z(1) == zb(n, N, 1));
    CHECK(z(n, N, 1).d_zb(1).is_zero());
    PolySeries sq = z(n, N, 1) * z(n, N, 1) * t;
    CHECK(sq.d_z(1) == z(n, N, 1) * t * PolySeries::constant(n, N, GaussRational(2)));
    CHECK(PolySeries::var_t(n, N).d_z(1).is_zero());
    CHECK_THROWS_AS(z(n, N, 1).d_z(2), std::out_of_range);
}

TEST_CASE("randomized ring laws hold exactly") {
    std::mt19937_64 rng(20240811);
    for (int n : {1, 2, 3}) {
        int N = 3;
        for (int iter = 0; iter < 120; ++iter) {
            PolySeries a = rand_poly(rng, n, N);
            PolySeries b = rand_poly(rng, n, N);
            PolySeries c = rand_poly(rng, n, N);
            int i = 1 + static_cast<int>(rng() % n);
            int j = 1 + static_cast<int>(rng() % n);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a * b == b * a);
            CHECK((a * b).d_z(i) == a.d_z(i) * b + a * b.d_z(i));
            CHECK((a * b).d_zb(i) == a.d_zb(i) * b + a * b.d_zb(i));
            CHECK(a.d_z(i).d_zb(j) == a.d_zb(j).d_z(i));
        }
    }
}

TEST_CASE("t-coefficient extraction inverts the series assembly") {
    std::mt19937_64 rng(7);
    int n = 2, N = 3;
    for (int iter = 0; iter < 40; ++iter) {
        PolySeries a = rand_poly(rng, n, N);
        PolySeries rebuilt = PolySeries::zero(n, N);
        for (int m = 0; m <= N; ++m)
            rebuilt = rebuilt + a.t_coeff(m).shift_t(m);
        CHECK(rebuilt == a);
    }
}

TEST_CASE("printer emits expressions the grammar accepts") {
    std::mt19937_64 rng(99);
    for (int n : {1, 2}) {
        int N = 2;
        for (int iter = 0; iter < 60; ++iter) {
            PolySeries a = rand_poly(rng, n, N);
            ParsedExpr back = parse_expression(a.to_string(), n, N);
            CHECK(back.value == a);
        }
    }
    PolySeries p = parse_expression("(1/2 + i)*z1^2*zb1 - t", 1, 2).value;
    CHECK(parse_expression(p.to_string(), 1, 2).value == p);
}

TEST_CASE("expression grammar errors carry positions") {
    CHECK_THROWS_AS(parse_expression("zb3", 2, 1), ParseError);
    CHECK_THROWS_AS(parse_expression("z1 +", 1, 1), ParseError);
    CHECK_THROWS_AS(parse_expression("q", 1, 1), ParseError);
    CHECK_THROWS_AS(parse_expression("z1 / z1", 1, 1), ParseError);
    CHECK_THROWS_AS(parse_expression("1/0", 1, 1), ParseError);
    ParsedExpr e = parse_expression("t^3", 1, 2);
    CHECK(e.value.is_zero());
    CHECK(e.truncated);
    ParsedExpr ok = parse_expression("2/4*z1", 1, 0);
    CHECK(ok.value == PolySeries::var_z(1, 0, 1) * GaussRational::fraction(1, 2));
    CHECK(!ok.truncated);
}
