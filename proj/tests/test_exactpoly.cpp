#include <doctest.h>

#include <random>
#include <sstream>

#include "atlas/dynatomic.hpp"
#include "atlas/errors.hpp"
#include "atlas/resultant.hpp"

using namespace atlas;

namespace {

// v - a
BivariatePoly make_q1() {
    BivariatePoly p;
    p.add_term(0, 1, 1);
    p.add_term(1, 0, -1);
    return p;
}

// v^3 + (1 - 3a^2) v + (2a^3 - a)
BivariatePoly make_q2() {
    BivariatePoly p;
    p.add_term(0, 3, 1);
    p.add_term(0, 1, 1);
    p.add_term(2, 1, -3);
    p.add_term(3, 0, 2);
    p.add_term(1, 0, -1);
    return p;
}

// v^2 + a v + (1 - 2a^2)
BivariatePoly make_phi2() {
    BivariatePoly p;
    p.add_term(0, 2, 1);
    p.add_term(1, 1, 1);
    p.add_term(0, 0, 1);
    p.add_term(2, 0, -2);
    return p;
}

BivariatePoly random_poly(std::mt19937_64& rng, int maxdeg, int terms) {
    BivariatePoly p;
    for (int t = 0; t < terms; ++t)
        p.add_term(int(rng() % (maxdeg + 1)), int(rng() % (maxdeg + 1)),
                   mpz_class(long(rng() % 21) - 10));
    return p;
}

// Monic in v so resultant multiplicativity holds on the nose.
BivariatePoly random_monic_v(std::mt19937_64& rng, int degv, int dega) {
    BivariatePoly p = BivariatePoly::monomial(0, degv, 1);
    for (int j = 0; j < degv; ++j)
        for (int i = 0; i <= dega; ++i) p.add_term(i, j, mpz_class(long(rng() % 11) - 5));
    return p;
}

}  // namespace

TEST_CASE("Q_n explicit small cases") {
    CHECK(build_Qn(1) == make_q1());
    CHECK(build_Qn(2) == make_q2());
    CHECK(build_Qn(4).degree_v() == 27);
    CHECK_THROWS_AS(build_Qn(9), BudgetError);
}

TEST_CASE("Phi_n explicit small cases and product identity") {
    CHECK(build_Phin(1) == make_q1());
    CHECK(build_Phin(2) == make_phi2());
    CHECK(build_Phin(4).degree_v() == 24);

    BivariatePoly prod = build_Phin(1) * build_Phin(2) * build_Phin(4);
    CHECK(prod == build_Qn(4));
}

TEST_CASE("evaluate") {
    CHECK(std::abs(make_q1().evaluate({1, 0}, {1, 0})) == 0.0);
    CHECK(std::abs(make_phi2().evaluate({0, 0}, {0, 1})) < 1e-15);
    CHECK(BivariatePoly::zero().evaluate({2.5, 1.0}, {-3.0, 0.25}) == Complex(0.0));
}

TEST_CASE("derivatives") {
    CHECK(make_q1().derivative_v() == BivariatePoly::constant(1));

    BivariatePoly expect;  // v - 4a
    expect.add_term(0, 1, 1);
    expect.add_term(1, 0, -4);
    CHECK(make_phi2().derivative_a() == expect);

    CHECK(BivariatePoly::constant(7).derivative_v().is_zero());
}

TEST_CASE("resultants") {
    BivariatePoly vma = make_q1();  // v - a
    BivariatePoly vpa;              // v + a
    vpa.add_term(0, 1, 1);
    vpa.add_term(1, 0, 1);
    UnivariatePoly r = resultant_v(vma, vpa);
    CHECK(r == UnivariatePoly({0, 2}));

    UnivariatePoly disc = discriminant_v(make_phi2());
    // Proportional to 9a^2 - 4.
    UnivariatePoly target({-4, 0, 9});
    CHECK((disc.primitive_part() == target || disc.primitive_part() == -target));

    CHECK(resultant_v(make_q2(), make_q2()).is_zero());

    CHECK_THROWS_AS(resultant_v(BivariatePoly::zero(), make_q2()), std::invalid_argument);
    CHECK_THROWS_AS(resultant_v(BivariatePoly::constant(3), BivariatePoly::constant(5)),
                    std::invalid_argument);
}

TEST_CASE("interpolated resultant matches Bareiss") {
    const BivariatePoly& phi3 = build_Phin(3);
    UnivariatePoly direct = resultant_v_bareiss(phi3, phi3.derivative_v());
    UnivariatePoly interp = resultant_v_interpolate(phi3, phi3.derivative_v());
    CHECK(direct == interp);
}

TEST_CASE("resultant properties on random monic inputs") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 5; ++trial) {
        BivariatePoly p = random_monic_v(rng, 2, 2);
        BivariatePoly q = random_monic_v(rng, 2, 2);
        BivariatePoly s = random_monic_v(rng, 1, 2);
        // Multiplicativity in the first argument (exact for monic inputs).
        CHECK(resultant_v(p * q, s) == resultant_v(p, s) * resultant_v(q, s));
        // Swap symmetry up to sign.
        UnivariatePoly rpq = resultant_v(p, q);
        UnivariatePoly rqp = resultant_v(q, p);
        CHECK((rpq == rqp || rpq == -rqp));
    }
}

TEST_CASE("ring axioms on random polynomials") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        BivariatePoly p = random_poly(rng, 5, 8);
        BivariatePoly q = random_poly(rng, 5, 8);
        BivariatePoly r = random_poly(rng, 5, 8);
        CHECK((p + q) * r == p * r + q * r);
        CHECK(p * q == q * p);
        CHECK(p - p == BivariatePoly::zero());
        CHECK(BivariatePoly::multiply_serial(p, q) == BivariatePoly::multiply_omp(p, q));
    }
}

TEST_CASE("involution symmetry sign") {
    CHECK(make_q1().involution_symmetry_sign() == -1);
    CHECK(make_phi2().involution_symmetry_sign() == 1);

    BivariatePoly mixed;  // v^2 + v
    mixed.add_term(0, 2, 1);
    mixed.add_term(0, 1, 1);
    CHECK_FALSE(mixed.involution_symmetry_sign().has_value());
}

TEST_CASE("divide_v round trip") {
    BivariatePoly q2 = make_q2();
    auto [quot, rem] = q2.divide_v(make_q1());
    CHECK(rem.is_zero());
    CHECK(quot == make_phi2());
    CHECK(quot * make_q1() + rem == q2);
}

TEST_CASE("phin serialization round trip") {
    const BivariatePoly& phi3 = build_Phin(3);
    std::string text = serialize_phin(phi3, 3);
    int n = 0;
    BivariatePoly back = parse_phin(text, &n);
    CHECK(n == 3);
    CHECK(back == phi3);
    CHECK(serialize_phin(back, 3) == text);
}

TEST_CASE("univariate exact division and content") {
    UnivariatePoly p({-4, 0, 9});      // 9a^2 - 4
    UnivariatePoly d({2, 3});          // 3a + 2
    UnivariatePoly q = p.exact_div(d);
    CHECK(q * d == p);
    CHECK_THROWS_AS(UnivariatePoly({1, 1}).exact_div(UnivariatePoly({0, 2})), InternalError);
    CHECK(UnivariatePoly({6, -9, 12}).content() == 3);
    CHECK(UnivariatePoly({6, -9, 12}).primitive_part() == UnivariatePoly({2, -3, 4}));
    CHECK(UnivariatePoly({6, -9, -12}).primitive_part() == UnivariatePoly({-2, 3, 4}));
}

TEST_CASE("integer determinant") {
    std::vector<std::vector<mpz_class>> m = {{2, 3}, {5, 7}};
    CHECK(integer_determinant(m) == -1);
    std::vector<std::vector<mpz_class>> s = {{0, 1, 2}, {1, 0, 3}, {4, -3, 8}};
    CHECK(integer_determinant(s) == -2);
}
