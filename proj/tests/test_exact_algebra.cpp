#include <doctest.h>

#include "rm2kit/factor.hpp"
#include "rm2kit/linalg_q.hpp"
#include "rm2kit/number_field.hpp"
#include "rm2kit/poly.hpp"

using namespace rm2;

TEST_CASE("rational parsing") {
    CHECK(parse_rat("3/6") == make_rat(1, 2));
    CHECK(parse_rat("-1.25") == make_rat(-5, 4));
    CHECK(parse_rat("3e-2") == make_rat(3, 100));
    Rat r;
    CHECK(rational_sqrt(make_rat(9, 4), r));
    CHECK(r == make_rat(3, 2));
    CHECK_FALSE(rational_sqrt(make_rat(2), r));
}

TEST_CASE("polynomial arithmetic and gcd") {
    QPoly a = qpoly({-1, 0, 1});
    QPoly b = qpoly({-1, 1});
    CHECK(gcd(a, b) == b);
    auto [q, r] = divrem(a, b);
    CHECK(q == qpoly({1, 1}));
    CHECK(r.zero());
    CHECK(pow(b, 3) == qpoly({-1, 3, -3, 1}));
    CHECK(qpoly({1, 2, 3}).compose(qpoly({1, 1})) == qpoly({6, 8, 3}));
    // (X-1)(X-2)(X-3) and (X-2)(X-5)
    QPoly f = qpoly({-6, 11, -6, 1});
    QPoly g = qpoly({10, -7, 1});
    CHECK(gcd(f, g) == qpoly({-2, 1}));
    CHECK(resultant(f, g) == 0);
    // res(X^2+1, X-2) = 5, disc(X^2+bX+c) = b^2-4c
    CHECK(resultant(qpoly({1, 0, 1}), qpoly({-2, 1})) == 5);
    CHECK(discriminant(qpoly({3, 5, 1})) == 13);
    CHECK(discriminant(qpoly({-6, 11, -6, 1})) == 4);
}

TEST_CASE("squarefree decomposition") {
    // (X-1)^2 (X+2)^3 X
    QPoly f = pow(qpoly({-1, 1}), 2) * pow(qpoly({2, 1}), 3) * qpoly({0, 1});
    auto sf = squarefree_decomposition(f);
    REQUIRE(sf.size() == 3);
    CHECK(sf[0].first == qpoly({0, 1}));
    CHECK(sf[1] == std::pair<QPoly, int>(qpoly({-1, 1}), 2));
    CHECK(sf[2] == std::pair<QPoly, int>(qpoly({2, 1}), 3));
}

TEST_CASE("factorisation over Q") {
    CHECK(is_irreducible_q(qpoly({8, -4, 13, -6, 7, -2, 1})));
    CHECK(is_irreducible_q(qpoly({-2, 4, 2, -4, 1})));
    // Swinnerton-Dyer style: X^4 - 10X^2 + 1 is irreducible but splits mod every prime.
    CHECK(is_irreducible_q(qpoly({1, 0, -10, 0, 1})));
    QPoly f = qpoly({-2, 0, 1}) * qpoly({1, 1, 1});
    auto fac = factor_q(f * make_rat(3, 2));
    CHECK(fac.factors.size() == 2);
    QPoly prod(fac.unit);
    for (const auto& fa : fac.factors) prod = prod * pow(fa.poly, fa.multiplicity);
    CHECK(prod == f * make_rat(3, 2));
    // non-monic with repeated factor: (2X+3)^2 (3X^2 - 5)
    QPoly g = pow(qpoly({3, 2}), 2) * qpoly({-5, 0, 3});
    auto fg = factor_q(g);
    REQUIRE(fg.factors.size() == 2);
    QPoly back(fg.unit);
    for (const auto& fa : fg.factors) back = back * pow(fa.poly, fa.multiplicity);
    CHECK(back == g);
    // product of the 8 conjugates of sqrt2+sqrt3+sqrt5 style: cyclotomic Phi_15 is irreducible
    CHECK(is_irreducible_q(qpoly({1, -1, 0, 1, -1, 1, 0, -1, 1})));
    CHECK_FALSE(is_irreducible_q(qpoly({-1, 0, 0, 0, 0, 0, 1})));
    CHECK(factor_q(qpoly({-1, 0, 0, 0, 0, 0, 1})).factors.size() == 4);
}

TEST_CASE("modular factorisation") {
    CHECK(is_prime_u64(97));
    CHECK_FALSE(is_prime_u64(91));
    // X^2 - 2 mod 7 splits (3^2 = 2), X^2 - 3 mod 7 does not.
    CHECK(factor_mod_p(ModPoly{5, 0, 1}, 7).size() == 2);
    CHECK(factor_mod_p(ModPoly{4, 0, 1}, 7).size() == 1);
    CHECK(irreducible_mod_p(qpoly({-3, 0, 1}), 7));
}

TEST_CASE("number field arithmetic") {
    auto K = NumberField::make(qpoly({-2, 0, 1}), "r2", 1);
    NFElem r = NFElem::generator(K);
    CHECK(r * r == NFElem(2));
    NFElem a = NFElem(1) + r;
    CHECK(a * a.inverse() == NFElem(1));
    CHECK(std::abs(a.numeric().real() - (1 + std::sqrt(2.0))) < 1e-12);
    CHECK(minimal_polynomial(a) == qpoly({-1, -2, 1}));
    CHECK_THROWS(NumberField::make(qpoly({-4, 0, 1}), "bad"));
    KPoly p = to_kpoly(qpoly({-2, 0, 1}));
    KPoly lin{-r, NFElem(1)};
    CHECK((p % lin).zero());
}

TEST_CASE("rational linear algebra") {
    QMatrix m{{1, 2}, {3, 4}};
    auto s = solve_q(m, {5, 6});
    REQUIRE(s);
    CHECK((*s)[0] == -4);
    CHECK((*s)[1] == make_rat(9, 2));
    CHECK_FALSE(solve_q(QMatrix{{1, 1}, {1, 1}}, {1, 2}));
    auto ns = nullspace_q(QMatrix{{1, 1, 1}}, 3);
    CHECK(ns.size() == 2);
}
