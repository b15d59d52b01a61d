#include <doctest.h>

#include "oracle_data.hpp"
#include "rm2kit/families.hpp"

#include <random>

using namespace rm2;
using rm2::testing::load_oracle;
using rm2::testing::poly;
using rm2::testing::rat;

namespace {

const nlohmann::json& oracle() {
    static const nlohmann::json j = load_oracle("families.json");
    return j;
}

Mat2<Rat> mat(long a, long b, long c, long d) { return Mat2<Rat>(Rat(a), Rat(b), Rat(c), Rat(d)); }

bool satisfies_sqrt2_relation(const Mat2<Rat>& m) {
    // X^2 - 4X + 2 = 0, the relation of 2 +- sqrt2
    return m * m - Rat(4) * m + Rat(2) * Mat2<Rat>::identity() == Mat2<Rat>();
}

}  // namespace

TEST_CASE("sqrt2 family: curves agree with the resultant oracle") {
    for (const auto& e : oracle()["rm2"]) {
        auto p = e["params"];
        auto m = rm2_generate(rat(p[0]), rat(p[1]), rat(p[2]), rat(p[3]));
        CAPTURE(p.dump());
        CHECK(m.B == rat(e["B"]));
        CHECK(m.C == rat(e["C"]));
        CHECK(m.R == rat(e["R"]));
        CHECK(m.curve.F() == poly(e["F"]));
        CHECK(m.A_epsilon == mat(0, -1, -2, 0));
    }
}

TEST_CASE("sqrt2 family at (1,1,0,0)") {
    auto m = rm2_generate(Rat(1), Rat(1), Rat(0), Rat(0));
    CHECK(m.B == 5);
    CHECK(m.C == 0);
    CHECK(m.R == 4);
    CHECK(m.splitting.field == SplittingField::rational_plus_pair);
    CHECK(m.A_epsilon * m.A_epsilon == Rat(2) * Mat2<Rat>::identity());
    // Richelot dual equals the image of the curve under x -> 2/x.
    const auto& o = oracle()["rm2_iota_1100"];
    CHECK(m.rho.target() == to_kpoly(poly(o["F2"])));
    for (const auto& ok : o["pairs_ok"]) CHECK(ok.get<bool>());
    // iota sends the roots of each G_i onto the roots of the matching H_i.
    auto h = richelot_h(m.splitting);
    for (std::size_t i = 0; i < 3; ++i) {
        const auto& g = m.splitting.G[i];
        TPoly image({g.coeff(2) * TowerElem(4), g.coeff(1) * TowerElem(2), g.coeff(0)});
        CHECK(image * h[i].lead() == h[i] * image.lead());
    }
    CHECK(holomorphy_check(m.epsilon));
}

TEST_CASE("sqrt2 family: cascade and two-point agree over a cubic field") {
    auto m = rm2_generate(Rat(3), Rat(2), Rat(1), Rat(-1));
    REQUIRE(m.roots.k1);
    CHECK(m.splitting.field == SplittingField::conjugate_triple);
    auto a = diffmatrix_cascade(m.epsilon);
    CHECK(a == diffmatrix_two_point(m.epsilon));
    CHECK(matrix_minpoly(a) == KPoly({NFElem(-2), NFElem(0), NFElem(1)}));
}

TEST_CASE("sqrt2 family: 25 random parameter tuples") {
    std::mt19937 rng(20240611);
    std::uniform_int_distribution<int> small(-4, 4);
    int done = 0;
    while (done < 25) {
        Rat delta(small(rng)), P(small(rng), 1 + (rng() % 3)), Q(small(rng)), A(small(rng));
        delta.canonicalize();
        P.canonicalize();
        if (sgn(delta) == 0 || sgn(P) == 0) continue;
        RM2FamilyMember m = [&] {
            try {
                return std::optional(rm2_generate(delta, P, Q, A));
            } catch (const FamilyError&) {
                return std::optional<RM2FamilyMember>();
            }
        }().value_or(rm2_generate(Rat(1), Rat(1), Rat(0), Rat(0)));
        if (m.delta != delta) continue;
        CAPTURE(delta.get_str());
        CAPTURE(P.get_str());
        CAPTURE(Q.get_str());
        CAPTURE(A.get_str());
        CHECK(m.A_epsilon == mat(0, -1, -2, 0));
        CHECK(holomorphy_check(m.epsilon));
        ++done;
    }
}

TEST_CASE("sqrt2 family: recognition") {
    auto m = rm2_generate(Rat(2), Rat(1), Rat(3), Rat(-2));
    auto r = rm2_recognize(m.curve, m.splitting);
    REQUIRE(r.has_value());
    CHECK(r->P == m.P);
    CHECK(r->Q == m.Q);
    CHECK(r->A == m.A);
    CHECK(r->delta == m.delta);

    // A squarefree sextic with an arbitrary rational splitting.
    auto g0 = to_tower(qpoly({-1, 0, 1})), g1 = to_tower(qpoly({3, 1, 1})), g2 = to_tower(qpoly({-5, 2, 1}));
    auto s = splitting_new(TowerElem(1), g0, g1, g2);
    QPoly f = qpoly({-1, 0, 1}) * qpoly({3, 1, 1}) * qpoly({-5, 2, 1});
    CHECK_FALSE(rm2_recognize(Genus2Curve::make(f), s).has_value());
    CHECK_THROWS_AS(rm2_generate(Rat(0), Rat(1), Rat(0), Rat(0)), FamilyError);
    CHECK_THROWS_AS(rm2_generate(Rat(1), Rat(0), Rat(0), Rat(0)), FamilyError);
}

TEST_CASE("U V W family pairs") {
    for (const auto& e : oracle()["thm51"]) {
        auto p = e["params"];
        CAPTURE(p.dump());
        auto pair = thm51_pair(rat(p[0]), rat(p[1]), rat(p[2]), rat(p[3]));
        CHECK(pair.C1.F() == poly(e["F1"]));
        CHECK(pair.C2.F() == poly(e["F2_from_data"]));
        CHECK(pair.f2_from_formula == !e["F2_printed"].is_null());
        if (!e["F2_printed"].is_null()) CHECK(pair.C2.F() == poly(e["F2_printed"]));
        CHECK(e["F2_squarefree"].get<bool>());
        CHECK(lands_on_target(pair.pi1));
        CHECK(lands_on_target(pair.pi2));
        auto a1 = differential_matrix(pair.pi1);
        auto a2 = differential_matrix(pair.pi2);
        CHECK(a1 == mat(-1, 0, 0, -1));
        CHECK(a2 == mat(-2, 1, 2, -2));
        CHECK(a2 * a1 == mat(2, -1, -2, 2));
        CHECK(satisfies_sqrt2_relation(a2 * a1));
    }
    CHECK_THROWS_AS(thm51_pair(Rat(1), Rat(3), Rat(2), Rat(1)), FamilyError);
}

TEST_CASE("U V W family: cascade agrees with two-point") {
    auto pair = thm51_pair(Rat(1), Rat(7), Rat(-3), Rat(2));
    CHECK(diffmatrix_cascade(pair.pi1) == diffmatrix_two_point(pair.pi1));
    CHECK(holomorphy_check(pair.pi1));
    CHECK(holomorphy_check(pair.pi2));
}

TEST_CASE("W family pairs") {
    for (const auto& e : oracle()["thm52"]) {
        auto p = e["params"];
        CAPTURE(p.dump());
        auto pair = thm52_pair(rat(p[0]), rat(p[1]));
        CHECK(pair.C1.F() == poly(e["F1"]));
        CHECK(pair.C2.F() == poly(e["F2"]));
        CHECK(pair.delta_primed == rat(e["Delta_primed"]));
        REQUIRE(pair.W_primed.has_value());
        CHECK(*pair.W_primed == rat(e["W_primed"]));
        CHECK(lands_on_target(pair.pi1));
        CHECK(lands_on_target(pair.pi2));
        auto a1 = differential_matrix(pair.pi1);
        auto a2 = differential_matrix(pair.pi2);
        CHECK(a1 == Mat2<Rat>(Rat(-1, 2), Rat(-1, 2), Rat(1), Rat(1, 2)));
        CHECK(a2 == mat(0, 2, -4, 0));
        CHECK(a2 * a1 == mat(2, 1, 2, 2));
        CHECK(satisfies_sqrt2_relation(a2 * a1));
        CHECK(holomorphy_check(pair.pi1));
    }
    auto w0 = thm52_pair(Rat(1), Rat(0));
    CHECK(*w0.W_primed == 6);
    CHECK(w0.delta_primed == 16);
}

TEST_CASE("V = 2 elliptic quotient") {
    auto q = thm51_elliptic_quotient(Rat(1), Rat(6), Rat(0));
    CHECK(q.symmetric_coefficients);
    CHECK(q.substitution_verified);
    const auto& o = oracle()["elliptic_quotient"];
    CHECK(o["disc_nonzero"].get<bool>());
    const auto& ec = o["E_coeffs_in_alpha"];
    REQUIRE(q.E.degree() == 3);
    for (int k = 0; k <= 3; ++k) {
        CHECK(q.E.coeff(k).coeff(0) == rat(ec[k][0]));
        CHECK(q.E.coeff(k).coeff(1) == rat(ec[k][1]));
    }
    for (auto [u, w] : std::vector<std::pair<int, int>>{{3, 1}, {-5, 2}, {10, -3}}) {
        auto r = thm51_elliptic_quotient(Rat(2), Rat(u), Rat(w));
        CAPTURE(u);
        CHECK(r.symmetric_coefficients);
        CHECK(r.substitution_verified);
    }
    CHECK_THROWS_AS(thm51_elliptic_quotient(Rat(1), Rat(2), Rat(0)), FamilyError);
}

TEST_CASE("quaternionic family at N = 2") {
    const auto& o = oracle()["quat"];
    auto m = quat_generate(Rat(1), Rat(2));
    CHECK(m.curve.F() == poly(o["F"]));
    CHECK(rat(o["disc"]) != 0);
    CHECK(m.A_epsilon == mat(-1, -1, -1, 1));
    CHECK(m.A_epsilon * m.A_epsilon == Rat(2) * Mat2<Rat>::identity());

    const NFElem s = NFElem::generator(m.sqrt_m3);
    const NFElem half(Rat(1, 2));
    Mat2<NFElem> expected_psi(NFElem(0), half * (s - NFElem(1)), NFElem(0) - half * (s + NFElem(1)), NFElem(1));
    CHECK(m.A_psi == expected_psi);
    CHECK(matrix_minpoly(m.A_psi) == KPoly({NFElem(-1), NFElem(-1), NFElem(1)}));
    CHECK(lands_on_target(m.psi));

    auto eps_k = m.A_epsilon.map<NFElem>([](const Rat& r) { return NFElem(r); });
    auto eta = quat_eta(eps_k, m.A_psi);
    CHECK(eta.s0 == 1);
    CHECK(eta.t0 == 0);
    const auto& ae = o["A_eta_1_0"];
    for (int i = 0; i < 4; ++i) {
        CHECK(eta.A_eta.m[static_cast<std::size_t>(i)].coeff(0) == rat(ae[i][0]));
        CHECK(eta.A_eta.m[static_cast<std::size_t>(i)].coeff(1) == rat(ae[i][1]));
    }
    CHECK(matrix_minpoly(eta.A_eta) == KPoly({NFElem(1), NFElem(-1), NFElem(1)}));
    // B = 2 eta - 1: B^2 = -3, B eps = -eps B
    auto B = NFElem(2) * eta.A_eta - Mat2<NFElem>::identity();
    CHECK(B * B == NFElem(-3) * Mat2<NFElem>::identity());
    CHECK(B * eps_k == NFElem(-1) * (eps_k * B));
}

TEST_CASE("quaternionic family: other N and twists") {
    for (auto [d, n] : std::vector<std::pair<Rat, Rat>>{{Rat(1), Rat(8)}, {Rat(3), Rat(-2)}, {Rat(-1), Rat(1, 3)}}) {
        CAPTURE(n.get_str());
        auto m = quat_generate(d, n);
        CHECK(m.A_epsilon == mat(-1, -1, -1, 1));
        CHECK(matrix_minpoly(m.A_psi) == KPoly({NFElem(-1), NFElem(-1), NFElem(1)}));
    }
    CHECK_THROWS_AS(quat_generate(Rat(1), Rat(1)), FamilyError);
}

TEST_CASE("quaternionic twist evidence against brute-force counts") {
    auto m = quat_generate(Rat(1), Rat(2));
    std::vector<std::uint64_t> primes{7, 11, 13, 17, 19, 23};
    for (int d : {-3, -5}) {
        auto ev = quat_twist_evidence(m.curve, primes, Rat(d));
        for (const auto& row : oracle()["quat_twist"]) {
            if (row["twist"].get<int>() != d) continue;
            auto p = row["p"].get<std::uint64_t>();
            auto it = std::find_if(ev.begin(), ev.end(), [&](const TwistEvidence& t) { return t.p == p; });
            REQUIRE(it != ev.end());
            std::vector<Rat> cp, tp;
            for (const auto& c : row["charpoly"]) cp.emplace_back(c.get<long>());
            for (const auto& c : row["twist_charpoly"]) tp.emplace_back(c.get<long>());
            CHECK(it->charpoly == QPoly(cp));
            CHECK(it->twist_charpoly == QPoly(tp));
            CHECK(it->informative == (p % 3 == 2));
        }
        bool all = std::all_of(ev.begin(), ev.end(), [](const TwistEvidence& t) { return t.agree; });
        if (d == -3) CHECK(all);
        else CHECK_FALSE(all);
    }
    CHECK_THROWS_AS(quat_twist_evidence(m.curve, {5}), FamilyError);
}

TEST_CASE("U V W family: three parameterisations of one curve") {
    // Found by grouping F1 over a parameter grid by absolute invariants; factorisation from sympy.
    const QPoly expected = qpoly({-1, 1, 1}) * qpoly({5, -1, 1}) * qpoly({-2, 6, 1});
    const std::vector<std::array<int, 3>> params = {{1, -1, -6}, {-1, 5, 6}, {6, -2, -1}};
    std::vector<QPoly> targets;
    for (const auto& [u, v, w] : params) {
        auto pair = thm51_pair(Rat(1), Rat(u), Rat(v), Rat(w));
        CHECK(pair.C1.F() == expected);
        // the distinguished factor X^2 + U X + V is a different one each time
        CHECK(expected % qpoly({v, u, 1}) == QPoly());
        CHECK(differential_matrix(pair.pi1) == mat(-1, 0, 0, -1));
        CHECK(differential_matrix(pair.pi2) == mat(-2, 1, 2, -2));
        targets.push_back(pair.C2.F());
    }
    CHECK(targets[0] != targets[1]);
    CHECK(targets[1] != targets[2]);
    CHECK(targets[0] != targets[2]);
}

TEST_CASE("sqrt2 family: 29A1 is a member") {
    // parameters solved with sympy from the coefficient equations
    const QPoly f29 = qpoly({8, -4, 13, -6, 7, -2, 1});
    auto m = rm2_generate(Rat(1), Rat(1, 2), Rat(-1, 2), Rat(-2));
    REQUIRE(m.curve.F() == f29);
    auto found = rm2_recognize(Genus2Curve::make(f29, "29A1"), m.splitting);
    REQUIRE(found.has_value());
    CHECK(found->P == Rat(1, 2));
    CHECK(found->Q == Rat(-1, 2));
    CHECK(found->A == -2);
    CHECK(found->A_epsilon == mat(0, -1, -2, 0));
}
