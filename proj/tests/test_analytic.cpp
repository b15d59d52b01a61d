#include "doctest.h"

#include "rm2kit/analytic.hpp"
#include "rm2kit/catalog.hpp"
#include "rm2kit/families.hpp"
#include "rm2kit/verify.hpp"

#include <Eigen/Dense>

#include <complex>
#include <random>

using namespace rm2;

namespace {

const std::vector<CatalogEntry>& catalog() {
    static const auto c = catalog_load(default_catalog_path());
    return c;
}

const CatalogEntry& entry(const std::string& label) {
    for (const auto& e : catalog())
        if (e.label == label) return e;
    throw std::runtime_error("no catalog entry " + label);
}

double dmax(const Real& r) { return r.convert_to<double>(); }

bool in_lattice(const AnalyticJacobian& j, const CVec2& z, double tol = 1e-30) { return dmax(j.lattice_distance(z)) < tol; }

CVec2 scaled(int k, const CVec2& z) { return {Cx(Real(k)) * z[0], Cx(Real(k)) * z[1]}; }

CVec2 times(const Mat2<Rat>& a, const CVec2& z) {
    return {Cx(real_of(a(0, 0))) * z[0] + Cx(real_of(a(0, 1))) * z[1],
            Cx(real_of(a(1, 0))) * z[0] + Cx(real_of(a(1, 1))) * z[1]};
}

using C2 = std::array<std::array<std::complex<double>, 2>, 2>;

double distance(const C2& a, const C2& b) {
    double worst = 0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) worst = std::max(worst, std::abs(a[i][j] - b[i][j]));
    return worst;
}

C2 mul(const C2& a, const C2& b) {
    C2 r{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
    return r;
}

}  // namespace

TEST_CASE("period matrices satisfy the Riemann relations") {
    const std::vector<QPoly> curves = {
        entry("29A1").C1.F(),
        entry("98A2").C2.F(),
        QPoly({Rat(0), Rat(-1), Rat(0), Rat(0), Rat(0), Rat(1)}),  // X^5 - X
        QPoly({Rat(1), Rat(0), Rat(0), Rat(0), Rat(0), Rat(1)}),   // X^5 + 1
        QPoly({Rat(-2), Rat(3), Rat(0), Rat(1), Rat(-1), Rat(0), Rat(2)}),
    };
    for (const auto& f : curves) {
        auto pm = period_matrix(Genus2Curve::make(f, "test"), 60);
        CHECK(dmax(pm.riemann_residual()) < 1e-50);
        CHECK(pm.riemann_positive());
        CHECK_FALSE(pm.symplectic_basis.empty());
        auto tau = pm.riemann_matrix();
        CHECK(dmax((tau[0][1] - tau[1][0]).abs()) < 1e-50);
        CHECK(tau[0][0].im > 0);
    }
}

TEST_CASE("X^5 - X: the automorphism x -> -x preserves the period lattice") {
    // (x, y) -> (-x, i y) pulls dx/y back to -i dx/y and x dx/y to i x dx/y (up to the choice of i).
    auto jac = AnalyticJacobian::make(Genus2Curve::make(QPoly({Rat(0), Rat(-1), Rat(0), Rat(0), Rat(0), Rat(1)}), "x5-x"), 60);
    auto qi = NumberField::make(QPoly({Rat(1), Rat(0), Rat(1)}), "i");
    const NFElem i = NFElem::generator(qi);
    const Mat2<NFElem> sym(i, NFElem(0), NFElem(0), NFElem(-1) * i);
    auto r = recover_rphi(sym, jac.periods(), jac.periods());
    CHECK(r.residual < 1e-12);  // the field embedding is double precision
    CHECK(r.rounding < 1e-12);
    CHECK(r.det == 1);
    // a non-automorphism scaling is rejected
    const Mat2<NFElem> half(NFElem(Rat(1, 2)), NFElem(0), NFElem(0), NFElem(Rat(1, 2)));
    CHECK_THROWS_AS(recover_rphi(half, jac.periods(), jac.periods()), AnalyticError);
}

TEST_CASE("hermitian forms of 29A1 and 29A2 match the printed values") {
    const auto& e = entry("29A1");
    auto m1 = hermitian_M(period_matrix(e.C1)).real_part();
    auto m2 = hermitian_M(period_matrix(e.C2)).real_part();
    const double printed1[2][2] = {{0.24487048, -0.029342177}, {-0.029342177, 0.12243524}};
    const double printed2[2][2] = {{0.52414966, -0.063750885}, {-0.063750885, 0.39664789}};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            CHECK(std::abs(m1[i][j] - printed1[i][j]) / std::abs(printed1[i][j]) < 5e-8);
            CHECK(std::abs(m2[i][j] - printed2[i][j]) / std::abs(printed2[i][j]) < 5e-8);
        }
}

TEST_CASE("hermitian form is real symmetric for every catalog curve") {
    for (const auto& e : catalog())
        for (const auto* c : {&e.C1, &e.C2}) {
            auto h = hermitian_M(period_matrix(*c, 30));
            CHECK(dmax(h.max_imaginary()) < 1e-20);
            CHECK(dmax((h.M[0][1] - h.M[1][0]).abs()) < 1e-20);
            CHECK(h.positive_definite());
        }
}

TEST_CASE("hermitian form is independent of the symplectic basis") {
    auto pm = period_matrix(entry("43A1").C1, 60);
    auto h = hermitian_M(pm);
    std::mt19937_64 rng(20241016);
    const Real scale = h.M[0][0].abs();
    for (int trial = 0; trial < 20; ++trial) {
        const IntMat4 S = random_symplectic(rng);
        REQUIRE(is_symplectic(S));
        auto moved = pm.transformed(S);
        CHECK(dmax(moved.riemann_residual()) < 1e-45);
        auto h2 = hermitian_M(moved);
        Real worst = 0;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) worst = boost::multiprecision::max(worst, (h.M[i][j] - h2.M[i][j]).abs());
        CHECK(dmax(worst / scale) < 1e-50);
    }
    IntMat4 bad{};
    bad[0][0] = 2, bad[1][1] = 1, bad[2][2] = 1, bad[3][3] = 1;
    CHECK_FALSE(is_symplectic(bad));
}

TEST_CASE("solve_aphi recovers the printed homomorphisms") {
    SUBCASE("29A with (3, 1)") {
        const auto& e = entry("29A1");
        auto m1 = hermitian_M(period_matrix(e.C1)).real_part(), m2 = hermitian_M(period_matrix(e.C2)).real_part();
        auto sols = solve_aphi(m1, m2, e.A_eps1, 3, 1);
        REQUIRE(sols.size() == 1);
        CHECK(sols[0] == canonical_sign(Mat2<Rat>(Rat(-1), Rat(0), Rat(-1), Rat(1)), false));
        CHECK(canonical_sign(sols[0], true) == Mat2<Rat>(Rat(-1), Rat(0), Rat(-1), Rat(1)));
        CHECK(comp_residual(m1, m2, e.A_eps1, sols[0], 3, 1) < 1e-6);
        CHECK(solve_aphi(m1, m2, e.A_eps1, 3, 1, 1).size() == 1);
        CHECK_THROWS_AS(solve_aphi(m1, m2, e.A_eps1, 0, 1), std::invalid_argument);
    }
    SUBCASE("529A with (5, 1)") {
        const auto& e = entry("529A2");
        auto m1 = hermitian_M(period_matrix(e.C1)).real_part(), m2 = hermitian_M(period_matrix(e.C2)).real_part();
        auto sols = solve_aphi(m1, m2, e.A_eps1, 5, 1);
        REQUIRE(sols.size() == 1);
        CHECK(sols[0] == canonical_sign(Mat2<Rat>(Rat(-1), Rat(0), Rat(1), Rat(-1)), false));
    }
    SUBCASE("identity when M1 = M2 and (n1, n2) = (1, 0)") {
        auto m = hermitian_M(period_matrix(entry("65A1").C1)).real_part();
        auto sols = solve_aphi(m, m, Mat2<Rat>::identity(), 1, 0);
        CHECK(std::find(sols.begin(), sols.end(), Mat2<Rat>::identity()) != sols.end());
    }
}

TEST_CASE("recover_rphi gives integral matrices of the right determinant") {
    for (const std::string label : {"29A1", "529A2"}) {
        const auto& e = entry(label);
        auto r = recover_rphi(e.A_phi, period_matrix(e.C1), period_matrix(e.C2));
        CHECK(r.det == e.degree);
        CHECK(r.residual < 1e-50);
        CHECK(r.rounding < 1e-40);
    }
    auto pm = period_matrix(entry("39A1").C1);
    auto id = recover_rphi(Mat2<Rat>::identity(), pm, pm);
    CHECK(id.det == 1);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(id.R[i][j] == (i == j ? 1 : 0));
    // transposing a non-symmetric A_phi breaks integrality
    CHECK_THROWS_AS(recover_rphi(entry("29A1").A_phi.transpose(), period_matrix(entry("29A1").C1), period_matrix(entry("29A1").C2)),
                    AnalyticError);
}

TEST_CASE("Abel-Jacobi map basics") {
    auto jac = AnalyticJacobian::make(entry("39A1").C1, 50);
    PrecisionScope scope(50);
    const auto P = jac.point_at(Cx(Real(1) / 2), 1);
    const auto Q = jac.point_at(Cx(Real(-13) / 10), -1);
    const auto R = jac.point_at(Cx(Real(3), Real(1)), 1);
    const auto inf = CurvePoint::at_infinity(1);

    auto zero = jac.abel_jacobi(P, P);
    CHECK(dmax(zero[0].abs() + zero[1].abs()) < 1e-40);

    SUBCASE("2-torsion of Weierstrass differences") {
        for (int i = 0; i < 6; ++i)
            for (int j = i + 1; j < 6; ++j) {
                auto z = jac.abel_jacobi(jac.weierstrass_point(i), jac.weierstrass_point(j));
                CHECK(in_lattice(jac, scaled(2, z)));
                CHECK_FALSE(in_lattice(jac, z, 1e-3));
            }
    }
    SUBCASE("path independence across branch-point routes") {
        auto z0 = jac.abel_jacobi(R, inf);
        for (int k = 0; k < 6; ++k) {
            CVec2 zk;
            try {
                zk = jac.abel_jacobi(R, inf, k);
            } catch (const AnalyticError&) {
                continue;  // that route runs through another branch point
            }
            CHECK(in_lattice(jac, {zk[0] - z0[0], zk[1] - z0[1]}));
        }
    }
    SUBCASE("additivity") {
        auto a = jac.abel_jacobi(P, Q), b = jac.abel_jacobi(Q, R), c = jac.abel_jacobi(P, R);
        CHECK(in_lattice(jac, {a[0] + b[0] - c[0], a[1] + b[1] - c[1]}));
        // the hyperelliptic involution negates
        auto Pbar = CurvePoint::finite(P.x, -P.y);
        auto s = jac.abel_jacobi(P, inf), t = jac.abel_jacobi(Pbar, CurvePoint::at_infinity(-1));
        CHECK(in_lattice(jac, {s[0] + t[0], s[1] + t[1]}));
    }
    SUBCASE("reduction lands in the fundamental cell") {
        auto z = jac.abel_jacobi(R, inf);
        auto w = jac.reduce(scaled(7, z));
        for (const auto& c : jac.lattice_coordinates(w)) CHECK(dmax(boost::multiprecision::abs(c)) <= 0.5 + 1e-30);
    }
}

TEST_CASE("sqrt2 multiplication kills the classes of the Richelot kernel") {
    auto m = rm2_generate(Rat(3), Rat(2), Rat(1), Rat(-1));
    auto jac = AnalyticJacobian::make(m.curve, 50);
    // roots a_i of the cubic, then the two roots of each quadratic factor
    Eigen::Matrix3d comp;
    comp << 0, 0, -m.C.get_d(), 1, 0, -m.B.get_d(), 0, 1, -m.A.get_d();
    Eigen::EigenSolver<Eigen::Matrix3d> es(comp);
    auto index_of = [&](std::complex<double> x) {
        int best = 0;
        for (int k = 1; k < 6; ++k)
            if (std::abs(jac.branch_points()[k].to_complex() - x) < std::abs(jac.branch_points()[best].to_complex() - x))
                best = k;
        REQUIRE(std::abs(jac.branch_points()[best].to_complex() - x) < 1e-8);
        return best;
    };
    std::array<std::array<int, 2>, 3> w;
    for (int i = 0; i < 3; ++i) {
        const std::complex<double> a = es.eigenvalues()(i);
        const auto c0 = m.P.get_d() * a * a + m.Q.get_d() * a + m.R.get_d();
        const auto d = std::sqrt(a * a - 4.0 * c0);
        w[i] = {index_of((a + d) / 2.0), index_of((a - d) / 2.0)};
    }
    PrecisionScope scope(50);
    for (int i = 0; i < 3; ++i) {
        auto z = jac.two_torsion(w[i][0], w[i][1]);
        CHECK_FALSE(in_lattice(jac, z, 1e-3));
        CHECK(in_lattice(jac, times(m.A_epsilon, z)));
    }
    // [P00 - P10] is not in the kernel; it maps to [P20 - P21]
    auto z = jac.two_torsion(w[0][0], w[1][0]);
    auto image = times(m.A_epsilon, z);
    CHECK_FALSE(in_lattice(jac, image, 1e-3));
    auto target = jac.two_torsion(w[2][0], w[2][1]);
    CHECK(in_lattice(jac, {image[0] - target[0], image[1] - target[1]}));
}

TEST_CASE("family sqrt2 multiplications are fixed by the Rosati involution") {
    for (auto t : std::vector<std::array<int, 4>>{{1, 1, 0, 0}, {3, 2, 1, -1}, {-2, 3, -1, 1}}) {
        auto m = rm2_generate(Rat(t[0]), Rat(t[1]), Rat(t[2]), Rat(t[3]));
        auto h = hermitian_M(period_matrix(m.curve, 40));
        auto a = to_complex(m.A_epsilon);
        CHECK(distance(rosati_matrix(h, a), a) < 1e-6);
    }
    auto q = quat_generate(Rat(1), Rat(2));
    auto h = hermitian_M(period_matrix(q.curve, 40));
    CHECK(distance(rosati_matrix(h, to_complex(q.A_epsilon)), to_complex(q.A_epsilon)) < 1e-6);
    // the catalog sqrt2 multiplications too
    for (const auto& e : catalog()) {
        auto hc = hermitian_M(period_matrix(e.C1, 30));
        CHECK(distance(rosati_matrix(hc, to_complex(e.A_eps1)), to_complex(e.A_eps1)) < 1e-6);
    }
}

TEST_CASE("quaternionic family: Rosati image of eta") {
    auto q = quat_generate(Rat(1), Rat(2));
    auto h = hermitian_M(period_matrix(q.curve, 40));
    Mat2<NFElem> eps(NFElem(q.A_epsilon(0, 0)), NFElem(q.A_epsilon(0, 1)), NFElem(q.A_epsilon(1, 0)), NFElem(q.A_epsilon(1, 1)));
    auto eta = quat_eta(eps, q.A_psi);
    const C2 e = to_complex(eta.A_eta), a = to_complex(q.A_epsilon);
    const C2 I{{{1.0, 0.0}, {0.0, 1.0}}};
    C2 three_two{}, rhs{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) three_two[i][j] = 3.0 * I[i][j] + 2.0 * a[i][j];
    const C2 prod = mul(e, three_two);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) rhs[i][j] = 2.0 * I[i][j] + a[i][j] - prod[i][j];
    CHECK(distance(rosati_matrix(h, e), rhs) < 1e-6);
    // and psi itself is an endomorphism: its R matrix is integral
    auto r = recover_rphi(q.A_psi, period_matrix(q.curve, 40), period_matrix(q.curve, 40));
    CHECK(r.rounding < 1e-8);
}

TEST_CASE("theta functions map 2-torsion to the nodes of the Kummer surface") {
    auto jac = AnalyticJacobian::make(entry("29A1").C2, 40);
    auto ctx = ThetaContext::make(jac, 15);
    CHECK(ctx.alignment_residual < 1e-12);
    CHECK(dmax(ctx.tail_bound) < 1e-40);
    auto origin = theta_kummer(ctx, CVec2{});
    CHECK(std::abs(origin[0]) < 1e-10);
    CHECK(std::abs(origin[1]) < 1e-10);
    CHECK(std::abs(origin[2]) < 1e-10);
    const auto& e = jac.branch_points();
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j) {
            auto k = theta_kummer(ctx, jac.two_torsion(i, j));
            auto want = kummer_of_pair(jac.curve().F(), e[i].to_complex(), 0.0, e[j].to_complex(), 0.0);
            for (int c = 1; c < 4; ++c) CHECK(std::abs(k[c] / k[0] - want[c] / want[0]) < 1e-9 * (1 + std::abs(want[c])));
        }
    // the Kummer image is even
    PrecisionScope scope(40);
    auto z = jac.abel_jacobi(jac.point_at(Cx(Real(2)), 1), CurvePoint::at_infinity(1));
    auto k1 = theta_kummer(ctx, z), k2 = theta_kummer(ctx, {-z[0], -z[1]});
    for (int c = 1; c < 4; ++c) CHECK(std::abs(k1[c] / k1[0] - k2[c] / k2[0]) < 1e-9);
    CHECK_THROWS_AS(ThetaContext::make(AnalyticJacobian::make(Genus2Curve::make(QPoly({Rat(0), Rat(-1), Rat(0), Rat(0), Rat(0), Rat(1)}), "q"), 30)),
                    AnalyticError);
}

TEST_CASE("29A1: theta Kummer images agree with the correspondence") {
    const auto& e = entry("29A1");
    auto j1 = AnalyticJacobian::make(e.C1, 60), j2 = AnalyticJacobian::make(e.C2, 60);
    auto ctx = ThetaContext::make(j2, 15);
    const std::vector<Rat> xs = {make_rat(1, 2), Rat(2), make_rat(-13, 10), make_rat(37, 10), make_rat(1, 10)};
    CHECK(dmax(j2.lattice_distance(correspondence_offset(e, j1, j2, make_rat(3, 2)))) < 1e-40);
    for (const auto& s : kummer_cross_check(e, j1, ctx, xs)) CHECK(s.deviation < 1e-6);
}

TEST_CASE("analytic engine rejects bad input") {
    CHECK_THROWS_AS(AnalyticJacobian::make(entry("29A1").C1, 10), AnalyticError);
    auto jac = AnalyticJacobian::make(entry("29A1").C1, 30);
    PrecisionScope scope(30);
    auto off = CurvePoint::finite(Cx(Real(1)), Cx(Real(0)));  // y = 0 away from the branch points
    CHECK_THROWS_AS(jac.abel_jacobi(off, CurvePoint::at_infinity(1)), AnalyticError);
}
