#include "rm2kit/families.hpp"

#include "rm2kit/factor.hpp"
#include "rm2kit/linalg_q.hpp"
#include "rm2kit/prime_field.hpp"


namespace rm2 {

namespace {

QPoly qp(std::vector<Rat> c) { return QPoly(std::move(c)); }

NFElem tower_down(const TowerElem& e) { return e.descend(); }
Rat rational_down(const TowerElem& e) { return e.descend().rational_value(); }

QPoly descend_q(const TPoly& p) { return p.map<Rat>(rational_down); }
KPoly descend_k(const TPoly& p) { return p.map<NFElem>(tower_down); }

SplittingField field_kind(const CubicRoots& r) {
    if (r.k1) return SplittingField::conjugate_triple;
    return r.split_over_k1 ? SplittingField::all_rational : SplittingField::rational_plus_pair;
}

Mat2<Rat> rational_matrix(const Mat2<NFElem>& a) {
    return a.map<Rat>([](const NFElem& v) { return v.rational_value(); });
}

// prod (a + b alpha_i) over the two roots of X^2 - sigma X + pi.
QPoly conjugate_product(const QPoly& a, const QPoly& b, const Rat& sigma, const Rat& pi) {
    return a * a + a * b * sigma + b * b * pi;
}

template <class K>
RatFn<K> rf(const Poly<K>& num, const Poly<K>& den) {
    return RatFn<K>(num, den);
}

// The sextic G with t_k^2 = G(z_k) forced by the correspondence data: at each
// sample x0, G(z) and t^2 agree modulo the monic z-quadratic over Q[y].
std::optional<QPoly> target_from_data(const QPoly& source, const BiPoly<Rat>& quad, const BiPoly<Rat>& tform) {
    using Y = YElem<Rat>;
    struct Z {
        Y u, w;
    };
    QMatrix rows;
    QVector rhs;
    int used = 0;
    for (int n = 2; n < 80 && used < 5; ++n) {
        const Rat x0((n % 2 == 0) ? n / 2 + 1 : -(n / 2 + 1));
        const Rat f0 = source(x0);
        if (sgn(f0) == 0) continue;
        try {
            YRing<Rat> ring{f0};
            NormalData<Rat> nd = normalise<Rat>(quad, tform, ring, [&](const RatFn<Rat>& r) { return r.eval<Rat>(x0); });
            auto zmul = [&](const Z& p, const Z& q) {
                Y ww = ring.mul(p.w, q.w);
                return Z{ring.mul(p.u, q.u) - ring.mul(ww, nd.C), ring.mul(p.u, q.w) + ring.mul(p.w, q.u) - ring.mul(ww, nd.B)};
            };
            const Z t{nd.T, nd.S};
            const Z tt = zmul(t, t);
            std::vector<Z> powers{Z{Y(Rat(1)), Y()}};
            for (int k = 1; k <= 6; ++k) powers.push_back(zmul(powers.back(), Z{Y(), Y(Rat(1))}));
            auto comp = [](const Z& v) { return std::array<Rat, 4>{v.u.a, v.u.b, v.w.a, v.w.b}; };
            for (int c = 0; c < 4; ++c) {
                QVector row;
                for (const auto& pw : powers) row.push_back(comp(pw)[static_cast<std::size_t>(c)]);
                rows.push_back(row);
                rhs.push_back(comp(tt)[static_cast<std::size_t>(c)]);
            }
            ++used;
        } catch (const std::domain_error&) {
        }
    }
    if (!nullspace_q(rows, 7).empty()) return std::nullopt;
    auto sol = solve_q(rows, rhs);
    if (!sol) return std::nullopt;
    return QPoly(*sol);
}

}  // namespace

TPoly to_tower(const QPoly& p) {
    return p.map<TowerElem>([](const Rat& r) { return TowerElem(NFElem(r)); });
}

// ---------------------------------------------------------------------------
// sqrt(2) family

RM2FamilyMember rm2_generate(const Rat& delta, const Rat& P, const Rat& Q, const Rat& A) {
    if (sgn(delta) == 0) throw FamilyError("delta must be nonzero");
    if (sgn(P) == 0) throw FamilyError("P must be nonzero");
    const Rat R = 4 * P;
    const Rat B = (Q * (P * A - Q) + 4 * P * P + 1) / (P * P);
    const Rat C = 4 * (P * A - Q) / P;
    CubicRoots roots = split_cubic(qp({C, B, A, Rat(1)}));

    const TowerElem tP{NFElem(P)}, tQ{NFElem(Q)}, tR{NFElem(R)};
    std::array<TPoly, 3> g;
    for (std::size_t i = 0; i < 3; ++i) {
        const TowerElem& a = roots.alpha[i];
        g[i] = TPoly({tP * a * a + tQ * a + tR, TowerElem(0) - a, TowerElem(1)});
    }
    QuadraticSplitting<TowerElem> split;
    try {
        split = splitting_new(TowerElem(NFElem(delta)), g[0], g[1], g[2], field_kind(roots));
    } catch (const std::invalid_argument& e) {
        throw FamilyError(std::string("degenerate sextic: ") + e.what());
    }
    Genus2Curve curve = Genus2Curve::make(descend_q(split.product()));

    const Mobius iota{Rat(0), Rat(2), Rat(1), Rat(0), Rat(4)};
    auto rho = richelot_correspondence<NFElem, TowerElem>(split, RichelotDirection::forward, tower_down);
    if (mobius_image(to_k<NFElem>(iota), to_kpoly(curve.F())) != rho.target())
        throw std::logic_error("(x, y) -> (2/x, 4y/x^3) does not map the curve onto its Richelot dual");
    auto eps = compose_target_iso(rho, to_k<NFElem>(iota.inverse()));
    Mat2<Rat> a_eps = rational_matrix(differential_matrix(eps, DiffMethod::two_point));
    if (a_eps != Mat2<Rat>(Rat(0), Rat(-1), Rat(-2), Rat(0)))
        throw std::logic_error("epsilon has differential matrix " + a_eps.str());
    return RM2FamilyMember{delta, P, Q, A, B, C, R, std::move(curve), std::move(roots), std::move(split),
                           iota, std::move(rho), std::move(eps), a_eps};
}

std::optional<RM2FamilyMember> rm2_recognize(const Genus2Curve& c, const QuadraticSplitting<TowerElem>& s) {
    try {
        if (descend_q(s.product()) != c.F()) return std::nullopt;
        auto dual = richelot_dual(s);
        const Mobius iota{Rat(0), Rat(2), Rat(1), Rat(0), Rat(4)};
        if (mobius_image(to_k<NFElem>(iota), to_kpoly(c.F())) != descend_k(dual.F2)) return std::nullopt;

        // Family shape: monic G_i = X^2 - a_i X + P a_i^2 + Q a_i + R with R = 4P.
        TowerElem lead(1);
        std::array<TowerElem, 3> a, k;
        for (std::size_t i = 0; i < 3; ++i) {
            const TPoly& gi = s.G[i];
            if (gi.degree() != 2) return std::nullopt;
            TowerElem l = gi.lead();
            lead = lead * l;
            a[i] = (TowerElem(0) - gi.coeff(1)) / l;
            k[i] = gi.coeff(0) / l;
        }
        // Lagrange interpolation of k as a quadratic in a.
        TowerElem p2(0), p1(0), p0(0);
        for (std::size_t i = 0; i < 3; ++i) {
            const TowerElem& u = a[(i + 1) % 3];
            const TowerElem& v = a[(i + 2) % 3];
            TowerElem w = k[i] / ((a[i] - u) * (a[i] - v));
            p2 = p2 + w;
            p1 = p1 - w * (u + v);
            p0 = p0 + w * u * v;
        }
        const Rat P = rational_down(p2), Q = rational_down(p1), R = rational_down(p0);
        const Rat A = rational_down(TowerElem(0) - a[0] - a[1] - a[2]);
        const Rat delta = rational_down(s.delta * lead);
        if (sgn(P) == 0 || R != 4 * P) return std::nullopt;
        auto m = rm2_generate(delta, P, Q, A);
        if (m.curve.F() != c.F()) return std::nullopt;
        return m;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

// ---------------------------------------------------------------------------
// (Delta, U, V, W) 2-isogeny family

QPoly thm51_f1(const UVWParams& p) {
    const Rat& U = p.U;
    const Rat& V = p.V;
    const Rat& W = p.W;
    if (sgn(U) == 0 || sgn(V) == 0) throw FamilyError("U and V must be nonzero");
    const Rat s = (W * (U - V) * (U + V) + 4 * (V * V + 4)) / (4 * U);
    QPoly a = qp({Rat(-4) / V, Rat(0), Rat(1)});
    QPoly b = qp({-U / V, Rat(-1)});
    return qp({V, U, Rat(1)}) * conjugate_product(a, b, -s, W) * p.delta;
}

std::array<std::array<Rat, 3>, 3> thm51_phi(const Rat& U, const Rat& V) {
    return {{{2 * V * (U - 2), 2 * V * (4 - U), 2 * (U - 2 * (V - 1))},
             {2 * (U * (U - 2) + V * (V - 2)), 2 * (U * (V - U + 2) - (V - 2) * (V - 2)), U * (U - V) - 2 * (V - 2)},
             {V * (U + V - 4), 2 * (2 * V - U), U - V}}};
}

std::array<QPoly, 4> thm51_psi(const Rat& U, const Rat& V) {
    const Rat V2 = V * V, V3 = V2 * V, U2 = U * U, U3 = U2 * U;
    QPoly psi1 = qp({-2 * (4 * V3 - (U + 2) * ((U + V2) * (U + 2) - V * (U2 - U + 8))),
                     -(V2 * (4 * V - U2 - 16) + (U + 2) * (2 * V * (U + 10) + U3 - 4 * (2 * U2 - U + 2))),
                     -(U * V2 + (U + 4) * (6 * V - U * (U + 2))),
                     2 * (U2 - V * (V + 2))});
    QPoly psi2 = qp({2 * V * (4 * V2 - (U + 2) * (V * (U + 2) - U2 + 2 * (U - 2))),
                     2 * (4 * V2 * (V - 3) - (U + 2) * (V2 * U + V * (U - 8) - U * (U - 1) * (U - 2))),
                     (U + V) * (U - V) * (U2 - 2 * V) - 4 * (3 * V2 - 8 * V + U2),
                     8 * V - U * (U + V) * (V - U + 2)});
    QPoly psi3 = qp({-2 * (V3 * (V - 2) + U * (U - 2) * (4 * V - U2)),
                     -(3 * U * V3 - 2 * (U - 4) * V2 - (U2 * (U + 10) - 32 * (U - 1)) * V + 2 * U2 * (U - 2) * (U - 2)),
                     -(2 * V3 + (U - 2) * (U + 2) * V2 + 2 * (U - 4) * (U - 4) * V - U2 * (U2 - 4 * (U - 2))),
                     8 * V - U * (U + V) * (V - U + 2)});
    QPoly psi4 = qp({-2 * V * (U * V2 + 2 * (U - 4) * V - U2 * (U - 2)),
                     -2 * V * (2 * V2 + (U2 - 4 * (U - 3)) * V + U2 * (U - 6)),
                     -2 * ((3 * U - 8) * V2 + 2 * (U2 - U + 4) * V - U2 * (U + 2)),
                     4 * V * (2 - V)});
    return {psi1, psi2, psi3, psi4};
}

std::optional<UVWParams> thm51_primed(const UVWParams& p) {
    const Rat& U = p.U;
    const Rat& V = p.V;
    const Rat& W = p.W;
    const Rat V2 = V * V, V3 = V2 * V;
    const Rat den = (U - V) * (U - V) * (W * (V - 1) - 4 * V) + 4 * (V - 2) * (V - 2);
    if (U == 2 || sgn(den) == 0 || sgn(U) == 0 || sgn(V) == 0 || V == 2) return std::nullopt;
    UVWParams q;
    q.U = 2 * (V - U + 2) / (U - 2);
    q.V = 2 * (U - V) / (U - 2);
    q.W = (W * (U - V) * (V3 + V2 * (U - 8) + 4 * (V * (U + 1) - U)) +
           4 * (V2 * V2 - 8 * (V3 - V2 * (U + 1) + V * (U * U - 2 * (U - 2)) - 2))) /
          den;
    q.delta = p.delta * (U - 2) * den / (4 * U * V * (V - 2));
    if (sgn(q.U) == 0 || sgn(q.V) == 0) return std::nullopt;
    return q;
}

std::optional<QPoly> thm51_f2(const UVWParams& p) {
    if (auto q = thm51_primed(p)) return thm51_f1(*q);
    return std::nullopt;
}

IsogenyPair51 thm51_pair(const Rat& delta, const Rat& U, const Rat& V, const Rat& W) {
    if (sgn(delta) == 0 || sgn(U) == 0 || sgn(V) == 0) throw FamilyError("delta, U and V must be nonzero");
    if (V == 2) throw FamilyError("V = 2: use thm51_elliptic_quotient");
    const UVWParams p{delta, U, V, W};
    QPoly f1 = thm51_f1(p);
    if (gcd(f1, f1.derivative()).degree() > 0 || f1.degree() < 5) throw FamilyError("F1 does not have six distinct zeros");
    const auto phi = thm51_phi(U, V);
    const auto psi = thm51_psi(U, V);
    const QPoly d1 = qp({V, U, Rat(1)});
    const QPoly d2 = qp({2 * (U - V), 2 * (V - U + 2), U - 2});
    // Coefficient of z^j as a polynomial in x, and of x^i as a polynomial in z.
    auto column = [&](int j) { return qp({phi[0][j], phi[1][j], phi[2][j]}); };
    auto row = [&](int i) { return qp({phi[i][0], phi[i][1], phi[i][2]}); };

    BiPoly<Rat> q1, q2;
    for (int k = 0; k < 3; ++k) {
        q1.push_back({RatFn<Rat>(column(k)), RatFn<Rat>()});
        q2.push_back({RatFn<Rat>(row(k)), RatFn<Rat>()});
    }
    const QPoly lx = column(2), lz = row(2);
    const QPoly den1 = d1 * lx * lx, den2 = d2 * lz * lz;
    const Rat c = V - 2;
    BiPoly<Rat> t1{{RatFn<Rat>(), rf(psi[1] * c, den1)}, {RatFn<Rat>(), rf(psi[0] * c, den1)}};
    BiPoly<Rat> t2{{RatFn<Rat>(), rf(psi[3] * c, den2)}, {RatFn<Rat>(), rf(psi[2] * c, den2)}};

    // With a vanishing printed denominator the sextic is read off the data of pi1.
    std::optional<QPoly> printed = thm51_f2(p);
    std::optional<QPoly> f2 = printed ? printed : target_from_data(f1, q1, t1);
    if (!f2) throw FamilyError("could not determine F2");
    if (f2->degree() < 5 || gcd(*f2, f2->derivative()).degree() > 0) throw FamilyError("F2 does not have six distinct zeros");

    Genus2Curve c1 = Genus2Curve::make(f1);
    Genus2Curve c2 = Genus2Curve::make(*f2);
    return IsogenyPair51{p,
                         thm51_primed(p),
                         printed.has_value(),
                         c1,
                         c2,
                         d1,
                         d2,
                         Correspondence<Rat>(f1, *f2, q1, t1, "weierstrass:D1"),
                         Correspondence<Rat>(*f2, f1, q2, t2, "weierstrass:D2")};
}

// ---------------------------------------------------------------------------
// (Delta, W) 2-isogeny family

QPoly thm52_f1(const Rat& delta, const Rat& W) {
    QPoly a = qp({Rat(2), Rat(0), Rat(1)});
    QPoly b = qp({Rat(0), Rat(-1)});
    return qp({Rat(-2), Rat(0), Rat(1)}) * conjugate_product(a, b, -W, Rat(8)) * delta;
}

QPoly thm52_f2(const Rat& delta, const Rat& W) {
    // Delta' prod(Z^2 - a'_i Z + 2) with the denominator 16 - 3W of W' cleared.
    QPoly a = qp({Rat(2), Rat(0), Rat(1)});
    QPoly zq = qp({Rat(0), Rat(1)}) * a;
    QPoly inner = (a * a + qp({Rat(0), Rat(0), Rat(8)})) * (16 - 3 * W) + zq * (16 * (6 - W));
    return qp({Rat(-2), Rat(0), Rat(1)}) * inner * delta;
}

IsogenyPair52 thm52_pair(const Rat& delta, const Rat& W) {
    if (sgn(delta) == 0) throw FamilyError("delta must be nonzero");
    QPoly f1 = thm52_f1(delta, W);
    if (gcd(f1, f1.derivative()).degree() > 0) throw FamilyError("F1 does not have six distinct zeros");
    QPoly f2 = thm52_f2(delta, W);
    if (f2.degree() < 5 || gcd(f2, f2.derivative()).degree() > 0) throw FamilyError("F2 does not have six distinct zeros");

    const QPoly c2 = qp({Rat(2), Rat(4), Rat(3)});
    const QPoly c1 = qp({Rat(8), Rat(16), Rat(4)});
    const QPoly c0 = qp({Rat(12), Rat(8), Rat(2)});
    BiPoly<Rat> quad{{RatFn<Rat>(c0), RatFn<Rat>()}, {RatFn<Rat>(c1), RatFn<Rat>()}, {RatFn<Rat>(c2), RatFn<Rat>()}};
    const QPoly s2 = qp({Rat(-2), Rat(0), Rat(1)});
    const QPoly den = s2 * c2 * c2;
    BiPoly<Rat> t1{{RatFn<Rat>(), rf(qp({Rat(-4), Rat(-6), Rat(-2), Rat(-1)}) * Rat(32), den)},
                   {RatFn<Rat>(), rf(qp({Rat(1), Rat(1)}) * qp({Rat(-2), Rat(-4), Rat(1)}) * Rat(32), den)}};
    BiPoly<Rat> t2{{RatFn<Rat>(), rf(qp({Rat(2), Rat(8), Rat(7), Rat(2)}) * Rat(8), den)},
                   {RatFn<Rat>(), rf(qp({Rat(0), Rat(6), Rat(12), Rat(5)}) * Rat(4), den)}};

    std::optional<Rat> wp;
    if (16 - 3 * W != 0) wp = 16 * (6 - W) / (16 - 3 * W);
    return IsogenyPair52{delta,
                         W,
                         wp,
                         delta * (16 - 3 * W),
                         Genus2Curve::make(f1),
                         Genus2Curve::make(f2),
                         Correspondence<Rat>(f1, f2, quad, t1, "weierstrass:sqrt2"),
                         Correspondence<Rat>(f2, f1, quad, t2, "weierstrass:sqrt2")};
}

// ---------------------------------------------------------------------------
// V = 2 quotient

EllipticQuotient thm51_elliptic_quotient(const Rat& delta, const Rat& U, const Rat& W) {
    if (sgn(delta) == 0 || sgn(U) == 0) throw FamilyError("delta and U must be nonzero");
    if (U == 2) throw FamilyError("U = 2 makes the alpha relation degenerate");
    EllipticQuotient out;
    out.delta = delta;
    out.U = U;
    out.W = W;
    const QPoly rel = qp({U + 2, Rat(4), U - 2}).monic();
    auto fac = factor_q(rel);
    if (fac.factors.size() == 1 && fac.factors[0].multiplicity == 1) {
        out.field = NumberField::make(rel, "alpha", 0);
        out.alpha = NFElem::generator(out.field);
    } else {
        const QPoly& l = fac.factors[0].poly;
        out.alpha = NFElem(Rat(-l.coeff(0) / l.coeff(1)));
    }
    const NFElem a = out.alpha;
    const NFElem u(U), w(W);
    const NFElem u2 = u * u, u3 = u2 * u, u4 = u3 * u;
    auto kp = [](std::vector<NFElem> c) { return KPoly(std::move(c)); };
    const KPoly z261 = kp({NFElem(1), NFElem(-6), NFElem(1)});
    const KPoly z21 = kp({NFElem(1), NFElem(0), NFElem(1)});
    const KPoly zz = kp({NFElem(0), NFElem(1)});
    KPoly bracket = z261 * (NFElem(-32) * (NFElem(4) * (u - NFElem(3)) * a + u2 - NFElem(2) * u - NFElem(4))) +
                    z21 * ((u - NFElem(2)) * (u - NFElem(2)) * ((u2 - NFElem(12)) * a - NFElem(2) * (u + NFElem(2))) * w) +
                    zz * (NFElem(2) *
                          ((u4 - NFElem(4) * u3 - NFElem(8) * u2 - NFElem(16) * u + NFElem(144)) * a -
                           NFElem(2) * (u3 + NFElem(6) * u2 - NFElem(20) * u - NFElem(24))) *
                          w);
    out.E = kp({NFElem(1), NFElem(1)}) * bracket * (NFElem(delta) * (a + NFElem(1)) / u);
    out.symmetric_coefficients = out.E.coeff(0) == out.E.coeff(3) && out.E.coeff(1) == out.E.coeff(2);

    const NFElem c0 = u3 - NFElem(8) * u2 + NFElem(4) * u + NFElem(32) + a * (u - NFElem(4)) * (u2 + NFElem(4) * u - NFElem(20));
    const NFElem um2 = u - NFElem(2);
    out.t_scale = NFElem(32) * c0 / (um2 * um2 * um2);

    // t^2 = E(z^2) modulo y^2 = F1(x), for both (z^2, t) and (1/z^2, t/z^3).
    const KPoly f1 = to_kpoly(thm51_f1({delta, U, Rat(2), W}));
    const KPoly zn = kp({NFElem(0) - a - NFElem(1), NFElem(1)});
    const KPoly zd = kp({a - NFElem(1), a});
    using R = RatFn<NFElem>;
    const R z = R(zn, zd);
    const R t2 = R(f1 * (out.t_scale * out.t_scale), pow(zd, 6));
    auto e_at = [&](const R& v) {
        R acc;
        const auto& co = out.E.coeffs();
        for (auto it = co.rbegin(); it != co.rend(); ++it) acc = acc * v + R(KPoly({*it}));
        return acc;
    };
    const R z2 = z * z;
    const R z6 = z2 * z2 * z2;
    bool first = (t2 - e_at(z2)).zero();
    bool second = (t2 / z6 - e_at(R(1) / z2)).zero();
    out.substitution_verified = first && second;
    return out;
}

// ---------------------------------------------------------------------------
// Quaternionic family

QPoly quat_sextic(const Rat& delta, const Rat& N) {
    return qp({N + 1, 6 * N, 3 * (N - 1), -8 * N * N, 3 * (N + 1), -6 * N, N - 1}) * delta;
}

namespace {

Correspondence<NFElem> quat_psi(const Rat& N, const FieldRef& field) {
    const NFElem s = NFElem::generator(field);
    const NFElem n(N), one(1);
    auto kp = [](std::vector<NFElem> c) { return KPoly(std::move(c)); };
    auto lift = [&](const QPoly& re, const QPoly& im) {
        return to_kpoly(re) + to_kpoly(im) * s;
    };
    auto q = [](std::vector<Rat> c) { return QPoly(std::move(c)); };
    const Rat N2 = N * N, N3 = N2 * N;

    const KPoly lin = kp({one + s, NFElem(2)});                                     // 2x + 1 + s
    const KPoly quad = lift(q({Rat(-1), 2 * N, Rat(2)}), q({Rat(1), 2 * N}));        // 2x^2 + 2Nx - 1 + s(2Nx + 1)
    const KPoly pz = lift(q({-2 * N, -(6 * N + 1), -(2 * N - 1), 2 * (N + 1)}), q({Rat(0), Rat(1), 4 * N + 1}));

    const KPoly a1 = lift(q({-N - 1, -(7 * N + 4), -3 * (3 * N + 1), 3 * N + 2, Rat(2)}),
                          q({-N - 1, -3 * N, 3 * (N + 1), 3 * N + 2}));
    const KPoly a2 = lift(q({Rat(-1), N + 1, Rat(2)}), q({Rat(1), N + 1}));
    const KPoly a3 = lift(q({2 * N2 + 6 * N + 1, 3 * (N + 1) * (6 * N + 1), 2 * (21 * N2 + 13 * N + 4),
                             8 * N3 + 48 * N2 + 8 * N + 3, 6 * N2 - 46 * N - 13, -(18 * N2 + 21 * N + 10),
                             2 * (N2 + 5 * N + 1), Rat(2)}),
                          q({2 * N2 + 1, 3 * (2 * N2 - N + 1), 2 * (3 * N2 - 7 * N - 1), 8 * N3 - 12 * N2 - 34 * N - 9,
                             -3 * (10 * N2 + 6 * N + 1), 6 * N2 + 9 * N + 4, 2 * (N + 1) * (N + 1)}));
    const KPoly a4 = lift(q({2 * N2 + 4 * N - 1, 12 * N2 - 7 * N - 4, (N - 4) * (4 * N + 1), -2 * (N2 + N - 1), Rat(2)}),
                          q({2 * N2 - 2 * N - 1, -9 * N, -(4 * N2 + 3 * N - 4), -2 * (N2 - 2 * N - 1)}));

    using R = RatFn<NFElem>;
    const KPoly x = KPoly::x();
    const KPoly lq = lin * quad;
    BiPoly<NFElem> quadratic{{R(x * (s - one), lin), R()},
                             {R(pz * (one + s), lq), R(kp({NFElem(-2)}) * (one + s), lq)},
                             {R(1), R()}};
    const KPoly den = lq * lq;
    const NFElem nm1 = n - one;
    BiPoly<NFElem> tform{{R(quad * x * a1 * (NFElem(2) * (s - one) * nm1), den), R(quad * a2 * (NFElem(2) * (s - one)), den)},
                         {R(a3 * (NFElem(4) * (one + s) * nm1), den), R(a4 * (NFElem(4) * (one + s)), den)}};
    const KPoly f = to_kpoly(quat_sextic(N - 1, N));
    return Correspondence<NFElem>(f, f, quadratic, tform);
}

}  // namespace

QuatFamilyMember quat_generate(const Rat& delta, const Rat& N) {
    if (sgn(delta) == 0) throw FamilyError("delta must be nonzero");
    if (N == 1) throw FamilyError("N = 1: the model with delta = N - 1 used for psi degenerates");
    QPoly f = quat_sextic(delta, N);
    if (f.degree() < 5 || gcd(f, f.derivative()).degree() > 0) throw FamilyError("degenerate sextic");
    Genus2Curve curve = Genus2Curve::make(f);

    CubicRoots roots = split_cubic(qp({-N, Rat(0), Rat(0), Rat(1)}));
    std::array<TPoly, 3> g;
    for (std::size_t i = 0; i < 3; ++i) {
        const TowerElem& a = roots.alpha[i];
        g[i] = TPoly({a + TowerElem(1), TowerElem(-2) * a * a, a - TowerElem(1)});
    }
    const TPoly prod = g[0] * g[1] * g[2];
    int k = 0;
    while (sgn(f.coeff(k)) == 0) ++k;
    const Rat scale = f.coeff(k) / rational_down(prod.coeff(k));
    QuadraticSplitting<TowerElem> split =
        splitting_new(TowerElem(NFElem(scale)), g[0], g[1], g[2], field_kind(roots));
    if (descend_q(split.product()) != f) throw std::logic_error("G_i do not factor the quaternionic sextic");

    const Mobius iota{Rat(-1), Rat(1), Rat(1), Rat(1), Rat(4)};
    auto rho = richelot_correspondence<NFElem, TowerElem>(split, RichelotDirection::forward, tower_down);
    if (mobius_image(to_k<NFElem>(iota), to_kpoly(f)) != rho.target())
        throw std::logic_error("((1-x)/(x+1), 4y/(x+1)^3) does not map the curve onto its Richelot dual");
    auto eps = compose_target_iso(rho, to_k<NFElem>(iota.inverse()));
    Mat2<Rat> a_eps = rational_matrix(differential_matrix(eps, DiffMethod::two_point));

    FieldRef k3 = NumberField::make(qp({Rat(3), Rat(0), Rat(1)}), "s", 1);
    auto psi = quat_psi(N, k3);
    Mat2<NFElem> a_psi = differential_matrix(psi, DiffMethod::two_point);
    return QuatFamilyMember{delta, N, std::move(curve), std::move(roots), scale, std::move(eps), a_eps, k3, std::move(psi),
                            a_psi};
}

EtaResult quat_eta(const Mat2<NFElem>& A_eps, const Mat2<NFElem>& A_psi) {
    using M = Mat2<NFElem>;
    const M I = M::identity();
    const M psi_eps = A_psi * A_eps;
    std::vector<int> s_order, t_order{0};
    for (int v = 1; v <= 9; v += 2) s_order.insert(s_order.end(), {v, -v});
    for (int v = 2; v <= 9; v += 2) t_order.insert(t_order.end(), {v, -v});
    for (int s0 : s_order)
        for (int t0 : t_order) {
            if (s0 * s0 - 2 * t0 * t0 != 1) continue;
            M eta = NFElem(Rat((1 + s0) / 2)) * I + NFElem(Rat(t0 / 2)) * A_eps + NFElem(Rat(s0 - 2 * t0)) * A_psi +
                    NFElem(Rat(t0 - s0)) * psi_eps;
            M rel1 = eta * eta - eta + I;
            M rel2 = eta * A_eps + A_eps * eta - A_eps;
            if (rel1 == M() && rel2 == M()) return {s0, t0, eta};
        }
    throw FamilyError("no (s0, t0) in the search box satisfies the eta identities");
}

std::vector<TwistEvidence> quat_twist_evidence(const Genus2Curve& c, const std::vector<std::uint64_t>& primes,
                                               const Rat& twist) {
    Genus2Curve t = c.twist(twist);
    std::vector<TwistEvidence> out;
    for (auto p : primes) {
        if (!good_reduction(c, p) || !good_reduction(t, p))
            throw FamilyError("bad prime " + std::to_string(p) + " for the curve or its twist");
        PrimeField fp(p);
        auto a = frobenius_charpoly(c, p).charpoly();
        auto b = frobenius_charpoly(t, p).charpoly();
        out.push_back({p, fp.legendre(fp.reduce(-3)) == -1, a == b, a, b});
    }
    return out;
}

}  // namespace rm2
