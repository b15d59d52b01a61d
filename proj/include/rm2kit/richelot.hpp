#pragma once

#include "rm2kit/correspondence.hpp"
#include "rm2kit/curve.hpp"

#include <array>
#include <functional>

namespace rm2 {

struct SplitJacobianError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class SplittingField { all_rational, rational_plus_pair, conjugate_triple };

// Y^2 = delta * G0 G1 G2 with the G_i of degree <= 2 over E.
template <class E>
struct QuadraticSplitting {
    E delta;
    std::array<Poly<E>, 3> G;
    SplittingField field = SplittingField::all_rational;

    Poly<E> product() const { return G[0] * G[1] * G[2] * delta; }

    // g_uv = coefficient of X^v in G_u
    E g(int u, int v) const { return G[static_cast<std::size_t>(u)].coeff(v); }
    E det_g() const {
        return g(0, 0) * (g(1, 1) * g(2, 2) - g(1, 2) * g(2, 1)) - g(0, 1) * (g(1, 0) * g(2, 2) - g(1, 2) * g(2, 0)) +
               g(0, 2) * (g(1, 0) * g(2, 1) - g(1, 1) * g(2, 0));
    }
};

template <class E>
QuadraticSplitting<E> splitting_new(E delta, Poly<E> g0, Poly<E> g1, Poly<E> g2,
                                    SplittingField field = SplittingField::all_rational) {
    if (is_zero(delta)) throw std::invalid_argument("delta must be nonzero");
    QuadraticSplitting<E> s{delta, {std::move(g0), std::move(g1), std::move(g2)}, field};
    for (const auto& q : s.G)
        if (q.degree() < 1 || q.degree() > 2) throw std::invalid_argument("each G_i must have degree 1 or 2");
    Poly<E> f = s.product();
    if (f.degree() != 5 && f.degree() != 6) throw std::invalid_argument("product must have degree 5 or 6");
    if (gcd(f, f.derivative()).degree() > 0) throw std::invalid_argument("product has a repeated root");
    return s;
}

template <class E>
struct RichelotDual {
    E det_g;
    std::array<Poly<E>, 3> H;
    Poly<E> F2;  // delta * prod H_i / det_g
};

// H_i = G'_{i+1} G_{i+2} - G'_{i+2} G_{i+1}, indices mod 3. Defined even when det(g) = 0.
template <class E>
std::array<Poly<E>, 3> richelot_h(const QuadraticSplitting<E>& s) {
    std::array<Poly<E>, 3> h;
    for (int i = 0; i < 3; ++i) {
        const auto& a = s.G[static_cast<std::size_t>((i + 1) % 3)];
        const auto& b = s.G[static_cast<std::size_t>((i + 2) % 3)];
        h[static_cast<std::size_t>(i)] = a.derivative() * b - b.derivative() * a;
    }
    return h;
}

template <class E>
RichelotDual<E> richelot_dual(const QuadraticSplitting<E>& s) {
    RichelotDual<E> out;
    out.det_g = s.det_g();
    if (is_zero(out.det_g)) throw SplitJacobianError("det(g) = 0: the Jacobian is isogenous to a product of elliptic curves");
    out.H = richelot_h(s);
    out.F2 = out.H[0] * out.H[1] * out.H[2] * (s.delta / out.det_g);
    return out;
}

enum class RichelotDirection { forward, dual };

// Raw data over E for the Richelot isogeny (source C) or its dual (source the Richelot dual).
template <class E>
Correspondence<E> richelot_raw(const QuadraticSplitting<E>& s, const RichelotDual<E>& d, RichelotDirection dir) {
    const Poly<E>& G1 = s.G[1];
    const Poly<E>& G2 = s.G[2];
    const Poly<E>& H1 = d.H[1];
    const Poly<E>& H2 = d.H[2];
    const Poly<E> F1 = s.product();
    const Poly<E> X = Poly<E>::x();
    BiPoly<E> quad(3), tf;
    if (dir == RichelotDirection::forward) {
        // G1(x) H1(z) + G2(x) H2(z) in powers of z; t = delta G1(x) H1(z)(x - z) y / F1(x)
        for (int k = 0; k < 3; ++k) quad[static_cast<std::size_t>(k)].a = RatFn<E>(G1 * H1.coeff(k) + G2 * H2.coeff(k));
        for (int k = 0; k <= 3; ++k) {
            Poly<E> c = X * H1.coeff(k) - Poly<E>(H1.coeff(k - 1));
            tf.push_back({RatFn<E>(), RatFn<E>(G1 * c * s.delta, F1)});
        }
        return Correspondence<E>(F1, d.F2, quad, tf, "weierstrass:G0");
    }
    // Dual: roles of (x, G) and (z, H) exchanged; x-roots of the same expression.
    for (int k = 0; k < 3; ++k) quad[static_cast<std::size_t>(k)].a = RatFn<E>(H1 * G1.coeff(k) + H2 * G2.coeff(k));
    for (int k = 0; k <= 3; ++k) {
        // G1(x)(x - z) coefficient of x^k is G1[k-1] - z G1[k]
        Poly<E> c = Poly<E>(G1.coeff(k - 1)) - X * G1.coeff(k);
        tf.push_back({RatFn<E>(), RatFn<E>(H1 * c * s.delta, d.F2)});
    }
    return Correspondence<E>(d.F2, F1, quad, tf, "weierstrass:H0");
}

// Normalises over E and maps every coefficient into K (identity for rational splittings).
template <class K, class E>
Correspondence<K> descend(const Correspondence<E>& c, const std::function<K(const E&)>& down) {
    const auto& n = c.normal_form();
    auto mp = [&](const Poly<E>& p) { return p.template map<K>(down); };
    auto mr = [&](const RatFn<E>& r) { return RatFn<K>(mp(r.num()), mp(r.den())); };
    auto my = [&](const YElem<RatFn<E>>& y) { return YElem<RatFn<K>>(mr(y.a), mr(y.b)); };
    NormalData<RatFn<K>> nk{my(n.B), my(n.C), my(n.S), my(n.T)};
    return corr_from_normal<K>(mp(c.source()), mp(c.target()), nk, c.base_point());
}

template <class K, class E>
Correspondence<K> richelot_correspondence(const QuadraticSplitting<E>& s, RichelotDirection dir,
                                          const std::function<K(const E&)>& down) {
    auto d = richelot_dual(s);
    return descend<K, E>(richelot_raw(s, d, dir), down);
}

// The kernel classes [P_i0 - P_i1]: root pairs of each G_i, labelled 2i, 2i+1.
inline std::vector<RootPair> richelot_kernel_labels() { return {{0, 1}, {2, 3}, {4, 5}}; }

}  // namespace rm2
