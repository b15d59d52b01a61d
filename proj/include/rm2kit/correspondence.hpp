#pragma once

#include "rm2kit/curve.hpp"
#include "rm2kit/mat2.hpp"
#include "rm2kit/ratfn.hpp"

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rm2 {

// ---------------------------------------------------------------------------
// Scalar helpers

// v + d*eps with eps^2 = 0; carries first derivatives through pointwise evaluation.
template <class K>
struct Dual {
    K v, d;
    Dual() : v(0), d(0) {}
    Dual(int c) : v(c), d(0) {}
    Dual(const K& c) : v(c), d(0) {}
    Dual(const K& a, const K& b) : v(a), d(b) {}
    friend Dual operator+(const Dual& a, const Dual& b) { return {a.v + b.v, a.d + b.d}; }
    friend Dual operator-(const Dual& a, const Dual& b) { return {a.v - b.v, a.d - b.d}; }
    friend Dual operator-(const Dual& a) { return {K(0) - a.v, K(0) - a.d}; }
    friend Dual operator*(const Dual& a, const Dual& b) { return {a.v * b.v, a.v * b.d + a.d * b.v}; }
    friend Dual operator/(const Dual& a, const Dual& b) {
        if (is_zero(b.v)) throw std::domain_error("dual division by a nilpotent");
        K inv = K(1) / b.v;
        return {a.v * inv, (a.d * b.v - a.v * b.d) * inv * inv};
    }
    Dual& operator+=(const Dual& o) { return *this = *this + o; }
    Dual& operator-=(const Dual& o) { return *this = *this - o; }
    Dual& operator*=(const Dual& o) { return *this = *this * o; }
    friend bool operator==(const Dual& a, const Dual& b) { return a.v == b.v && a.d == b.d; }
};
template <class K>
bool is_zero(const Dual<K>& a) { return is_zero(a.v) && is_zero(a.d); }

// a + b*y over a coefficient ring X, with y^2 = f supplied by YRing.
template <class X>
struct YElem {
    X a, b;
    YElem() : a(0), b(0) {}
    YElem(X u) : a(std::move(u)), b(0) {}
    YElem(X u, X v) : a(std::move(u)), b(std::move(v)) {}
    friend YElem operator+(const YElem& p, const YElem& q) { return {p.a + q.a, p.b + q.b}; }
    friend YElem operator-(const YElem& p, const YElem& q) { return {p.a - q.a, p.b - q.b}; }
    friend YElem operator-(const YElem& p) { return {X(0) - p.a, X(0) - p.b}; }
    bool zero() const { return is_zero(a) && is_zero(b); }
};

template <class X>
struct YRing {
    X f;
    YElem<X> mul(const YElem<X>& p, const YElem<X>& q) const {
        if (is_zero(p.b)) return {p.a * q.a, p.a * q.b};
        if (is_zero(q.b)) return {p.a * q.a, p.b * q.a};
        return {p.a * q.a + p.b * q.b * f, p.a * q.b + p.b * q.a};
    }
    YElem<X> inv(const YElem<X>& p) const {
        if (is_zero(p.b)) {
            if (is_zero(p.a)) throw std::domain_error("inverse of zero");
            return {X(1) / p.a, X(0)};
        }
        X n = p.a * p.a - p.b * p.b * f;
        if (is_zero(n)) throw std::domain_error("zero divisor modulo y^2 = F");
        return {p.a / n, X(0) - p.b / n};
    }
};

// ---------------------------------------------------------------------------
// Raw bivariate data: coefficient of z^k is a(x) + b(x) y.

template <class K>
struct BiTerm {
    RatFn<K> a, b;
};
template <class K>
using BiPoly = std::vector<BiTerm<K>>;

template <class K>
BiPoly<K> bipoly_from_polys(const std::vector<std::pair<Poly<K>, Poly<K>>>& terms) {
    BiPoly<K> out;
    for (const auto& [a, b] : terms) out.push_back({RatFn<K>(a), RatFn<K>(b)});
    return out;
}

// Monic-in-z normal form: z^2 + B z + C and t = S z + T.
template <class X>
struct NormalData {
    YElem<X> B, C, S, T;
};

template <class K, class X, class Conv>
NormalData<X> normalise(const BiPoly<K>& quadratic, const BiPoly<K>& t_formula, const YRing<X>& ring, Conv&& conv) {
    if (quadratic.size() != 3) throw std::invalid_argument("the z-quadratic needs three coefficients");
    auto lift = [&](const BiTerm<K>& t) { return YElem<X>(conv(t.a), conv(t.b)); };
    YElem<X> lead = lift(quadratic[2]);
    if (lead.zero()) throw std::domain_error("leading z-coefficient vanishes");
    YElem<X> li = ring.inv(lead);
    NormalData<X> out;
    out.B = ring.mul(lift(quadratic[1]), li);
    out.C = ring.mul(lift(quadratic[0]), li);
    std::vector<YElem<X>> c;
    for (const auto& t : t_formula) c.push_back(lift(t));
    for (std::size_t k = c.size(); k-- > 2;) {
        if (c[k].zero()) continue;
        c[k - 1] = c[k - 1] - ring.mul(c[k], out.B);
        c[k - 2] = c[k - 2] - ring.mul(c[k], out.C);
    }
    out.S = c.size() > 1 ? c[1] : YElem<X>();
    out.T = c.size() > 0 ? c[0] : YElem<X>();
    return out;
}

// ---------------------------------------------------------------------------
// Differential-matrix cascade (symbolic or pointwise). V supplies + - * /.

template <class V>
struct CascadeInput {
    V R1, R2, R3, R4, dR1, dR2, dR3, dR4, S1, S2, S3, S4, F1, dF1;
};

template <class V>
struct CascadeOutput {
    V row1, row2;          // (A)_{i1} + (A)_{i2} x
    V vanish1, vanish2;    // must be identically zero
};

template <class V>
CascadeOutput<V> run_cascade(const CascadeInput<V>& in) {
    const V& R1 = in.R1; const V& R2 = in.R2; const V& R3 = in.R3; const V& R4 = in.R4;
    const V& S1 = in.S1; const V& S2 = in.S2; const V& S3 = in.S3; const V& S4 = in.S4;
    const V& F = in.F1;
    const V two(2), four(4);
    V half_log = in.dF1 / (two * F);
    V G1 = in.dR2 + R2 * half_log;
    V G2 = in.dR4 + R4 * half_log;
    V H1 = two * (R1 * in.dR3 + G2 * R2 * F) - in.dR1 * R3 - G1 * R4 * F;
    V H2 = two * (R2 * in.dR3 + G2 * R1) - in.dR1 * R4 - G1 * R3;
    V H3 = in.dR3 * R3 + G2 * R4 * F - two * in.dR1;
    V H4 = in.dR3 * R4 + G2 * R3 - two * G1;
    V H5 = R3 * R3 + R4 * R4 * F - four * R1;
    V H6 = two * R3 * R4 - four * R2;
    V D = H5 * H5 - H6 * H6 * F;
    V I1 = (H1 * H5 - H2 * H6 * F) / D;
    V I2 = (H2 * H5 - H1 * H6) / D;
    V I3 = (H3 * H5 - H4 * H6 * F) / D;
    V I4 = (H4 * H5 - H3 * H6) / D;
    V J1 = V(0) - R1 * I3 - R2 * I4 * F;
    V J2 = V(0) - R1 * I4 - R2 * I3;
    V J3 = I1 - R3 * I3 - R4 * I4 * F;
    V J4 = I2 - R3 * I4 - R4 * I3;
    V L3 = S3 * S3 + S4 * S4 * F;
    V L4 = two * S3 * S4;
    V L5 = S1 * S3 + S2 * S4 * F;
    V L6 = S1 * S4 + S2 * S3;
    V L1 = S1 * S1 + S2 * S2 * F + R1 * L3 + R2 * L4 * F - R3 * L5 - R4 * L6 * F;
    V L2 = two * S1 * S2 + R1 * L4 + R2 * L3 - R3 * L6 - R4 * L5;
    auto combine = [&](const V& P1, const V& P2, const V& P3, const V& P4, V& out1, V& out2) {
        V Q3 = P1 * S3 + P3 * S1 + (P2 * S4 + P4 * S2) * F;
        V Q4 = P1 * S4 + P2 * S3 + P3 * S2 + P4 * S1;
        V Q5 = two * (P3 * S3 + P4 * S4 * F);
        V Q6 = two * (P3 * S4 + P4 * S3);
        out1 = two * (P1 * S1 + P2 * S2 * F) + R1 * Q5 + R2 * Q6 * F - R3 * Q3 - R4 * Q4 * F;
        out2 = two * (P1 * S2 + P2 * S1) + R1 * Q6 + R2 * Q5 - R3 * Q4 - R4 * Q3;
    };
    V M1, M2, N1, N2;
    combine(I1, I2, I3, I4, M1, M2);
    combine(J1, J2, J3, J4, N1, N2);
    V den = L1 * L1 - L2 * L2 * F;
    CascadeOutput<V> out;
    out.row1 = (L1 * M2 - L2 * M1) * F / den;
    out.row2 = (L1 * N2 - L2 * N1) * F / den;
    out.vanish1 = L1 * M1 - L2 * M2 * F;
    out.vanish2 = L1 * N1 - L2 * N2 * F;
    return out;
}

// ---------------------------------------------------------------------------

enum class DiffMethod { full_cascade, two_point };

struct CorrespondenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A homomorphism Jac(C1) -> Jac(C2) given by a z-quadratic and a t-formula,
// both with coefficients a(x) + b(x) y over the working field K.
template <class K>
class Correspondence {
public:
    Correspondence(Poly<K> source_f, Poly<K> target_f, BiPoly<K> quadratic, BiPoly<K> t_formula,
                   std::string base_point = "infinity+")
        : source_(std::move(source_f)), target_(std::move(target_f)), quad_(std::move(quadratic)),
          tform_(std::move(t_formula)), base_(std::move(base_point)) {
        if (quad_.size() != 3 || (quad_[2].a.zero() && quad_[2].b.zero()))
            throw CorrespondenceError("z-quadratic has vanishing leading coefficient");
    }

    const Poly<K>& source() const { return source_; }
    const Poly<K>& target() const { return target_; }
    const BiPoly<K>& quadratic() const { return quad_; }
    const BiPoly<K>& t_formula() const { return tform_; }
    const std::string& base_point() const { return base_; }

    // Largest x-degree appearing in the raw data.
    int data_degree() const {
        int d = 0;
        auto upd = [&](const RatFn<K>& r) { d = std::max({d, r.num().degree(), r.den().degree()}); };
        for (const auto& t : quad_) upd(t.a), upd(t.b);
        for (const auto& t : tform_) upd(t.a), upd(t.b);
        return d;
    }

    // R1..R4, S1..S4 as rational functions of x.
    const NormalData<RatFn<K>>& normal_form() const {
        if (!normal_) {
            YRing<RatFn<K>> ring{RatFn<K>(source_)};
            try {
                normal_ = normalise<K>(quad_, tform_, ring, [](const RatFn<K>& r) { return r; });
            } catch (const std::domain_error& e) {
                throw CorrespondenceError(std::string("normalisation failed: ") + e.what());
            }
        }
        return *normal_;
    }
    std::array<RatFn<K>, 4> R() const {
        const auto& n = normal_form();
        return {n.C.a, n.C.b, n.B.a, n.B.b};
    }
    std::array<RatFn<K>, 4> S() const {
        const auto& n = normal_form();
        return {n.T.a, n.T.b, n.S.a, n.S.b};
    }

private:
    Poly<K> source_, target_;
    BiPoly<K> quad_, tform_;
    std::string base_;
    mutable std::optional<NormalData<RatFn<K>>> normal_;
};

// Correspondence built from an already monic quadratic z^2 + B z + C and t = S z + T.
template <class K>
Correspondence<K> corr_from_normal(const Poly<K>& source_f, const Poly<K>& target_f, const NormalData<RatFn<K>>& n,
                                   std::string base_point = "infinity+") {
    BiPoly<K> q{{n.C.a, n.C.b}, {n.B.a, n.B.b}, {RatFn<K>(1), RatFn<K>()}};
    BiPoly<K> t{{n.T.a, n.T.b}, {n.S.a, n.S.b}};
    return Correspondence<K>(source_f, target_f, std::move(q), std::move(t), std::move(base_point));
}

// --- full cascade ----------------------------------------------------------

template <class K>
CascadeOutput<RatFn<K>> symbolic_cascade(const Correspondence<K>& c) {
    auto r = c.R();
    auto s = c.S();
    CascadeInput<RatFn<K>> in;
    in.R1 = r[0]; in.R2 = r[1]; in.R3 = r[2]; in.R4 = r[3];
    in.dR1 = r[0].derivative(); in.dR2 = r[1].derivative(); in.dR3 = r[2].derivative(); in.dR4 = r[3].derivative();
    in.S1 = s[0]; in.S2 = s[1]; in.S3 = s[2]; in.S4 = s[3];
    in.F1 = RatFn<K>(c.source());
    in.dF1 = RatFn<K>(c.source().derivative());
    try {
        return run_cascade(in);
    } catch (const std::domain_error& e) {
        throw CorrespondenceError(std::string("cascade denominator vanishes identically: ") + e.what());
    }
}

template <class K>
bool holomorphy_check(const Correspondence<K>& c) {
    try {
        auto out = symbolic_cascade(c);
        if (!out.vanish1.zero() || !out.vanish2.zero()) return false;
        for (const auto* row : {&out.row1, &out.row2})
            if (!row->is_poly() || row->num().degree() > 1) return false;
        return true;
    } catch (const CorrespondenceError&) {
        return false;
    }
}

template <class K>
Mat2<K> diffmatrix_cascade(const Correspondence<K>& c) {
    auto out = symbolic_cascade(c);
    if (!out.vanish1.zero() || !out.vanish2.zero())
        throw CorrespondenceError("vanishing identities fail: not a homomorphism");
    if (!out.row1.is_poly() || !out.row2.is_poly() || out.row1.num().degree() > 1 || out.row2.num().degree() > 1)
        throw CorrespondenceError("differential is not holomorphic");
    const auto& a = out.row1.num();
    const auto& b = out.row2.num();
    return Mat2<K>(a.coeff(0), a.coeff(1), b.coeff(0), b.coeff(1));
}

// --- two-point evaluation ---------------------------------------------------

// Values of (A)_{11} + (A)_{12} x0 and (A)_{21} + (A)_{22} x0 at a single point,
// computed by summing dz_k/(t_k dx) and z_k dz_k/(t_k dx) over the two roots
// with y kept as a formal square root of F1(x0). Returns nullopt at singular points.
template <class K>
std::optional<std::pair<K, K>> evaluate_at_point(const Correspondence<K>& c, const K& x0) {
    using D = Dual<K>;
    try {
        const D xd(x0, K(1));
        auto conv = [&](const RatFn<K>& r) -> D { return r.template eval<D>(xd); };
        D fd = c.source().template eval<D>(xd);
        if (is_zero(fd.v)) return std::nullopt;
        YRing<D> ring_d{fd};
        NormalData<D> nd = normalise<K>(c.quadratic(), c.t_formula(), ring_d, conv);

        const K f0 = fd.v;
        const K half_log = fd.d / (K(2) * f0);
        YRing<K> ring{f0};
        using Y = YElem<K>;
        auto value = [](const YElem<D>& e) { return Y(e.a.v, e.b.v); };
        // d/dx (a + b y) = a' + (b' + b F'/(2F)) y
        auto deriv = [&](const YElem<D>& e) { return Y(e.a.d, e.b.d + e.b.v * half_log); };
        const Y B = value(nd.B), C = value(nd.C), dB = deriv(nd.B), dC = deriv(nd.C);
        const Y S = value(nd.S), T = value(nd.T);

        // Arithmetic in Y[z]/(z^2 + B z + C): pairs (u, w) meaning u + w z.
        struct Z {
            Y u, w;
        };
        auto zmul = [&](const Z& p, const Z& q) {
            Y ww = ring.mul(p.w, q.w);
            return Z{ring.mul(p.u, q.u) - ring.mul(ww, C), ring.mul(p.u, q.w) + ring.mul(p.w, q.u) - ring.mul(ww, B)};
        };
        auto zinv = [&](const Z& p) {
            Y n = ring.mul(p.u, p.u) - ring.mul(ring.mul(p.u, p.w), B) + ring.mul(ring.mul(p.w, p.w), C);
            Y ni = ring.inv(n);
            return Z{ring.mul(p.u - ring.mul(p.w, B), ni), ring.mul(-p.w, ni)};
        };
        auto trace = [&](const Z& p) { return ring.mul(Y(K(2)), p.u) - ring.mul(p.w, B); };

        const Z zvar{Y(), Y(K(1))};
        // z' = -(B' z + C')/(2 z + B)
        Z dz = zmul(Z{-dC, -dB}, zinv(Z{B, Y(K(2))}));
        Z tinv = zinv(Z{T, S});
        Z phi1 = zmul(dz, tinv);
        Z phi2 = zmul(zvar, phi1);
        Y s1 = trace(phi1), s2 = trace(phi2);
        // Holomorphy: each sum must be (linear in x)/y, i.e. a pure multiple of y.
        if (!is_zero(s1.a) || !is_zero(s2.a)) throw CorrespondenceError("sum of differentials is not of the form (a + b x)/y");
        return std::make_pair(K(s1.b * f0), K(s2.b * f0));
    } catch (const std::domain_error&) {
        return std::nullopt;
    }
}

template <class K>
Mat2<K> diffmatrix_two_point(const Correspondence<K>& c, int checks = 1) {
    std::vector<std::pair<K, std::pair<K, K>>> pts;
    const int needed = 2 + checks;
    for (int n = 2; n < 400 && static_cast<int>(pts.size()) < needed; ++n) {
        // 2, -2, 3, -3, ... then halves
        long v = (n % 2 == 0) ? n / 2 + 1 : -(n / 2 + 1);
        K x0 = (n < 200) ? K(static_cast<int>(v)) : K(static_cast<int>(v)) / K(7);
        if (auto r = evaluate_at_point(c, x0)) pts.push_back({x0, *r});
    }
    if (static_cast<int>(pts.size()) < needed) throw CorrespondenceError("no usable evaluation points");
    const auto& [xa, va] = pts[0];
    const auto& [xb, vb] = pts[1];
    K dx = xb - xa;
    K a12 = (vb.first - va.first) / dx;
    K a11 = va.first - a12 * xa;
    K a22 = (vb.second - va.second) / dx;
    K a21 = va.second - a22 * xa;
    for (std::size_t i = 2; i < pts.size(); ++i) {
        const auto& [xc, vc] = pts[i];
        if (!(vc.first == a11 + a12 * xc) || !(vc.second == a21 + a22 * xc))
            throw CorrespondenceError("two-point values are not affine in x: not a homomorphism");
    }
    return Mat2<K>(a11, a12, a21, a22);
}

// Checks t_k^2 = F2(z_k) for both roots at a few rational x0, i.e. that the
// image points really lie on the target curve.
template <class K>
bool lands_on_target(const Correspondence<K>& c, int points = 3) {
    using Y = YElem<K>;
    int done = 0;
    for (int n = 2; n < 60 && done < points; ++n) {
        const K x0(static_cast<int>((n % 2 == 0) ? n / 2 + 1 : -(n / 2 + 1)));
        try {
            const K f0 = c.source()(x0);
            if (is_zero(f0)) continue;
            YRing<K> ring{f0};
            auto conv = [&](const RatFn<K>& r) { return r.template eval<K>(x0); };
            NormalData<K> nd = normalise<K>(c.quadratic(), c.t_formula(), ring, conv);
            // u + w z modulo z^2 + B z + C
            struct Z {
                Y u, w;
            };
            auto zmul = [&](const Z& p, const Z& q) {
                Y ww = ring.mul(p.w, q.w);
                return Z{ring.mul(p.u, q.u) - ring.mul(ww, nd.C),
                         ring.mul(p.u, q.w) + ring.mul(p.w, q.u) - ring.mul(ww, nd.B)};
            };
            const Z t{nd.T, nd.S};
            Z lhs = zmul(t, t);
            Z rhs{Y(), Y()};
            const auto& g = c.target().coeffs();
            for (auto it = g.rbegin(); it != g.rend(); ++it) {
                rhs = zmul(rhs, Z{Y(), Y(K(1))});
                rhs.u = rhs.u + Y(*it);
            }
            if (!(lhs.u - rhs.u).zero() || !(lhs.w - rhs.w).zero()) return false;
            ++done;
        } catch (const std::domain_error&) {
            continue;
        }
    }
    return done == points;
}

template <class K>
Mat2<K> differential_matrix(const Correspondence<K>& c, std::optional<DiffMethod> method = std::nullopt) {
    DiffMethod m = method ? *method : (c.data_degree() >= 10 ? DiffMethod::two_point : DiffMethod::full_cascade);
    return m == DiffMethod::full_cascade ? diffmatrix_cascade(c) : diffmatrix_two_point(c);
}

// --- isomorphisms and composition ------------------------------------------

// (x, y) -> ((a x + b)/(c x + d), e y/(c x + d)^3) over K.
template <class K>
struct MobiusK {
    K a, b, c, d, e;
    K det() const { return a * d - b * c; }
};

template <class K>
MobiusK<K> to_k(const Mobius& m) {
    return {K(m.a), K(m.b), K(m.c), K(m.d), K(m.e)};
}

template <class K>
Mat2<K> mobius_matrix(const MobiusK<K>& m) {
    K s = m.det() / m.e;
    return Mat2<K>(s * m.d, s * m.c, s * m.b, s * m.a);
}

// The image curve polynomial G with the map sending Y^2 = F(X) onto T^2 = G(Z).
template <class K>
Poly<K> mobius_image(const MobiusK<K>& m, const Poly<K>& f) {
    Poly<K> num{K(0) - m.b, m.d};
    Poly<K> den{m.a, K(0) - m.c};
    Poly<K> acc;
    for (int k = 0; k <= f.degree(); ++k) acc = acc + pow(num, k) * pow(den, 6 - k) * f.coeff(k);
    K dt = m.det();
    K dt3 = dt * dt * dt;
    return acc * (m.e * m.e / (dt3 * dt3));
}

// psi o phi where psi is an isomorphism of the target curve.
template <class K>
Correspondence<K> compose_target_iso(const Correspondence<K>& phi, const MobiusK<K>& m) {
    const auto& n = phi.normal_form();
    using R = RatFn<K>;
    YRing<R> ring{R(phi.source())};
    using Y = YElem<R>;
    // Polynomials in w with Y coefficients, stored as vectors.
    auto pmul = [&](const std::vector<Y>& p, const std::vector<Y>& q) {
        std::vector<Y> r(p.size() + q.size() - 1);
        for (std::size_t i = 0; i < p.size(); ++i)
            for (std::size_t j = 0; j < q.size(); ++j) r[i + j] = r[i + j] + ring.mul(p[i], q[j]);
        return r;
    };
    auto padd = [](std::vector<Y> p, const std::vector<Y>& q) {
        if (q.size() > p.size()) p.resize(q.size());
        for (std::size_t i = 0; i < q.size(); ++i) p[i] = p[i] + q[i];
        return p;
    };
    auto k2y = [](const K& v) { return Y(R(v)); };
    std::vector<Y> zn{k2y(K(0) - m.b), k2y(m.d)};    // d w - b
    std::vector<Y> zd{k2y(m.a), k2y(K(0) - m.c)};    // a - c w
    std::vector<Y> quad = padd(padd(pmul(zn, zn), pmul(std::vector<Y>{n.B}, pmul(zn, zd))),
                               pmul(std::vector<Y>{n.C}, pmul(zd, zd)));
    K dt = m.det();
    K scale = m.e / (dt * dt * dt);
    std::vector<Y> inner = padd(pmul(std::vector<Y>{n.S}, zn), pmul(std::vector<Y>{n.T}, zd));
    std::vector<Y> tf = pmul(std::vector<Y>{k2y(scale)}, pmul(pmul(zd, zd), inner));
    auto to_bi = [](const std::vector<Y>& p) {
        BiPoly<K> out;
        for (const auto& y : p) out.push_back({y.a, y.b});
        return out;
    };
    BiPoly<K> q = to_bi(quad);
    q.resize(3);
    return Correspondence<K>(phi.source(), mobius_image(m, phi.target()), q, to_bi(tf), phi.base_point());
}

// Applies a field automorphism to every coefficient.
template <class K>
Correspondence<K> galois_conjugate(const Correspondence<K>& c, const std::function<K(const K&)>& sigma) {
    auto mp = [&](const Poly<K>& p) { return p.template map<K>(sigma); };
    auto mr = [&](const RatFn<K>& r) { return RatFn<K>(mp(r.num()), mp(r.den())); };
    auto mb = [&](const BiPoly<K>& b) {
        BiPoly<K> out;
        for (const auto& t : b) out.push_back({mr(t.a), mr(t.b)});
        return out;
    };
    return Correspondence<K>(mp(c.source()), mp(c.target()), mb(c.quadratic()), mb(c.t_formula()), c.base_point());
}

}  // namespace rm2
