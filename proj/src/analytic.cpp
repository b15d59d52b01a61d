#include "rm2kit/analytic.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace rm2 {

namespace mp = boost::multiprecision;

// ---------------------------------------------------------------------------
// Scalars

std::string Cx::str(int digits) const {
    std::ostringstream os;
    os.precision(digits);
    os << re << (im < 0 ? " - " : " + ") << mp::abs(im) << "i";
    return os.str();
}

Cx sqrt(const Cx& z) {
    if ((z.re == 0) && (z.im == 0)) return Cx();
    Real r = z.abs();
    if (z.re >= 0) {
        Real t = mp::sqrt((r + z.re) / 2);
        return {t, z.im / (2 * t)};
    }
    Real t = mp::sqrt((r - z.re) / 2);
    Real s = mp::abs(z.im) / (2 * t);
    return {s, z.im < 0 ? Real(-t) : t};
}

Cx exp(const Cx& z) {
    Real m = mp::exp(z.re);
    return {m * mp::cos(z.im), m * mp::sin(z.im)};
}

Real real_of(const Rat& q) { return Real(q.get_num().get_str()) / Real(q.get_den().get_str()); }

Cx eval(const QPoly& p, const Cx& x) {
    Cx acc;
    const auto& c = p.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + Cx(real_of(*it));
    return acc;
}

namespace {

Cx eval_c(const std::vector<Cx>& c, const Cx& x) {
    Cx acc;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Real pi() { return mp::acos(Real(-1)); }

Cx imag_unit() { return {Real(0), Real(1)}; }

Real epsilon_for(int digits) { return mp::pow(Real(10), -digits); }

// Roots of a polynomial with complex coefficients: double-precision companion eigenvalues,
// refined by simultaneous Weierstrass iteration at working precision.
std::vector<Cx> poly_roots(const std::vector<Cx>& coeffs, int digits) {
    const int d = static_cast<int>(coeffs.size()) - 1;
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(d, d);
    const std::complex<double> lead = coeffs.back().to_complex();
    for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < d; ++i) comp(i, d - 1) = -coeffs[static_cast<std::size_t>(i)].to_complex() / lead;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
    std::vector<Cx> z;
    for (int i = 0; i < d; ++i) z.emplace_back(es.eigenvalues()(i));
    std::vector<Cx> monic;
    for (const auto& c : coeffs) monic.push_back(c / coeffs.back());
    const Real eps = epsilon_for(digits + 8);
    for (int iter = 0; iter < 500; ++iter) {
        Real worst = 0;
        for (std::size_t i = 0; i < z.size(); ++i) {
            Cx den(1);
            for (std::size_t j = 0; j < z.size(); ++j)
                if (j != i) den *= z[i] - z[j];
            Cx step = eval_c(monic, z[i]) / den;
            z[i] -= step;
            worst = mp::max(worst, step.abs() / mp::max(Real(1), z[i].abs()));
        }
        if (worst < eps) return z;
    }
    throw AnalyticError("root refinement did not converge (clustered roots)");
}

// Midpoint rule in theta on [0, pi] (Gauss-Chebyshev); exponentially convergent for integrands
// that are smooth functions of cos(theta).
template <class F>
CVec2 cosine_quadrature(F&& f, const Real& tol) {
    CVec2 prev{};
    bool have_prev = false;
    const Real P = pi();
    for (int n = 24; n <= (1 << 17); n *= 2) {
        CVec2 sum{};
        for (int j = 0; j < n; ++j) {
            Real theta = P * (Real(j) + Real(0.5)) / n;
            CVec2 v = f(theta);
            sum[0] += v[0];
            sum[1] += v[1];
        }
        Real h = P / n;
        sum = {h * sum[0], h * sum[1]};
        if (have_prev) {
            Real diff = mp::max((sum[0] - prev[0]).abs(), (sum[1] - prev[1]).abs());
            Real scale = mp::max(Real(1), mp::max(sum[0].abs(), sum[1].abs()));
            if (diff < tol * scale) return sum;
        }
        prev = sum;
        have_prev = true;
    }
    throw AnalyticError("quadrature did not converge: path passes too close to a branch point");
}

CVec2 mat_vec(const CMat2& t, const CVec2& v) {
    return {t[0][0] * v[0] + t[0][1] * v[1], t[1][0] * v[0] + t[1][1] * v[1]};
}

CMat2 inverse(const CMat2& m) {
    Cx det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    if (det.abs() < epsilon_for(200)) throw AnalyticError("singular 2x2 matrix");
    return {{{m[1][1] / det, -m[0][1] / det}, {-m[1][0] / det, m[0][0] / det}}};
}

CMat2 mul(const CMat2& a, const CMat2& b) {
    CMat2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
    return r;
}

// Solves the real system m x = b by Gaussian elimination with partial pivoting.
std::array<Real, 4> solve4(std::array<std::array<Real, 4>, 4> m, std::array<Real, 4> b) {
    for (int c = 0; c < 4; ++c) {
        int p = c;
        for (int r = c + 1; r < 4; ++r)
            if (mp::abs(m[r][c]) > mp::abs(m[p][c])) p = r;
        if ((m[p][c] == 0)) throw AnalyticError("period matrix is not a lattice basis");
        std::swap(m[p], m[c]);
        std::swap(b[p], b[c]);
        for (int r = c + 1; r < 4; ++r) {
            Real f = m[r][c] / m[c][c];
            for (int k = c; k < 4; ++k) m[r][k] -= f * m[c][k];
            b[r] -= f * b[c];
        }
    }
    std::array<Real, 4> x;
    for (int r = 3; r >= 0; --r) {
        Real s = b[r];
        for (int k = r + 1; k < 4; ++k) s -= m[r][k] * x[k];
        x[r] = s / m[r][r];
    }
    return x;
}

std::array<Real, 4> lattice_coords(const PeriodMatrix& pm, const CVec2& z) {
    std::array<std::array<Real, 4>, 4> m;
    for (int c = 0; c < 4; ++c) {
        m[0][c] = pm(0, c).re;
        m[1][c] = pm(1, c).re;
        m[2][c] = pm(0, c).im;
        m[3][c] = pm(1, c).im;
    }
    return solve4(m, {z[0].re, z[1].re, z[0].im, z[1].im});
}

// Distance from point c to the segment [a, b].
Real segment_distance(const Cx& c, const Cx& a, const Cx& b) {
    Cx ab = b - a;
    Real len2 = ab.norm();
    if ((len2 == 0)) return (c - a).abs();
    Cx ac = c - a;
    Real t = (ac.re * ab.re + ac.im * ab.im) / len2;
    t = mp::max(Real(0), mp::min(Real(1), t));
    return (c - (a + t * ab)).abs();
}

// Gauss-Legendre nodes and weights on [0, 1], cached per (order, precision).
struct GaussRule {
    std::vector<Real> nodes, weights;
};

const GaussRule& gauss_legendre(int n) {
    static std::map<std::pair<int, unsigned>, GaussRule> cache;
    static std::mutex lock;
    const unsigned prec = Real::default_precision();
    std::lock_guard<std::mutex> guard(lock);
    auto [it, fresh] = cache.try_emplace({n, prec});
    if (!fresh) return it->second;
    GaussRule& rule = it->second;
    const Real P = pi(), eps = epsilon_for(static_cast<int>(prec) - 5);
    for (int i = 1; i <= (n + 1) / 2; ++i) {
        Real x = mp::cos(P * (Real(i) - Real(0.25)) / (Real(n) + Real(0.5)));
        Real dp;
        for (int iter = 0; iter < 100; ++iter) {
            Real p0 = 1, p1 = x;
            for (int k = 2; k <= n; ++k) {
                Real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1);
            Real step = p1 / dp;
            x -= step;
            if (mp::abs(step) < eps) break;
        }
        Real w = 2 / ((1 - x * x) * dp * dp);
        rule.nodes.push_back((1 - x) / 2);
        rule.weights.push_back(w / 2);
        if (2 * i - 1 != n) {
            rule.nodes.push_back((1 + x) / 2);
            rule.weights.push_back(w / 2);
        }
    }
    return rule;
}

// Integral of (du/w, u du/w) from (u0, w0) to the root rho_k of the chart polynomial, along the
// straight segment u = rho_k + s^2 (u0 - rho_k), where the integrand is smooth in s. w is continued
// as w0 * prod sqrt((u - rho_i)/(u0 - rho_i)); each ratio moves on a straight line ending at 1,
// so the principal branch stays continuous.
CVec2 integrate_to_root(const std::vector<Cx>& roots, std::size_t k, const Cx& u0, const Cx& w0, const Real& tol) {
    const Cx rho = roots[k];
    const Cx d = u0 - rho;
    std::vector<Cx> denom;
    for (std::size_t i = 0; i < roots.size(); ++i)
        if (i != k) denom.push_back(u0 - roots[i]);
    auto sum_with = [&](int n) {
        const GaussRule& g = gauss_legendre(n);
        CVec2 acc{};
        for (std::size_t q = 0; q < g.nodes.size(); ++q) {
            const Real& s = g.nodes[q];
            Cx u = rho + (s * s) * d;
            Cx prod(1);
            std::size_t j = 0;
            for (std::size_t i = 0; i < roots.size(); ++i)
                if (i != k) prod *= sqrt((u - roots[i]) / denom[j++]);
            Cx h = (2 * g.weights[q]) * d / (w0 * prod);
            acc[0] -= h;
            acc[1] -= h * u;
        }
        return acc;
    };
    CVec2 prev = sum_with(16);
    for (int n = 32; n <= 4096; n *= 2) {
        CVec2 cur = sum_with(n);
        Real diff = mp::max((cur[0] - prev[0]).abs(), (cur[1] - prev[1]).abs());
        Real scale = mp::max(Real(1), mp::max(cur[0].abs(), cur[1].abs()));
        if (diff < tol * scale) return cur;
        prev = cur;
    }
    throw AnalyticError("quadrature did not converge: path passes too close to a branch point");
}

// Half of the period of the cycle lifted from the segment [roots[a], roots[b]]:
// the integral of (du/w, u du/w) along the segment on one sheet.
CVec2 integrate_between_roots(const std::vector<Cx>& coeffs, const std::vector<Cx>& roots, std::size_t a,
                              std::size_t b, const Real& tol) {
    const Cx ea = roots[a], L = roots[b] - roots[a];
    Cx K2 = coeffs.back();
    std::vector<Cx> base;
    for (std::size_t i = 0; i < roots.size(); ++i)
        if (i != a && i != b) {
            base.push_back(ea - roots[i]);
            K2 *= base.back();
        }
    const Cx iK = imag_unit() * sqrt(K2);
    auto f = [&](const Real& theta) -> CVec2 {
        Real s = (1 - mp::cos(theta)) / 2;
        Cx x = ea + s * L;
        Cx prod(1);
        std::size_t j = 0;
        for (std::size_t i = 0; i < roots.size(); ++i)
            if (i != a && i != b) prod *= sqrt((x - roots[i]) / base[j++]);
        Cx g = Cx(1) / (iK * prod);
        return {g, g * x};
    };
    return cosine_quadrature(f, tol);
}

bool lex_less(const Cx& a, const Cx& b, const Real& tie) {
    if (mp::abs(a.re - b.re) > tie) return a.re < b.re;
    return a.im < b.im;
}

}  // namespace

PrecisionScope::PrecisionScope(int digits) : saved_(Real::default_precision()) {
    Real::default_precision(static_cast<unsigned>(digits + 15));
}

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_); }

// ---------------------------------------------------------------------------
// Period matrices

PeriodMatrix PeriodMatrix::transformed(const IntMat4& S) const {
    PeriodMatrix out = *this;
    for (int r = 0; r < 2; ++r)
        for (int j = 0; j < 4; ++j) {
            Cx acc;
            for (int i = 0; i < 4; ++i)
                if (S[i][j] != 0) acc += Cx(Real(S[i][j])) * (*this)(r, i);
            out.entries[r][j] = acc;
        }
    return out;
}

namespace {

// conj(Pi) J Pi^t (conjugate = true) or Pi J Pi^t, with J = [[0, I], [-I, 0]].
CMat2 pi_j_pi(const PeriodMatrix& p, bool conjugate) {
    CMat2 out;
    for (int r = 0; r < 2; ++r)
        for (int s = 0; s < 2; ++s) {
            Cx acc;
            for (int k = 0; k < 2; ++k) {
                Cx left_a = conjugate ? p(r, k).conj() : p(r, k);
                Cx left_b = conjugate ? p(r, k + 2).conj() : p(r, k + 2);
                acc += left_a * p(s, k + 2) - left_b * p(s, k);
            }
            out[r][s] = acc;
        }
    return out;
}

bool hermitian_positive(const CMat2& h) {
    return h[0][0].re > 0 && (h[0][0] * h[1][1] - h[0][1] * h[1][0]).re > 0;
}

}  // namespace

Real PeriodMatrix::riemann_residual() const {
    CMat2 m = pi_j_pi(*this, false);
    Real worst = 0;
    for (const auto& row : m)
        for (const auto& e : row) worst = mp::max(worst, e.abs());
    return worst;
}

bool PeriodMatrix::riemann_positive() const {
    CMat2 m = pi_j_pi(*this, true);
    CMat2 h;
    for (int r = 0; r < 2; ++r)
        for (int s = 0; s < 2; ++s) h[r][s] = Cx(Real(0), Real(-1)) * m[r][s];
    return hermitian_positive(h);
}

CMat2 PeriodMatrix::riemann_matrix() const {
    CMat2 A{{{(*this)(0, 0), (*this)(0, 1)}, {(*this)(1, 0), (*this)(1, 1)}}};
    CMat2 B{{{(*this)(0, 2), (*this)(0, 3)}, {(*this)(1, 2), (*this)(1, 3)}}};
    return mul(inverse(A), B);
}

void AnalyticJacobian::build() {
    const QPoly& f = curve_.F();
    quintic_ = f.degree() == 5;
    const int d = digits_;
    const Real tol = epsilon_for(d + 5);
    const Real tie = epsilon_for(d / 2);

    // Main chart: the sextic itself, or u = 1/(x - shift) for a quintic.
    QPoly chart_poly = f;
    if (quintic_) {
        shift_ = 0;
        auto far_from_roots = [&](long r) {
            for (const auto& z : poly_roots([&] {
                     std::vector<Cx> c;
                     for (const auto& q : f.coeffs()) c.emplace_back(real_of(q));
                     return c;
                 }(), 20))
                if ((z - Cx(Real(r))).abs() < Real(0.5)) return false;
            return true;
        };
        while (!far_from_roots(shift_)) shift_ = shift_ >= 0 ? -shift_ - 1 : -shift_;
        // u^6 F(shift + 1/u) = sum f_i (shift u + 1)^i u^(6 - i)
        QPoly acc;
        QPoly lin({Rat(1), Rat(shift_)});
        for (int i = 0; i <= 5; ++i) {
            QPoly term = QPoly(f.coeff(i));
            for (int j = 0; j < i; ++j) term = term * lin;
            std::vector<Rat> shifted(static_cast<std::size_t>(6 - i), Rat(0));
            shifted.push_back(Rat(1));
            acc = acc + term * QPoly(shifted);
        }
        chart_poly = acc;
        const Real r(shift_);
        main_.to_original = {{{Cx(0), Cx(-1)}, {Cx(-1), Cx(-r)}}};
    } else {
        main_.to_original = {{{Cx(1), Cx(0)}, {Cx(0), Cx(1)}}};
    }
    for (const auto& q : chart_poly.coeffs()) main_.coeffs.emplace_back(real_of(q));
    main_.roots = poly_roots(main_.coeffs, d);
    std::sort(main_.roots.begin(), main_.roots.end(), [&](const Cx& a, const Cx& b) { return lex_less(a, b, tie); });
    for (std::size_t i = 0; i + 1 < main_.roots.size(); ++i)
        if ((main_.roots[i + 1] - main_.roots[i]).abs() < epsilon_for(d / 3))
            throw AnalyticError("branch points are not resolvable at this precision");

    for (const auto& rho : main_.roots) {
        if (quintic_ && rho.abs() < tie) {
            chart_to_branch_.push_back(-1);
            continue;
        }
        chart_to_branch_.push_back(static_cast<int>(branch_x_.size()));
        branch_x_.push_back(quintic_ ? Cx(Real(shift_)) + Cx(1) / rho : rho);
    }

    if (!quintic_) {
        // u = 1/x, used only to start paths at the points at infinity.
        std::vector<Cx> rev(main_.coeffs.rbegin(), main_.coeffs.rend());
        while (rev.size() > 1 && rev.back().abs() < tie) rev.pop_back();
        inf_.coeffs = rev;
        inf_.to_original = {{{Cx(0), Cx(-1)}, {Cx(-1), Cx(0)}}};
        for (const auto& e : main_.roots)
            if (e.abs() > tie) inf_.roots.push_back(Cx(1) / e);
    }

    // Chain cycles c_k over consecutive branch points.
    for (std::size_t k = 0; k + 1 < main_.roots.size(); ++k)
        chain_.push_back(mat_vec(main_.to_original, integrate_between_roots(main_.coeffs, main_.roots, k, k + 1, tol)));

    // With c_k . c_{k+1} = 1, (c1, c1 + c3, c2, c4) is symplectic. The orientation of each
    // c_k is unknown, so try all sign patterns against the Riemann relations.
    std::vector<PeriodMatrix> found;
    const Real riemann_tol = epsilon_for(d - 10);
    for (int mask = 0; mask < 16; ++mask) {
        std::array<CVec2, 4> c;
        for (int k = 0; k < 4; ++k) {
            Real sg = (mask >> k & 1) ? Real(-2) : Real(2);
            c[static_cast<std::size_t>(k)] = {sg * chain_[static_cast<std::size_t>(k)][0],
                                              sg * chain_[static_cast<std::size_t>(k)][1]};
        }
        PeriodMatrix p;
        p.digits = d;
        const std::array<CVec2, 4> cols{c[0], CVec2{c[0][0] + c[2][0], c[0][1] + c[2][1]}, c[1], c[3]};
        for (int r = 0; r < 2; ++r)
            for (int j = 0; j < 4; ++j) p.entries[r][j] = cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(r)];
        Real scale = 0;
        for (int r = 0; r < 2; ++r)
            for (int j = 0; j < 4; ++j) scale = mp::max(scale, p(r, j).abs());
        if (p.riemann_residual() > riemann_tol * scale * scale) continue;
        if (!p.riemann_positive()) continue;
        found.push_back(p);
    }
    // A pattern and its global negation both pass.
    if (found.size() != 2) throw AnalyticError("symplectic basis search failed (" + std::to_string(found.size()) + " candidates)");
    pm_ = found.front();
    pm_.symplectic_basis =
        "chain cycles c_k over consecutive branch points (lexicographic order); a1 = c1, a2 = c1 + c3, b1 = c2, b2 = c4";
}

AnalyticJacobian AnalyticJacobian::make(const Genus2Curve& c, int digits) {
    if (digits < 20) throw AnalyticError("at least 20 digits are needed");
    PrecisionScope scope(digits);
    AnalyticJacobian j(c, digits);
    j.build();
    return j;
}

PeriodMatrix period_matrix(const Genus2Curve& c, int digits) { return AnalyticJacobian::make(c, digits).periods(); }

Real AnalyticJacobian::tolerance() const { return epsilon_for(digits_ - 10); }

CurvePoint AnalyticJacobian::weierstrass_point(int i) const {
    return CurvePoint::finite(branch_x_.at(static_cast<std::size_t>(i)), Cx());
}

CurvePoint AnalyticJacobian::point_at(const Cx& x, int sign) const {
    PrecisionScope scope(digits_);
    Cx y = sqrt(eval(curve_.F(), x));
    return CurvePoint::finite(x, sign < 0 ? -y : y);
}

int AnalyticJacobian::chart_root_of_infinity() const {
    for (std::size_t i = 0; i < chart_to_branch_.size(); ++i)
        if (chart_to_branch_[i] < 0) return static_cast<int>(i);
    return -1;
}

// Chart root index of a Weierstrass point, or -1.
int AnalyticJacobian::weierstrass_index(const CurvePoint& p) const {
    if (p.infinity != 0) return quintic_ ? chart_root_of_infinity() : -1;
    if (p.y.abs() > epsilon_for(digits_ / 2)) return -1;
    int best = -1;
    Real dist = 0;
    for (std::size_t i = 0; i < chart_to_branch_.size(); ++i) {
        if (chart_to_branch_[i] < 0) continue;
        Real e = (branch_x_[static_cast<std::size_t>(chart_to_branch_[i])] - p.x).abs();
        if (best < 0 || e < dist) best = static_cast<int>(i), dist = e;
    }
    if (dist > epsilon_for(digits_ / 3)) throw AnalyticError("point with y = 0 is not a branch point");
    return best;
}

Real AnalyticJacobian::clearance(const CurvePoint& p, int k) const {
    const auto& roots = main_.roots;
    Cx start;
    const std::vector<Cx>* rs = &roots;
    Cx target = roots[static_cast<std::size_t>(k)];
    if (p.infinity != 0 && !quintic_) {
        if (target.abs() < epsilon_for(digits_ / 2)) return Real(0);
        rs = &inf_.roots;
        start = Cx();
        target = Cx(1) / target;
    } else if (quintic_) {
        start = p.infinity != 0 ? Cx() : Cx(1) / (p.x - Cx(Real(shift_)));
    } else {
        start = p.x;
    }
    Real len = (start - target).abs();
    if ((len == 0)) return Real(1);
    Real best = Real(1e30);
    for (const auto& r : *rs) {
        if ((r - target).abs() < epsilon_for(digits_ / 2)) continue;
        best = mp::min(best, segment_distance(r, start, target) / len);
    }
    return best;
}

CVec2 AnalyticJacobian::to_branch(const CurvePoint& p, int k) const {
    const Real tol = epsilon_for(digits_ + 5);
    const std::size_t kk = static_cast<std::size_t>(k);
    if (p.infinity != 0 && !quintic_) {
        const Cx lead = main_.coeffs.back();
        const Cx w0 = p.infinity > 0 ? sqrt(lead) : -sqrt(lead);
        const Cx target = Cx(1) / main_.roots[kk];
        std::size_t idx = 0;
        Real best = Real(1e30);
        for (std::size_t i = 0; i < inf_.roots.size(); ++i) {
            Real e = (inf_.roots[i] - target).abs();
            if (e < best) best = e, idx = i;
        }
        return mat_vec(inf_.to_original, integrate_to_root(inf_.roots, idx, Cx(), w0, tol));
    }
    if (quintic_) {
        Cx u = Cx(1) / (p.x - Cx(Real(shift_)));
        Cx w = p.y * u * u * u;
        return mat_vec(main_.to_original, integrate_to_root(main_.roots, kk, u, w, tol));
    }
    return integrate_to_root(main_.roots, kk, p.x, p.y, tol);
}

CVec2 AnalyticJacobian::chain_period(int k) const {
    const auto& c = chain_[static_cast<std::size_t>(k)];
    return c;
}

CVec2 AnalyticJacobian::two_torsion(int i, int j) const {
    PrecisionScope scope(digits_);
    // branch_x_ index -> chart index
    auto chart_index = [&](int b) {
        for (std::size_t r = 0; r < chart_to_branch_.size(); ++r)
            if (chart_to_branch_[r] == b) return static_cast<int>(r);
        return -1;
    };
    int a = i < 0 ? chart_root_of_infinity() : chart_index(i);
    int b = j < 0 ? chart_root_of_infinity() : chart_index(j);
    if (a < 0 || b < 0) throw AnalyticError("unknown Weierstrass point");
    if (a > b) std::swap(a, b);
    CVec2 acc{};
    for (int k = a; k < b; ++k) {
        acc[0] += chain_period(k)[0];
        acc[1] += chain_period(k)[1];
    }
    return acc;
}

// Base to P through branch points e_k1 (near base) and e_k2 (near P). The middle leg between two
// branch points is a 2-torsion class, so the half chain periods give it modulo the lattice.
CVec2 AnalyticJacobian::abel_jacobi(const CurvePoint& p, const CurvePoint& base, int route) const {
    PrecisionScope scope(digits_);
    const int wp = weierstrass_index(p), wb = weierstrass_index(base);
    auto best_route = [&](const CurvePoint& q) {
        if (route >= 0) return route;
        int k = 0;
        Real best = -1;
        for (int i = 0; i < static_cast<int>(main_.roots.size()); ++i) {
            Real c = clearance(q, i);
            if (c > best) best = c, k = i;
        }
        return k;
    };
    const int k1 = wb >= 0 ? wb : best_route(base);
    const int k2 = wp >= 0 ? wp : best_route(p);
    CVec2 out{};
    for (int k = std::min(k1, k2); k < std::max(k1, k2); ++k) {
        out[0] += chain_period(k)[0];
        out[1] += chain_period(k)[1];
    }
    if (wb < 0) {
        CVec2 s = to_branch(base, k1);
        out = {out[0] + s[0], out[1] + s[1]};
    }
    if (wp < 0) {
        CVec2 s = to_branch(p, k2);
        out = {out[0] - s[0], out[1] - s[1]};
    }
    return out;
}

std::array<Real, 4> AnalyticJacobian::lattice_coordinates(const CVec2& z) const {
    PrecisionScope scope(digits_);
    return lattice_coords(pm_, z);
}

CVec2 AnalyticJacobian::reduce(const CVec2& z) const {
    PrecisionScope scope(digits_);
    auto r = lattice_coords(pm_, z);
    CVec2 out = z;
    for (int c = 0; c < 4; ++c) {
        Real n = mp::round(r[static_cast<std::size_t>(c)]);
        if ((n == 0)) continue;
        out[0] -= n * pm_(0, c);
        out[1] -= n * pm_(1, c);
    }
    return out;
}

Real AnalyticJacobian::lattice_distance(const CVec2& z) const {
    PrecisionScope scope(digits_);
    auto r = lattice_coords(pm_, z);
    Real worst = 0;
    for (const auto& v : r) worst = mp::max(worst, mp::abs(v - mp::round(v)));
    return worst;
}

// ---------------------------------------------------------------------------
// Hermitian form

Real HermitianForm::max_imaginary() const {
    Real worst = 0;
    for (const auto& row : M)
        for (const auto& e : row) worst = mp::max(worst, mp::abs(e.im));
    return worst;
}

RMat2 HermitianForm::real_part() const {
    RMat2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r[i][j] = M[i][j].re.convert_to<double>();
    return r;
}

bool HermitianForm::positive_definite() const { return hermitian_positive(M); }

HermitianForm hermitian_M(const PeriodMatrix& pm) {
    PrecisionScope scope(pm.digits);
    CMat2 g = inverse(pi_j_pi(pm, true));
    HermitianForm h;
    const Cx two_i(Real(0), Real(2));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) h.M[i][j] = two_i * g[i][j];
    if (!h.positive_definite()) throw AnalyticError("hermitian form is not positive definite");
    return h;
}

IntMat4 random_symplectic(std::mt19937_64& rng, int steps) {
    auto mul4 = [](const IntMat4& a, const IntMat4& b) {
        IntMat4 r{};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                for (int k = 0; k < 4; ++k) r[i][j] += a[i][k] * b[k][j];
        return r;
    };
    IntMat4 S{};
    for (int i = 0; i < 4; ++i) S[i][i] = 1;
    std::uniform_int_distribution<int> kind(0, 2), small(-2, 2);
    for (int s = 0; s < steps; ++s) {
        IntMat4 E{};
        for (int i = 0; i < 4; ++i) E[i][i] = 1;
        const int a = small(rng), b = small(rng), c = small(rng);
        switch (kind(rng)) {
            case 0:  // [[I, B], [0, I]], B symmetric
                E[0][2] = a, E[0][3] = b, E[1][2] = b, E[1][3] = c;
                break;
            case 1:  // [[I, 0], [B, I]]
                E[2][0] = a, E[2][1] = b, E[3][0] = b, E[3][1] = c;
                break;
            default: {  // [[U, 0], [0, U^{-t}]] with U = [[1, a], [0, 1]]
                E[0][1] = a;
                E[3][2] = -a;
                break;
            }
        }
        S = mul4(S, E);
    }
    return S;
}

bool is_symplectic(const IntMat4& S) {
    // S^t J S == J
    const int J[4][4] = {{0, 0, 1, 0}, {0, 0, 0, 1}, {-1, 0, 0, 0}, {0, -1, 0, 0}};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            long acc = 0;
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) acc += S[k][i] * J[k][l] * S[l][j];
            if (acc != J[i][j]) return false;
        }
    return true;
}

// ---------------------------------------------------------------------------
// Homomorphisms from the hermitian forms

namespace {

std::vector<Rat> height_bounded(int height) {
    std::vector<Rat> out{Rat(0)};
    for (long q = 1; q <= height; ++q)
        for (long p = 1; p <= height; ++p)
            if (std::gcd(p, q) == 1) {
                out.push_back(make_rat(p, q));
                out.push_back(make_rat(-p, q));
            }
    return out;
}

RMat2 comp_lhs(const RMat2& M1, const Mat2<Rat>& A_eps1, int n1, int n2) {
    // (n1 I + n2 A^t) M1
    double t[2][2];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) t[i][j] = (i == j ? n1 : 0) + n2 * A_eps1(j, i).get_d();
    RMat2 r{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r[i][j] = t[i][0] * M1[0][j] + t[i][1] * M1[1][j];
    return r;
}

double quad_form(const RMat2& M, double a, double b, double c, double d) {
    // (a, b) M (c, d)^t
    return a * (M[0][0] * c + M[0][1] * d) + b * (M[1][0] * c + M[1][1] * d);
}

}  // namespace

Mat2<Rat> canonical_sign(const Mat2<Rat>& a, bool first_negative) {
    for (const auto& e : a.m) {
        if (sgn(e) == 0) continue;
        bool negative = sgn(e) < 0;
        return negative == first_negative ? a : Rat(-1) * a;
    }
    return a;
}

double comp_residual(const RMat2& M1, const RMat2& M2, const Mat2<Rat>& A_eps1, const Mat2<Rat>& A_phi, int n1, int n2) {
    RMat2 lhs = comp_lhs(M1, A_eps1, n1, n2);
    double scale = 0, worst = 0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            double rhs = quad_form(M2, A_phi(0, i).get_d(), A_phi(1, i).get_d(), A_phi(0, j).get_d(), A_phi(1, j).get_d());
            worst = std::max(worst, std::abs(rhs - lhs[i][j]));
            scale = std::max(scale, std::abs(lhs[i][j]));
        }
    return worst / scale;
}

std::vector<Mat2<Rat>> solve_aphi(const RMat2& M1, const RMat2& M2, const Mat2<Rat>& A_eps1, int n1, int n2, int height,
                                  double tolerance) {
    if (n1 <= 0) throw std::invalid_argument("n1 must be positive");
    const RMat2 lhs = comp_lhs(M1, A_eps1, n1, n2);
    const double scale = std::max({std::abs(lhs[0][0]), std::abs(lhs[1][1]), std::abs(lhs[0][1]), std::abs(lhs[1][0])});
    const double tol = tolerance * scale;
    const auto vals = height_bounded(height);
    std::vector<double> dv;
    for (const auto& v : vals) dv.push_back(v.get_d());
    // Column j of A is pruned by the diagonal equation A_j^t M2 A_j = lhs_jj.
    std::array<std::vector<std::pair<std::size_t, std::size_t>>, 2> cols;
    for (std::size_t p = 0; p < vals.size(); ++p)
        for (std::size_t q = 0; q < vals.size(); ++q) {
            double v = quad_form(M2, dv[p], dv[q], dv[p], dv[q]);
            for (int j = 0; j < 2; ++j)
                if (std::abs(v - lhs[j][j]) < tol) cols[static_cast<std::size_t>(j)].emplace_back(p, q);
        }
    std::vector<Mat2<Rat>> out;
    for (const auto& [a, c] : cols[0])
        for (const auto& [b, d] : cols[1]) {
            double off01 = quad_form(M2, dv[a], dv[c], dv[b], dv[d]);
            if (std::abs(off01 - lhs[0][1]) > tol || std::abs(off01 - lhs[1][0]) > tol) continue;
            Mat2<Rat> m = canonical_sign(Mat2<Rat>(vals[a], vals[b], vals[c], vals[d]), false);
            if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
        }
    return out;
}

namespace {

template <class Entry>
RphiResult recover(const std::array<std::array<Cx, 2>, 2>& A, const PeriodMatrix& pi1, const PeriodMatrix& pi2) {
    (void)sizeof(Entry);
    PrecisionScope scope(std::min(pi1.digits, pi2.digits));
    RphiResult out;
    std::array<std::array<Real, 4>, 4> real_sol;
    for (int j = 0; j < 4; ++j) {
        CVec2 col = mat_vec(A, pi1.column(j));
        real_sol[j] = lattice_coords(pi2, col);
    }
    double worst_round = 0;
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 4; ++i) {
            const Real& v = real_sol[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
            Real n = mp::round(v);
            worst_round = std::max(worst_round, mp::abs(v - n).convert_to<double>());
            out.R[i][j] = n.convert_to<long>();
        }
    out.rounding = worst_round;
    if (worst_round > 1e-4) throw AnalyticError("R_phi is not integral: rounding ambiguity");
    double worst = 0;
    for (int r = 0; r < 2; ++r)
        for (int j = 0; j < 4; ++j) {
            Cx lhs = A[r][0] * pi1(0, j) + A[r][1] * pi1(1, j);
            Cx rhs;
            for (int i = 0; i < 4; ++i) rhs += Cx(Real(out.R[i][j])) * pi2(r, i);
            worst = std::max(worst, (lhs - rhs).abs().convert_to<double>());
        }
    out.residual = worst;
    // integer determinant by cofactor expansion
    auto det3 = [&](int skip_row, int skip_col) {
        long m[3][3];
        for (int i = 0, ii = 0; i < 4; ++i) {
            if (i == skip_row) continue;
            for (int j = 0, jj = 0; j < 4; ++j) {
                if (j == skip_col) continue;
                m[ii][jj++] = out.R[i][j];
            }
            ++ii;
        }
        return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    };
    long det = 0;
    for (int j = 0; j < 4; ++j) det += (j % 2 ? -1 : 1) * out.R[0][j] * det3(0, j);
    out.det = det;
    return out;
}

}  // namespace

RphiResult recover_rphi(const Mat2<Rat>& A_phi, const PeriodMatrix& pi1, const PeriodMatrix& pi2) {
    PrecisionScope scope(std::min(pi1.digits, pi2.digits));
    CMat2 A;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) A[i][j] = Cx(real_of(A_phi(i, j)));
    return recover<Rat>(A, pi1, pi2);
}

RphiResult recover_rphi(const Mat2<NFElem>& A_phi, const PeriodMatrix& pi1, const PeriodMatrix& pi2) {
    PrecisionScope scope(std::min(pi1.digits, pi2.digits));
    CMat2 A;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) A[i][j] = Cx(A_phi(i, j).numeric());
    return recover<NFElem>(A, pi1, pi2);
}

std::array<std::array<std::complex<double>, 2>, 2> to_complex(const Mat2<Rat>& a) {
    return {{{a(0, 0).get_d(), a(0, 1).get_d()}, {a(1, 0).get_d(), a(1, 1).get_d()}}};
}

std::array<std::array<std::complex<double>, 2>, 2> to_complex(const Mat2<NFElem>& a) {
    return {{{a(0, 0).numeric(), a(0, 1).numeric()}, {a(1, 0).numeric(), a(1, 1).numeric()}}};
}

std::array<std::array<std::complex<double>, 2>, 2> rosati_matrix(const HermitianForm& h,
                                                                 const std::array<std::array<std::complex<double>, 2>, 2>& a) {
    Eigen::Matrix2cd M, A;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            M(i, j) = h.M[i][j].to_complex();
            A(i, j) = a[i][j];
        }
    Eigen::Matrix2cd r = (M.inverse() * A.transpose() * M).conjugate();
    return {{{r(0, 0), r(0, 1)}, {r(1, 0), r(1, 1)}}};
}

namespace {

Cx eval_bi(const BiTerm<Rat>& t, const Cx& x, const Cx& y) {
    auto ev = [&](const RatFn<Rat>& r) { return eval(r.num(), x) / eval(r.den(), x); };
    return ev(t.a) + ev(t.b) * y;
}

}  // namespace

CorrespondenceImage correspondence_image(const Correspondence<Rat>& c, const Cx& x, const Cx& y) {
    const auto& q = c.quadratic();
    const auto& tf = c.t_formula();
    if (q.size() != 3 || tf.size() != 2) throw AnalyticError("correspondence is not in z-quadratic form");
    const Cx a0 = eval_bi(q[0], x, y), a1 = eval_bi(q[1], x, y), a2 = eval_bi(q[2], x, y);
    if (a2.abs() < epsilon_for(30)) throw AnalyticError("image point at infinity");
    CorrespondenceImage out;
    out.sum = -(a1 / a2);
    out.product = a0 / a2;
    const Cx disc = sqrt(out.sum * out.sum - Cx(4) * out.product);
    const Cx t0 = eval_bi(tf[0], x, y), t1 = eval_bi(tf[1], x, y);
    for (int k = 0; k < 2; ++k) {
        Cx z = Cx(Real(0.5)) * (k == 0 ? out.sum + disc : out.sum - disc);
        out.points[static_cast<std::size_t>(k)] = CurvePoint::finite(z, t0 + t1 * z);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Theta functions

std::array<Cx, 4> ThetaContext::second_order_thetas(const CVec2& z) const {
    PrecisionScope scope(jac->digits());
    auto r = jac->lattice_coordinates(z);
    Real a1 = r[0] - mp::round(r[0]), a2 = r[1] - mp::round(r[1]);
    Real b1 = r[2] - mp::round(r[2]), b2 = r[3] - mp::round(r[3]);
    // normalised point zeta = (a1, a2) + tau (b1, b2)
    CVec2 zeta{Cx(a1) + tau[0][0] * Cx(b1) + tau[0][1] * Cx(b2), Cx(a2) + tau[1][0] * Cx(b1) + tau[1][1] * Cx(b2)};
    const Cx two_pi_i(Real(0), 2 * pi());
    std::array<Cx, 4> out;
    for (int ch = 0; ch < 4; ++ch) {
        const Real c1 = (ch & 1) ? Real(0.5) : Real(0), c2 = (ch & 2) ? Real(0.5) : Real(0);
        Cx sum;
        for (int n1 = -cutoff; n1 <= cutoff; ++n1)
            for (int n2 = -cutoff; n2 <= cutoff; ++n2) {
                Cx m1(Real(n1) + c1), m2(Real(n2) + c2);
                Cx q = m1 * (tau[0][0] * m1 + tau[0][1] * m2) + m2 * (tau[1][0] * m1 + tau[1][1] * m2);
                Cx lin = m1 * zeta[0] + m2 * zeta[1];
                sum += exp(two_pi_i * (q + Cx(2) * lin));
            }
        out[static_cast<std::size_t>(ch)] = sum;
    }
    return out;
}

Kummer4 kummer_of_pair(const QPoly& f, const std::complex<double>& x1, const std::complex<double>& y1,
                       const std::complex<double>& x2, const std::complex<double>& y2) {
    std::array<double, 7> c{};
    for (int i = 0; i <= 6; ++i) c[static_cast<std::size_t>(i)] = f.coeff(i).get_d();
    const auto s = x1 + x2, p = x1 * x2;
    const auto f0 = 2.0 * c[0] + c[1] * s + 2.0 * c[2] * p + c[3] * p * s + 2.0 * c[4] * p * p + c[5] * p * p * s +
                    2.0 * c[6] * p * p * p;
    const auto beta = (f0 - 2.0 * y1 * y2) / ((x1 - x2) * (x1 - x2));
    return {1.0, s, p, beta};
}

namespace {

Kummer4 unit(const Kummer4& k) {
    double n = 0;
    for (const auto& v : k) n += std::norm(v);
    n = std::sqrt(n);
    Kummer4 out;
    for (std::size_t i = 0; i < 4; ++i) out[i] = k[i] / n;
    return out;
}

Kummer4 to_k4(const std::array<Cx, 4>& t) {
    // Scale before leaving multiprecision so that huge or tiny sums stay representable.
    Real big = 0;
    for (const auto& v : t) big = mp::max(big, v.abs());
    Kummer4 out;
    for (std::size_t i = 0; i < 4; ++i) out[i] = (Cx(Real(1) / big) * t[i]).to_complex();
    return out;
}

}  // namespace

ThetaContext ThetaContext::make(const AnalyticJacobian& jac, int cutoff) {
    if (jac.curve().degree() != 6) throw AnalyticError("Kummer alignment is implemented for sextic models");
    PrecisionScope scope(jac.digits());
    ThetaContext ctx;
    ctx.jac = &jac;
    ctx.cutoff = cutoff;
    ctx.tau = jac.periods().riemann_matrix();
    if (!(ctx.tau[0][0].im > 0) || !((ctx.tau[0][0].im * ctx.tau[1][1].im - ctx.tau[0][1].im * ctx.tau[1][0].im) > 0))
        throw AnalyticError("imaginary part of the Riemann matrix is not positive definite");
    // Size of the boundary terms relative to the central term, for zeta in the fundamental cell.
    {
        Real worst = 0;
        for (int n1 = -cutoff; n1 <= cutoff; ++n1)
            for (int n2 = -cutoff; n2 <= cutoff; ++n2) {
                if (std::max(std::abs(n1), std::abs(n2)) != cutoff) continue;
                Real m1(n1), m2(n2);
                Real q = m1 * m1 * ctx.tau[0][0].im + 2 * m1 * m2 * ctx.tau[0][1].im + m2 * m2 * ctx.tau[1][1].im;
                Real lin = mp::abs(m1) + mp::abs(m2);
                // |exp(2 pi i (q + 2 m zeta))| <= exp(-2 pi q + 4 pi |m| max|Im zeta|), |Im zeta| <= sum |Im tau|
                Real imz = mp::abs(ctx.tau[0][0].im) + mp::abs(ctx.tau[0][1].im) + mp::abs(ctx.tau[1][1].im);
                worst = mp::max(worst, mp::exp(-2 * pi() * q + 4 * pi() * lin * imz));
            }
        ctx.tail_bound = worst;
    }

    // Nodes: the origin and the fifteen classes [W_i - W_j].
    const auto& bx = jac.branch_points();
    std::vector<Kummer4> thetas, targets;
    thetas.push_back(unit(to_k4(ctx.second_order_thetas(CVec2{}))));
    targets.push_back({0.0, 0.0, 0.0, 1.0});
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j) {
            thetas.push_back(unit(to_k4(ctx.second_order_thetas(jac.two_torsion(i, j)))));
            targets.push_back(unit(kummer_of_pair(jac.curve().F(), bx[i].to_complex(), 0.0, bx[j].to_complex(), 0.0)));
        }
    // T theta_n parallel to c_n: (T theta)_r c_s - (T theta)_s c_r = 0.
    Eigen::MatrixXcd eq = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(thetas.size() * 6), 16);
    Eigen::Index row = 0;
    for (std::size_t n = 0; n < thetas.size(); ++n)
        for (int r = 0; r < 4; ++r)
            for (int s = r + 1; s < 4; ++s, ++row)
                for (int k = 0; k < 4; ++k) {
                    eq(row, r * 4 + k) += thetas[n][static_cast<std::size_t>(k)] * targets[n][static_cast<std::size_t>(s)];
                    eq(row, s * 4 + k) -= thetas[n][static_cast<std::size_t>(k)] * targets[n][static_cast<std::size_t>(r)];
                }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(eq, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    Eigen::VectorXcd t = svd.matrixV().col(15);
    ctx.alignment_residual = sv(15) / sv(0);
    if (sv(14) / sv(0) < 1e-6) throw AnalyticError("Kummer alignment is not unique");
    for (int r = 0; r < 4; ++r)
        for (int k = 0; k < 4; ++k) ctx.alignment[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] = t(r * 4 + k);
    return ctx;
}

Kummer4 theta_kummer(const ThetaContext& ctx, const CVec2& z) {
    Kummer4 th = to_k4(ctx.second_order_thetas(z));
    Kummer4 out{};
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t k = 0; k < 4; ++k) out[r] += ctx.alignment[r][k] * th[k];
    double n = 0;
    for (const auto& v : out) n += std::norm(v);
    if (n < 1e-40) throw AnalyticError("Kummer image is indeterminate");
    return unit(out);
}

}  // namespace rm2
