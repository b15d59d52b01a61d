#pragma once

#include "rm2kit/correspondence.hpp"
#include "rm2kit/curve.hpp"
#include "rm2kit/mat2.hpp"
#include "rm2kit/number_field.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <array>
#include <complex>
#include <random>
#include <string>
#include <vector>

namespace rm2 {

using Real = boost::multiprecision::mpfr_float;

// Minimal complex number over Real; the MPC bindings are not available here.
struct Cx {
    Real re, im;
    Cx() : re(0), im(0) {}
    Cx(int r) : re(r), im(0) {}
    Cx(Real r) : re(std::move(r)), im(0) {}
    Cx(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    Cx(std::complex<double> z) : re(z.real()), im(z.imag()) {}

    friend Cx operator+(const Cx& a, const Cx& b) { return {a.re + b.re, a.im + b.im}; }
    friend Cx operator-(const Cx& a, const Cx& b) { return {a.re - b.re, a.im - b.im}; }
    friend Cx operator-(const Cx& a) { return {-a.re, -a.im}; }
    friend Cx operator*(const Cx& a, const Cx& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
    friend Cx operator*(const Real& s, const Cx& a) { return {s * a.re, s * a.im}; }
    friend Cx operator/(const Cx& a, const Cx& b) {
        Real n = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    Cx& operator+=(const Cx& o) { return *this = *this + o; }
    Cx& operator-=(const Cx& o) { return *this = *this - o; }
    Cx& operator*=(const Cx& o) { return *this = *this * o; }

    Cx conj() const { return {re, -im}; }
    Real norm() const { return re * re + im * im; }
    Real abs() const { return boost::multiprecision::sqrt(norm()); }
    std::complex<double> to_complex() const { return {re.convert_to<double>(), im.convert_to<double>()}; }
    std::string str(int digits = 20) const;
};

Cx sqrt(const Cx& z);  // principal branch
Cx exp(const Cx& z);
Real real_of(const Rat& q);
Cx eval(const QPoly& p, const Cx& x);

// Sets the default MPFR precision (decimal digits plus guard digits) for its lifetime.
class PrecisionScope {
public:
    explicit PrecisionScope(int digits);
    ~PrecisionScope();
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    unsigned saved_;
};

using CVec2 = std::array<Cx, 2>;
using CMat2 = std::array<std::array<Cx, 2>, 2>;
using RMat2 = std::array<std::array<double, 2>, 2>;
using IntMat4 = std::array<std::array<long, 4>, 4>;

struct AnalyticError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Rows: integrals of dx/y and x dx/y. Columns: a1, a2, b1, b2 with a_i . b_j = delta_ij.
struct PeriodMatrix {
    std::array<std::array<Cx, 4>, 2> entries;
    std::string symplectic_basis;
    int digits = 60;

    const Cx& operator()(int r, int c) const { return entries[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]; }
    CVec2 column(int c) const { return {(*this)(0, c), (*this)(1, c)}; }
    // Columns transformed by an integer matrix S (new column j = sum_i old_i S_ij).
    PeriodMatrix transformed(const IntMat4& S) const;
    // Max entry of Pi J Pi^t.
    Real riemann_residual() const;
    // Both eigenvalues of -i conj(Pi) J Pi^t are positive.
    bool riemann_positive() const;
    // tau = Pi_A^{-1} Pi_B.
    CMat2 riemann_matrix() const;
};

struct CurvePoint {
    Cx x, y;
    int infinity = 0;  // +1 / -1 for the points at infinity of a sextic model; +1 for a quintic
    static CurvePoint finite(Cx x, Cx y) { return {std::move(x), std::move(y), 0}; }
    static CurvePoint at_infinity(int sign) { return {Cx(), Cx(), sign}; }
};

// Numerical model of Jac(C) = C^2 / Pi Z^4.
class AnalyticJacobian {
public:
    static AnalyticJacobian make(const Genus2Curve& c, int digits = 60);

    const Genus2Curve& curve() const { return curve_; }
    int digits() const { return digits_; }
    const PeriodMatrix& periods() const { return pm_; }
    // Finite branch points in chain order (lexicographic on real, imaginary part).
    const std::vector<Cx>& branch_points() const { return branch_x_; }
    CurvePoint weierstrass_point(int i) const;
    // (x, sign * sqrt(F(x))) with the principal square root.
    CurvePoint point_at(const Cx& x, int sign = 1) const;

    // Integral of (dx/y, x dx/y) from base to p, correct modulo the lattice. Each endpoint is joined
    // to a branch point by a straight segment; route >= 0 forces that branch point for both ends,
    // otherwise the best conditioned one is picked per end.
    CVec2 abel_jacobi(const CurvePoint& p, const CurvePoint& base, int route = -1) const;
    // Abel-Jacobi image of the 2-torsion class [W_i - W_j] of two Weierstrass points.
    CVec2 two_torsion(int i, int j) const;

    std::array<Real, 4> lattice_coordinates(const CVec2& z) const;
    CVec2 reduce(const CVec2& z) const;
    // Largest distance of a lattice coordinate from an integer.
    Real lattice_distance(const CVec2& z) const;
    Real tolerance() const;

private:
    struct Chart {
        std::vector<Cx> coeffs;  // low to high
        std::vector<Cx> roots;
        CMat2 to_original;       // (dx/y, x dx/y) = to_original * (du/w, u du/w)
    };
    AnalyticJacobian(Genus2Curve c, int digits) : curve_(std::move(c)), digits_(digits) {}
    void build();
    CVec2 to_branch(const CurvePoint& p, int k) const;
    int weierstrass_index(const CurvePoint& p) const;
    int chart_root_of_infinity() const;
    Real clearance(const CurvePoint& p, int k) const;
    CVec2 chain_period(int k) const;

    Genus2Curve curve_;
    int digits_;
    Chart main_, inf_;
    bool quintic_ = false;
    long shift_ = 0;                  // quintic chart x = shift + 1/u
    std::vector<int> chart_to_branch_;  // chart root index -> branch_x_ index (or -1 for infinity)
    std::vector<Cx> branch_x_;
    std::vector<CVec2> chain_;        // half chain periods, original differentials
    PeriodMatrix pm_;
};

PeriodMatrix period_matrix(const Genus2Curve& c, int digits = 60);

struct HermitianForm {
    CMat2 M;
    Real max_imaginary() const;
    RMat2 real_part() const;
    bool positive_definite() const;
};
// M = 2i (conj(Pi) J Pi^t)^{-1}, so that H(z, w) = z^t M conj(w).
HermitianForm hermitian_M(const PeriodMatrix& pm);

// A random element of Sp_4(Z) built from a few elementary symplectic factors.
IntMat4 random_symplectic(std::mt19937_64& rng, int steps = 6);
bool is_symplectic(const IntMat4& S);

// Rational A with |numerator|, denominator <= height and (n1 I + n2 A_eps^t) M1 = A^t M2 A to
// the given relative tolerance. One representative of each +-pair; first nonzero entry positive.
std::vector<Mat2<Rat>> solve_aphi(const RMat2& M1, const RMat2& M2, const Mat2<Rat>& A_eps1, int n1, int n2,
                                  int height = 7, double tolerance = 1e-6);
double comp_residual(const RMat2& M1, const RMat2& M2, const Mat2<Rat>& A_eps1, const Mat2<Rat>& A_phi, int n1, int n2);
Mat2<Rat> canonical_sign(const Mat2<Rat>& a, bool first_negative);

struct RphiResult {
    IntMat4 R;
    long det = 0;
    double residual = 0;     // max |A Pi1 - Pi2 R|
    double rounding = 0;     // max distance of the real solution from integers
};
RphiResult recover_rphi(const Mat2<Rat>& A_phi, const PeriodMatrix& pi1, const PeriodMatrix& pi2);
RphiResult recover_rphi(const Mat2<NFElem>& A_phi, const PeriodMatrix& pi1, const PeriodMatrix& pi2);

// conj(M^{-1} A^t M), the analytic Rosati adjoint.
std::array<std::array<std::complex<double>, 2>, 2> rosati_matrix(const HermitianForm& h,
                                                                 const std::array<std::array<std::complex<double>, 2>, 2>& a);
std::array<std::array<std::complex<double>, 2>, 2> to_complex(const Mat2<Rat>& a);
std::array<std::array<std::complex<double>, 2>, 2> to_complex(const Mat2<NFElem>& a);

// Image of a point (x, y) of the source curve under a correspondence: the roots z1, z2 of the
// z-quadratic with their t-values, plus the symmetric functions z1 + z2 and z1 z2.
struct CorrespondenceImage {
    Cx sum, product;
    std::array<CurvePoint, 2> points;
};
CorrespondenceImage correspondence_image(const Correspondence<Rat>& c, const Cx& x, const Cx& y);

// ---------------------------------------------------------------------------
// Theta functions and the Kummer surface.

using Kummer4 = std::array<std::complex<double>, 4>;

struct ThetaContext {
    const AnalyticJacobian* jac = nullptr;
    CMat2 tau;
    int cutoff = 15;
    Real tail_bound;  // largest term on the boundary of the summation box, relative
    // Linear map from second-order theta values to Kummer coordinates (1, x1 + x2, x1 x2, beta0),
    // fitted on the 16 nodes.
    std::array<std::array<std::complex<double>, 4>, 4> alignment{};
    double alignment_residual = 0;

    static ThetaContext make(const AnalyticJacobian& jac, int cutoff = 15);
    // The four second-order theta values theta[a, 0](2 zeta, 2 tau), zeta the normalised point.
    std::array<Cx, 4> second_order_thetas(const CVec2& z) const;
};

// Kummer coordinates of z in the (1, x1 + x2, x1 x2, beta0) convention, scaled to unit norm.
Kummer4 theta_kummer(const ThetaContext& ctx, const CVec2& z);
// Kummer coordinates of the class of {(x1, y1), (x2, y2)} minus the canonical class.
Kummer4 kummer_of_pair(const QPoly& f, const std::complex<double>& x1, const std::complex<double>& y1,
                       const std::complex<double>& x2, const std::complex<double>& y2);

}  // namespace rm2
