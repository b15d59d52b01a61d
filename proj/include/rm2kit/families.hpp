#pragma once

#include "rm2kit/correspondence.hpp"
#include "rm2kit/curve.hpp"
#include "rm2kit/richelot.hpp"
#include "rm2kit/splitting_field.hpp"

#include <optional>
#include <vector>

namespace rm2 {

struct FamilyError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

using TPoly = Poly<TowerElem>;
TPoly to_tower(const QPoly& p);

// ---------------------------------------------------------------------------
// Y^2 = delta * prod (X^2 - a_i X + P a_i^2 + Q a_i + R), a_i the roots of X^3 + A X^2 + B X + C.

struct RM2FamilyMember {
    Rat delta, P, Q, A;
    Rat B, C, R;
    Genus2Curve curve;
    CubicRoots roots;
    QuadraticSplitting<TowerElem> splitting;
    Mobius iota;                    // (x, y) -> (2/x, 4y/x^3), onto the Richelot dual
    // Both are written over K1 = Q(alpha0): the base point is a root of G0.
    Correspondence<NFElem> rho;     // Richelot isogeny onto the dual
    Correspondence<NFElem> epsilon; // iota^{-1} rho
    Mat2<Rat> A_epsilon;
};

RM2FamilyMember rm2_generate(const Rat& delta, const Rat& P, const Rat& Q, const Rat& A);

// Returns the member when the Richelot dual of the splitting is the image of
// the curve under (x, y) -> (2/x, 4y/x^3) and the quadratics have the family shape.
std::optional<RM2FamilyMember> rm2_recognize(const Genus2Curve& c, const QuadraticSplitting<TowerElem>& s);

// ---------------------------------------------------------------------------
// 2-isogeny pairs.

struct UVWParams {
    Rat delta, U, V, W;
};

struct IsogenyPair51 {
    UVWParams params;
    // Primed parameters; empty when a printed denominator vanishes.
    std::optional<UVWParams> primed;
    bool f2_from_formula = true;  // false: F2 recovered from t_k^2 = F2(z_k) on the data of pi1
    Genus2Curve C1, C2;
    QPoly D1, D2;  // quadratics whose root pairs give the killed 2-torsion points
    Correspondence<Rat> pi1, pi2;
};

// F1 of the 2-isogeny family (also used with V = 2 by the elliptic quotient).
QPoly thm51_f1(const UVWParams& p);
std::array<std::array<Rat, 3>, 3> thm51_phi(const Rat& U, const Rat& V);
std::array<QPoly, 4> thm51_psi(const Rat& U, const Rat& V);
std::optional<UVWParams> thm51_primed(const UVWParams& p);
// Delta' (Z^2 + U'Z + V') prod(...): the primed analogue of F1. Empty when a primed quantity is singular.
std::optional<QPoly> thm51_f2(const UVWParams& p);
IsogenyPair51 thm51_pair(const Rat& delta, const Rat& U, const Rat& V, const Rat& W);

struct IsogenyPair52 {
    Rat delta, W;
    std::optional<Rat> W_primed;
    Rat delta_primed;
    Genus2Curve C1, C2;
    Correspondence<Rat> pi1, pi2;
};

QPoly thm52_f1(const Rat& delta, const Rat& W);
QPoly thm52_f2(const Rat& delta, const Rat& W);
IsogenyPair52 thm52_pair(const Rat& delta, const Rat& W);

// V = 2: the 4-isogeny to E x E over Q(alpha), (U-2) alpha^2 + 4 alpha + U + 2 = 0.
struct EllipticQuotient {
    Rat delta, U, W;
    FieldRef field;              // null when alpha is rational
    NFElem alpha;
    KPoly E;                     // T^2 = E(Z), a cubic
    // z = (x - alpha - 1)/(alpha x + alpha - 1), t = t_scale * y/(alpha x + alpha - 1)^3
    NFElem t_scale;
    bool symmetric_coefficients = false;
    bool substitution_verified = false;
};

EllipticQuotient thm51_elliptic_quotient(const Rat& delta, const Rat& U, const Rat& W);

// ---------------------------------------------------------------------------
// Quaternionic family.

struct QuatFamilyMember {
    Rat delta, N;
    Genus2Curve curve;
    CubicRoots roots;             // cube roots of N
    Rat splitting_scale;          // curve = scale * prod G_i
    Correspondence<NFElem> epsilon;  // on the given curve, over Q(alpha0)
    Mat2<Rat> A_epsilon;
    FieldRef sqrt_m3;             // Q(s), s^2 = -3
    Correspondence<NFElem> psi;   // on the model with delta = N - 1
    Mat2<NFElem> A_psi;
};

QPoly quat_sextic(const Rat& delta, const Rat& N);
QuatFamilyMember quat_generate(const Rat& delta, const Rat& N);

struct EtaResult {
    int s0 = 0, t0 = 0;
    Mat2<NFElem> A_eta;
};
// First (s0, t0) in the box |s0|, |t0| <= 9 satisfying the matrix identities.
EtaResult quat_eta(const Mat2<NFElem>& A_eps, const Mat2<NFElem>& A_psi);

struct TwistEvidence {
    std::uint64_t p;
    bool informative;   // false when -3 is a square mod p
    bool agree;
    QPoly charpoly, twist_charpoly;
};
std::vector<TwistEvidence> quat_twist_evidence(const Genus2Curve& c, const std::vector<std::uint64_t>& primes,
                                               const Rat& twist = Rat(-3));

}  // namespace rm2
