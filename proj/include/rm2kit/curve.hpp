#pragma once

#include "rm2kit/poly.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rm2 {

// Y^2 = F(X) with F squarefree of degree 5 or 6 over Q.
class Genus2Curve {
public:
    static Genus2Curve make(QPoly f, std::string label = {});

    const QPoly& F() const { return f_; }
    const std::string& label() const { return label_; }
    int degree() const { return f_.degree(); }

    // Y^2 = d F(X).
    Genus2Curve twist(const Rat& d) const;
    // Integer multiple c^2 F with c the lcm of the denominators; same curve up to y -> c y.
    ZPolyCoeffs integral_model() const;

    friend bool operator==(const Genus2Curve& a, const Genus2Curve& b) { return a.f_ == b.f_; }

private:
    Genus2Curve(QPoly f, std::string label) : f_(std::move(f)), label_(std::move(label)) {}
    QPoly f_;
    std::string label_;
};

// (x, y) -> ((a x + b)/(c x + d), e y/(c x + d)^3)
struct Mobius {
    Rat a, b, c, d, e;
    Rat det() const { return a * d - b * c; }
    Mobius inverse() const;
    // The sextic G of the image curve T^2 = G(Z), so that the map sends Y^2 = F(X) to it.
    QPoly image_curve(const QPoly& f) const;
};

struct FrobeniusData {
    std::uint64_t p = 0;
    long long n1 = 0, n2 = 0;
    long long s1 = 0, s2 = 0;
    // x^4 - s1 x^3 + s2 x^2 - p s1 x + p^2, low to high.
    QPoly charpoly() const;
};

// p odd, p does not divide the denominators, and the reduction of the binary
// sextic form is squarefree (degree 6, or degree exactly 5 with one point at infinity).
bool good_reduction(const Genus2Curve& c, std::uint64_t p);
long long count_points(const Genus2Curve& c, std::uint64_t p, int extension_degree);
FrobeniusData frobenius_charpoly(const Genus2Curve& c, std::uint64_t p);

// (u, v) with s1 = 2u and s2 = 2p + u^2 - 2v^2, v >= 0.
std::optional<std::pair<long long, long long>> rm_form_check(const FrobeniusData& fd);

enum class Simplicity { simple_certified, unknown };
Simplicity simplicity_test(const Genus2Curve& c, const std::vector<std::uint64_t>& primes);

// Two-torsion classes [P_i - P_j] labelled by 2-subsets of the six Weierstrass roots.
using RootPair = std::array<int, 2>;
int weil_pairing_2tors(RootPair a, RootPair b);
std::vector<RootPair> two_torsion_labels();  // the 15 pairs in lexicographic order
std::vector<std::vector<int>> weil_pairing_table();

enum class SubgroupCheck { unique, not_unique, inconclusive };
// Roots are labelled 2i, 2i+1 for the i-th quadratic factor of F (the point at
// infinity completes a linear factor in the quintic case). The kernel passed in
// is a list of three pairs in that labelling.
SubgroupCheck only_order4_subgroup_check(const Genus2Curve& c, const std::vector<RootPair>& kernel);

}  // namespace rm2
