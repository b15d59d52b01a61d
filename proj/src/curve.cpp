#include "rm2kit/curve.hpp"

#include "rm2kit/factor.hpp"
#include "rm2kit/prime_field.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace rm2 {

Genus2Curve Genus2Curve::make(QPoly f, std::string label) {
    if (f.degree() != 5 && f.degree() != 6) throw std::invalid_argument("curve polynomial must have degree 5 or 6");
    if (!is_squarefree(f)) throw std::invalid_argument("curve polynomial has a repeated root");
    return Genus2Curve(std::move(f), std::move(label));
}

Genus2Curve Genus2Curve::twist(const Rat& d) const {
    if (sgn(d) == 0) throw std::invalid_argument("twist by zero");
    return Genus2Curve(f_ * d, label_);
}

ZPolyCoeffs Genus2Curve::integral_model() const {
    Int l = 1;
    for (const auto& c : f_.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    ZPolyCoeffs out;
    for (const auto& c : f_.coeffs()) out.push_back(Rat(c * l * l).get_num());
    return out;
}

Mobius Mobius::inverse() const {
    Rat dt = det();
    if (sgn(dt) == 0 || sgn(e) == 0) throw std::domain_error("degenerate isomorphism");
    return {d, -b, -c, a, dt * dt * dt / e};
}

QPoly Mobius::image_curve(const QPoly& f) const {
    // x = (d Z - b)/(a - c Z) and c x + d = det/(a - c Z).
    QPoly num = QPoly({-b, d});
    QPoly den = QPoly({a, -c});
    QPoly acc;
    for (int k = 0; k <= f.degree(); ++k) acc = acc + pow(num, k) * pow(den, 6 - k) * f.coeff(k);
    Rat dt = det();
    Rat scale = e * e / (dt * dt * dt * dt * dt * dt);
    return acc * scale;
}

QPoly FrobeniusData::charpoly() const {
    Rat pp(static_cast<unsigned long>(p));
    const Rat a1(static_cast<long>(s1)), a2(static_cast<long>(s2));
    return QPoly(std::vector<Rat>{pp * pp, -pp * a1, a2, -a1, Rat(1)});
}

namespace {

std::vector<std::uint64_t> reduce_coeffs(const Genus2Curve& c, const PrimeField& k) {
    std::vector<std::uint64_t> r;
    const Int p = static_cast<unsigned long>(k.modulus());
    for (const auto& v : c.integral_model()) {
        Int t = v % p;
        if (t < 0) t += p;
        r.push_back(t.get_ui());
    }
    return r;
}

}  // namespace

bool good_reduction(const Genus2Curve& c, std::uint64_t p) {
    if (p < 3 || !is_prime_u64(p)) return false;
    for (const auto& v : c.F().coeffs())
        if (mpz_divisible_ui_p(v.get_den_mpz_t(), static_cast<unsigned long>(p))) return false;
    ZPolyCoeffs z = c.integral_model();
    const unsigned long pu = static_cast<unsigned long>(p);
    // Top coefficient of the binary sextic: F's x^6 coefficient (zero for quintics).
    const bool lead6_vanishes = z.size() < 7 || mpz_divisible_ui_p(z[6].get_mpz_t(), pu);
    ModPoly red;
    for (const auto& v : z) {
        Int t = v % Int(pu);
        if (t < 0) t += pu;
        red.push_back(t.get_ui());
    }
    while (!red.empty() && red.back() == 0) red.pop_back();
    const int deg = static_cast<int>(red.size()) - 1;
    if (deg < 5) return false;
    if (lead6_vanishes && deg != 5) return false;
    // Squarefree test by Euclid with the derivative in F_p.
    PrimeField k(p);
    ModPoly a = red, b;
    for (std::size_t i = 1; i < red.size(); ++i) b.push_back(k.mul(red[i], i % p));
    while (!b.empty() && b.back() == 0) b.pop_back();
    while (!b.empty()) {
        // a mod b
        while (a.size() >= b.size() && !a.empty()) {
            std::uint64_t f = k.mul(a.back(), k.inv(b.back()));
            std::size_t shift = a.size() - b.size();
            for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] = k.sub(a[shift + j], k.mul(f, b[j]));
            while (!a.empty() && a.back() == 0) a.pop_back();
        }
        std::swap(a, b);
    }
    return a.size() == 1;
}

long long count_points(const Genus2Curve& c, std::uint64_t p, int extension_degree) {
    if (extension_degree != 1 && extension_degree != 2) throw std::invalid_argument("extension degree must be 1 or 2");
    if (!good_reduction(c, p)) throw std::domain_error("bad reduction at p");
    PrimeField k(p);
    auto f = reduce_coeffs(c, k);
    while (!f.empty() && f.back() == 0) f.pop_back();
    const int deg = static_cast<int>(f.size()) - 1;
    long long count = 0;
    if (extension_degree == 1) {
        for (std::uint64_t x = 0; x < p; ++x) {
            std::uint64_t acc = 0;
            for (int i = deg; i >= 0; --i) acc = k.add(k.mul(acc, x), f[static_cast<std::size_t>(i)]);
            count += 1 + k.legendre(acc);
        }
        if (deg == 5) count += 1;
        else count += 1 + k.legendre(f[6]);
    } else {
        for (std::uint64_t xa = 0; xa < p; ++xa)
            for (std::uint64_t xb = 0; xb < p; ++xb) {
                PrimeField::Ext x{xa, xb}, acc{0, 0};
                for (int i = deg; i >= 0; --i) acc = k.ext_add(k.ext_mul(acc, x), {f[static_cast<std::size_t>(i)], 0});
                count += 1 + k.ext_legendre(acc);
            }
        // Every element of F_p is a square in F_{p^2}.
        count += deg == 5 ? 1 : 2;
    }
    return count;
}

FrobeniusData frobenius_charpoly(const Genus2Curve& c, std::uint64_t p) {
    FrobeniusData fd;
    fd.p = p;
    fd.n1 = count_points(c, p, 1);
    fd.n2 = count_points(c, p, 2);
    const long long pp = static_cast<long long>(p);
    fd.s1 = pp + 1 - fd.n1;
    const long long t = fd.s1 * fd.s1 - (pp * pp + 1 - fd.n2);
    if (t % 2 != 0) throw std::logic_error("inconsistent point counts");
    fd.s2 = t / 2;
    return fd;
}

std::optional<std::pair<long long, long long>> rm_form_check(const FrobeniusData& fd) {
    if (fd.s1 % 2 != 0) return std::nullopt;
    const long long u = fd.s1 / 2;
    const long long twice_v2 = 2 * static_cast<long long>(fd.p) + u * u - fd.s2;
    if (twice_v2 < 0 || twice_v2 % 2 != 0) return std::nullopt;
    const long long v2 = twice_v2 / 2;
    Int r = exact_isqrt(Int(static_cast<long>(v2)));
    if (r < 0) return std::nullopt;
    return std::make_pair(u, static_cast<long long>(r.get_si()));
}

Simplicity simplicity_test(const Genus2Curve& c, const std::vector<std::uint64_t>& primes) {
    for (auto p : primes) {
        if (!good_reduction(c, p)) continue;
        if (is_irreducible_q(frobenius_charpoly(c, p).charpoly())) return Simplicity::simple_certified;
    }
    return Simplicity::unknown;
}

int weil_pairing_2tors(RootPair a, RootPair b) {
    for (auto v : {a[0], a[1], b[0], b[1]})
        if (v < 0 || v > 5) throw std::invalid_argument("Weierstrass labels are 0..5");
    if (a[0] == a[1] || b[0] == b[1]) throw std::invalid_argument("a label pair needs two distinct roots");
    int common = 0;
    for (int x : a)
        for (int y : b) common += x == y;
    return common == 1 ? -1 : 1;
}

std::vector<RootPair> two_torsion_labels() {
    std::vector<RootPair> out;
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j) out.push_back({i, j});
    return out;
}

std::vector<std::vector<int>> weil_pairing_table() {
    auto labels = two_torsion_labels();
    std::vector<std::vector<int>> t(labels.size(), std::vector<int>(labels.size()));
    for (std::size_t i = 0; i < labels.size(); ++i)
        for (std::size_t j = 0; j < labels.size(); ++j) t[i][j] = weil_pairing_2tors(labels[i], labels[j]);
    return t;
}

namespace {

// J[2] as even subsets of {0..5} modulo the full set, encoded as 6-bit masks
// normalised so that bit 5 is clear.
int canon(int mask) { return (mask & 32) ? (mask ^ 63) : mask; }
int pair_mask(RootPair r) { return canon((1 << r[0]) | (1 << r[1])); }

}  // namespace

SubgroupCheck only_order4_subgroup_check(const Genus2Curve& c, const std::vector<RootPair>& kernel) {
    // Factor F into three quadratics over Q (a linear factor pairs with infinity).
    auto fac = factor_q(c.F());
    std::vector<QPoly> quads;
    std::vector<QPoly> linears;
    for (const auto& f : fac.factors) {
        if (f.multiplicity != 1) return SubgroupCheck::inconclusive;
        if (f.poly.degree() == 2) quads.push_back(f.poly);
        else if (f.poly.degree() == 1) linears.push_back(f.poly);
        else return SubgroupCheck::inconclusive;
    }
    if (c.degree() == 5) {
        if (linears.size() != 1) {
            // pair up rational roots greedily only when there are exactly two (plus infinity)
            if (linears.size() == 3) {
                // three rational roots plus one quadratic: treat (l0 l1) as a split quadratic and l2 with infinity
                quads.push_back(linears[0] * linears[1]);
                linears.erase(linears.begin(), linears.begin() + 2);
            } else {
                return SubgroupCheck::inconclusive;
            }
        }
    } else {
        while (linears.size() >= 2) {
            quads.push_back(linears[0] * linears[1]);
            linears.erase(linears.begin(), linears.begin() + 2);
        }
        if (!linears.empty()) return SubgroupCheck::inconclusive;
    }
    // Square classes of the discriminants (1 when the pair of roots is rational).
    std::vector<Rat> disc;
    for (const auto& q : quads) disc.push_back(discriminant(q));
    if (c.degree() == 5) disc.push_back(Rat(1));
    if (disc.size() != 3) return SubgroupCheck::inconclusive;

    // Galois group inside F_2^3: e is allowed iff sum e_i c_i = 0 for every
    // relation c (product of d_i^{c_i} a rational square).
    std::vector<int> relations;
    for (int cmask = 1; cmask < 8; ++cmask) {
        Rat prod = 1;
        for (int i = 0; i < 3; ++i)
            if (cmask >> i & 1) prod *= disc[static_cast<std::size_t>(i)];
        Rat r;
        if (rational_sqrt(prod, r)) relations.push_back(cmask);
    }
    std::vector<int> group;
    for (int e = 0; e < 8; ++e) {
        bool ok = true;
        for (int cm : relations) ok = ok && (__builtin_popcount(e & cm) % 2 == 0);
        if (ok) group.push_back(e);
    }
    auto act = [](int e, int mask) {
        int out = 0;
        for (int r = 0; r < 6; ++r)
            if (mask >> r & 1) {
                int img = (e >> (r / 2) & 1) ? (r ^ 1) : r;
                out |= 1 << img;
            }
        return canon(out);
    };

    std::set<int> kernel_set{0};
    for (auto rp : kernel) kernel_set.insert(pair_mask(rp));
    if (kernel_set.size() != 4) throw std::invalid_argument("kernel must consist of three distinct classes");
    {
        auto it = kernel_set.begin();
        int a = *++it, b = *++it, cc = *++it;
        if (canon(a ^ b) != cc) throw std::invalid_argument("kernel classes do not form a subgroup");
    }

    std::vector<int> elems;
    for (auto rp : two_torsion_labels()) elems.push_back(pair_mask(rp));
    std::set<std::set<int>> stable;
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (std::size_t j = i + 1; j < elems.size(); ++j) {
            std::set<int> s{0, elems[i], elems[j], canon(elems[i] ^ elems[j])};
            bool ok = true;
            for (int e : group)
                for (int v : s) ok = ok && s.count(act(e, v));
            if (ok) stable.insert(s);
        }
    if (stable.size() == 1 && *stable.begin() == kernel_set) return SubgroupCheck::unique;
    return SubgroupCheck::not_unique;
}

}  // namespace rm2
