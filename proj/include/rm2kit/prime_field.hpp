#pragma once

#include <cstdint>
#include <optional>

namespace rm2 {

// Arithmetic modulo an odd prime p < 2^31, with the quadratic extension
// F_p[u]/(u^2 - n) for a fixed non-residue n.
class PrimeField {
public:
    using u64 = std::uint64_t;

    explicit PrimeField(u64 p);

    u64 modulus() const { return p_; }
    u64 reduce(long long v) const;
    u64 add(u64 a, u64 b) const { return (a + b) % p_; }
    u64 sub(u64 a, u64 b) const { return (a + p_ - b) % p_; }
    u64 mul(u64 a, u64 b) const { return a * b % p_; }
    u64 neg(u64 a) const { return a == 0 ? 0 : p_ - a; }
    u64 pow(u64 a, u64 e) const;
    u64 inv(u64 a) const;
    // Legendre symbol: 0, 1 or -1.
    int legendre(u64 a) const;
    bool is_square(u64 a) const { return legendre(a) >= 0; }
    // Tonelli-Shanks; throws on non-residues.
    u64 sqrt(u64 a) const;
    u64 nonresidue() const { return nonres_; }

    struct Ext {
        u64 a = 0, b = 0;  // a + b*u
        friend bool operator==(const Ext&, const Ext&) = default;
    };
    Ext ext_add(Ext x, Ext y) const { return {add(x.a, y.a), add(x.b, y.b)}; }
    Ext ext_mul(Ext x, Ext y) const {
        return {add(mul(x.a, y.a), mul(nonres_, mul(x.b, y.b))), add(mul(x.a, y.b), mul(x.b, y.a))};
    }
    u64 ext_norm(Ext x) const { return sub(mul(x.a, x.a), mul(nonres_, mul(x.b, x.b))); }
    // Quadratic character on F_{p^2}: an element is a square iff its norm is a square in F_p.
    int ext_legendre(Ext x) const { return legendre(ext_norm(x)); }

private:
    u64 p_;
    u64 nonres_;
};

}  // namespace rm2
