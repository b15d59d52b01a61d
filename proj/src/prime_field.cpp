#include "rm2kit/prime_field.hpp"

#include "rm2kit/factor.hpp"

#include <stdexcept>

namespace rm2 {

PrimeField::PrimeField(u64 p) : p_(p), nonres_(0) {
    if (p < 3 || p >= (u64(1) << 31) || !is_prime_u64(p)) throw std::invalid_argument("modulus must be an odd prime below 2^31");
    for (u64 n = 2; n < p; ++n)
        if (legendre(n) == -1) {
            nonres_ = n;
            break;
        }
}

PrimeField::u64 PrimeField::reduce(long long v) const {
    long long r = v % static_cast<long long>(p_);
    if (r < 0) r += static_cast<long long>(p_);
    return static_cast<u64>(r);
}

PrimeField::u64 PrimeField::pow(u64 a, u64 e) const {
    u64 r = 1;
    a %= p_;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

PrimeField::u64 PrimeField::inv(u64 a) const {
    if (a % p_ == 0) throw std::domain_error("inverse of zero mod p");
    return pow(a, p_ - 2);
}

int PrimeField::legendre(u64 a) const {
    a %= p_;
    if (a == 0) return 0;
    return pow(a, (p_ - 1) / 2) == 1 ? 1 : -1;
}

PrimeField::u64 PrimeField::sqrt(u64 a) const {
    a %= p_;
    if (a == 0) return 0;
    if (legendre(a) != 1) throw std::domain_error("square root of a non-residue");
    u64 q = p_ - 1;
    unsigned s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    u64 z = nonres_;
    u64 m = s, c = pow(z, q), t = pow(a, q), r = pow(a, (q + 1) / 2);
    while (t != 1) {
        u64 i = 0, tt = t;
        while (tt != 1) {
            tt = mul(tt, tt);
            ++i;
        }
        u64 b = c;
        for (u64 j = 0; j + i + 1 < m; ++j) b = mul(b, b);
        m = i;
        c = mul(b, b);
        t = mul(t, c);
        r = mul(r, b);
    }
    return r;
}

}  // namespace rm2
