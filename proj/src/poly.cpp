#include "rm2kit/poly.hpp"

namespace rm2 {

Rat content(const QPoly& f) {
    if (f.zero()) return Rat(0);
    Int g = 0, l = 1;
    for (const auto& c : f.coeffs()) {
        if (is_zero(c)) continue;
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    }
    Rat r(g, l);
    r.canonicalize();
    if (f.lead() < 0) r = -r;
    return r;
}

ZPolyCoeffs primitive_integer(const QPoly& f) {
    ZPolyCoeffs out;
    if (f.zero()) return out;
    Rat c = content(f);
    out.reserve(f.coeffs().size());
    for (const auto& v : f.coeffs()) {
        Rat q = v / c;
        out.push_back(q.get_num());
    }
    return out;
}

QPoly from_integer(const ZPolyCoeffs& c) {
    std::vector<Rat> v;
    v.reserve(c.size());
    for (const auto& z : c) v.emplace_back(z);
    return QPoly(std::move(v));
}

namespace {

// Pseudo-remainder of integer polynomials followed by content removal.
ZPolyCoeffs prim_prem(ZPolyCoeffs a, const ZPolyCoeffs& b) {
    const int db = static_cast<int>(b.size()) - 1;
    const Int& lb = b.back();
    while (static_cast<int>(a.size()) - 1 >= db && !a.empty()) {
        const int da = static_cast<int>(a.size()) - 1;
        Int la = a.back();
        for (auto& v : a) v *= lb;
        for (int j = 0; j <= db; ++j) a[static_cast<std::size_t>(da - db + j)] -= la * b[static_cast<std::size_t>(j)];
        while (!a.empty() && a.back() == 0) a.pop_back();
    }
    if (a.empty()) return a;
    Int g = 0;
    for (const auto& v : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g != 1)
        for (auto& v : a) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    return a;
}

}  // namespace

QPoly gcd(const QPoly& a, const QPoly& b) {
    if (a.zero()) return b.monic();
    if (b.zero()) return a.monic();
    ZPolyCoeffs x = primitive_integer(a);
    ZPolyCoeffs y = primitive_integer(b);
    if (x.size() < y.size()) std::swap(x, y);
    while (!y.empty()) {
        if (y.size() == 1) return QPoly(Rat(1));
        ZPolyCoeffs r = prim_prem(x, y);
        x = std::move(y);
        y = std::move(r);
    }
    return from_integer(x).monic();
}

QPoly qpoly(std::initializer_list<long> coeffs) {
    std::vector<Rat> v;
    for (long c : coeffs) v.emplace_back(c);
    return QPoly(std::move(v));
}

QPoly qpoly_from_strings(const std::vector<std::string>& coeffs) {
    std::vector<Rat> v;
    v.reserve(coeffs.size());
    for (const auto& s : coeffs) v.push_back(parse_rat(s));
    return QPoly(std::move(v));
}

bool is_squarefree(const QPoly& f) {
    if (f.degree() < 1) return !f.zero();
    return gcd(f, f.derivative()).degree() == 0;
}

}  // namespace rm2
