#include "rm2kit/factor.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace rm2 {

using u64 = std::uint64_t;

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

namespace {

// ---- arithmetic in F_p[x] ----------------------------------------------------

void mtrim(ModPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int mdeg(const ModPoly& a) { return static_cast<int>(a.size()) - 1; }

u64 powmod(u64 b, u64 e, u64 p) {
    u64 r = 1;
    b %= p;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

u64 invmod(u64 a, u64 p) { return powmod(a, p - 2, p); }

ModPoly msub(const ModPoly& a, const ModPoly& b, u64 p) {
    ModPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + p - b[i]) % p;
    mtrim(r);
    return r;
}

ModPoly mmul(const ModPoly& a, const ModPoly& b, u64 p) {
    if (a.empty() || b.empty()) return {};
    ModPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    mtrim(r);
    return r;
}

ModPoly mscale(ModPoly a, u64 s, u64 p) {
    for (auto& v : a) v = v * s % p;
    mtrim(a);
    return a;
}

std::pair<ModPoly, ModPoly> mdivrem(ModPoly a, const ModPoly& b, u64 p) {
    if (b.empty()) throw std::domain_error("division by zero polynomial mod p");
    if (mdeg(a) < mdeg(b)) return {{}, a};
    const int db = mdeg(b);
    const u64 inv = invmod(b.back(), p);
    ModPoly q(static_cast<std::size_t>(mdeg(a) - db + 1), 0);
    for (int k = mdeg(a); k >= db; --k) {
        u64 f = a[static_cast<std::size_t>(k)] * inv % p;
        q[static_cast<std::size_t>(k - db)] = f;
        if (!f) continue;
        for (int j = 0; j <= db; ++j) {
            auto& t = a[static_cast<std::size_t>(k - db + j)];
            t = (t + p - f * b[static_cast<std::size_t>(j)] % p) % p;
        }
    }
    a.resize(static_cast<std::size_t>(db));
    mtrim(a);
    mtrim(q);
    return {q, a};
}

ModPoly mrem(const ModPoly& a, const ModPoly& b, u64 p) { return mdivrem(a, b, p).second; }

ModPoly mmonic(ModPoly a, u64 p) {
    if (a.empty()) return a;
    return mscale(std::move(a), invmod(a.back(), p), p);
}

ModPoly mgcd(ModPoly a, ModPoly b, u64 p) {
    while (!b.empty()) {
        ModPoly r = mrem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return mmonic(std::move(a), p);
}

// Inverse of a modulo m (assumes coprime).
ModPoly minv(const ModPoly& a, const ModPoly& m, u64 p) {
    ModPoly r0 = m, r1 = mrem(a, m, p);
    ModPoly s0, s1{1};
    while (!r1.empty()) {
        auto [q, r] = mdivrem(r0, r1, p);
        r0 = std::move(r1);
        r1 = std::move(r);
        ModPoly s2 = msub(s0, mmul(q, s1, p), p);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (mdeg(r0) != 0) throw std::domain_error("not invertible mod p");
    return mrem(mscale(s0, invmod(r0[0], p), p), m, p);
}

ModPoly mpow_mod(ModPoly base, const Int& e, const ModPoly& m, u64 p) {
    ModPoly r{1};
    base = mrem(base, m, p);
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        r = mrem(mmul(r, r, p), m, p);
        if (mpz_tstbit(e.get_mpz_t(), i)) r = mrem(mmul(r, base, p), m, p);
    }
    return r;
}

ModPoly mderiv(const ModPoly& a, u64 p) {
    if (a.size() <= 1) return {};
    ModPoly d(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i) d[i - 1] = a[i] * (i % p) % p;
    mtrim(d);
    return d;
}

ModPoly reduce_mod(const ZPolyCoeffs& f, u64 p) {
    ModPoly r(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        Int t = f[i] % Int(static_cast<unsigned long>(p));
        if (t < 0) t += static_cast<unsigned long>(p);
        r[i] = t.get_ui();
    }
    mtrim(r);
    return r;
}

void equal_degree_split(const ModPoly& g, int d, u64 p, std::mt19937_64& rng, std::vector<ModPoly>& out) {
    if (mdeg(g) == d) {
        out.push_back(g);
        return;
    }
    Int e;
    mpz_ui_pow_ui(e.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(d));
    e = (e - 1) / 2;
    std::uniform_int_distribution<u64> dist(0, p - 1);
    for (;;) {
        ModPoly a(static_cast<std::size_t>(mdeg(g)));
        for (auto& v : a) v = dist(rng);
        mtrim(a);
        if (mdeg(a) < 1) continue;
        ModPoly b = msub(mpow_mod(a, e, g, p), ModPoly{1}, p);
        ModPoly h = mgcd(b, g, p);
        if (mdeg(h) > 0 && mdeg(h) < mdeg(g)) {
            equal_degree_split(h, d, p, rng, out);
            equal_degree_split(mdivrem(g, h, p).first, d, p, rng, out);
            return;
        }
    }
}

// ---- lifting and recombination over Z ----------------------------------------

Int symmetric_mod(const Int& v, const Int& m) {
    Int r = v % m;
    if (r < 0) r += m;
    if (2 * r > m) r -= m;
    return r;
}

ZPolyCoeffs zmul(const ZPolyCoeffs& a, const ZPolyCoeffs& b) {
    if (a.empty() || b.empty()) return {};
    ZPolyCoeffs r(a.size() + b.size() - 1, Int(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

// Exact division test over Z; returns true and the quotient when b | a.
bool zdivides(const ZPolyCoeffs& a, const ZPolyCoeffs& b, ZPolyCoeffs& q) {
    ZPolyCoeffs r = a;
    const int da = static_cast<int>(a.size()) - 1, db = static_cast<int>(b.size()) - 1;
    if (da < db) return false;
    q.assign(static_cast<std::size_t>(da - db + 1), Int(0));
    for (int k = da; k >= db; --k) {
        const Int& top = r[static_cast<std::size_t>(k)];
        if (top == 0) continue;
        if (!mpz_divisible_p(top.get_mpz_t(), b.back().get_mpz_t())) return false;
        Int f = top / b.back();
        q[static_cast<std::size_t>(k - db)] = f;
        for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(k - db + j)] -= f * b[static_cast<std::size_t>(j)];
    }
    for (int i = 0; i < db; ++i)
        if (r[static_cast<std::size_t>(i)] != 0) return false;
    return true;
}

ZPolyCoeffs zprimitive(ZPolyCoeffs a) {
    Int g = 0;
    for (const auto& v : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 0) return a;
    if (a.back() < 0) g = -g;
    for (auto& v : a) v /= g;
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

std::vector<ZPolyCoeffs> factor_squarefree_primitive(const ZPolyCoeffs& g) {
    const int n = static_cast<int>(g.size()) - 1;
    if (n <= 1) return {g};

    // Pick the good prime with the fewest modular factors among the first few.
    std::mt19937_64 rng(0x5eed);
    u64 best_p = 0;
    std::vector<ModPoly> best;
    int tried = 0;
    for (u64 p = 3; tried < 6 && p < 2000; p += 2) {
        if (!is_prime_u64(p)) continue;
        if (mpz_divisible_ui_p(g.back().get_mpz_t(), static_cast<unsigned long>(p))) continue;
        ModPoly gp = reduce_mod(g, p);
        if (mdeg(mgcd(gp, mderiv(gp, p), p)) > 0) continue;
        ++tried;
        auto fac = factor_mod_p(gp, p);
        if (best_p == 0 || fac.size() < best.size()) {
            best_p = p;
            best = std::move(fac);
        }
        if (best.size() == 1) return {g};
    }
    if (best_p == 0) throw std::runtime_error("no good prime found for factorisation");
    const u64 p = best_p;
    const std::size_t r = best.size();

    // Coefficient bound for factors of g (Mignotte), scaled by the leading coefficient.
    Int maxc = 0;
    for (const auto& v : g) {
        Int a = abs(v);
        if (a > maxc) maxc = a;
    }
    Int bound = maxc * abs(g.back());
    bound *= Int(static_cast<long>(std::ceil(std::sqrt(n + 1.0))));
    bound <<= static_cast<mp_bitcnt_t>(n + 1);

    // Bezout-type cofactors s_i with sum s_i * prod_{j != i} f_j = 1 (mod p).
    ModPoly prod_all{1};
    for (const auto& f : best) prod_all = mmul(prod_all, f, p);
    std::vector<ModPoly> s(r);
    for (std::size_t i = 0; i < r; ++i) {
        ModPoly others = mdivrem(prod_all, best[i], p).first;
        s[i] = minv(others, best[i], p);
    }

    std::vector<ZPolyCoeffs> lifted(r);
    for (std::size_t i = 0; i < r; ++i)
        for (u64 v : best[i]) lifted[i].emplace_back(static_cast<unsigned long>(v));
    const Int lc = g.back();
    const u64 lc_inv = invmod(reduce_mod(ZPolyCoeffs{lc}, p)[0], p);
    Int modulus = static_cast<unsigned long>(p);
    while (modulus <= bound) {
        ZPolyCoeffs prod{lc};
        for (const auto& f : lifted) prod = zmul(prod, f);
        ZPolyCoeffs err(g.size(), Int(0));
        for (std::size_t i = 0; i < g.size(); ++i) err[i] = g[i] - (i < prod.size() ? prod[i] : Int(0));
        for (auto& v : err) v /= modulus;  // exact
        ModPoly e = mscale(reduce_mod(err, p), lc_inv, p);
        for (std::size_t i = 0; i < r; ++i) {
            ModPoly delta = mrem(mmul(e, s[i], p), best[i], p);
            for (std::size_t k = 0; k < delta.size(); ++k) lifted[i][k] += modulus * Int(static_cast<unsigned long>(delta[k]));
        }
        modulus *= static_cast<unsigned long>(p);
    }

    // Recombine subsets of increasing size.
    std::vector<ZPolyCoeffs> result;
    std::vector<std::size_t> remaining(r);
    for (std::size_t i = 0; i < r; ++i) remaining[i] = i;
    ZPolyCoeffs rest = g;
    std::size_t size = 1;
    while (2 * size <= remaining.size()) {
        bool found = false;
        const std::size_t m = remaining.size();
        std::vector<std::size_t> idx(size);
        for (std::size_t i = 0; i < size; ++i) idx[i] = i;
        while (true) {
            ZPolyCoeffs cand{rest.back()};
            for (auto i : idx) cand = zmul(cand, lifted[remaining[i]]);
            for (auto& v : cand) v = symmetric_mod(v, modulus);
            cand = zprimitive(cand);
            ZPolyCoeffs q;
            if (zdivides(rest, cand, q)) {
                result.push_back(cand);
                rest = q;
                std::vector<std::size_t> keep;
                for (std::size_t k = 0; k < m; ++k)
                    if (std::find(idx.begin(), idx.end(), k) == idx.end()) keep.push_back(remaining[k]);
                remaining = keep;
                found = true;
                break;
            }
            // next combination
            std::size_t k = size;
            while (k > 0 && idx[k - 1] == m - size + (k - 1)) --k;
            if (k == 0) break;
            ++idx[k - 1];
            for (std::size_t j = k; j < size; ++j) idx[j] = idx[j - 1] + 1;
        }
        if (!found) ++size;
    }
    result.push_back(zprimitive(rest));
    return result;
}

}  // namespace

std::vector<ModPoly> factor_mod_p(const ModPoly& f_in, u64 p) {
    ModPoly f = mmonic(f_in, p);
    std::vector<ModPoly> out;
    if (mdeg(f) <= 0) return out;
    std::mt19937_64 rng(0xfac7);
    ModPoly h{0, 1};
    const ModPoly x{0, 1};
    for (int d = 1; mdeg(f) >= 2 * d; ++d) {
        h = mpow_mod(h, Int(static_cast<unsigned long>(p)), f, p);
        ModPoly g = mgcd(msub(h, x, p), f, p);
        if (mdeg(g) > 0) {
            equal_degree_split(g, d, p, rng, out);
            f = mdivrem(f, g, p).first;
            h = mrem(h, f, p);
        }
    }
    if (mdeg(f) > 0) out.push_back(f);
    return out;
}

bool irreducible_mod_p(const QPoly& f, u64 p) {
    ZPolyCoeffs z = primitive_integer(f);
    if (mpz_divisible_ui_p(z.back().get_mpz_t(), static_cast<unsigned long>(p))) return false;
    ModPoly fp = reduce_mod(z, p);
    if (mdeg(mgcd(fp, mderiv(fp, p), p)) > 0) return false;
    return factor_mod_p(fp, p).size() == 1;
}

std::vector<std::pair<QPoly, int>> squarefree_decomposition(const QPoly& f) {
    std::vector<std::pair<QPoly, int>> out;
    if (f.degree() < 1) return out;
    QPoly a = gcd(f, f.derivative());
    QPoly b = f / a;
    QPoly c = f.derivative() / a;
    QPoly d = c - b.derivative();
    int i = 1;
    while (b.degree() > 0) {
        QPoly ai = gcd(b, d);
        b = b / ai;
        c = d / ai;
        d = c - b.derivative();
        if (ai.degree() > 0) out.emplace_back(ai.monic(), i);
        ++i;
    }
    return out;
}

Factorization factor_q(const QPoly& f) {
    if (f.zero()) throw std::invalid_argument("cannot factor the zero polynomial");
    Factorization out;
    for (const auto& [part, mult] : squarefree_decomposition(f)) {
        for (auto& z : factor_squarefree_primitive(primitive_integer(part))) out.factors.push_back({from_integer(z), mult});
    }
    Rat prod_lead = 1;
    for (const auto& fa : out.factors)
        for (int k = 0; k < fa.multiplicity; ++k) prod_lead *= fa.poly.lead();
    out.unit = f.lead() / prod_lead;
    return out;
}

bool is_irreducible_q(const QPoly& f) {
    if (f.degree() < 1) return false;
    auto fac = factor_q(f);
    return fac.factors.size() == 1 && fac.factors[0].multiplicity == 1;
}

}  // namespace rm2
