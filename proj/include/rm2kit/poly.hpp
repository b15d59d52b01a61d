#pragma once

#include "rm2kit/rational.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rm2 {

// Dense univariate polynomial, coefficients stored low degree first.
// T needs +, -, *, /, construction from int and a free is_zero(T).
template <class T>
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<T> c) : c_(std::move(c)) { trim(); }
    explicit Poly(const T& constant) : c_{constant} { trim(); }
    Poly(std::initializer_list<T> c) : c_(c) { trim(); }

    static Poly monomial(const T& coeff, int k) {
        std::vector<T> c(static_cast<std::size_t>(k) + 1, T(0));
        c[static_cast<std::size_t>(k)] = coeff;
        return Poly(std::move(c));
    }
    static Poly x() { return monomial(T(1), 1); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool zero() const { return c_.empty(); }
    const std::vector<T>& coeffs() const { return c_; }
    T coeff(int i) const {
        if (i < 0 || i > degree()) return T(0);
        return c_[static_cast<std::size_t>(i)];
    }
    T lead() const { return zero() ? T(0) : c_.back(); }

    Poly& operator+=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    Poly& operator*=(const T& s) {
        for (auto& v : c_) v *= s;
        trim();
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator-(Poly a) {
        for (auto& v : a.c_) v = -v;
        return a;
    }
    friend Poly operator*(Poly a, const T& s) { return a *= s; }
    friend Poly operator*(const T& s, Poly a) { return a *= s; }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.zero() || b.zero()) return Poly();
        std::vector<T> r(a.c_.size() + b.c_.size() - 1, T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (is_zero(a.c_[i])) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return Poly(std::move(r));
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    friend bool operator==(const Poly& a, const Poly& b) {
        if (a.c_.size() != b.c_.size()) return false;
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            if (!(a.c_[i] == b.c_[i])) return false;
        return true;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    // Quotient and remainder; the divisor's leading coefficient must be invertible.
    friend std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b) {
        if (b.zero()) throw std::domain_error("polynomial division by zero");
        if (a.degree() < b.degree()) return {Poly(), a};
        std::vector<T> r = a.c_;
        std::vector<T> q(static_cast<std::size_t>(a.degree() - b.degree() + 1), T(0));
        const T inv_lead = T(1) / b.c_.back();
        const int db = b.degree();
        for (int k = a.degree(); k >= db; --k) {
            T f = r[static_cast<std::size_t>(k)] * inv_lead;
            if (is_zero(f)) continue;
            q[static_cast<std::size_t>(k - db)] = f;
            for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(k - db + j)] -= f * b.c_[static_cast<std::size_t>(j)];
        }
        r.resize(static_cast<std::size_t>(db));
        return {Poly(std::move(q)), Poly(std::move(r))};
    }
    friend Poly operator/(const Poly& a, const Poly& b) { return divrem(a, b).first; }
    friend Poly operator%(const Poly& a, const Poly& b) { return divrem(a, b).second; }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        std::vector<T> d(c_.size() - 1, T(0));
        for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * T(static_cast<int>(i));
        return Poly(std::move(d));
    }

    template <class U>
    U eval(const U& x) const {
        U acc = U(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + U(*it);
        return acc;
    }
    T operator()(const T& x) const { return eval<T>(x); }

    // this(g(X))
    Poly compose(const Poly& g) const {
        Poly acc;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * g + Poly(*it);
        return acc;
    }

    template <class U, class F>
    Poly<U> map(F&& f) const {
        std::vector<U> out;
        out.reserve(c_.size());
        for (const auto& v : c_) out.push_back(f(v));
        return Poly<U>(std::move(out));
    }

    Poly monic() const {
        if (zero()) return *this;
        return *this * (T(1) / lead());
    }

    std::string str(const std::string& var = "X") const {
        if (zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (int i = degree(); i >= 0; --i) {
            const T& v = c_[static_cast<std::size_t>(i)];
            if (is_zero(v)) continue;
            if (!first) os << " + ";
            first = false;
            os << "(" << to_string(v) << ")";
            if (i >= 1) os << "*" << var;
            if (i >= 2) os << "^" << i;
        }
        return os.str();
    }

private:
    void trim() {
        while (!c_.empty() && is_zero(c_.back())) c_.pop_back();
    }
    std::vector<T> c_;
};

template <class T>
Poly<T> pow(const Poly<T>& p, int e) {
    Poly<T> r(T(1));
    Poly<T> b = p;
    while (e > 0) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

// Euclid with monic normalisation; result is monic (or zero).
template <class T>
Poly<T> gcd(Poly<T> a, Poly<T> b) {
    if (a.zero()) return b.zero() ? b : b.monic();
    if (b.zero()) return a.monic();
    if (a.degree() == 0 || b.degree() == 0) return Poly<T>(T(1));
    b = b.monic();
    while (!b.zero()) {
        Poly<T> r = a % b;
        a = std::move(b);
        b = r.zero() ? std::move(r) : r.monic();
    }
    return a;
}

// Returns (g, s, t) with s*a + t*b = g monic.
template <class T>
struct XGcd {
    Poly<T> g, s, t;
};

template <class T>
XGcd<T> xgcd(const Poly<T>& a, const Poly<T>& b) {
    Poly<T> r0 = a, r1 = b;
    Poly<T> s0(T(1)), s1, t0, t1(T(1));
    while (!r1.zero()) {
        auto [q, r] = divrem(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        Poly<T> s2 = s0 - q * s1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        Poly<T> t2 = t0 - q * t1;
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.zero()) return {r0, s0, t0};
    T inv = T(1) / r0.lead();
    return {r0 * inv, s0 * inv, t0 * inv};
}

template <class T>
T resultant(Poly<T> a, Poly<T> b) {
    if (a.zero() || b.zero()) return T(0);
    T acc(1);
    for (;;) {
        const int m = a.degree();
        const int n = b.degree();
        if (n == 0) {
            T bn = b.lead();
            for (int i = 0; i < m; ++i) acc = acc * bn;
            return acc;
        }
        if (m < n) {
            if ((m * n) % 2 == 1) acc = -acc;
            std::swap(a, b);
            continue;
        }
        Poly<T> r = a % b;
        if (r.zero()) return T(0);
        const int k = r.degree();
        if ((m * n) % 2 == 1) acc = -acc;
        T lb = b.lead();
        for (int i = 0; i < m - k; ++i) acc = acc * lb;
        a = std::move(b);
        b = std::move(r);
    }
}

template <class T>
T discriminant(const Poly<T>& f) {
    const int n = f.degree();
    if (n < 1) throw std::domain_error("discriminant of a constant");
    T r = resultant(f, f.derivative()) / f.lead();
    return ((n * (n - 1) / 2) % 2 == 1) ? T(-r) : r;
}

// ---- rational specialisations -------------------------------------------

using QPoly = Poly<Rat>;
using ZPolyCoeffs = std::vector<Int>;

// Primitive PRS gcd over Z, returned monic over Q.
QPoly gcd(const QPoly& a, const QPoly& b);

// f = content * primitive integer polynomial with positive leading coefficient.
Rat content(const QPoly& f);
ZPolyCoeffs primitive_integer(const QPoly& f);
QPoly from_integer(const ZPolyCoeffs& c);

QPoly qpoly(std::initializer_list<long> coeffs_low_to_high);
QPoly qpoly_from_strings(const std::vector<std::string>& coeffs_low_to_high);

bool is_squarefree(const QPoly& f);

}  // namespace rm2
