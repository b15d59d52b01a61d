#pragma once

#include "rm2kit/poly.hpp"

namespace rm2 {

// num/den in lowest terms with a monic denominator.
template <class T>
class RatFn {
public:
    RatFn() : den_(T(1)) {}
    RatFn(int c) : num_(T(c)), den_(T(1)) {}
    RatFn(const T& c) : num_(c), den_(T(1)) {}
    RatFn(Poly<T> p) : num_(std::move(p)), den_(T(1)) {}
    RatFn(Poly<T> n, Poly<T> d) : num_(std::move(n)), den_(std::move(d)) { normalise(); }

    const Poly<T>& num() const { return num_; }
    const Poly<T>& den() const { return den_; }
    bool zero() const { return num_.zero(); }
    bool is_poly() const { return den_.degree() == 0; }
    Poly<T> as_poly() const {
        if (!is_poly()) throw std::domain_error("rational function is not a polynomial");
        return num_;
    }

    friend RatFn operator+(const RatFn& a, const RatFn& b) { return combine(a, b, 1); }
    friend RatFn operator-(const RatFn& a, const RatFn& b) { return combine(a, b, -1); }
    friend RatFn operator-(const RatFn& a) {
        RatFn r = a;
        r.num_ = -r.num_;
        return r;
    }
    friend RatFn operator*(const RatFn& a, const RatFn& b) {
        if (a.zero() || b.zero()) return RatFn();
        if (a.is_poly() && b.is_poly()) {
            RatFn r;
            r.num_ = a.num_ * b.num_;
            return r;
        }
        return RatFn(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFn operator/(const RatFn& a, const RatFn& b) {
        if (b.zero()) throw std::domain_error("rational function division by zero");
        return RatFn(a.num_ * b.den_, a.den_ * b.num_);
    }
    RatFn& operator+=(const RatFn& o) { return *this = *this + o; }
    RatFn& operator-=(const RatFn& o) { return *this = *this - o; }
    RatFn& operator*=(const RatFn& o) { return *this = *this * o; }
    RatFn& operator/=(const RatFn& o) { return *this = *this / o; }
    friend bool operator==(const RatFn& a, const RatFn& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator!=(const RatFn& a, const RatFn& b) { return !(a == b); }

    RatFn derivative() const {
        return RatFn(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
    }

    template <class U>
    U eval(const U& x) const {
        U d = den_.template eval<U>(x);
        if (is_zero(d)) throw std::domain_error("pole of rational function");
        return num_.template eval<U>(x) / d;
    }

    std::string str(const std::string& var = "x") const {
        if (is_poly()) return num_.str(var);
        return "(" + num_.str(var) + ")/(" + den_.str(var) + ")";
    }

private:
    static RatFn combine(const RatFn& a, const RatFn& b, int sign) {
        const T sg(sign);
        if (a.den_ == b.den_) return RatFn(a.num_ + b.num_ * sg, a.den_);
        if (a.is_poly() && b.is_poly()) {
            RatFn r;
            r.num_ = a.num_ + b.num_ * sg;
            return r;
        }
        Poly<T> g = gcd(a.den_, b.den_);
        if (g.degree() == 0) return RatFn(a.num_ * b.den_ + b.num_ * a.den_ * sg, a.den_ * b.den_);
        Poly<T> bd = b.den_ / g, ad = a.den_ / g;
        return RatFn(a.num_ * bd + b.num_ * ad * sg, a.den_ * bd);
    }

    void normalise() {
        if (den_.zero()) throw std::domain_error("zero denominator");
        if (num_.zero()) {
            den_ = Poly<T>(T(1));
            return;
        }
        if (den_.degree() > 0) {
            Poly<T> g = gcd(num_, den_);
            if (g.degree() > 0) {
                num_ = num_ / g;
                den_ = den_ / g;
            }
        }
        T l = den_.lead();
        if (!(l == T(1))) {
            T inv = T(1) / l;
            num_ = num_ * inv;
            den_ = den_ * inv;
        }
    }
    Poly<T> num_, den_;
};

template <class T>
bool is_zero(const RatFn<T>& f) { return f.zero(); }

template <class T>
std::string to_string(const RatFn<T>& f) { return f.str(); }

}  // namespace rm2
