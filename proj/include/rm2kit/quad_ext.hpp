#pragma once

#include <stdexcept>
#include <string>

namespace rm2 {

// u + v*sqrt(d) over a base field K, with d a fixed element of K. When d is a
// square in K every element used is expected to have v = 0; callers that build
// such towers keep it that way.
template <class K>
class QuadExt {
public:
    QuadExt() : u_(0), v_(0), d_(0) {}
    QuadExt(int c) : u_(c), v_(0), d_(0) {}
    QuadExt(const K& u) : u_(u), v_(0), d_(0) {}
    QuadExt(const K& u, const K& v, const K& d) : u_(u), v_(v), d_(d) {}

    const K& re() const { return u_; }
    const K& im() const { return v_; }
    const K& radicand() const { return d_; }
    bool in_base() const { return is_zero(v_); }

    friend QuadExt operator+(const QuadExt& a, const QuadExt& b) { return {a.u_ + b.u_, a.v_ + b.v_, pick(a, b)}; }
    friend QuadExt operator-(const QuadExt& a, const QuadExt& b) { return {a.u_ - b.u_, a.v_ - b.v_, pick(a, b)}; }
    friend QuadExt operator-(const QuadExt& a) { return {-a.u_, -a.v_, a.d_}; }
    friend QuadExt operator*(const QuadExt& a, const QuadExt& b) {
        const K d = pick(a, b);
        if (a.in_base()) return {a.u_ * b.u_, a.u_ * b.v_, d};
        if (b.in_base()) return {a.u_ * b.u_, a.v_ * b.u_, d};
        return {a.u_ * b.u_ + a.v_ * b.v_ * d, a.u_ * b.v_ + a.v_ * b.u_, d};
    }
    QuadExt conj() const { return {u_, -v_, d_}; }
    K norm() const { return u_ * u_ - v_ * v_ * d_; }
    QuadExt inverse() const {
        if (in_base()) {
            if (is_zero(u_)) throw std::domain_error("inverse of zero");
            return {K(1) / u_, K(0), d_};
        }
        K n = norm();
        if (is_zero(n)) throw std::domain_error("zero divisor in quadratic extension");
        return {u_ / n, -v_ / n, d_};
    }
    friend QuadExt operator/(const QuadExt& a, const QuadExt& b) { return a * b.inverse(); }
    QuadExt& operator+=(const QuadExt& o) { return *this = *this + o; }
    QuadExt& operator-=(const QuadExt& o) { return *this = *this - o; }
    QuadExt& operator*=(const QuadExt& o) { return *this = *this * o; }
    QuadExt& operator/=(const QuadExt& o) { return *this = *this / o; }
    friend bool operator==(const QuadExt& a, const QuadExt& b) { return a.u_ == b.u_ && a.v_ == b.v_; }
    friend bool operator!=(const QuadExt& a, const QuadExt& b) { return !(a == b); }

    K descend() const {
        if (!in_base()) throw std::domain_error("element does not lie in the base field");
        return u_;
    }

private:
    static K pick(const QuadExt& a, const QuadExt& b) { return is_zero(a.d_) ? b.d_ : a.d_; }
    K u_, v_, d_;
};

template <class K>
bool is_zero(const QuadExt<K>& a) { return is_zero(a.re()) && is_zero(a.im()); }

template <class K>
std::string to_string(const QuadExt<K>& a) {
    if (a.in_base()) return to_string(a.re());
    return "(" + to_string(a.re()) + ") + (" + to_string(a.im()) + ")*sqrt(" + to_string(a.radicand()) + ")";
}

}  // namespace rm2
