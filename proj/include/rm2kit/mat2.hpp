#pragma once

#include "rm2kit/poly.hpp"

#include <array>
#include <string>

namespace rm2 {

// 2x2 matrix over an exact scalar; used for differential matrices.
template <class K>
struct Mat2 {
    std::array<K, 4> m{K(0), K(0), K(0), K(0)};  // row major

    Mat2() = default;
    Mat2(K a, K b, K c, K d) : m{std::move(a), std::move(b), std::move(c), std::move(d)} {}
    static Mat2 identity() { return Mat2(K(1), K(0), K(0), K(1)); }
    static Mat2 scalar(const K& s) { return Mat2(s, K(0), K(0), s); }

    const K& operator()(int i, int j) const { return m[static_cast<std::size_t>(2 * i + j)]; }
    K& operator()(int i, int j) { return m[static_cast<std::size_t>(2 * i + j)]; }

    friend Mat2 operator*(const Mat2& a, const Mat2& b) {
        return Mat2(a(0, 0) * b(0, 0) + a(0, 1) * b(1, 0), a(0, 0) * b(0, 1) + a(0, 1) * b(1, 1),
                    a(1, 0) * b(0, 0) + a(1, 1) * b(1, 0), a(1, 0) * b(0, 1) + a(1, 1) * b(1, 1));
    }
    friend Mat2 operator+(const Mat2& a, const Mat2& b) {
        return Mat2(a.m[0] + b.m[0], a.m[1] + b.m[1], a.m[2] + b.m[2], a.m[3] + b.m[3]);
    }
    friend Mat2 operator-(const Mat2& a, const Mat2& b) {
        return Mat2(a.m[0] - b.m[0], a.m[1] - b.m[1], a.m[2] - b.m[2], a.m[3] - b.m[3]);
    }
    friend Mat2 operator*(const K& s, const Mat2& a) { return Mat2(s * a.m[0], s * a.m[1], s * a.m[2], s * a.m[3]); }
    friend bool operator==(const Mat2& a, const Mat2& b) {
        for (std::size_t i = 0; i < 4; ++i)
            if (!(a.m[i] == b.m[i])) return false;
        return true;
    }
    friend bool operator!=(const Mat2& a, const Mat2& b) { return !(a == b); }

    K trace() const { return m[0] + m[3]; }
    K det() const { return m[0] * m[3] - m[1] * m[2]; }
    Mat2 transpose() const { return Mat2(m[0], m[2], m[1], m[3]); }
    bool is_scalar() const { return is_zero(m[1]) && is_zero(m[2]) && m[0] == m[3]; }

    template <class U, class F>
    Mat2<U> map(F&& f) const {
        return Mat2<U>(f(m[0]), f(m[1]), f(m[2]), f(m[3]));
    }

    std::string str() const {
        return "[[" + to_string(m[0]) + ", " + to_string(m[1]) + "], [" + to_string(m[2]) + ", " + to_string(m[3]) + "]]";
    }
};

// Monic minimal polynomial (degree 1 for scalar matrices, otherwise the characteristic polynomial).
template <class K>
Poly<K> matrix_minpoly(const Mat2<K>& a) {
    if (a.is_scalar()) return Poly<K>({K(0) - a(0, 0), K(1)});
    return Poly<K>({a.det(), K(0) - a.trace(), K(1)});
}

}  // namespace rm2
