#pragma once

#include "rm2kit/poly.hpp"
#include "rm2kit/rational.hpp"

#include <complex>
#include <memory>
#include <string>
#include <vector>

namespace rm2 {

class NumberField;
using FieldRef = std::shared_ptr<const NumberField>;

// Q[t]/(m(t)) with m monic irreducible of degree 1..6.
class NumberField {
public:
    // Validates irreducibility with factor_q.
    static FieldRef make(const QPoly& min_poly, std::string name, int embedding_index = 0);
    static FieldRef rationals();

    const QPoly& min_poly() const { return min_poly_; }
    int degree() const { return min_poly_.degree(); }
    const std::string& name() const { return name_; }
    // Complex root of min_poly used for numeric evaluation of elements.
    std::complex<double> embedding() const { return embedding_; }
    const std::vector<std::complex<double>>& all_roots() const { return roots_; }

private:
    NumberField(QPoly m, std::string name, int embedding_index);
    QPoly min_poly_;
    std::string name_;
    std::vector<std::complex<double>> roots_;
    std::complex<double> embedding_;
};

// Element of a number field. A null field means a rational constant that adopts
// the field of whatever it is combined with; this keeps T(0) and T(1) usable in
// generic polynomial code.
class NFElem {
public:
    NFElem() = default;
    NFElem(int v) : c_{Rat(v)} { trim(); }
    NFElem(long v) : c_{Rat(v)} { trim(); }
    NFElem(const Rat& v) : c_{v} { trim(); }
    NFElem(FieldRef K, std::vector<Rat> coeffs);
    static NFElem generator(const FieldRef& K);

    const FieldRef& field() const { return K_; }
    const std::vector<Rat>& coeffs() const { return c_; }
    Rat coeff(int i) const;
    bool zero() const { return c_.empty(); }
    bool is_rational() const { return c_.size() <= 1; }
    Rat rational_value() const;

    NFElem& operator+=(const NFElem& o);
    NFElem& operator-=(const NFElem& o);
    NFElem& operator*=(const NFElem& o);
    NFElem& operator/=(const NFElem& o) { return *this *= o.inverse(); }
    friend NFElem operator+(NFElem a, const NFElem& b) { return a += b; }
    friend NFElem operator-(NFElem a, const NFElem& b) { return a -= b; }
    friend NFElem operator*(NFElem a, const NFElem& b) { return a *= b; }
    friend NFElem operator/(NFElem a, const NFElem& b) { return a /= b; }
    friend NFElem operator-(NFElem a) {
        for (auto& v : a.c_) v = -v;
        return a;
    }
    friend bool operator==(const NFElem& a, const NFElem& b) { return a.c_ == b.c_; }
    friend bool operator!=(const NFElem& a, const NFElem& b) { return !(a == b); }

    NFElem inverse() const;
    std::complex<double> numeric() const;
    // Image under t -> image, where image lives in some field (used for Galois action and embeddings).
    NFElem substitute_generator(const NFElem& image) const;
    QPoly as_poly() const { return QPoly(c_); }
    std::string str() const;

private:
    void trim();
    void adopt(const NFElem& o);
    FieldRef K_;
    std::vector<Rat> c_;
};

inline bool is_zero(const NFElem& a) { return a.zero(); }
inline std::string to_string(const NFElem& a) { return a.str(); }

using KPoly = Poly<NFElem>;

KPoly to_kpoly(const QPoly& p);
// Fails if some coefficient is irrational.
QPoly to_qpoly(const KPoly& p);

// Minimal polynomial over Q of an element (degree divides the field degree).
QPoly minimal_polynomial(const NFElem& a);

}  // namespace rm2
