#include "rm2kit/splitting_field.hpp"

#include "rm2kit/factor.hpp"

#include <optional>
#include <stdexcept>

namespace rm2 {

CubicRoots split_cubic(const QPoly& cubic) {
    if (cubic.degree() != 3 || cubic.lead() != 1) throw std::invalid_argument("expected a monic cubic");
    CubicRoots out;
    auto fac = factor_q(cubic);
    QPoly linear;
    for (const auto& f : fac.factors)
        if (f.poly.degree() == 1) linear = f.poly;
    if (linear.zero()) {
        out.k1 = NumberField::make(cubic, "a", 0);
        out.alpha0 = NFElem::generator(out.k1);
    } else {
        out.alpha0 = NFElem(Rat(-linear.coeff(0) / linear.coeff(1)));
    }
    const NFElem A(cubic.coeff(2)), B(cubic.coeff(1));
    const NFElem& a0 = out.alpha0;
    NFElem e1 = NFElem(0) - A - a0;
    NFElem e2 = a0 * a0 + A * a0 + B;
    out.radicand = e1 * e1 - NFElem(4) * e2;
    const NFElem half(make_rat(1, 2));

    std::optional<NFElem> delta;
    if (out.radicand.is_rational()) {
        Rat r;
        if (rational_sqrt(out.radicand.rational_value(), r)) delta = NFElem(r);
    } else {
        Rat disc = discriminant(cubic), r;
        if (rational_sqrt(disc, r)) {
            NFElem fprime = NFElem(3) * a0 * a0 + NFElem(2) * A * a0 + B;
            delta = NFElem(r) / fprime;
            if (!(*delta * *delta == out.radicand)) throw std::logic_error("cyclic cubic root difference check failed");
        }
    }
    out.alpha[0] = TowerElem(a0, NFElem(0), out.radicand);
    if (delta) {
        out.split_over_k1 = true;
        out.alpha[1] = TowerElem((e1 + *delta) * half, NFElem(0), out.radicand);
        out.alpha[2] = TowerElem((e1 - *delta) * half, NFElem(0), out.radicand);
    } else {
        out.alpha[1] = TowerElem(e1 * half, half, out.radicand);
        out.alpha[2] = TowerElem(e1 * half, NFElem(0) - half, out.radicand);
    }
    return out;
}

TowerElem tower(const CubicRoots& r, const NFElem& v) { return TowerElem(v, NFElem(0), r.radicand); }

}  // namespace rm2
