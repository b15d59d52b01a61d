#pragma once

#include "rm2kit/number_field.hpp"
#include "rm2kit/quad_ext.hpp"

#include <array>

namespace rm2 {

using TowerElem = QuadExt<NFElem>;

// Roots of a monic cubic over Q, written in the tower K1(sqrt(D1)) where
// K1 = Q(alpha0) and alpha1, alpha2 are the roots of the quadratic cofactor.
// When the cofactor splits over K1 the radicand part is unused (all roots have
// zero radical component).
struct CubicRoots {
    FieldRef k1;            // null when alpha0 is rational
    NFElem alpha0;
    NFElem radicand;        // D1 = (alpha1 - alpha2)^2
    bool split_over_k1 = false;
    std::array<TowerElem, 3> alpha;
};

CubicRoots split_cubic(const QPoly& monic_cubic);

// Embeds an element of K1 into the tower with the right radicand attached.
TowerElem tower(const CubicRoots& r, const NFElem& v);

}  // namespace rm2
