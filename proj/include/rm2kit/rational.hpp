#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace rm2 {

using Rat = mpq_class;
using Int = mpz_class;

// Accepts "a", "a/b" and plain decimals such as "-1.25" or "3e-2".
Rat parse_rat(std::string_view text);

std::string to_string(const Rat& q);

inline bool is_zero(const Rat& q) { return sgn(q) == 0; }

inline Rat make_rat(long num, long den = 1) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

// Largest integer square root of |n| if n is a perfect square, else -1.
Int exact_isqrt(const Int& n);

// Returns true and sets root when q is the square of a rational.
bool rational_sqrt(const Rat& q, Rat& root);

}  // namespace rm2
