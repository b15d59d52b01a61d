#pragma once

#include "rm2kit/poly.hpp"

#include <cstdint>
#include <vector>

namespace rm2 {

struct Factor {
    QPoly poly;  // primitive integer polynomial with positive leading coefficient
    int multiplicity;
};

struct Factorization {
    Rat unit;  // f = unit * prod poly^multiplicity
    std::vector<Factor> factors;
};

// Factorisation over Q by reduction modulo a good prime, Hensel lifting and
// recombination of the lifted modular factors.
Factorization factor_q(const QPoly& f);

bool is_irreducible_q(const QPoly& f);

// Squarefree decomposition (Yun); returns pairs (monic squarefree part, multiplicity).
std::vector<std::pair<QPoly, int>> squarefree_decomposition(const QPoly& f);

// --- modular helpers, exposed for tests -----------------------------------
using ModPoly = std::vector<std::uint64_t>;  // low to high, trimmed

// Monic irreducible factors of a squarefree polynomial over F_p.
std::vector<ModPoly> factor_mod_p(const ModPoly& f, std::uint64_t p);
bool irreducible_mod_p(const QPoly& f, std::uint64_t p);
bool is_prime_u64(std::uint64_t n);

}  // namespace rm2
