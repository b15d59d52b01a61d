#pragma once

#include "rm2kit/rational.hpp"

#include <optional>
#include <vector>

namespace rm2 {

using QVector = std::vector<Rat>;
using QMatrix = std::vector<QVector>;  // row major

// One solution of A v = b, or nullopt when inconsistent.
std::optional<QVector> solve_q(QMatrix a, QVector b);

// Basis of {v : A v = 0}.
std::vector<QVector> nullspace_q(QMatrix a, std::size_t cols);

}  // namespace rm2
