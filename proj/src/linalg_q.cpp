#include "rm2kit/linalg_q.hpp"

namespace rm2 {

namespace {

// In-place reduced row echelon form; returns the pivot column of each pivot row.
std::vector<std::size_t> rref(QMatrix& m, std::size_t cols) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t piv = r;
        while (piv < m.size() && sgn(m[piv][c]) == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[piv], m[r]);
        Rat inv = 1 / m[r][c];
        for (auto& v : m[r]) v *= inv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || sgn(m[i][c]) == 0) continue;
            Rat f = m[i][c];
            for (std::size_t j = c; j < m[i].size(); ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

std::optional<QVector> solve_q(QMatrix a, QVector b) {
    const std::size_t cols = a.empty() ? 0 : a[0].size();
    for (std::size_t i = 0; i < a.size(); ++i) a[i].push_back(b[i]);
    auto pivots = rref(a, cols);
    for (std::size_t i = pivots.size(); i < a.size(); ++i)
        if (sgn(a[i][cols]) != 0) return std::nullopt;
    QVector x(cols);
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = a[i][cols];
    return x;
}

std::vector<QVector> nullspace_q(QMatrix a, std::size_t cols) {
    auto pivots = rref(a, cols);
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<QVector> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        QVector v(cols);
        v[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a[i][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace rm2
