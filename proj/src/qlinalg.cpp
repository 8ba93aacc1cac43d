#include "hyinv/qlinalg.hpp"

namespace hyinv {

std::vector<int> rref(QMatrix& m) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    std::size_t rows = m.size(), cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pivot = r;
        while (pivot < rows && m[pivot][c].is_zero()) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[r], m[pivot]);
        Rational inv = m[r][c].inverse();
        for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c].is_zero()) continue;
            Rational f = m[i][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(static_cast<int>(c));
        ++r;
    }
    return pivots;
}

QMatrix kernel_basis(const QMatrix& m) {
    if (m.empty()) return {};
    std::size_t cols = m[0].size();
    QMatrix a = m;
    std::vector<int> pivots = rref(a);
    std::vector<bool> is_pivot(cols, false);
    for (int p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;
    QMatrix basis;
    for (std::size_t free_col = 0; free_col < cols; ++free_col) {
        if (is_pivot[free_col]) continue;
        std::vector<Rational> v(cols);
        v[free_col] = Rational(1);
        for (std::size_t pi = 0; pi < pivots.size(); ++pi) {
            v[static_cast<std::size_t>(pivots[pi])] = -a[pi][free_col];
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

bool solve_linear(const QMatrix& m, const std::vector<Rational>& b, std::vector<Rational>& x) {
    if (m.empty()) {
        for (const auto& v : b)
            if (!v.is_zero()) return false;
        x.clear();
        return true;
    }
    std::size_t cols = m[0].size();
    QMatrix aug = m;
    for (std::size_t i = 0; i < m.size(); ++i) aug[i].push_back(b[i]);
    std::vector<int> pivots = rref(aug);
    x.assign(cols, Rational(0));
    for (std::size_t pi = 0; pi < pivots.size(); ++pi) {
        if (pivots[pi] == static_cast<int>(cols)) return false; // pivot in rhs
        x[static_cast<std::size_t>(pivots[pi])] = aug[pi][cols];
    }
    return true;
}

int rank(QMatrix m) { return static_cast<int>(rref(m).size()); }

} // namespace hyinv
