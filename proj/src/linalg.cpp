#include "gmforge/linalg.hpp"

namespace gmforge::linalg {

std::vector<int> row_reduce(Matrix& m, const PrimeField& F) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    const int rows = int(m.size()), cols = int(m[0].size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int sel = -1;
        for (int i = r; i < rows; ++i)
            if (m[i][c] != 0) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        std::swap(m[r], m[sel]);
        Coeff inv = F.inv(m[r][c]);
        for (int k = c; k < cols; ++k) m[r][k] = F.mul(m[r][k], inv);
        for (int i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Coeff f = m[i][c];
            for (int k = c; k < cols; ++k) m[i][k] = F.sub(m[i][k], F.mul(f, m[r][k]));
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

int rank(Matrix m, const PrimeField& F) { return int(row_reduce(m, F).size()); }

Matrix kernel_basis(Matrix m, const PrimeField& F) {
    if (m.empty()) return {};
    const int cols = int(m[0].size());
    std::vector<int> pivots = row_reduce(m, F);
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivots) is_pivot[c] = true;
    Matrix basis;
    for (int free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Coeff> v(cols, 0);
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = F.neg(m[r][free]);
        basis.push_back(std::move(v));
    }
    return basis;
}

Coeff det(Matrix m, const PrimeField& F) {
    const int n = int(m.size());
    Coeff d = 1;
    for (int c = 0; c < n; ++c) {
        int sel = -1;
        for (int i = c; i < n; ++i)
            if (m[i][c] != 0) {
                sel = i;
                break;
            }
        if (sel < 0) return 0;
        if (sel != c) {
            std::swap(m[c], m[sel]);
            d = F.neg(d);
        }
        d = F.mul(d, m[c][c]);
        Coeff inv = F.inv(m[c][c]);
        for (int i = c + 1; i < n; ++i) {
            if (m[i][c] == 0) continue;
            Coeff f = F.mul(m[i][c], inv);
            for (int k = c; k < n; ++k) m[i][k] = F.sub(m[i][k], F.mul(f, m[c][k]));
        }
    }
    return d;
}

bool is_invertible(const Matrix& m, const PrimeField& F) { return det(m, F) != 0; }

Matrix inverse(Matrix m, const PrimeField& F) {
    const int n = int(m.size());
    for (int i = 0; i < n; ++i) {
        m[i].resize(2 * n, 0);
        m[i][n + i] = 1;
    }
    auto pivots = row_reduce(m, F);
    if (int(pivots.size()) != n) throw StructuralError("matrix not invertible");
    Matrix inv(n, std::vector<Coeff>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv[i][j] = m[i][n + j];
    return inv;
}

Matrix identity(int n) {
    Matrix m(n, std::vector<Coeff>(n, 0));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

}  // namespace gmforge::linalg
