#include "conekit/linalg.hpp"

#include <stdexcept>

namespace conekit {

QMat QMat::from_columns(const std::vector<QVec>& cs, size_t dim) {
    QMat m(dim, cs.size());
    for (size_t j = 0; j < cs.size(); ++j) {
        if (cs[j].size() != dim) throw std::invalid_argument("column dimension mismatch");
        for (size_t i = 0; i < dim; ++i) m.at(i, j) = cs[j][i];
    }
    return m;
}

QVec QMat::column(size_t j) const {
    QVec v(rows);
    for (size_t i = 0; i < rows; ++i) v[i] = at(i, j);
    return v;
}

QVec QMat::row(size_t i) const {
    QVec v(cols);
    for (size_t j = 0; j < cols; ++j) v[j] = at(i, j);
    return v;
}

QMat QMat::transposed() const {
    QMat t(cols, rows);
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
    return t;
}

std::vector<size_t> rref(QMat& m) {
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c = 0; c < m.cols && r < m.rows; ++c) {
        size_t p = r;
        while (p < m.rows && m.at(p, c) == 0) ++p;
        if (p == m.rows) continue;
        if (p != r)
            for (size_t j = 0; j < m.cols; ++j) std::swap(m.at(p, j), m.at(r, j));
        Rat inv = 1 / m.at(r, c);
        for (size_t j = c; j < m.cols; ++j) m.at(r, j) *= inv;
        for (size_t i = 0; i < m.rows; ++i) {
            if (i == r || m.at(i, c) == 0) continue;
            Rat f = m.at(i, c);
            for (size_t j = c; j < m.cols; ++j) m.at(i, j) -= f * m.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

size_t rank(const QMat& m) {
    QMat w = m;
    return rref(w).size();
}

std::vector<QVec> kernel_basis(const QMat& m) {
    QMat w = m;
    std::vector<size_t> pivots = rref(w);
    std::vector<bool> is_pivot(m.cols, false);
    for (size_t c : pivots) is_pivot[c] = true;
    std::vector<QVec> basis;
    for (size_t f = 0; f < m.cols; ++f) {
        if (is_pivot[f]) continue;
        QVec v(m.cols, Rat(0));
        v[f] = 1;
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -w.at(r, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<QVec> left_kernel_basis(const QMat& m) { return kernel_basis(m.transposed()); }

std::vector<size_t> image_basis_columns(const QMat& m) {
    QMat w = m;
    return rref(w);
}

std::optional<QVec> column_span_coords(const QMat& m, const QVec& v) {
    if (v.size() != m.rows) throw std::invalid_argument("dimension mismatch");
    QMat aug(m.rows, m.cols + 1);
    for (size_t i = 0; i < m.rows; ++i) {
        for (size_t j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols) = v[i];
    }
    std::vector<size_t> pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == m.cols) return std::nullopt;
    QVec coords(m.cols, Rat(0));
    for (size_t r = 0; r < pivots.size(); ++r) coords[pivots[r]] = aug.at(r, m.cols);
    return coords;
}

bool in_column_span(const QMat& m, const QVec& v) { return column_span_coords(m, v).has_value(); }

}  // namespace conekit
