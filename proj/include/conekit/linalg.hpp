#pragma once

#include "conekit/rational.hpp"

#include <cstddef>
#include <vector>

namespace conekit {

/// Dense rational matrix, row-major.
struct QMat {
    size_t rows = 0;
    size_t cols = 0;
    std::vector<Rat> a;

    QMat() = default;
    QMat(size_t r, size_t c) : rows(r), cols(c), a(r * c, Rat(0)) {}

    Rat& at(size_t i, size_t j) { return a[i * cols + j]; }
    const Rat& at(size_t i, size_t j) const { return a[i * cols + j]; }

    static QMat from_columns(const std::vector<QVec>& cs, size_t dim);
    QVec column(size_t j) const;
    QVec row(size_t i) const;
    QMat transposed() const;

    bool operator==(const QMat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

/// In-place reduced row echelon form; returns the pivot column of each pivot row.
std::vector<size_t> rref(QMat& m);

size_t rank(const QMat& m);

/// Null space basis, one vector per free column, free columns ascending.
std::vector<QVec> kernel_basis(const QMat& m);

/// Covectors w with w^T M = 0, i.e. kernel of M^T.
std::vector<QVec> left_kernel_basis(const QMat& m);

/// Indices of the pivot columns; those original columns form a column-space basis.
std::vector<size_t> image_basis_columns(const QMat& m);

/// Coordinates of v in the column space of m, if v lies in it.
std::optional<QVec> column_span_coords(const QMat& m, const QVec& v);

bool in_column_span(const QMat& m, const QVec& v);

}  // namespace conekit
