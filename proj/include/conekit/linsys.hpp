#pragma once

#include "conekit/rational.hpp"

#include <optional>
#include <vector>

namespace conekit {

struct LinRow {
    QVec coeffs;
    Rat rhs;
};

/// Mixed system a^T x = b, a^T x >= b, a^T x > b over one ambient dimension.
struct LinearSystem {
    size_t dim = 0;
    std::vector<LinRow> eq;
    std::vector<LinRow> ge;
    std::vector<LinRow> gt;

    LinearSystem() = default;
    explicit LinearSystem(size_t d) : dim(d) {}

    void add_eq(QVec a, Rat b = Rat(0)) { eq.push_back({std::move(a), std::move(b)}); }
    void add_ge(QVec a, Rat b = Rat(0)) { ge.push_back({std::move(a), std::move(b)}); }
    void add_gt(QVec a) { gt.push_back({std::move(a), Rat(0)}); }
};

/// Exact feasibility with witness. Strict rows are only accepted in fully
/// homogeneous systems (every rhs zero), where a^T x > 0 can be normalized to
/// a^T x >= 1; otherwise throws std::invalid_argument.
std::optional<QVec> feasible(const LinearSystem& sys);

/// Phase-I simplex over nonnegative variables: find x >= 0 with A x = b,
/// or nothing. Columns of `cols` are the constraint matrix columns.
std::optional<QVec> nonneg_solve(const std::vector<QVec>& cols, const QVec& rhs);

/// One homogeneous half-space constraint for Fourier-Motzkin: a^T t >= 0,
/// strict when `strict` is set.
struct FMRow {
    QVec a;
    bool strict = false;
};

/// Exact Fourier-Motzkin feasibility for homogeneous systems with strict and
/// weak rows. Decides whether some t satisfies every row.
bool fm_feasible(std::vector<FMRow> rows, size_t dim);

}  // namespace conekit
