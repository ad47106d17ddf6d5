#pragma once

#include "conekit/linalg.hpp"
#include "conekit/linsys.hpp"
#include "conekit/rational.hpp"

#include <optional>
#include <vector>

namespace conekit {

/// Finitely generated cone. After extreme_filter no generator is redundant.
struct ConeRep {
    size_t ambient_dim = 0;
    std::vector<QVec> generators;
};

/// Symmetric vertex set of a candidate norm ball.
struct BallRep {
    size_t ambient_dim = 0;
    std::vector<QVec> vertices;

    bool is_symmetric() const;
};

enum class FilterMode { Conic, Convex };

/// Nonnegative-combination membership; returns the coefficients when inside.
std::optional<QVec> conic_member(const ConeRep& cone, const QVec& v);

/// Convex-combination membership against the vertex set.
std::optional<QVec> hull_member(const BallRep& ball, const QVec& v);

std::optional<QVec> conic_member(const std::vector<QVec>& generators, const QVec& v);
std::optional<QVec> hull_member(const std::vector<QVec>& vertices, const QVec& v);

/// Remove vectors generable from the rest. Conic mode also folds together
/// positive multiples, keeping the first occurrence. The generated cone or
/// hull is unchanged; result order follows input order.
std::vector<QVec> extreme_filter(const std::vector<QVec>& points, FilterMode mode);

/// Variant reporting which input positions were kept.
std::vector<size_t> extreme_filter_indices(const std::vector<QVec>& points, FilterMode mode);

/// Extreme rays of {t : a^T t >= 0 for every a in halfspaces} by iterative
/// halfspace insertion starting from all of R^dim.
std::vector<QVec> dd_rays(std::vector<QVec> halfspaces, size_t dim);

/// Dual cone {x : x^T g >= 0 for all generators g}. The dual of the zero cone
/// is all of R^n, returned as the 2n signed standard basis vectors.
ConeRep dual_cone(const ConeRep& cone);

/// Vertices of the polar body {y in span(B) : y^T b <= 1 for all vertices b}.
/// Requires a symmetric vertex set spanning its affine hull through 0.
BallRep polar_ball(const BallRep& ball);

}  // namespace conekit
