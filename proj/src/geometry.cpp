#include "conekit/geometry.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace conekit {

bool BallRep::is_symmetric() const {
    std::map<std::string, int> count;
    for (const auto& v : vertices) ++count[vec_to_string(v)];
    for (const auto& v : vertices) {
        auto it = count.find(vec_to_string(vec_neg(v)));
        if (it == count.end()) return false;
    }
    return true;
}

std::optional<QVec> conic_member(const std::vector<QVec>& generators, const QVec& v) {
    if (is_zero(v)) return QVec(generators.size(), Rat(0));
    if (generators.empty()) return std::nullopt;
    return nonneg_solve(generators, v);
}

std::optional<QVec> conic_member(const ConeRep& cone, const QVec& v) {
    if (v.size() != cone.ambient_dim) throw std::invalid_argument("dimension mismatch");
    return conic_member(cone.generators, v);
}

std::optional<QVec> hull_member(const std::vector<QVec>& vertices, const QVec& v) {
    if (vertices.empty()) return std::nullopt;
    size_t dim = vertices[0].size();
    // Columns (v_i, 1), target (v, 1): convex coefficients.
    std::vector<QVec> cols;
    cols.reserve(vertices.size());
    for (const auto& w : vertices) {
        QVec c = w;
        c.push_back(Rat(1));
        cols.push_back(std::move(c));
    }
    QVec target = v;
    target.push_back(Rat(1));
    (void)dim;
    return nonneg_solve(cols, target);
}

std::optional<QVec> hull_member(const BallRep& ball, const QVec& v) {
    if (v.size() != ball.ambient_dim) throw std::invalid_argument("dimension mismatch");
    return hull_member(ball.vertices, v);
}

std::vector<size_t> extreme_filter_indices(const std::vector<QVec>& points, FilterMode mode) {
    std::vector<size_t> kept;
    std::vector<char> removed(points.size(), 0);
    if (mode == FilterMode::Conic) {
        // Fold positive multiples onto the first representative of each ray.
        std::map<std::string, size_t> rays;
        for (size_t i = 0; i < points.size(); ++i) {
            if (is_zero(points[i])) throw std::invalid_argument("zero vector is not a generator");
            std::string key = vec_to_string(primitive(points[i]));
            if (!rays.emplace(key, i).second) removed[i] = 1;
        }
    } else {
        std::map<std::string, size_t> seen;
        for (size_t i = 0; i < points.size(); ++i)
            if (!seen.emplace(vec_to_string(points[i]), i).second) removed[i] = 1;
    }
    for (size_t i = 0; i < points.size(); ++i) {
        if (removed[i]) continue;
        std::vector<QVec> others;
        for (size_t j = 0; j < points.size(); ++j)
            if (j != i && !removed[j]) others.push_back(points[j]);
        bool redundant;
        if (mode == FilterMode::Conic)
            redundant = conic_member(others, points[i]).has_value();
        else
            redundant = hull_member(others, points[i]).has_value();
        if (redundant) removed[i] = 1;
    }
    for (size_t i = 0; i < points.size(); ++i)
        if (!removed[i]) kept.push_back(i);
    return kept;
}

std::vector<QVec> extreme_filter(const std::vector<QVec>& points, FilterMode mode) {
    std::vector<QVec> out;
    for (size_t i : extreme_filter_indices(points, mode)) out.push_back(points[i]);
    return out;
}

std::vector<QVec> dd_rays(std::vector<QVec> halfspaces, size_t dim) {
    // Deterministic insertion order, duplicates folded at ray level.
    for (auto& h : halfspaces) h = primitive(h);
    std::sort(halfspaces.begin(), halfspaces.end(), [](const QVec& a, const QVec& b) {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    });
    halfspaces.erase(std::unique(halfspaces.begin(), halfspaces.end()), halfspaces.end());

    std::vector<QVec> rays;
    for (size_t i = 0; i < dim; ++i) {
        QVec e(dim, Rat(0));
        e[i] = 1;
        rays.push_back(e);
        e[i] = -1;
        rays.push_back(e);
    }
    for (const auto& h : halfspaces) {
        if (is_zero(h)) continue;
        std::vector<QVec> pos, zero, neg;
        std::vector<Rat> pos_val, neg_val;
        for (const auto& r : rays) {
            Rat v = dot(h, r);
            if (v > 0) {
                pos.push_back(r);
                pos_val.push_back(v);
            } else if (v < 0) {
                neg.push_back(r);
                neg_val.push_back(v);
            } else {
                zero.push_back(r);
            }
        }
        std::vector<QVec> next;
        for (auto& r : pos) next.push_back(std::move(r));
        for (auto& r : zero) next.push_back(std::move(r));
        for (size_t i = 0; i < pos.size(); ++i)
            for (size_t j = 0; j < neg.size(); ++j) {
                QVec w = vec_add(vec_scale(pos_val[i], neg[j]), vec_scale(-neg_val[j], next[i]));
                w = primitive(w);
                if (!is_zero(w)) next.push_back(std::move(w));
            }
        if (next.empty()) return {};
        rays = extreme_filter(next, FilterMode::Conic);
    }
    return rays;
}

ConeRep dual_cone(const ConeRep& cone) {
    ConeRep out;
    out.ambient_dim = cone.ambient_dim;
    out.generators = dd_rays(cone.generators, cone.ambient_dim);
    return out;
}

BallRep polar_ball(const BallRep& ball) {
    if (ball.vertices.empty()) throw std::invalid_argument("polar of an empty ball");
    if (!ball.is_symmetric()) throw std::invalid_argument("polar requires a symmetric vertex set");
    size_t n = ball.ambient_dim;
    QMat vm = QMat::from_columns(ball.vertices, n);
    std::vector<size_t> basis_cols = image_basis_columns(vm);
    size_t d = basis_cols.size();
    QMat basis(n, d);
    for (size_t j = 0; j < d; ++j)
        for (size_t i = 0; i < n; ++i) basis.at(i, j) = vm.at(i, basis_cols[j]);

    // Lifted cone over (t, tau): for y = B t the polar condition <y, v_i> <= tau
    // reads <B^T v_i, t> <= tau. Rays with tau > 0 are polar vertices.
    std::vector<QVec> halfspaces;
    for (const auto& v : ball.vertices) {
        if (!in_column_span(basis, v))
            throw std::invalid_argument("ball vertex outside its own span basis");
        QVec row(d + 1, Rat(0));
        for (size_t j = 0; j < d; ++j) row[j] = -dot(basis.column(j), v);
        row[d] = 1;
        halfspaces.push_back(std::move(row));
    }
    std::vector<QVec> rays = dd_rays(halfspaces, d + 1);
    BallRep out;
    out.ambient_dim = n;
    for (const auto& r : rays) {
        if (r[d] == 0) {
            if (!is_zero(r)) throw std::invalid_argument("polar body is unbounded");
            continue;
        }
        if (r[d] < 0) continue;  // tau >= 0 half only
        QVec t(d);
        for (size_t j = 0; j < d; ++j) t[j] = r[j] / r[d];
        QVec y(n, Rat(0));
        for (size_t j = 0; j < d; ++j)
            for (size_t i = 0; i < n; ++i) y[i] += basis.at(i, j) * t[j];
        out.vertices.push_back(std::move(y));
    }
    out.vertices = extreme_filter(out.vertices, FilterMode::Convex);
    return out;
}

}  // namespace conekit
