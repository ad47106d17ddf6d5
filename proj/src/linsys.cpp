#include "conekit/linsys.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace conekit {

namespace {

// Dense Phase-I tableau. Variables are indexed 0..n_vars-1, the last column
// holds the right-hand side. Minimizes the sum of artificial variables with
// Bland's rule.
class PhaseOne {
public:
    PhaseOne(size_t n_rows, size_t n_vars) : rows_(n_rows), vars_(n_vars) {
        t_.assign(n_rows, QVec(n_vars + 1, Rat(0)));
        basis_.assign(n_rows, 0);
    }

    Rat& cell(size_t i, size_t j) { return t_[i][j]; }
    Rat& rhs(size_t i) { return t_[i][vars_]; }
    void set_basis(size_t i, size_t var) { basis_[i] = var; }
    void mark_artificial(size_t var) { artificial_.insert(var); }

    bool run() {
        for (;;) {
            // Reduced costs for Phase-I cost (1 on artificials).
            long entering = -1;
            for (size_t j = 0; j < vars_; ++j) {
                Rat d = artificial_.count(j) ? Rat(1) : Rat(0);
                for (size_t i = 0; i < rows_; ++i)
                    if (artificial_.count(basis_[i])) d -= t_[i][j];
                if (d < 0) {
                    entering = static_cast<long>(j);
                    break;  // Bland: smallest index
                }
            }
            if (entering < 0) break;
            size_t e = static_cast<size_t>(entering);
            long leave = -1;
            Rat best;
            for (size_t i = 0; i < rows_; ++i) {
                if (t_[i][e] <= 0) continue;
                Rat ratio = t_[i][vars_] / t_[i][e];
                if (leave < 0 || ratio < best ||
                    (ratio == best && basis_[i] < basis_[static_cast<size_t>(leave)])) {
                    leave = static_cast<long>(i);
                    best = ratio;
                }
            }
            if (leave < 0) throw std::logic_error("phase-one objective unbounded");
            pivot(static_cast<size_t>(leave), e);
        }
        Rat objective = 0;
        for (size_t i = 0; i < rows_; ++i)
            if (artificial_.count(basis_[i])) objective += t_[i][vars_];
        return objective == 0;
    }

    QVec basic_solution() const {
        QVec x(vars_, Rat(0));
        for (size_t i = 0; i < rows_; ++i) x[basis_[i]] = t_[i][vars_];
        return x;
    }

private:
    void pivot(size_t r, size_t e) {
        Rat inv = 1 / t_[r][e];
        for (size_t j = 0; j <= vars_; ++j) t_[r][j] *= inv;
        for (size_t i = 0; i < rows_; ++i) {
            if (i == r || t_[i][e] == 0) continue;
            Rat f = t_[i][e];
            for (size_t j = 0; j <= vars_; ++j) t_[i][j] -= f * t_[r][j];
        }
        basis_[r] = e;
    }

    size_t rows_, vars_;
    std::vector<QVec> t_;
    std::vector<size_t> basis_;
    std::set<size_t> artificial_;
};

struct EqRow {
    QVec a;   // over structural variables
    Rat b;
    long slack = -1;  // structural slack column, coefficient -1 before normalization
};

// Solve {rows as equalities, structural vars >= 0}; returns structural values.
std::optional<QVec> solve_standard(std::vector<EqRow> rows, size_t n_struct) {
    size_t n_rows = rows.size();
    // Count artificials after rhs normalization.
    std::vector<bool> needs_artificial(n_rows, false);
    size_t n_art = 0;
    for (size_t i = 0; i < n_rows; ++i) {
        EqRow& r = rows[i];
        bool negate = r.b < 0;
        if (negate) {
            for (auto& c : r.a) c = -c;
            r.b = -r.b;
        }
        // A slack with +1 coefficient can start in the basis.
        bool slack_basic = r.slack >= 0 && negate;
        if (!slack_basic) {
            needs_artificial[i] = true;
            ++n_art;
        }
    }
    PhaseOne tab(n_rows, n_struct + n_art);
    size_t art = n_struct;
    for (size_t i = 0; i < n_rows; ++i) {
        for (size_t j = 0; j < n_struct; ++j) tab.cell(i, j) = rows[i].a[j];
        tab.rhs(i) = rows[i].b;
        if (needs_artificial[i]) {
            tab.cell(i, art) = 1;
            tab.mark_artificial(art);
            tab.set_basis(i, art);
            ++art;
        } else {
            tab.set_basis(i, static_cast<size_t>(rows[i].slack));
        }
    }
    if (!tab.run()) return std::nullopt;
    QVec full = tab.basic_solution();
    full.resize(n_struct);
    return full;
}

}  // namespace

std::optional<QVec> nonneg_solve(const std::vector<QVec>& cols, const QVec& rhs) {
    size_t m = rhs.size();
    std::vector<EqRow> rows(m);
    for (size_t i = 0; i < m; ++i) {
        rows[i].a.assign(cols.size(), Rat(0));
        for (size_t j = 0; j < cols.size(); ++j) rows[i].a[j] = cols[j][i];
        rows[i].b = rhs[i];
    }
    return solve_standard(std::move(rows), cols.size());
}

std::optional<QVec> feasible(const LinearSystem& sys) {
    for (const auto& r : sys.eq)
        if (r.coeffs.size() != sys.dim) throw std::invalid_argument("row dimension mismatch");
    for (const auto& r : sys.ge)
        if (r.coeffs.size() != sys.dim) throw std::invalid_argument("row dimension mismatch");
    for (const auto& r : sys.gt)
        if (r.coeffs.size() != sys.dim) throw std::invalid_argument("row dimension mismatch");

    std::vector<LinRow> ge = sys.ge;
    if (!sys.gt.empty()) {
        auto homogeneous = [](const std::vector<LinRow>& rows) {
            for (const auto& r : rows)
                if (r.rhs != 0) return false;
            return true;
        };
        if (!homogeneous(sys.eq) || !homogeneous(sys.ge) || !homogeneous(sys.gt))
            throw std::invalid_argument(
                "strict rows require a homogeneous system; cannot normalize a^T x > 0 to >= 1");
        for (const auto& r : sys.gt) ge.push_back({r.coeffs, Rat(1)});
    }

    // x = u - w with u, w >= 0, one slack per inequality.
    size_t d = sys.dim;
    size_t n_ge = ge.size();
    size_t n_struct = 2 * d + n_ge;
    std::vector<EqRow> rows;
    rows.reserve(sys.eq.size() + n_ge);
    for (const auto& r : sys.eq) {
        EqRow e;
        e.a.assign(n_struct, Rat(0));
        for (size_t j = 0; j < d; ++j) {
            e.a[j] = r.coeffs[j];
            e.a[d + j] = -r.coeffs[j];
        }
        e.b = r.rhs;
        rows.push_back(std::move(e));
    }
    for (size_t k = 0; k < n_ge; ++k) {
        EqRow e;
        e.a.assign(n_struct, Rat(0));
        for (size_t j = 0; j < d; ++j) {
            e.a[j] = ge[k].coeffs[j];
            e.a[d + j] = -ge[k].coeffs[j];
        }
        e.a[2 * d + k] = -1;
        e.slack = static_cast<long>(2 * d + k);
        e.b = ge[k].rhs;
        rows.push_back(std::move(e));
    }
    auto sol = solve_standard(std::move(rows), n_struct);
    if (!sol) return std::nullopt;
    QVec x(d);
    for (size_t j = 0; j < d; ++j) x[j] = (*sol)[j] - (*sol)[d + j];

    // Witnesses must satisfy every row exactly.
    for (const auto& r : sys.eq)
        if (dot(r.coeffs, x) != r.rhs) throw std::logic_error("simplex witness violates equality");
    for (const auto& r : sys.ge)
        if (dot(r.coeffs, x) < r.rhs) throw std::logic_error("simplex witness violates inequality");
    for (const auto& r : sys.gt)
        if (dot(r.coeffs, x) <= 0) throw std::logic_error("simplex witness violates strict row");
    return x;
}

bool fm_feasible(std::vector<FMRow> rows, size_t dim) {
    for (size_t var = 0; var < dim; ++var) {
        std::vector<FMRow> pos, neg, rest;
        for (auto& r : rows) {
            if (r.a[var] > 0)
                pos.push_back(std::move(r));
            else if (r.a[var] < 0)
                neg.push_back(std::move(r));
            else
                rest.push_back(std::move(r));
        }
        std::vector<FMRow> next;
        std::map<std::string, size_t> seen;  // primitive row -> index in next
        bool contradiction = false;
        auto push = [&](QVec a, bool strict) {
            a = primitive(a);
            if (is_zero(a)) {
                if (strict) contradiction = true;  // derived 0 > 0
                return;
            }
            std::string key = vec_to_string(a);
            auto [it, fresh] = seen.emplace(key, next.size());
            if (fresh)
                next.push_back({std::move(a), strict});
            else
                next[it->second].strict = next[it->second].strict || strict;
        };
        for (auto& r : rest) push(std::move(r.a), r.strict);
        for (const auto& p : pos) {
            for (const auto& n : neg) {
                QVec combined = vec_sub(vec_scale(-n.a[var], p.a), vec_scale(-p.a[var], n.a));
                push(std::move(combined), p.strict || n.strict);
                if (contradiction) return false;
            }
        }
        if (contradiction) return false;
        rows = std::move(next);
    }
    return true;
}

}  // namespace conekit
