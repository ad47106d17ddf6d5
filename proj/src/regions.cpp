#include "conekit/regions.hpp"

#include "conekit/geometry.hpp"
#include "conekit/linsys.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <tuple>

namespace conekit {

RateRegion classify(const QVec& v, const Reaction& r) {
    if (v.size() != r.gamma.size()) throw std::invalid_argument("dimension mismatch");
    bool some_pos = false, some_neg = false;
    for (size_t j : r.kinetic_support()) {
        int s = sgn(v[j]) * sgn(r.gamma[j]);
        if (s > 0) some_pos = true;
        if (s < 0) some_neg = true;
    }
    if (some_pos && some_neg) return RateRegion::Mixed;
    if (some_pos) return RateRegion::NegativeOnly;
    if (some_neg) return RateRegion::PositiveOnly;
    return RateRegion::Zero;
}

RateRegion mirror(RateRegion t) {
    switch (t) {
        case RateRegion::NegativeOnly: return RateRegion::PositiveOnly;
        case RateRegion::PositiveOnly: return RateRegion::NegativeOnly;
        default: return t;
    }
}

std::optional<QVec> kinetic_kernel_witness(const ReactionNetwork& net, const QVec& v) {
    size_t m = net.reaction_count();
    size_t n = net.species_count();
    LinearSystem sys(m);
    QMat gamma = net.stoichiometric_matrix();
    for (size_t i = 0; i < n; ++i) sys.add_eq(gamma.row(i));
    for (size_t i = 0; i < m; ++i) {
        QVec unit(m, Rat(0));
        unit[i] = 1;
        switch (classify(v, net.reactions[i])) {
            case RateRegion::NegativeOnly: sys.add_gt(vec_neg(unit)); break;
            case RateRegion::PositiveOnly: sys.add_gt(unit); break;
            case RateRegion::Zero: sys.add_eq(unit); break;
            case RateRegion::Mixed: break;
        }
    }
    return feasible(sys);
}

namespace {

// Feasibility of {e in ker(columns), sign constraint per coordinate} by
// Fourier-Motzkin over kernel coordinates. Constraint codes: -1 strictly
// negative, +1 strictly positive, 0 forced zero, 2 free.
bool signed_kernel_feasible(const QMat& matrix, const std::vector<int>& constraint) {
    size_t m = matrix.cols;
    std::vector<QVec> kernel = kernel_basis(matrix);
    size_t k = kernel.size();
    bool any_strict = false;
    for (int c : constraint) any_strict |= (c == 1 || c == -1);
    if (!any_strict) {
        // e = 0 satisfies everything that is left.
        return true;
    }
    if (k == 0) return false;
    std::vector<FMRow> rows;
    for (size_t i = 0; i < m; ++i) {
        if (constraint[i] == 2) continue;
        QVec row(k);
        for (size_t c = 0; c < k; ++c) row[c] = kernel[c][i];
        if (constraint[i] == 0) {
            rows.push_back({row, false});
            rows.push_back({vec_neg(row), false});
        } else if (constraint[i] == 1) {
            rows.push_back({std::move(row), true});
        } else {
            rows.push_back({vec_neg(row), true});
        }
    }
    return fm_feasible(std::move(rows), k);
}

int region_constraint(RateRegion t) {
    switch (t) {
        case RateRegion::NegativeOnly: return -1;
        case RateRegion::PositiveOnly: return 1;
        case RateRegion::Zero: return 0;
        default: return 2;
    }
}

}  // namespace

bool kinetic_kernel_member(const ReactionNetwork& net, const QVec& v) {
    size_t m = net.reaction_count();
    std::vector<int> constraint(m);
    for (size_t i = 0; i < m; ++i)
        constraint[i] = region_constraint(classify(v, net.reactions[i]));
    return signed_kernel_feasible(net.stoichiometric_matrix(), constraint);
}

bool is_concordant(const ReactionNetwork& net, size_t cap) {
    size_t n = net.species_count();
    size_t m = net.reaction_count();
    if (n > cap) throw ResourceLimitError("species count exceeds concordance enumeration cap");
    QMat gamma = net.stoichiometric_matrix();
    std::vector<size_t> pivot_cols = image_basis_columns(gamma);
    QMat basis(n, pivot_cols.size());
    for (size_t j = 0; j < pivot_cols.size(); ++j)
        for (size_t i = 0; i < n; ++i) basis.at(i, j) = gamma.at(i, pivot_cols[j]);
    size_t d = pivot_cols.size();

    // Sign patterns of v over species; v and -v are interchangeable, so the
    // leading nonzero sign is fixed positive.
    std::vector<int> sign(n, 0);
    std::function<bool(size_t, bool)> search = [&](size_t pos, bool have_nonzero) -> bool {
        if (pos == n) {
            if (!have_nonzero) return false;
            std::vector<int> constraint(m);
            for (size_t i = 0; i < m; ++i) {
                const Reaction& r = net.reactions[i];
                bool some_pos = false, some_neg = false;
                for (size_t j : r.kinetic_support()) {
                    int s = sign[j] * sgn(r.gamma[j]);
                    if (s > 0) some_pos = true;
                    if (s < 0) some_neg = true;
                }
                RateRegion t = some_pos && some_neg ? RateRegion::Mixed
                               : some_pos          ? RateRegion::NegativeOnly
                               : some_neg          ? RateRegion::PositiveOnly
                                                   : RateRegion::Zero;
                constraint[i] = region_constraint(t);
            }
            if (!signed_kernel_feasible(gamma, constraint)) return false;
            // Is the sign pattern realizable inside Im(Gamma)?
            std::vector<FMRow> rows;
            for (size_t j = 0; j < n; ++j) {
                QVec row = basis.row(j);
                if (sign[j] == 0) {
                    rows.push_back({row, false});
                    rows.push_back({vec_neg(row), false});
                } else if (sign[j] > 0) {
                    rows.push_back({std::move(row), true});
                } else {
                    rows.push_back({vec_neg(row), true});
                }
            }
            return fm_feasible(std::move(rows), d);
        }
        for (int s : {0, 1, -1}) {
            if (!have_nonzero && s < 0) continue;  // leading sign fixed
            sign[pos] = s;
            if (search(pos + 1, have_nonzero || s != 0)) return true;
        }
        sign[pos] = 0;
        return false;
    };
    return !search(0, false);
}

namespace {

struct RegionChoice {
    RateRegion tag;
    size_t pos_witness = 0;  // Mixed only: kinetic coordinate with positive product
    size_t neg_witness = 0;  // Mixed only: kinetic coordinate with negative product
};

std::vector<RegionChoice> choices_for(const Reaction& r) {
    std::vector<RegionChoice> out;
    out.push_back({RateRegion::NegativeOnly});
    out.push_back({RateRegion::PositiveOnly});
    out.push_back({RateRegion::Zero});
    std::vector<size_t> kin = r.kinetic_support();
    std::vector<std::pair<size_t, size_t>> pairs;
    for (size_t j : kin)
        for (size_t l : kin)
            if (j != l) pairs.emplace_back(j, l);
    auto key = [&](const std::pair<size_t, size_t>& p) {
        auto part = [&](size_t c) {
            Rat mag = Rat(abs(r.gamma[c]));
            return std::tuple<Rat, int, size_t>(-mag, -sgn(r.gamma[c]), c);
        };
        return std::make_pair(part(p.first), part(p.second));
    };
    std::sort(pairs.begin(), pairs.end(),
              [&](const auto& a, const auto& b) { return key(a) < key(b); });
    for (auto [j, l] : pairs) out.push_back({RateRegion::Mixed, j, l});
    return out;
}

}  // namespace

std::vector<QVec> find_start_candidates(const ReactionNetwork& outer,
                                        const ReactionNetwork& inner) {
    size_t n = outer.species_count();
    if (inner.species_count() != n) throw std::invalid_argument("ambient dimension mismatch");
    QMat gamma_out = outer.stoichiometric_matrix();
    QMat gamma_in = inner.stoichiometric_matrix();
    size_t rank_out = rank(gamma_out);
    if (rank(gamma_in) + 1 != rank_out)
        throw std::invalid_argument("inner rank must be one below outer rank");

    std::vector<size_t> pivot_cols = image_basis_columns(gamma_out);
    size_t d = pivot_cols.size();
    QMat basis(n, d);
    for (size_t j = 0; j < d; ++j)
        for (size_t i = 0; i < n; ++i) basis.at(i, j) = gamma_out.at(i, pivot_cols[j]);

    size_t m = inner.reaction_count();
    std::vector<std::vector<RegionChoice>> choices;
    for (const auto& r : inner.reactions) choices.push_back(choices_for(r));

    // Excluding covector: vanishes on Im(inner) but not on Im(outer); fixes
    // the witness sign whenever the region assignment leaves it free.
    QVec excluding;
    for (const auto& w : left_kernel_basis(gamma_in)) {
        bool hits_outer = false;
        for (size_t j = 0; j < gamma_out.cols && !hits_outer; ++j)
            hits_outer = dot(w, gamma_out.column(j)) != 0;
        if (hits_outer) {
            excluding = w;
            break;
        }
    }
    if (excluding.empty()) throw std::logic_error("no excluding covector despite a rank gap");

    auto satisfies_assignment = [&](const QVec& v, const std::vector<RegionChoice>& pick) {
        for (size_t i = 0; i < m; ++i) {
            const Reaction& r = inner.reactions[i];
            std::vector<size_t> kin = r.kinetic_support();
            auto product = [&](size_t j) { return v[j] * r.gamma[j]; };
            switch (pick[i].tag) {
                case RateRegion::NegativeOnly: {
                    Rat sum = 0;
                    for (size_t j : kin) {
                        if (product(j) < 0) return false;
                        sum += product(j);
                    }
                    if (sum <= 0) return false;
                    break;
                }
                case RateRegion::PositiveOnly: {
                    Rat sum = 0;
                    for (size_t j : kin) {
                        if (product(j) > 0) return false;
                        sum += product(j);
                    }
                    if (sum >= 0) return false;
                    break;
                }
                case RateRegion::Zero:
                    for (size_t j : kin)
                        if (v[j] != 0) return false;
                    break;
                case RateRegion::Mixed:
                    if (product(pick[i].pos_witness) <= 0) return false;
                    if (product(pick[i].neg_witness) >= 0) return false;
                    break;
            }
        }
        return true;
    };

    // The kinetic response side depends only on the coarse tags.
    std::map<std::vector<int>, bool> response_cache;
    auto response_feasible = [&](const std::vector<RegionChoice>& pick) {
        std::vector<int> key(m);
        for (size_t i = 0; i < m; ++i) key[i] = region_constraint(pick[i].tag);
        auto it = response_cache.find(key);
        if (it != response_cache.end()) return it->second;
        bool ok = signed_kernel_feasible(gamma_in, key);
        response_cache.emplace(key, ok);
        return ok;
    };

    // Product of v with reaction coordinate j, as a functional over t.
    auto product_row = [&](const Reaction& r, size_t j) {
        QVec row(d);
        for (size_t c = 0; c < d; ++c) row[c] = r.gamma[j] * basis.at(j, c);
        return row;
    };

    std::vector<QVec> out;
    std::set<std::string> seen;
    std::vector<size_t> odo(m, 0);
    for (;;) {
        std::vector<RegionChoice> pick(m);
        for (size_t i = 0; i < m; ++i) pick[i] = choices[i][odo[i]];
        if (response_feasible(pick)) {
            std::vector<QVec> weak;
            std::vector<QVec> strict;  // functionals that must be positive somewhere
            for (size_t i = 0; i < m; ++i) {
                const Reaction& r = inner.reactions[i];
                std::vector<size_t> kin = r.kinetic_support();
                switch (pick[i].tag) {
                    case RateRegion::NegativeOnly: {
                        QVec sum(d, Rat(0));
                        for (size_t j : kin) {
                            QVec row = product_row(r, j);
                            sum = vec_add(sum, row);
                            weak.push_back(std::move(row));
                        }
                        strict.push_back(std::move(sum));
                        break;
                    }
                    case RateRegion::PositiveOnly: {
                        QVec sum(d, Rat(0));
                        for (size_t j : kin) {
                            QVec row = vec_neg(product_row(r, j));
                            sum = vec_add(sum, row);
                            weak.push_back(std::move(row));
                        }
                        strict.push_back(std::move(sum));
                        break;
                    }
                    case RateRegion::Zero:
                        for (size_t j : kin) {
                            QVec row = product_row(r, j);
                            weak.push_back(vec_neg(row));
                            weak.push_back(std::move(row));
                        }
                        break;
                    case RateRegion::Mixed: {
                        QVec pos_row = product_row(r, pick[i].pos_witness);
                        QVec neg_row = vec_neg(product_row(r, pick[i].neg_witness));
                        weak.push_back(pos_row);
                        weak.push_back(neg_row);
                        strict.push_back(std::move(pos_row));
                        strict.push_back(std::move(neg_row));
                        break;
                    }
                }
            }
            std::vector<QVec> trays = dd_rays(weak, d);
            if (!trays.empty()) {
                std::vector<QVec> vrays;
                for (const auto& t : trays) {
                    QVec v(n, Rat(0));
                    for (size_t c = 0; c < d; ++c)
                        for (size_t i = 0; i < n; ++i) v[i] += basis.at(i, c) * t[c];
                    vrays.push_back(primitive(v));
                }
                // Relative-interior point: sum of rays, then top up until every
                // strict functional is positive and the point leaves Im(inner).
                std::vector<QVec> strict_t = strict;
                QVec tsum(d, Rat(0));
                QVec vsum(n, Rat(0));
                for (size_t r = 0; r < trays.size(); ++r) {
                    tsum = vec_add(tsum, trays[r]);
                    vsum = vec_add(vsum, vrays[r]);
                }
                bool ok = true;
                for (const auto& srow : strict_t) {
                    if (dot(srow, tsum) > 0) continue;
                    bool fixed = false;
                    for (size_t r = 0; r < trays.size() && !fixed; ++r) {
                        if (dot(srow, trays[r]) > 0) {
                            tsum = vec_add(tsum, trays[r]);
                            vsum = vec_add(vsum, vrays[r]);
                            fixed = true;
                        }
                    }
                    if (!fixed) {
                        ok = false;
                        break;
                    }
                }
                if (ok && in_column_span(gamma_in, vsum)) {
                    bool fixed = false;
                    for (size_t r = 0; r < trays.size() && !fixed; ++r) {
                        if (!in_column_span(gamma_in, vrays[r])) {
                            tsum = vec_add(tsum, trays[r]);
                            vsum = vec_add(vsum, vrays[r]);
                            fixed = true;
                        }
                    }
                    if (!fixed) ok = false;
                }
                if (ok) {
                    QVec candidate = primitive(vsum);
                    if (dot(excluding, candidate) < 0) {
                        QVec flipped = vec_neg(candidate);
                        if (satisfies_assignment(flipped, pick)) candidate = std::move(flipped);
                    }
                    std::string key = vec_to_string(candidate);
                    if (seen.insert(key).second) out.push_back(std::move(candidate));
                }
            }
        }
        // Odometer step, last reaction fastest.
        size_t i = m;
        while (i-- > 0) {
            if (++odo[i] < choices[i].size()) break;
            odo[i] = 0;
            if (i == 0) return out;
        }
        if (m == 0) return out;
    }
}

std::optional<QVec> projection_start(const ReactionNetwork& net) {
    for (const auto& r : net.reactions)
        if (!r.reversible)
            throw std::invalid_argument("projection start requires a fully reversible network");
    size_t n = net.species_count();
    size_t m = net.reaction_count();
    if (m > 20) throw std::invalid_argument("too many reactions for subset enumeration");
    QMat gamma = net.stoichiometric_matrix();
    std::vector<QVec> im_rows = left_kernel_basis(gamma);
    std::vector<uint64_t> masks;
    for (uint64_t mask = 1; mask < (uint64_t{1} << m); ++mask) masks.push_back(mask);
    std::stable_sort(masks.begin(), masks.end(), [](uint64_t a, uint64_t b) {
        int pa = __builtin_popcountll(a), pb = __builtin_popcountll(b);
        if (pa != pb) return pa < pb;
        return a < b;
    });
    for (uint64_t mask : masks) {
        std::vector<QVec> rows = im_rows;
        for (size_t i = 0; i < m; ++i)
            if (mask & (uint64_t{1} << i)) rows.push_back(net.reactions[i].gamma);
        QMat stacked(rows.size(), n);
        for (size_t i = 0; i < rows.size(); ++i)
            for (size_t j = 0; j < n; ++j) stacked.at(i, j) = rows[i][j];
        std::vector<QVec> kernel = kernel_basis(stacked);
        if (kernel.size() == 1) {
            QVec g = primitive(kernel[0]);
            for (const auto& x : g) {
                if (x == 0) continue;
                if (x < 0) g = vec_neg(g);
                break;
            }
            return g;
        }
    }
    return std::nullopt;
}

}  // namespace conekit
