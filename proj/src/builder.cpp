#include "conekit/builder.hpp"

#include <algorithm>
#include <stdexcept>

namespace conekit {

std::string op_kind_name(OpKind k) {
    switch (k) {
        case OpKind::Lower: return "1";
        case OpKind::Raise: return "2";
        case OpKind::SplitRaise: return "3a";
        case OpKind::SplitLower: return "3b";
        case OpKind::Mirror: return "4";
    }
    return "?";
}

std::vector<OpResult> apply_operation(const QVec& v, const Reaction& r) {
    if (is_zero(v)) throw std::invalid_argument("operation applied to the zero vector");
    std::vector<size_t> kin = r.kinetic_support();
    auto max_ratio = [&](bool negated) {
        Rat best;
        bool first = true;
        for (size_t j : kin) {
            Rat q = v[j] / r.gamma[j];
            if (negated) q = -q;
            if (first || q > best) {
                best = q;
                first = false;
            }
        }
        return best;
    };
    switch (classify(v, r)) {
        case RateRegion::NegativeOnly: {
            Rat a = max_ratio(false);
            return {{vec_sub(v, vec_scale(a, r.gamma)), OpKind::Lower, a}};
        }
        case RateRegion::PositiveOnly: {
            Rat a = max_ratio(true);
            return {{vec_add(v, vec_scale(a, r.gamma)), OpKind::Raise, a}};
        }
        case RateRegion::Mixed: {
            Rat up = max_ratio(true);
            Rat down = max_ratio(false);
            return {{vec_add(v, vec_scale(up, r.gamma)), OpKind::SplitRaise, up},
                    {vec_sub(v, vec_scale(down, r.gamma)), OpKind::SplitLower, down}};
        }
        case RateRegion::Zero: return {};
    }
    return {};
}

std::vector<QVec> SaturationState::figure_vectors() const {
    std::vector<QVec> out;
    out.reserve(figure.size());
    for (size_t i : figure) out.push_back(nodes[i].vec);
    return out;
}

TraceStep trace_step_of(const SaturationState& state, size_t node, long parent_in_trace) {
    const DerivationNode& n = state.nodes[node];
    return {n.vec, parent_in_trace, n.reaction, n.op, n.alpha};
}

std::optional<UnboundedHit> detect_unbounded(const SaturationState& state) {
    for (size_t i = state.pass_begin; i < state.nodes.size(); ++i) {
        long a = state.nodes[i].parent;
        while (a >= 0) {
            auto ratio = positive_parallel_ratio(state.nodes[a].vec, state.nodes[i].vec);
            if (ratio && *ratio > 1)
                return UnboundedHit{static_cast<size_t>(a), i, *ratio};
            a = state.nodes[a].parent;
        }
    }
    return std::nullopt;
}

namespace {

// Witness for `target` as a nonnegative combination, preferring the sparsest
// canonical form: generator pairs in index order before the general solver.
std::vector<std::pair<QVec, Rat>> combination_witness(const std::vector<QVec>& gens,
                                                      const QVec& target) {
    size_t n = target.size();
    for (size_t i = 0; i < gens.size(); ++i) {
        for (size_t j = i + 1; j < gens.size(); ++j) {
            // Solve a*gens[i] + b*gens[j] = target exactly.
            QMat sys(n, 3);
            for (size_t row = 0; row < n; ++row) {
                sys.at(row, 0) = gens[i][row];
                sys.at(row, 1) = gens[j][row];
                sys.at(row, 2) = target[row];
            }
            std::vector<size_t> pivots = rref(sys);
            if (!pivots.empty() && pivots.back() == 2) continue;  // inconsistent
            if (pivots.size() != 2) continue;                     // parallel pair, ambiguous
            Rat a = sys.at(0, 2), b = sys.at(1, 2);
            if (a < 0 || b < 0) continue;
            if (vec_add(vec_scale(a, gens[i]), vec_scale(b, gens[j])) != target) continue;
            std::vector<std::pair<QVec, Rat>> combo;
            if (a != 0) combo.emplace_back(gens[i], a);
            if (b != 0) combo.emplace_back(gens[j], b);
            return combo;
        }
    }
    auto coeffs = conic_member(gens, target);
    if (!coeffs) throw std::logic_error("combination witness requested for an outside vector");
    std::vector<std::pair<QVec, Rat>> combo;
    for (size_t i = 0; i < gens.size(); ++i)
        if ((*coeffs)[i] != 0) combo.emplace_back(gens[i], (*coeffs)[i]);
    return combo;
}

}  // namespace

std::optional<AbsorbedHit> detect_absorbed(const std::vector<QVec>& generators,
                                           const ReactionNetwork& net) {
    for (size_t i = 0; i < net.reaction_count(); ++i) {
        const Reaction& r = net.reactions[i];
        std::vector<QVec> signs{r.gamma};
        if (r.reversible) signs.push_back(vec_neg(r.gamma));
        for (const QVec& target : signs) {
            bool is_extreme_ray = false;
            for (const auto& g : generators)
                if (same_ray(g, target)) {
                    is_extreme_ray = true;
                    break;
                }
            if (is_extreme_ray) continue;
            if (!conic_member(generators, target)) continue;
            return AbsorbedHit{i, target, combination_witness(generators, target)};
        }
    }
    return std::nullopt;
}

std::vector<ClosureViolation> closure_check(const std::vector<QVec>& figure, FigureKind kind,
                                            const ReactionNetwork& net) {
    std::vector<ClosureViolation> violations;
    auto member = [&](const QVec& v) {
        return kind == FigureKind::Cone ? conic_member(figure, v).has_value()
                                        : hull_member(figure, v).has_value();
    };
    for (size_t f = 0; f < figure.size(); ++f) {
        for (size_t i = 0; i < net.reaction_count(); ++i) {
            for (const auto& res : apply_operation(figure[f], net.reactions[i])) {
                if (!member(res.vec))
                    violations.push_back({f, static_cast<long>(i), res.kind, res.vec});
            }
        }
        if (kind == FigureKind::Ball) {
            QVec neg = vec_neg(figure[f]);
            if (!member(neg)) violations.push_back({f, -1, OpKind::Mirror, neg});
        }
    }
    return violations;
}

std::vector<QVec> rational_snap(const std::vector<QVec>& points, unsigned long max_denominator,
                                const Rat& max_distance) {
    if (max_denominator < 1) throw std::invalid_argument("max denominator must be at least 1");
    if (max_distance <= 0) throw std::invalid_argument("max distance must be positive");
    Rat eps2 = max_distance * max_distance;
    std::vector<QVec> out;
    out.reserve(points.size());
    for (const auto& v : points) {
        QVec replaced = v;
        for (unsigned long m = 1; m <= max_denominator; ++m) {
            QVec scaled = vec_scale(Rat(static_cast<long>(m)), v);
            Rat dist2 = 0;
            QVec rounded(scaled.size());
            for (size_t j = 0; j < scaled.size(); ++j) {
                mpz_class r = round_nearest(scaled[j]);
                rounded[j] = Rat(r);
                Rat d = scaled[j] - rounded[j];
                dist2 += d * d;
            }
            if (dist2 < eps2) {
                replaced = vec_scale(make_rat(1, static_cast<long>(m)), rounded);
                break;
            }
        }
        out.push_back(std::move(replaced));
    }
    return out;
}

namespace {

struct Produced {
    QVec vec;
    size_t parent;
    long reaction;
    OpKind op;
    Rat alpha;
};

}  // namespace

Certificate saturate(const ReactionNetwork& net, const QVec& start, FigureKind kind,
                     const SaturateConfig& config, SaturationState* out_state) {
    if (start.size() != net.species_count()) throw std::invalid_argument("start dimension mismatch");
    if (is_zero(start)) throw std::invalid_argument("start vector must be nonzero");
    if (kind == FigureKind::Ball && !in_column_span(net.stoichiometric_matrix(), start))
        throw std::invalid_argument("ball saturation requires a start inside Im(Gamma)");

    SaturationState state;
    state.kind = kind;
    state.ambient_dim = net.species_count();
    state.nodes.push_back({start, -1, -1, std::nullopt, std::nullopt});
    state.figure.push_back(0);
    if (kind == FigureKind::Ball) {
        state.nodes.push_back({vec_neg(start), 0, -1, OpKind::Mirror, std::nullopt});
        state.figure.push_back(1);
    }

    auto publish = [&](Certificate cert) {
        if (out_state) *out_state = state;
        return cert;
    };
    auto member = [&](const std::vector<QVec>& figure, const QVec& v) {
        return kind == FigureKind::Cone ? conic_member(figure, v).has_value()
                                        : hull_member(figure, v).has_value();
    };

    while (state.iterations < config.max_iterations) {
        ++state.iterations;
        state.pass_begin = state.nodes.size();

        std::vector<Produced> produced;
        for (size_t idx : state.figure) {
            for (size_t ri = 0; ri < net.reaction_count(); ++ri) {
                for (auto& res : apply_operation(state.nodes[idx].vec, net.reactions[ri]))
                    produced.push_back(
                        {std::move(res.vec), idx, static_cast<long>(ri), res.kind, res.alpha});
            }
        }

        std::vector<QVec> live = state.figure_vectors();
        bool added = false;
        auto add_node = [&](DerivationNode node) {
            live.push_back(node.vec);
            state.nodes.push_back(std::move(node));
            state.figure.push_back(state.nodes.size() - 1);
            added = true;
        };
        for (auto& p : produced) {
            if (member(live, p.vec)) continue;
            add_node({p.vec, static_cast<long>(p.parent), p.reaction, p.op, p.alpha});
            if (kind == FigureKind::Ball) {
                QVec neg = vec_neg(state.nodes.back().vec);
                if (!member(live, neg))
                    add_node({std::move(neg), static_cast<long>(state.nodes.size() - 1), -1,
                              OpKind::Mirror, std::nullopt});
            }
        }

        if (!added) {
            state.closed = true;
            std::vector<QVec> figure = state.figure_vectors();
            // Norm balls are scale-free; report at the canonical joint scale.
            if (kind == FigureKind::Ball) figure = primitive_jointly(figure);
            if (!closure_check(figure, kind, net).empty())
                throw std::logic_error("closed figure failed its closure audit");
            return publish(Certificate{FigureFoundCert{kind, std::move(figure)}});
        }

        FilterMode mode = kind == FigureKind::Cone ? FilterMode::Conic : FilterMode::Convex;
        std::vector<size_t> kept = extreme_filter_indices(live, mode);
        std::vector<size_t> new_figure;
        new_figure.reserve(kept.size());
        for (size_t k : kept) new_figure.push_back(state.figure[k]);
        state.figure = std::move(new_figure);

        if (auto hit = detect_unbounded(state)) {
            std::vector<size_t> path;
            size_t at = hit->descendant;
            for (;;) {
                path.push_back(at);
                if (at == hit->ancestor) break;
                at = static_cast<size_t>(state.nodes[at].parent);
            }
            std::reverse(path.begin(), path.end());
            UnboundedRayCert cert;
            cert.scale = hit->scale;
            for (size_t i = 0; i < path.size(); ++i)
                cert.chain.push_back(
                    trace_step_of(state, path[i], i == 0 ? -1 : static_cast<long>(i) - 1));
            cert.chain.front().parent = -1;
            cert.chain.front().reaction = -1;
            cert.chain.front().op = std::nullopt;
            cert.chain.front().alpha = std::nullopt;
            return publish(Certificate{std::move(cert)});
        }
        if (kind == FigureKind::Cone) {
            if (auto hit = detect_absorbed(state.figure_vectors(), net))
                return publish(
                    Certificate{ReactionAbsorbedCert{hit->reaction, hit->absorbed, hit->combination}});
        }
    }

    // Cap reached: one rational snap, one final closure check.
    std::vector<QVec> figure = state.figure_vectors();
    std::vector<QVec> snapped =
        rational_snap(figure, config.snap_max_denominator, config.snap_max_distance);
    if (snapped != figure) {
        std::vector<QVec> pruned;
        bool valid = true;
        for (const auto& v : snapped)
            if (is_zero(v)) valid = false;
        if (valid) {
            FilterMode mode = kind == FigureKind::Cone ? FilterMode::Conic : FilterMode::Convex;
            pruned = extreme_filter(snapped, mode);
            if (closure_check(pruned, kind, net).empty())
                return publish(Certificate{FigureFoundCert{kind, std::move(pruned)}});
        }
    }
    InconclusiveCert inc;
    inc.kind = kind;
    inc.iterations = state.iterations;
    inc.node_count = state.nodes.size();
    inc.figure = state.figure_vectors();
    return publish(Certificate{std::move(inc)});
}

}  // namespace conekit
