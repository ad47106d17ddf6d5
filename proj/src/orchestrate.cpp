#include "conekit/orchestrate.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace conekit {

std::string question_name(Question q) {
    return q == Question::NonExpansive ? "non-expansive" : "monotone";
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Yes: return "yes";
        case Verdict::No: return "no";
        case Verdict::NoForConesContainingStart: return "no-for-cones-containing-v";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

std::string annotation_name(Annotation a) {
    switch (a) {
        case Annotation::StronglyConnectedInfluenceGraph: return "strongly-connected-influence-graph";
        case Annotation::StronglyMonotone: return "strongly-monotone";
        case Annotation::WeaklyContractive: return "weakly-contractive";
        case Annotation::Concordant: return "concordant";
    }
    return "?";
}

namespace {

bool full_kinetic_reach(const QVec& v, const ReactionNetwork& net) {
    for (const auto& r : net.reactions) {
        if (r.kinetic_support().empty()) continue;  // constant-rate reactions are unreachable
        if (classify(v, r) == RateRegion::Zero) return false;
    }
    return true;
}

std::vector<size_t> participating_species(const ReactionNetwork& net) {
    std::vector<size_t> out;
    for (size_t j = 0; j < net.species_count(); ++j) {
        for (const auto& r : net.reactions)
            if (r.gamma[j] != 0) {
                out.push_back(j);
                break;
            }
    }
    return out;
}

}  // namespace

QVec default_nonexpansive_start(const ReactionNetwork& net) {
    size_t n = net.species_count();
    QVec sum(n, Rat(0));
    for (const auto& r : net.reactions) sum = vec_add(sum, r.gamma);
    if (!is_zero(sum)) {
        QVec candidate = primitive(sum);
        if (full_kinetic_reach(candidate, net)) return candidate;
    }
    // Generic integer combination of an image basis, nonzero on every
    // participating species.
    QMat gamma = net.stoichiometric_matrix();
    std::vector<size_t> pivot_cols = image_basis_columns(gamma);
    std::vector<size_t> wanted = participating_species(net);
    for (long base = 1;; ++base) {
        QVec v(n, Rat(0));
        Rat weight = 1;
        for (size_t c : pivot_cols) {
            v = vec_add(v, vec_scale(weight, gamma.column(c)));
            weight *= base + 1;
        }
        bool ok = !is_zero(v);
        for (size_t j : wanted) ok = ok && v[j] != 0;
        if (ok && full_kinetic_reach(v, net)) return primitive(v);
        if (base > 64) throw std::logic_error("no generic start vector found");
    }
}

namespace {

// Reactions of one weak component of the influence graph, with the map back
// to original reaction indices.
struct Component {
    ReactionNetwork net;
    std::vector<size_t> original_index;
};

std::vector<Component> split_components(const ReactionNetwork& net, const InfluenceGraph& graph) {
    size_t comps = 0;
    for (size_t c : graph.weak_component) comps = std::max(comps, c + 1);
    std::vector<Component> out(comps);
    for (auto& c : out) c.net.species = net.species;
    for (size_t i = 0; i < net.reaction_count(); ++i) {
        Component& c = out[graph.weak_component[i]];
        c.net.reactions.push_back(net.reactions[i]);
        c.original_index.push_back(i);
    }
    return out;
}

Certificate remap_reactions(Certificate cert, const std::vector<size_t>& original_index) {
    if (auto* ray = std::get_if<UnboundedRayCert>(&cert)) {
        for (auto& step : ray->chain)
            if (step.reaction >= 0)
                step.reaction = static_cast<long>(original_index[static_cast<size_t>(step.reaction)]);
    } else if (auto* abs = std::get_if<ReactionAbsorbedCert>(&cert)) {
        abs->reaction = original_index[abs->reaction];
    }
    return cert;
}

}  // namespace

AnalysisReport analyze_nonexpansive(const ReactionNetwork& net, const AnalysisConfig& config) {
    AnalysisReport report;
    report.question = Question::NonExpansive;
    report.config = config;

    if (config.start_override) {
        report.start = config.start_override;
        Certificate cert = saturate(net, *config.start_override, FigureKind::Ball, config.saturate);
        if (std::holds_alternative<FigureFoundCert>(cert))
            report.verdict = Verdict::Yes;
        else if (std::holds_alternative<UnboundedRayCert>(cert))
            report.verdict = Verdict::No;
        else
            report.verdict = Verdict::Inconclusive;
        report.certificate = std::move(cert);
        return report;
    }

    InfluenceGraph graph = influence_graph(net);
    std::vector<Component> components = split_components(net, graph);

    std::vector<Certificate> found;
    for (const auto& comp : components) {
        QVec start = default_nonexpansive_start(comp.net);
        Certificate cert = saturate(comp.net, start, FigureKind::Ball, config.saturate);
        if (components.size() == 1) report.start = start;
        if (std::holds_alternative<UnboundedRayCert>(cert)) {
            report.verdict = Verdict::No;
            report.certificate = remap_reactions(std::move(cert), comp.original_index);
            return report;
        }
        found.push_back(std::move(cert));
    }
    for (const auto& cert : found) {
        if (!std::holds_alternative<FigureFoundCert>(cert)) {
            report.verdict = Verdict::Inconclusive;
            report.certificate = cert;
            return report;
        }
    }
    if (components.size() == 1) {
        report.verdict = Verdict::Yes;
        report.certificate = std::move(found.front());
        return report;
    }
    // All components carry balls; combine them as a Minkowski sum and audit.
    std::vector<QVec> vertices{QVec(net.species_count(), Rat(0))};
    for (const auto& cert : found) {
        const auto& ball = std::get<FigureFoundCert>(cert).figure;
        std::vector<QVec> next;
        for (const auto& v : vertices)
            for (const auto& w : ball) next.push_back(vec_add(v, w));
        vertices = std::move(next);
    }
    vertices = primitive_jointly(extreme_filter(vertices, FilterMode::Convex));
    if (closure_check(vertices, FigureKind::Ball, net).empty()) {
        report.verdict = Verdict::Yes;
        report.certificate = FigureFoundCert{FigureKind::Ball, std::move(vertices)};
    } else {
        report.verdict = Verdict::Inconclusive;
        InconclusiveCert inc;
        inc.kind = FigureKind::Ball;
        inc.figure = std::move(vertices);
        report.certificate = std::move(inc);
    }
    return report;
}

namespace {

AnalysisConfig recursion_config(const AnalysisConfig& config) {
    AnalysisConfig sub = config;
    sub.saturate.max_iterations = config.recursion_max_iterations;
    sub.start_override.reset();
    sub.reduce_outer = false;
    return sub;
}

}  // namespace

std::optional<PickedStart> pick_starting_vector(const ReactionNetwork& net,
                                                const AnalysisConfig& config) {
    AnalysisConfig sub = recursion_config(config);

    ReactionNetwork outer = net;
    bool reduced = false;
    if (config.reduce_outer) {
        // Best-effort minimality: smallest reaction subset that is still not
        // non-expansive, searched in increasing size.
        size_t m = net.reaction_count();
        std::vector<uint64_t> masks;
        for (uint64_t mask = 1; mask + 1 < (uint64_t{1} << m); ++mask) masks.push_back(mask);
        std::stable_sort(masks.begin(), masks.end(), [](uint64_t a, uint64_t b) {
            return __builtin_popcountll(a) < __builtin_popcountll(b);
        });
        for (uint64_t mask : masks) {
            ReactionNetwork candidate = subnetwork(net, mask);
            AnalysisReport rep = analyze_nonexpansive(candidate, sub);
            if (rep.verdict == Verdict::No) {
                outer = std::move(candidate);
                reduced = true;
                break;
            }
        }
    }

    size_t outer_rank = rank(outer.stoichiometric_matrix());
    if (outer_rank == 0) return std::nullopt;
    for (uint64_t mask : subnetwork_masks(outer, outer_rank - 1)) {
        if (mask == 0) continue;  // the empty subnetwork forces nothing
        ReactionNetwork inner = subnetwork(outer, mask);
        bool concordant;
        try {
            concordant = is_concordant(inner, config.concordance_cap);
        } catch (const ResourceLimitError&) {
            continue;  // cannot certify, disqualify conservatively
        }
        if (!concordant) continue;
        AnalysisReport rep = analyze_nonexpansive(inner, sub);
        if (rep.verdict != Verdict::Yes) continue;
        std::vector<QVec> candidates = find_start_candidates(outer, inner);
        if (candidates.empty()) continue;
        return PickedStart{std::move(candidates.front()), mask, false, reduced};
    }

    bool all_reversible = true;
    for (const auto& r : net.reactions) all_reversible = all_reversible && r.reversible;
    if (all_reversible) {
        if (auto v = projection_start(net)) return PickedStart{std::move(*v), 0, true, reduced};
    }
    return std::nullopt;
}

AnalysisReport analyze_monotone(const ReactionNetwork& net, const AnalysisConfig& config) {
    AnalysisReport report;
    report.question = Question::Monotone;
    report.config = config;

    AnalysisReport nexp = analyze_nonexpansive(net, config);
    if (nexp.verdict == Verdict::Yes) {
        // A norm ball closed under the operations settles monotonicity.
        report.verdict = Verdict::Yes;
        report.certificate = std::move(nexp.certificate);
        report.start = std::move(nexp.start);
        return report;
    }
    if (nexp.verdict != Verdict::No) {
        report.verdict = Verdict::Inconclusive;
        report.certificate = std::move(nexp.certificate);
        return report;
    }

    std::optional<PickedStart> picked;
    if (config.start_override) {
        picked = PickedStart{*config.start_override, 0, false, false};
    } else {
        picked = pick_starting_vector(net, config);
    }
    if (!picked) {
        report.verdict = Verdict::Inconclusive;
        report.certificate = InconclusiveCert{FigureKind::Cone, 0, 0, {}};
        return report;
    }
    report.start = picked->vec;

    AnalysisConfig main = config;
    main.start_override.reset();

    auto is_reversible_absorption = [&](const Certificate& cert) {
        const auto* hit = std::get_if<ReactionAbsorbedCert>(&cert);
        return hit && net.reactions[hit->reaction].reversible;
    };

    Certificate plus = saturate(net, picked->vec, FigureKind::Cone, main.saturate);
    if (std::holds_alternative<FigureFoundCert>(plus)) {
        report.verdict = Verdict::Yes;
        report.certificate = std::move(plus);
        return report;
    }
    if (is_reversible_absorption(plus) && !picked->outer_reduced) {
        // Negating every vector of this run is a valid run from -v, so the
        // certificate covers both admissible signs at once.
        report.verdict = Verdict::No;
        report.certificate = std::move(plus);
        return report;
    }

    QVec negated = vec_neg(picked->vec);
    Certificate minus = saturate(net, negated, FigureKind::Cone, main.saturate);
    if (std::holds_alternative<FigureFoundCert>(minus)) {
        report.verdict = Verdict::Yes;
        report.start = negated;
        report.certificate = std::move(minus);
        return report;
    }
    bool plus_negative = std::holds_alternative<ReactionAbsorbedCert>(plus);
    bool minus_negative = std::holds_alternative<ReactionAbsorbedCert>(minus);
    if (is_reversible_absorption(minus) && !picked->outer_reduced) {
        report.verdict = Verdict::No;
        report.start = negated;
        report.certificate = std::move(minus);
        return report;
    }
    if (plus_negative && minus_negative && !picked->outer_reduced) {
        report.verdict = Verdict::No;
        report.certificate = std::move(plus);
        return report;
    }
    if (plus_negative) {
        report.verdict = Verdict::NoForConesContainingStart;
        report.certificate = std::move(plus);
        return report;
    }
    if (minus_negative) {
        report.verdict = Verdict::NoForConesContainingStart;
        report.start = negated;
        report.certificate = std::move(minus);
        return report;
    }
    report.verdict = Verdict::Inconclusive;
    report.certificate = std::move(plus);
    return report;
}

AnalysisReport annotate_strength(AnalysisReport report, const ReactionNetwork& net) {
    InfluenceGraph graph = influence_graph(net);
    if (!graph.strongly_connected()) return report;
    bool strength = false;
    if (report.verdict == Verdict::Yes) {
        const auto* figure = std::get_if<FigureFoundCert>(&report.certificate);
        if (figure && report.question == Question::Monotone && figure->kind == FigureKind::Cone) {
            QMat gamma = net.stoichiometric_matrix();
            bool inside = true;
            for (const auto& g : figure->figure) inside = inside && in_column_span(gamma, g);
            if (inside) {
                report.annotations.insert(Annotation::StronglyMonotone);
                strength = true;
            }
        }
        if (figure && report.question == Question::NonExpansive &&
            figure->kind == FigureKind::Ball) {
            report.annotations.insert(Annotation::WeaklyContractive);
            report.annotations.insert(Annotation::Concordant);
            strength = true;
        }
    }
    if (!strength) report.annotations.insert(Annotation::StronglyConnectedInfluenceGraph);
    return report;
}

ConeTransfer dual_transfer(const ReactionNetwork& net, const ConeRep& cone) {
    auto violations = closure_check(cone.generators, FigureKind::Cone, net);
    if (!violations.empty())
        throw std::invalid_argument("cone is not certified for this network (closure violations)");
    QMat gamma = net.stoichiometric_matrix();
    for (const auto& g : cone.generators)
        if (!in_column_span(gamma, g))
            throw std::invalid_argument("cone must lie inside Im(Gamma) for duality transfer");

    ConeTransfer out;
    out.dual_net = dual_network(net);
    out.dual_cone_rep = dual_cone(cone);
    QMat irr = dual_base_matrix(net);
    std::vector<QVec> gens;
    for (const auto& d : out.dual_cone_rep.generators) {
        QVec t(irr.cols);
        for (size_t j = 0; j < irr.cols; ++j) t[j] = dot(irr.column(j), d);
        if (!is_zero(t)) gens.push_back(std::move(t));
    }
    out.transferred.ambient_dim = irr.cols;
    out.transferred.generators = extreme_filter(gens, FilterMode::Conic);
    if (!closure_check(out.transferred.generators, FigureKind::Cone, out.dual_net).empty())
        throw std::logic_error("dual transfer failed its closure verification");
    return out;
}

BallTransfer dual_transfer(const ReactionNetwork& net, const BallRep& ball) {
    auto violations = closure_check(ball.vertices, FigureKind::Ball, net);
    if (!violations.empty())
        throw std::invalid_argument("ball is not certified for this network (closure violations)");
    QMat gamma = net.stoichiometric_matrix();
    for (const auto& v : ball.vertices)
        if (!in_column_span(gamma, v))
            throw std::invalid_argument("ball must lie inside Im(Gamma) for duality transfer");

    BallTransfer out;
    out.dual_net = dual_network(net);
    out.polar = polar_ball(ball);
    QMat irr = dual_base_matrix(net);
    std::vector<QVec> verts;
    for (const auto& u : out.polar.vertices) {
        QVec t(irr.cols);
        for (size_t j = 0; j < irr.cols; ++j) t[j] = dot(irr.column(j), u);
        verts.push_back(std::move(t));
    }
    out.transferred.ambient_dim = irr.cols;
    out.transferred.vertices = extreme_filter(verts, FilterMode::Convex);
    if (!closure_check(out.transferred.vertices, FigureKind::Ball, out.dual_net).empty())
        throw std::logic_error("dual transfer failed its closure verification");
    return out;
}

std::vector<GrowStep> grow_search(const ReactionNetwork& seed, long lo, long hi,
                                  const AnalysisConfig& config) {
    AnalysisReport seed_report = analyze_monotone(seed, config);
    if (seed_report.verdict != Verdict::Yes)
        throw std::invalid_argument("grow search requires a monotone seed network");

    std::vector<GrowStep> accepted;
    accepted.push_back({seed, seed_report.certificate});
    if (lo > hi) return accepted;

    size_t n = seed.species_count();
    // All candidate vectors over the seed's species, lexicographic.
    std::vector<QVec> vectors;
    QVec v(n, Rat(lo));
    for (;;) {
        if (!is_zero(v)) vectors.push_back(v);
        size_t i = n;
        bool done = true;
        while (i-- > 0) {
            if (v[i] < hi) {
                v[i] += 1;
                for (size_t j = i + 1; j < n; ++j) v[j] = lo;
                done = false;
                break;
            }
        }
        if (done) break;
    }
    std::vector<std::pair<QVec, bool>> candidates;  // (vector, reversible)
    for (const auto& vec : vectors) {
        bool canonical_sign = false;
        for (const auto& x : vec) {
            if (x == 0) continue;
            canonical_sign = x > 0;
            break;
        }
        if (canonical_sign) candidates.emplace_back(vec, true);
        candidates.emplace_back(vec, false);
    }

    // The candidate budget bounds how many extensions are examined; the
    // search returns whatever was accepted within it.
    size_t examined = 0;
    ReactionNetwork current = seed;
    for (const auto& [vec, reversible] : candidates) {
        if (examined >= config.max_grow_candidates) break;
        Reaction candidate = Reaction::from_vector(vec, reversible);
        bool present = false;
        for (const auto& r : current.reactions) {
            if (r == candidate) present = true;
            if (reversible && r.reversible && r.reactant == candidate.product &&
                r.product == candidate.reactant)
                present = true;
        }
        if (present) continue;
        ++examined;
        ReactionNetwork extended = current;
        extended.reactions.push_back(candidate);
        AnalysisReport rep = analyze_monotone(extended, config);
        if (rep.verdict != Verdict::Yes) continue;
        current = extended;
        accepted.push_back({std::move(extended), rep.certificate});
    }
    return accepted;
}

}  // namespace conekit
