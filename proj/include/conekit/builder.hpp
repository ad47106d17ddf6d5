#pragma once

#include "conekit/geometry.hpp"
#include "conekit/netmodel.hpp"
#include "conekit/regions.hpp"

#include <optional>
#include <variant>
#include <vector>

namespace conekit {

/// Vector-production steps. Lower/Raise move a one-sided vector across the
/// kinetic sign change by the minimal step; the Split pair handles vectors
/// with products of both signs; Mirror is negation (ball figures only).
enum class OpKind { Lower, Raise, SplitRaise, SplitLower, Mirror };

/// Wire names: Lower "1", Raise "2", SplitRaise "3a", SplitLower "3b", Mirror "4".
std::string op_kind_name(OpKind k);

struct OpResult {
    QVec vec;
    OpKind kind;
    Rat alpha;
};

/// Minimal-step productions from v against one reaction. Empty when v is
/// kinetically invisible to the reaction. Every output has at least one
/// kinetic coordinate exactly zero (the minimality witness).
std::vector<OpResult> apply_operation(const QVec& v, const Reaction& r);

struct DerivationNode {
    QVec vec;
    long parent = -1;    // node index, -1 for roots
    long reaction = -1;  // producing reaction, -1 for roots and mirrors
    std::optional<OpKind> op;
    std::optional<Rat> alpha;
};

enum class FigureKind { Cone, Ball };

struct SaturationState {
    FigureKind kind = FigureKind::Cone;
    size_t ambient_dim = 0;
    std::vector<DerivationNode> nodes;  // full ancestry DAG, never pruned
    std::vector<size_t> figure;         // node indices of the current extreme set
    size_t pass_begin = 0;              // nodes added by the latest pass start here
    size_t iterations = 0;
    bool closed = false;

    std::vector<QVec> figure_vectors() const;
};

struct TraceStep {
    QVec vec;
    long parent = -1;  // index within the trace
    long reaction = -1;
    std::optional<OpKind> op;
    std::optional<Rat> alpha;
};

struct FigureFoundCert {
    FigureKind kind;
    std::vector<QVec> figure;
};

struct UnboundedRayCert {
    Rat scale;                     // > 1, exact
    std::vector<TraceStep> chain;  // ancestor first, scaled descendant last
};

struct ReactionAbsorbedCert {
    size_t reaction;
    QVec absorbed;  // +gamma or -gamma, inside the cone but not extreme
    std::vector<std::pair<QVec, Rat>> combination;
};

struct InconclusiveCert {
    FigureKind kind;
    size_t iterations = 0;
    size_t node_count = 0;
    std::vector<QVec> figure;
};

using Certificate =
    std::variant<FigureFoundCert, UnboundedRayCert, ReactionAbsorbedCert, InconclusiveCert>;

struct SaturateConfig {
    size_t max_iterations = 50;
    unsigned long snap_max_denominator = 12;
    Rat snap_max_distance = Rat(1, 1000000);
};

/// Grow a cone (or symmetric ball) from `start` under all reactions until it
/// closes, a termination condition fires, or the iteration cap is reached.
Certificate saturate(const ReactionNetwork& net, const QVec& start, FigureKind kind,
                     const SaturateConfig& config, SaturationState* out_state = nullptr);

struct UnboundedHit {
    size_t ancestor;
    size_t descendant;
    Rat scale;
};

/// A freshly produced node that is an exact multiple (> 1) of a vector on its
/// own parent chain makes every containing ball unbounded.
std::optional<UnboundedHit> detect_unbounded(const SaturationState& state);

struct AbsorbedHit {
    size_t reaction;
    QVec absorbed;
    std::vector<std::pair<QVec, Rat>> combination;
};

/// A reaction vector (either sign for reversible reactions) lying inside the
/// cone without being an extreme generator rules out every cone containing
/// the start vector. Generators must already be extreme-filtered.
std::optional<AbsorbedHit> detect_absorbed(const std::vector<QVec>& generators,
                                           const ReactionNetwork& net);

struct ClosureViolation {
    size_t figure_index;
    long reaction;  // -1 for a missing negation in a ball
    OpKind op;
    QVec produced;
};

/// Productions from extreme vectors that escape the figure; empty certifies
/// closure (and with it monotonicity or non-expansivity).
std::vector<ClosureViolation> closure_check(const std::vector<QVec>& figure, FigureKind kind,
                                            const ReactionNetwork& net);

/// Replace points that some multiple m <= max_denominator carries near the
/// integer lattice (Euclidean distance < max_distance) by the rounded point
/// divided by m; first qualifying m wins, others pass through.
std::vector<QVec> rational_snap(const std::vector<QVec>& points, unsigned long max_denominator,
                                const Rat& max_distance);

TraceStep trace_step_of(const SaturationState& state, size_t node, long parent_in_trace);

}  // namespace conekit
