#pragma once

#include "conekit/builder.hpp"

#include <optional>
#include <set>
#include <vector>

namespace conekit {

enum class Question { NonExpansive, Monotone };

enum class Verdict { Yes, No, NoForConesContainingStart, Inconclusive };

enum class Annotation {
    StronglyConnectedInfluenceGraph,
    StronglyMonotone,
    WeaklyContractive,
    Concordant,
};

std::string question_name(Question q);
std::string verdict_name(Verdict v);
std::string annotation_name(Annotation a);

struct AnalysisConfig {
    SaturateConfig saturate;
    size_t recursion_max_iterations = 12;  // cap for subnetwork non-expansivity probes
    size_t concordance_cap = 12;
    std::optional<QVec> start_override;
    bool reduce_outer = false;  // heuristic search for a smaller not-non-expansive outer net
    size_t max_grow_candidates = 4096;
};

struct AnalysisReport {
    Question question = Question::NonExpansive;
    Verdict verdict = Verdict::Inconclusive;
    Certificate certificate = InconclusiveCert{};
    std::optional<QVec> start;
    std::set<Annotation> annotations;
    AnalysisConfig config;
};

/// Default ball-mode start: the primitive column sum when it touches every
/// reaction kinetically, otherwise a generic integer image vector that is
/// nonzero on every participating species.
QVec default_nonexpansive_start(const ReactionNetwork& net);

/// Does the norm-ball question have an affirmative answer for some norm?
/// Disconnected influence graphs are analyzed one component at a time.
AnalysisReport analyze_nonexpansive(const ReactionNetwork& net, const AnalysisConfig& config);

struct PickedStart {
    QVec vec;
    uint64_t inner_mask = 0;
    bool via_projection = false;
    bool outer_reduced = false;
};

/// Starting vector forced into any candidate cone, found through a concordant
/// non-expansive subnetwork of rank one less. Precondition: the network has
/// already been certified not non-expansive.
std::optional<PickedStart> pick_starting_vector(const ReactionNetwork& net,
                                                const AnalysisConfig& config);

AnalysisReport analyze_monotone(const ReactionNetwork& net, const AnalysisConfig& config);

/// Attach strength conclusions that follow from a strongly connected
/// influence graph.
AnalysisReport annotate_strength(AnalysisReport report, const ReactionNetwork& net);

struct ConeTransfer {
    ReactionNetwork dual_net;
    ConeRep dual_cone_rep;
    ConeRep transferred;
};

struct BallTransfer {
    ReactionNetwork dual_net;
    BallRep polar;
    BallRep transferred;
};

/// Monotonicity transfers to the dual network with the transported dual cone.
/// The input figure must be certified (empty closure_check) and lie inside
/// Im(Gamma); a failed verification of the transfer is an internal error.
ConeTransfer dual_transfer(const ReactionNetwork& net, const ConeRep& cone);
BallTransfer dual_transfer(const ReactionNetwork& net, const BallRep& ball);

struct GrowStep {
    ReactionNetwork net;
    Certificate certificate;
};

/// Greedy first-fit growth: append candidate reactions with complex
/// coefficients in [lo, hi] whenever the extended network stays monotone.
/// The seed itself is the first recorded step.
std::vector<GrowStep> grow_search(const ReactionNetwork& seed, long lo, long hi,
                                  const AnalysisConfig& config);

}  // namespace conekit
