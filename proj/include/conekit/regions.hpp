#pragma once

#include "conekit/netmodel.hpp"

#include <optional>
#include <vector>

namespace conekit {

/// Achievable sign of the rate-derivative response dR_i . v under admissible
/// kinetics, decided by the signs of v on the reaction's kinetic coordinates.
enum class RateRegion {
    NegativeOnly,  // every kinetic product v_j * gamma_j >= 0, at least one > 0
    PositiveOnly,  // mirrored
    Zero,          // v vanishes on every kinetic coordinate
    Mixed,         // products of both signs; the response sign is free
};

RateRegion classify(const QVec& v, const Reaction& r);

/// Negate-and-swap: classify(-v, r).
RateRegion mirror(RateRegion t);

struct ResourceLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Witness kinetics response vector e with Gamma e = 0 and e_i in the sign
/// region of classify(v, reaction_i), if one exists. Decided exactly through
/// the homogeneous feasibility solver.
std::optional<QVec> kinetic_kernel_witness(const ReactionNetwork& net, const QVec& v);

/// Same decision without a witness, by Fourier-Motzkin elimination; the fast
/// path for bulk scans.
bool kinetic_kernel_member(const ReactionNetwork& net, const QVec& v);

/// True when no nonzero v in Im(Gamma) admits kinetics with Gamma dR v = 0.
/// Enumerates candidate sign patterns of v over the species; throws
/// ResourceLimitError when the species count exceeds `cap`.
bool is_concordant(const ReactionNetwork& net, size_t cap = 12);

/// Exact starting-vector candidates: v in Z(inner), v in Im(outer), v not in
/// Im(inner). One canonical integer witness (content 1) per feasible region
/// assignment of the inner reactions, deterministic order.
std::vector<QVec> find_start_candidates(const ReactionNetwork& outer,
                                        const ReactionNetwork& inner);

/// For fully reversible networks: an integer generator of the first
/// 1-dimensional intersection of Im(Gamma) with reaction hyperplanes
/// {x : gamma_i^T x = 0}, subsets searched in increasing size.
std::optional<QVec> projection_start(const ReactionNetwork& net);

}  // namespace conekit
