#pragma once

#include "conekit/linalg.hpp"
#include "conekit/rational.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace conekit {

/// Non-catalytic reaction between two integer complexes. The reaction vector
/// (product - reactant) determines both complexes, so reactions can also be
/// built directly from a vector.
struct Reaction {
    QVec reactant;
    QVec product;
    bool reversible = false;
    QVec gamma;  // product - reactant, never zero

    static Reaction make(QVec reactant, QVec product, bool reversible);
    static Reaction from_vector(const QVec& gamma, bool reversible);

    /// Coordinates whose concentration can influence this reaction's rate:
    /// the full support for reversible reactions, reactant coordinates only
    /// for irreversible ones.
    std::vector<size_t> kinetic_support() const;

    bool operator==(const Reaction& o) const {
        return reversible == o.reversible && reactant == o.reactant && product == o.product;
    }
};

struct ReactionNetwork {
    std::vector<std::string> species;
    std::vector<Reaction> reactions;

    size_t species_count() const { return species.size(); }
    size_t reaction_count() const { return reactions.size(); }
    QMat stoichiometric_matrix() const;

    bool operator==(const ReactionNetwork& o) const {
        return species == o.species && reactions == o.reactions;
    }
};

struct ParseError : std::runtime_error {
    int line;
    int col;
    ParseError(int l, int c, const std::string& msg)
        : std::runtime_error("line " + std::to_string(l) + ":" + std::to_string(c) + ": " + msg),
          line(l),
          col(c) {}
};

struct ParseResult {
    ReactionNetwork network;
    std::vector<std::string> warnings;
};

/// One reaction per line, '#' starts a comment, "=>" irreversible and "<=>"
/// reversible, "0" (or the empty-set glyph or "empty") as the empty complex.
ParseResult parse_network(const std::string& text);

/// Inverse pretty-printer; parse_network(render(net)) reproduces the network.
std::string render(const ReactionNetwork& net);

/// Each reversible reaction becomes a forward/backward irreversible pair, in
/// place, preserving the original ordering.
ReactionNetwork to_irreversible(const ReactionNetwork& net);

bool all_reversible(const ReactionNetwork& net);

/// Stoichiometric matrix the duality transform transposes: the network's own
/// matrix when fully reversible, the irreversible expansion otherwise.
QMat dual_base_matrix(const ReactionNetwork& net);

/// Network with the transposed stoichiometric matrix; species are named
/// S1..Sm after the base matrix columns. Fully reversible networks keep
/// reversible reactions, all other inputs dualize irreversibly.
ReactionNetwork dual_network(const ReactionNetwork& net);

/// Directed influence graph on reactions: an edge i -> j whenever a species
/// changed by reaction i can affect the rate of reaction j.
struct InfluenceGraph {
    size_t nodes = 0;
    std::vector<std::vector<size_t>> adj;
    size_t scc_count = 0;
    bool connected = true;
    std::vector<size_t> weak_component;  // per node

    bool strongly_connected() const { return nodes <= 1 || scc_count == 1; }
    std::vector<std::pair<size_t, size_t>> edges() const;
};

InfluenceGraph influence_graph(const ReactionNetwork& net);

/// Reaction subset of `net` selected by bit mask, original order, all species
/// retained (subnetworks may leave coordinates untouched).
ReactionNetwork subnetwork(const ReactionNetwork& net, uint64_t mask);

/// Masks of all reaction subsets whose columns have the requested rank, in
/// decreasing subset size and decreasing mask within a size.
std::vector<uint64_t> subnetwork_masks(const ReactionNetwork& net, size_t target_rank);

std::vector<ReactionNetwork> enumerate_subnetworks(const ReactionNetwork& net, size_t target_rank);

}  // namespace conekit
