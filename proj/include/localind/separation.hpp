#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "localind/graph.hpp"
#include "localind/node_set.hpp"

namespace localind {

enum class EdgeKind { directed, bidirected };

/// One traversal of a graph edge inside a walk. For directed edges `tail` and
/// `head` name the graph edge tail→head; for bidirected edges they are just the
/// two endpoints. The marks record the edge mark at the walk's current node and
/// at the next node, which disambiguates the direction a self-loop is walked.
struct WalkStep {
    EdgeKind kind = EdgeKind::directed;
    NodeId tail = 0;
    NodeId head = 0;
    Mark mark_at_start = Mark::tail;
    Mark mark_at_end = Mark::head;

    bool operator==(const WalkStep&) const = default;
};

/// Alternating node/edge sequence: steps[i] joins nodes[i] and nodes[i + 1].
struct WalkWitness {
    std::vector<NodeId> nodes;
    std::vector<WalkStep> steps;

    std::size_t length() const { return steps.size(); }
    /// Arrow notation, e.g. "0 -> 1 <- 3 -> 3".
    std::string to_string() const;
};

/// True iff B is μ-separated from A given C in D.
bool mu_separated(const DirectedMixedGraph& d, NodeSet a, NodeSet b, NodeSet c);

/// Brute-force check that enumerates walks depth-first and tests the
/// collider/noncollider conditions literally on each prefix. Walks never
/// repeat an (edge, direction) traversal, which bounds their length by 2|E|;
/// any connecting walk can be shortened to one with that property by cutting
/// out the piece between two equal traversals. Intended for n <= 6.
bool mu_separated_oracle(const DirectedMixedGraph& d, NodeSet a, NodeSet b, NodeSet c);

/// Some μ-connecting walk from A∖C to B given C whose colliders all lie in C,
/// or std::nullopt when B is μ-separated from A given C.
std::optional<WalkWitness> connecting_walk_witness(const DirectedMixedGraph& d, NodeSet a, NodeSet b, NodeSet c);

/// Standalone validator: steps exist in D and join their nodes with the
/// recorded marks, the walk is nontrivial, starts in A∖C, ends in B with a
/// head, colliders lie in an_D(C) (in C when `colliders_in_c`), and
/// noncolliders lie outside C.
bool is_mu_connecting_walk(const DirectedMixedGraph& d, const WalkWitness& walk, NodeSet a, NodeSet b, NodeSet c,
                           bool colliders_in_c = false);

/// A directed path α→…→β whose intermediate nodes avoid C. Caller ensures α ∉ C.
bool exists_connecting_directed_path(const DirectedMixedGraph& d, NodeId alpha, NodeId beta, NodeSet c);

/// A μ-connecting walk without colliders from α to β given C. Searched as
/// two directed C-avoiding legs from a common source γ (optionally joined by a
/// single bidirected edge at the top). Caller ensures α ∉ C.
bool exists_connecting_trek(const DirectedMixedGraph& d, NodeId alpha, NodeId beta, NodeSet c);

/// Precomputed singleton μ-separations (α, β, C) for every C ⊆ V.
/// Memory is n²·2ⁿ bits; construction throws for n > 16.
class SeparationTable {
public:
    explicit SeparationTable(const DirectedMixedGraph& d);

    std::size_t num_nodes() const { return n_; }
    bool separated(NodeId alpha, NodeId beta, NodeSet c) const {
        return bits_[index(alpha, beta, c)];
    }
    /// Composite query through the pairwise quantification of μ-separation.
    bool separated(NodeSet a, NodeSet b, NodeSet c) const;

private:
    std::size_t index(NodeId alpha, NodeId beta, NodeSet c) const {
        return ((alpha * n_ + beta) << n_) | static_cast<std::size_t>(c.bits());
    }

    std::size_t n_ = 0;
    std::vector<bool> bits_;
};

} // namespace localind
