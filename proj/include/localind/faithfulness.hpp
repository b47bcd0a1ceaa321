#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "localind/graph.hpp"
#include "localind/independence.hpp"
#include "localind/node_set.hpp"

namespace localind {

// Conventions shared by every checker in this header:
//  * Edge conditions are instantiated per directed edge α→β and set C.
//  * D3/E3 (and D3') only apply when β ∉ C as well as α ∉ C. With β ∈ C the
//    conclusion (β, γ, C) is a trivial independence and the condition would
//    reject every graph, including I(D) against D itself.
//  * The faithfulness-type checkers quantify over α ∈ A∖C, β ∈ B.

enum class Condition { D0, D1, D2, D3, E0, E1, E2, E3 };

std::string to_string(Condition c);

struct EdgeConditionReport {
    NodeId alpha = 0;
    NodeId beta = 0;
    Condition condition = Condition::D0;
    NodeSet c;
    std::optional<NodeId> gamma;
    std::optional<NodeId> delta;

    std::string to_string() const;
};

/// Every violated instantiation of D0–D3 for the edges of D (self-loops
/// included) at the given C.
std::vector<EdgeConditionReport> check_transitivity(const IndependenceModel& model, const DirectedMixedGraph& d,
                                                    NodeSet c);

/// C-transitive for every C ⊆ V. Intended for n <= 6.
bool is_transitively_closed(const IndependenceModel& model, const DirectedMixedGraph& d);

/// `full` enumerates every nontrivial triple; `pairwise` only singleton
/// A and B, which is equivalent for models satisfying left and right
/// decomposition (a composite independence implies its singleton parts, and
/// μ-separation of composites is the conjunction over singletons).
enum class TripleScope { full, pairwise };

struct FaithfulnessCheck {
    bool holds = true;
    /// First violating triple in enumeration order.
    std::optional<IndependenceTriple> witness;

    explicit operator bool() const { return holds; }
};

/// I ⊆ I(D). Pairwise scope requires model.is_decomposition_closed().
FaithfulnessCheck check_faithful(const IndependenceModel& model, const DirectedMixedGraph& d,
                                 TripleScope scope = TripleScope::full);
bool is_faithful(const IndependenceModel& model, const DirectedMixedGraph& d, TripleScope scope = TripleScope::full);

/// Faithfulness restricted to conditioning sets with |C| <= k.
FaithfulnessCheck check_k_faithful(const IndependenceModel& model, const DirectedMixedGraph& d, std::size_t k,
                                   TripleScope scope = TripleScope::full);
bool is_k_faithful(const IndependenceModel& model, const DirectedMixedGraph& d, std::size_t k,
                   TripleScope scope = TripleScope::full);

/// An edge α→β with α ∈ A∖C, β ∈ B forces (A, B, C) ∉ I.
FaithfulnessCheck check_parent_faithful(const IndependenceModel& model, const DirectedMixedGraph& d,
                                        TripleScope scope = TripleScope::full);
/// A μ-connecting directed path from A∖C to B given C forces (A, B, C) ∉ I.
FaithfulnessCheck check_ancestor_faithful(const IndependenceModel& model, const DirectedMixedGraph& d,
                                          TripleScope scope = TripleScope::full);
/// A μ-connecting trek from A∖C to B given C forces (A, B, C) ∉ I. With
/// `disjoint_only`, only pairwise disjoint A, B, C are examined.
FaithfulnessCheck check_trek_faithful(const IndependenceModel& model, const DirectedMixedGraph& d,
                                      TripleScope scope = TripleScope::full, bool disjoint_only = false);
/// α→β, α ≠ β forces (α, β, {β}) ∉ I.
FaithfulnessCheck check_parent_dependence(const IndependenceModel& model, const DirectedMixedGraph& d);

/// I(D) ⊆ I.
FaithfulnessCheck check_markov(const IndependenceModel& model, const DirectedMixedGraph& d,
                               TripleScope scope = TripleScope::full);

/// Edge conditions D0, D1', D2, D3' evaluated for every edge and C; each
/// field is the conjunction of the conditions listed next to it.
struct ConditionHierarchy {
    bool d0 = true;             // D0
    bool d0_d1p = true;         // D0, D1'
    bool d0_d1p_d3p = true;     // D0, D1', D3'
    bool d0_d1p_d2_d3p = true;  // D0, D1', D2, D3'

    bool operator==(const ConditionHierarchy&) const = default;
};

ConditionHierarchy check_conditions_hierarchy(const IndependenceModel& model, const DirectedMixedGraph& d);

enum class FaithfulnessLevel { parent_dependence, causal_minimality, parent_faithful, ancestor_faithful, trek_faithful,
                               faithful };

std::string to_string(FaithfulnessLevel level);

enum class MinimalityMode {
    /// Markov, and no single-edge deletion is Markov.
    definitional,
    /// α→β ∈ D exactly when (α, β, V∖{α}) ∉ I; assumes pairwise and global
    /// Markov properties coincide.
    pairwise,
};

bool check_causal_minimality(const IndependenceModel& model, const DirectedMixedGraph& d,
                             MinimalityMode mode = MinimalityMode::definitional);

/// F_I: α→β (α ≠ β) iff E0–E3 hold for every C. Queries I only.
DirectedMixedGraph edge_transitive_graph(const IndependenceModel& model);

/// Starts from the complete graph and removes α→β when E0–E3 fail for some
/// C with |C| <= k. Throws std::invalid_argument unless k <= n - 1.
DirectedMixedGraph edge_transitive_graph_bounded(const IndependenceModel& model, std::size_t k);

/// Removes every edge α→β (α ≠ β) that violates D0–D3 for some C ⊆ V∖{α},
/// with the separation statements evaluated against the graph as it is being
/// trimmed. Visits β, then α ≠ β, then C in increasing mask order.
DirectedMixedGraph trim(const IndependenceModel& model, const DirectedMixedGraph& d);

/// Some directed graph D' with I(D') = I, or std::nullopt. Enumerates all
/// 2^(n(n-1)) graphs; throws std::invalid_argument for n > 4.
std::optional<DirectedMixedGraph> find_perfect_map(const IndependenceModel& model);

} // namespace localind
