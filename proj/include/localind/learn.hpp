#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "localind/graph.hpp"
#include "localind/independence.hpp"

namespace localind {

/// One independence query issued for edge α→β.
struct AuditEntry {
    NodeId alpha = 0;
    NodeId beta = 0;
    NodeSet c;
    bool independent = false;
};

struct LearnResult {
    DirectedMixedGraph graph;
    /// Growth of the model's distinct-query count during the run.
    std::size_t tests_used = 0;
    /// Queries in issue order.
    std::vector<AuditEntry> audit;
};

/// Complete graph minus every edge with an independent audit entry.
DirectedMixedGraph replay_audit(std::size_t n, const std::vector<AuditEntry>& audit);

/// α→β iff (α, β, V∖{α}) ∉ I. Exactly n(n-1) queries.
LearnResult cm(const IndependenceModel& model);

/// Causal screening. Phase 1 drops α→β when (α, β, {β}) ∈ I; phase 2 drops a
/// remaining α→β when (α, β, pa(β)∖{α}) ∈ I, reading pa(β) (which contains β)
/// from the graph as it is updated.
LearnResult cs(const IndependenceModel& model);

/// Increasing conditioning-set sizes k = 0..max_level. At level k every
/// remaining α→β is tested against the size-k subsets of pa(β)∖{α} from the
/// current graph, and dropped at the first independence. Stops once no
/// remaining edge has a candidate set of size k. Throws
/// std::invalid_argument unless max_level <= n - 1.
LearnResult ca(const IndependenceModel& model, std::optional<std::size_t> max_level = std::nullopt);

/// For i = 0..k, drops α→β on any (α, β, C) ∈ I with C ⊆ V∖{α}, |C| = i.
/// Throws std::invalid_argument unless k <= n - 1.
LearnResult dsgs(const IndependenceModel& model, std::optional<std::size_t> k = std::nullopt);

enum class Algorithm { cm, cs, ca, dsgs };

std::string to_string(Algorithm a);
/// Throws std::invalid_argument for unknown names.
Algorithm parse_algorithm(const std::string& name);

/// Dispatch; `parameter` is ca's max level or dsgs's k (ignored otherwise).
LearnResult learn(Algorithm algorithm, const IndependenceModel& model, std::optional<std::size_t> parameter = std::nullopt);

} // namespace localind
