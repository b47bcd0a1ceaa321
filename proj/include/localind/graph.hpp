#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "localind/node_set.hpp"

namespace localind {

using Rng = std::mt19937_64;
using DirectedEdge = std::pair<NodeId, NodeId>;

enum class Mark { tail, head };

/// Directed mixed graph on nodes {0, ..., n-1}.
///
/// Every node carries a directed self-loop. Constructors insert them, and
/// remove_edge refuses to delete them, so user input may omit them. Bidirected
/// edges only arise from latent projection.
class DirectedMixedGraph {
public:
    /// Graph with self-loops only.
    explicit DirectedMixedGraph(std::size_t n = 0);
    DirectedMixedGraph(std::size_t n, const std::vector<DirectedEdge>& directed,
                       const std::vector<DirectedEdge>& bidirected = {});

    /// All directed edges, including self-loops.
    static DirectedMixedGraph complete(std::size_t n);

    std::size_t num_nodes() const { return n_; }
    NodeSet nodes() const { return NodeSet::full(n_); }

    bool has_edge(NodeId from, NodeId to) const { return parents_[to].contains(from); }
    bool has_bidirected(NodeId a, NodeId b) const { return siblings_[a].contains(b); }

    /// {α : α→β}; always contains β itself.
    NodeSet parents(NodeId beta) const { return parents_[beta]; }
    NodeSet children(NodeId alpha) const { return children_[alpha]; }
    NodeSet siblings(NodeId alpha) const { return siblings_[alpha]; }

    void add_edge(NodeId from, NodeId to);
    /// Throws std::invalid_argument for self-loops.
    void remove_edge(NodeId from, NodeId to);
    void add_bidirected(NodeId a, NodeId b);
    void remove_bidirected(NodeId a, NodeId b);

    /// Lexicographically sorted, self-loops included.
    std::vector<DirectedEdge> directed_edges() const;
    /// Pairs (a, b) with a < b, sorted.
    std::vector<DirectedEdge> bidirected_edges() const;
    /// Directed edges without self-loops.
    std::vector<DirectedEdge> proper_edges() const;
    std::size_t num_proper_edges() const;
    bool has_bidirected_edges() const;

    /// Same node set and directed edges; bidirected edges dropped.
    DirectedMixedGraph directed_part() const;

    bool operator==(const DirectedMixedGraph&) const = default;

private:
    void check_node(NodeId v) const;

    std::size_t n_ = 0;
    std::vector<NodeSet> parents_;
    std::vector<NodeSet> children_;
    std::vector<NodeSet> siblings_;
};

/// an_D(B): nodes with a directed walk into B, B included. Bidirected edges
/// are ignored.
NodeSet ancestors(const DirectedMixedGraph& g, NodeSet b);

/// Edge-set inclusion. Throws std::invalid_argument on node-count mismatch.
bool is_subgraph(const DirectedMixedGraph& sub, const DirectedMixedGraph& super);

struct LatentProjection {
    DirectedMixedGraph graph;
    /// index_map[new index] = old index.
    std::vector<NodeId> index_map;
    /// True when the projection introduced bidirected edges. The rule for those
    /// edges (a common unobserved ancestor reaching both endpoints through
    /// unobserved nodes only) comes from the latent-projection literature; the
    /// directed rule is the only one comparisons in this library depend on.
    bool has_bidirected = false;
};

/// Marginalizes D onto the observed set O. Throws std::invalid_argument when
/// D already has bidirected edges or O is not a subset of V.
LatentProjection latent_projection(const DirectedMixedGraph& d, NodeSet observed);

/// Order of an ordered pair: the smallest |C| with C ⊆ V∖{α} and β
/// μ-separated from α given C. std::nullopt stands for an infinite order.
using PairOrder = std::optional<std::size_t>;

/// Throws std::invalid_argument when alpha == beta.
PairOrder pair_order(const DirectedMixedGraph& d, NodeId alpha, NodeId beta);

struct GraphOrder {
    std::size_t value = 0;
    /// False when every ordered pair has infinite order; value is then 0.
    bool has_finite_pair = false;
};

/// Largest finite pair order over all ordered pairs of distinct nodes.
GraphOrder graph_order(const DirectedMixedGraph& d);

/// Random directed graph: p ~ Uniform(0, 0.5) once, then every non-self edge
/// independently with probability p. Throws std::invalid_argument for n = 0.
DirectedMixedGraph sample_graph(std::size_t n, Rng& rng);

/// Edge-list text format: `n=<int>` then `a -> b` / `a <-> b` lines, 0-indexed.
/// Blank lines and lines starting with '#' are ignored on read.
void write_graph(std::ostream& out, const DirectedMixedGraph& g);
std::string format_graph(const DirectedMixedGraph& g);
DirectedMixedGraph read_graph(std::istream& in);
DirectedMixedGraph parse_graph(const std::string& text);
DirectedMixedGraph load_graph(const std::string& path);
void save_graph(const std::string& path, const DirectedMixedGraph& g);

} // namespace localind
