#pragma once

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "localind/graph.hpp"
#include "localind/node_set.hpp"

namespace localind {

/// (A, B, C), read "B is independent of A given C".
struct IndependenceTriple {
    NodeSet a;
    NodeSet b;
    NodeSet c;

    /// A∖C empty or B empty: holds in every model by the quantifiers of the
    /// separation criterion and of Granger noncausality.
    bool is_trivial() const { return (a - c).empty() || b.empty(); }

    bool operator==(const IndependenceTriple&) const = default;
    auto operator<=>(const IndependenceTriple&) const = default;
};

std::string to_string(const IndependenceTriple& t);

struct IndependenceTripleHash {
    std::size_t operator()(const IndependenceTriple& t) const noexcept;
};

using TripleSet = std::unordered_set<IndependenceTriple, IndependenceTripleHash>;

/// Abstract independence model over {0, ..., n-1}.
///
/// Answers are memoized, so repeated queries are deterministic and
/// query_count() is the number of distinct nontrivial triples evaluated so far.
/// Trivial triples answer true without being counted. Queries are serialized
/// through an internal mutex.
class IndependenceModel {
public:
    explicit IndependenceModel(std::size_t n);
    virtual ~IndependenceModel();
    IndependenceModel(const IndependenceModel&) = delete;
    IndependenceModel& operator=(const IndependenceModel&) = delete;
    IndependenceModel(IndependenceModel&&) noexcept;
    IndependenceModel& operator=(IndependenceModel&&) noexcept;

    std::size_t num_nodes() const { return n_; }

    bool independent(NodeSet a, NodeSet b, NodeSet c) const;
    bool independent(NodeId alpha, NodeId beta, NodeSet c) const {
        return independent(NodeSet::single(alpha), NodeSet::single(beta), c);
    }
    bool independent(const IndependenceTriple& t) const { return independent(t.a, t.b, t.c); }

    /// Cached answer if the triple was already evaluated (trivial triples
    /// always answer true); never triggers an evaluation.
    std::optional<bool> lookup(NodeSet a, NodeSet b, NodeSet c) const;

    std::size_t query_count() const;

    /// Whether the model satisfies left and right decomposition. Pairwise
    /// checking modes rely on this: every composite independence then implies
    /// its singleton parts.
    virtual bool is_decomposition_closed() const = 0;

protected:
    virtual bool evaluate(NodeSet a, NodeSet b, NodeSet c) const = 0;
    void check_triple(NodeSet a, NodeSet b, NodeSet c) const;

private:
    struct QueryCache;

    std::size_t n_;
    std::unique_ptr<QueryCache> cache_;
};

/// I(D): μ-separation in a fixed graph.
class GraphOracleModel final : public IndependenceModel {
public:
    explicit GraphOracleModel(DirectedMixedGraph graph);

    const DirectedMixedGraph& graph() const { return graph_; }
    bool is_decomposition_closed() const override { return true; }

protected:
    bool evaluate(NodeSet a, NodeSet b, NodeSet c) const override;

private:
    DirectedMixedGraph graph_;
};

/// Finite set of triples with exact membership (plus the trivial triples).
class ExplicitModel final : public IndependenceModel {
public:
    explicit ExplicitModel(std::size_t n, std::vector<IndependenceTriple> triples = {},
                           bool decomposition_closed = false);

    /// Stored triples, sorted.
    const std::vector<IndependenceTriple>& triples() const { return sorted_; }
    bool contains(const IndependenceTriple& t) const { return t.is_trivial() || members_.contains(t); }
    bool is_decomposition_closed() const override { return closed_; }

protected:
    bool evaluate(NodeSet a, NodeSet b, NodeSet c) const override;

private:
    std::vector<IndependenceTriple> sorted_;
    TripleSet members_;
    bool closed_;
};

/// I_O: the triples of I with A, B, C ⊆ O, reindexed onto {0, ..., |O|-1}.
class RestrictedModel final : public IndependenceModel {
public:
    RestrictedModel(std::shared_ptr<const IndependenceModel> base, NodeSet observed);

    /// index_map()[new index] = index in the base model.
    const std::vector<NodeId>& index_map() const { return index_map_; }
    bool is_decomposition_closed() const override { return base_->is_decomposition_closed(); }

protected:
    bool evaluate(NodeSet a, NodeSet b, NodeSet c) const override;

private:
    NodeSet lift(NodeSet s) const;

    std::shared_ptr<const IndependenceModel> base_;
    std::vector<NodeId> index_map_;
};

std::shared_ptr<RestrictedModel> restrict_to_observed(std::shared_ptr<const IndependenceModel> model, NodeSet observed);

/// Every nontrivial triple (nonempty A∖C and B) of `model`, as an explicit
/// model flagged decomposition-closed when the source is. Intended for n <= 5.
ExplicitModel materialize(const IndependenceModel& model);

/// Smallest superset closed under left and right decomposition (nonempty
/// sub-sets of A and of B).
ExplicitModel close_under_decomposition(const ExplicitModel& model);

enum class GraphoidProperty { left_decomposition, right_decomposition, left_weak_union, left_contraction };

std::string to_string(GraphoidProperty p);

struct GraphoidViolation {
    GraphoidProperty property;
    std::vector<IndependenceTriple> premises;
    IndependenceTriple missing;
};

/// Every instantiation of the four asymmetric graphoid properties whose
/// premises are in the model and whose conclusion is not.
std::vector<GraphoidViolation> check_graphoids(const ExplicitModel& model);

/// Explicit models as text: one `A;B;C` row per triple, sets comma-joined.
void write_explicit_model(std::ostream& out, const ExplicitModel& model);
/// Node count is one more than the largest index mentioned unless `n` is given.
/// A `closed` first-line comment (`# closed`) sets the decomposition flag.
std::unique_ptr<ExplicitModel> read_explicit_model(std::istream& in, std::optional<std::size_t> n = std::nullopt);
std::unique_ptr<ExplicitModel> load_explicit_model(const std::string& path, std::optional<std::size_t> n = std::nullopt);

/// Calls f(triple) for every nontrivial (A, B, C): A, B nonempty, A ⊄ C.
/// With `singletons_only`, A and B range over single nodes.
template <typename F>
void for_each_nontrivial_triple(std::size_t n, bool singletons_only, F&& f) {
    const NodeSet all = NodeSet::full(n);
    for_each_submask(all, [&](NodeSet c) {
        if (singletons_only) {
            for (NodeId alpha = 0; alpha < n; ++alpha) {
                if (c.contains(alpha)) continue;
                for (NodeId beta = 0; beta < n; ++beta) f(IndependenceTriple{NodeSet::single(alpha), NodeSet::single(beta), c});
            }
            return;
        }
        for_each_submask(all, [&](NodeSet a) {
            if ((a - c).empty()) return;
            for_each_submask(all, [&](NodeSet b) {
                if (!b.empty()) f(IndependenceTriple{a, b, c});
            });
        });
    });
}

} // namespace localind
