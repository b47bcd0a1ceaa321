#include "localind/learn.hpp"

#include <stdexcept>

namespace localind {

namespace {

class Run {
public:
    explicit Run(const IndependenceModel& model)
        : model_(model), start_(model.query_count()), graph_(DirectedMixedGraph::complete(model.num_nodes())) {}

    bool query(NodeId alpha, NodeId beta, NodeSet c) {
        const bool independent = model_.independent(alpha, beta, c);
        audit_.push_back({alpha, beta, c, independent});
        if (independent) graph_.remove_edge(alpha, beta);
        return independent;
    }

    DirectedMixedGraph& graph() { return graph_; }

    LearnResult finish() { return {std::move(graph_), model_.query_count() - start_, std::move(audit_)}; }

private:
    const IndependenceModel& model_;
    std::size_t start_;
    DirectedMixedGraph graph_;
    std::vector<AuditEntry> audit_;
};

std::size_t checked_bound(const IndependenceModel& model, std::optional<std::size_t> bound, const char* what) {
    const std::size_t n = model.num_nodes();
    const std::size_t top = n == 0 ? 0 : n - 1;
    if (!bound) return top;
    if (*bound > top) throw std::invalid_argument(std::string(what) + " must be at most n - 1");
    return *bound;
}

} // namespace

DirectedMixedGraph replay_audit(std::size_t n, const std::vector<AuditEntry>& audit) {
    DirectedMixedGraph g = DirectedMixedGraph::complete(n);
    for (const auto& e : audit) {
        if (e.independent && e.alpha != e.beta) g.remove_edge(e.alpha, e.beta);
    }
    return g;
}

LearnResult cm(const IndependenceModel& model) {
    Run run(model);
    const NodeSet all = NodeSet::full(model.num_nodes());
    for (NodeId alpha = 0; alpha < model.num_nodes(); ++alpha) {
        for (NodeId beta = 0; beta < model.num_nodes(); ++beta) {
            if (alpha != beta) run.query(alpha, beta, all - NodeSet::single(alpha));
        }
    }
    return run.finish();
}

LearnResult cs(const IndependenceModel& model) {
    Run run(model);
    const std::size_t n = model.num_nodes();
    for (NodeId beta = 0; beta < n; ++beta) {
        for (NodeId alpha = 0; alpha < n; ++alpha) {
            if (alpha != beta) run.query(alpha, beta, NodeSet::single(beta));
        }
    }
    for (NodeId beta = 0; beta < n; ++beta) {
        for (NodeId alpha = 0; alpha < n; ++alpha) {
            if (alpha == beta || !run.graph().has_edge(alpha, beta)) continue;
            run.query(alpha, beta, run.graph().parents(beta) - NodeSet::single(alpha));
        }
    }
    return run.finish();
}

LearnResult ca(const IndependenceModel& model, std::optional<std::size_t> max_level) {
    const std::size_t top = checked_bound(model, max_level, "max_level");
    const std::size_t n = model.num_nodes();
    Run run(model);
    for (std::size_t k = 0; k <= top; ++k) {
        bool any_candidate = false;
        for (NodeId beta = 0; beta < n; ++beta) {
            for (NodeId alpha = 0; alpha < n; ++alpha) {
                if (alpha == beta || !run.graph().has_edge(alpha, beta)) continue;
                const NodeSet candidates = run.graph().parents(beta) - NodeSet::single(alpha);
                if (candidates.size() < k) continue;
                any_candidate = true;
                any_subset_of_size(candidates, k, [&](NodeSet c) { return run.query(alpha, beta, c); });
            }
        }
        if (!any_candidate) break;
    }
    return run.finish();
}

LearnResult dsgs(const IndependenceModel& model, std::optional<std::size_t> k) {
    const std::size_t top = checked_bound(model, k, "k");
    const std::size_t n = model.num_nodes();
    Run run(model);
    for (std::size_t i = 0; i <= top; ++i) {
        for (NodeId beta = 0; beta < n; ++beta) {
            for (NodeId alpha = 0; alpha < n; ++alpha) {
                if (alpha == beta || !run.graph().has_edge(alpha, beta)) continue;
                const NodeSet candidates = NodeSet::full(n) - NodeSet::single(alpha);
                any_subset_of_size(candidates, i, [&](NodeSet c) { return run.query(alpha, beta, c); });
            }
        }
    }
    return run.finish();
}

std::string to_string(Algorithm a) {
    switch (a) {
    case Algorithm::cm: return "cm";
    case Algorithm::cs: return "cs";
    case Algorithm::ca: return "ca";
    case Algorithm::dsgs: return "dsgs";
    }
    return "unknown";
}

Algorithm parse_algorithm(const std::string& name) {
    if (name == "cm") return Algorithm::cm;
    if (name == "cs") return Algorithm::cs;
    if (name == "ca") return Algorithm::ca;
    if (name == "dsgs") return Algorithm::dsgs;
    throw std::invalid_argument("unknown algorithm '" + name + "' (expected cm, cs, ca or dsgs)");
}

LearnResult learn(Algorithm algorithm, const IndependenceModel& model, std::optional<std::size_t> parameter) {
    switch (algorithm) {
    case Algorithm::cm: return cm(model);
    case Algorithm::cs: return cs(model);
    case Algorithm::ca: return ca(model, parameter);
    case Algorithm::dsgs: return dsgs(model, parameter);
    }
    throw std::invalid_argument("unknown algorithm");
}

} // namespace localind
