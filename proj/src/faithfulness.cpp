#include "localind/faithfulness.hpp"

#include <functional>
#include <stdexcept>

#include "localind/separation.hpp"

namespace localind {

namespace {

using PairPredicate = std::function<bool(NodeSet, NodeSet)>;

// Scans (A, B, C) by increasing C mask, then A, then B, and returns the first
// triple for which `per_c(C)` reports a violation.
FaithfulnessCheck scan_triples(const IndependenceModel& model, TripleScope scope, std::size_t max_c, bool disjoint_only,
                               const std::function<PairPredicate(NodeSet)>& per_c) {
    const std::size_t n = model.num_nodes();
    if (scope == TripleScope::pairwise && !model.is_decomposition_closed()) {
        throw std::invalid_argument("pairwise scope requires a model closed under left and right decomposition");
    }
    const NodeSet all = NodeSet::full(n);
    FaithfulnessCheck result;
    for_each_submask(all, [&](NodeSet c) {
        if (!result.holds || c.size() > max_c) return;
        const PairPredicate violated = per_c(c);
        auto visit = [&](NodeSet a, NodeSet b) {
            if (!result.holds) return;
            if (disjoint_only && (a.intersects(b) || a.intersects(c) || b.intersects(c))) return;
            if (violated(a, b)) {
                result.holds = false;
                result.witness = IndependenceTriple{a, b, c};
            }
        };
        if (scope == TripleScope::pairwise) {
            for (NodeId alpha : all - c) {
                for (NodeId beta = 0; beta < n; ++beta) visit(NodeSet::single(alpha), NodeSet::single(beta));
            }
            return;
        }
        for_each_submask(all, [&](NodeSet a) {
            if ((a - c).empty()) return;
            for_each_submask(all, [&](NodeSet b) {
                if (!b.empty()) visit(a, b);
            });
        });
    });
    return result;
}

// Per node α ∉ C, the β related to α by `relation`.
std::vector<NodeSet> relation_rows(std::size_t n, NodeSet c, const std::function<bool(NodeId, NodeId)>& relation) {
    std::vector<NodeSet> rows(n);
    for (NodeId alpha = 0; alpha < n; ++alpha) {
        if (c.contains(alpha)) continue;
        for (NodeId beta = 0; beta < n; ++beta) {
            if (relation(alpha, beta)) rows[alpha].insert(beta);
        }
    }
    return rows;
}

FaithfulnessCheck check_structural(const IndependenceModel& model, TripleScope scope, bool disjoint_only,
                                   const std::function<std::vector<NodeSet>(NodeSet)>& rows_for) {
    return scan_triples(model, scope, model.num_nodes(), disjoint_only, [&](NodeSet c) -> PairPredicate {
        auto rows = std::make_shared<std::vector<NodeSet>>(rows_for(c));
        return [&model, rows, c](NodeSet a, NodeSet b) {
            bool forced = false;
            for (NodeId alpha : a - c) forced = forced || (*rows)[alpha].intersects(b);
            return forced && model.independent(a, b, c);
        };
    });
}

void check_sizes(const IndependenceModel& model, const DirectedMixedGraph& d) {
    if (model.num_nodes() != d.num_nodes()) throw std::invalid_argument("model and graph have different node counts");
}

// D0–D3 (or E0–E3 when `edge_variant`) for edge α→β and set C, with α ∉ C.
// `connected(x, y)` is "(x, y, C) is not a separation" in D, or "(x, y, C) ∉ I"
// for the E conditions. `emit` returns true to stop early.
bool edge_conditions(const IndependenceModel& model, NodeId alpha, NodeId beta, NodeSet c,
                     const std::function<bool(NodeId, NodeId)>& connected, bool edge_variant,
                     const std::function<bool(Condition, std::optional<NodeId>, std::optional<NodeId>)>& emit) {
    const std::size_t n = model.num_nodes();
    const int base = edge_variant ? static_cast<int>(Condition::E0) : static_cast<int>(Condition::D0);
    auto cond = [&](int offset) { return static_cast<Condition>(base + offset); };
    auto dependent = [&](NodeId x, NodeId y) { return !model.independent(x, y, c); };

    if (!dependent(alpha, beta) && emit(cond(0), std::nullopt, std::nullopt)) return true;
    for (NodeId gamma = 0; gamma < n; ++gamma) {
        if (connected(gamma, alpha) && !dependent(gamma, beta) && emit(cond(1), gamma, std::nullopt)) return true;
    }
    if (c.contains(beta)) {
        std::vector<NodeId> gammas;
        std::vector<NodeId> deltas;
        for (NodeId x = 0; x < n; ++x) {
            if (connected(x, beta)) gammas.push_back(x);
            if (connected(alpha, x)) deltas.push_back(x);
        }
        for (NodeId gamma : gammas) {
            for (NodeId delta : deltas) {
                if (!dependent(gamma, delta) && emit(cond(2), gamma, delta)) return true;
            }
        }
    } else {
        for (NodeId gamma = 0; gamma < n; ++gamma) {
            if (connected(alpha, gamma) && !dependent(beta, gamma) && emit(cond(3), gamma, std::nullopt)) return true;
        }
    }
    return false;
}

bool edge_transitive_ok(const IndependenceModel& model, NodeId alpha, NodeId beta, std::size_t max_c) {
    const NodeSet candidates = NodeSet::full(model.num_nodes()) - NodeSet::single(alpha);
    bool ok = true;
    for_each_submask(candidates, [&](NodeSet c) {
        if (!ok || c.size() > max_c) return;
        auto connected = [&](NodeId x, NodeId y) { return !model.independent(x, y, c); };
        if (edge_conditions(model, alpha, beta, c, connected, true,
                            [](Condition, std::optional<NodeId>, std::optional<NodeId>) { return true; })) {
            ok = false;
        }
    });
    return ok;
}

bool is_markov_table(const IndependenceModel& model, const SeparationTable& table) {
    const std::size_t n = model.num_nodes();
    bool ok = true;
    for_each_nontrivial_triple(n, false, [&](const IndependenceTriple& t) {
        if (ok && table.separated(t.a, t.b, t.c) && !model.independent(t)) ok = false;
    });
    return ok;
}

} // namespace

std::string to_string(Condition c) {
    static constexpr const char* names[] = {"D0", "D1", "D2", "D3", "E0", "E1", "E2", "E3"};
    return names[static_cast<int>(c)];
}

std::string EdgeConditionReport::to_string() const {
    std::string out = localind::to_string(condition) + " edge " + std::to_string(alpha) + "->" + std::to_string(beta) +
                      " C={" + localind::to_string(c) + "}";
    if (gamma) out += " gamma=" + std::to_string(*gamma);
    if (delta) out += " delta=" + std::to_string(*delta);
    return out;
}

std::vector<EdgeConditionReport> check_transitivity(const IndependenceModel& model, const DirectedMixedGraph& d,
                                                    NodeSet c) {
    check_sizes(model, d);
    std::vector<EdgeConditionReport> out;
    auto connected = [&](NodeId x, NodeId y) { return !mu_separated(d, NodeSet::single(x), NodeSet::single(y), c); };
    for (auto [alpha, beta] : d.directed_edges()) {
        if (c.contains(alpha)) continue;
        edge_conditions(model, alpha, beta, c, connected, false,
                        [&](Condition cond, std::optional<NodeId> g, std::optional<NodeId> dl) {
                            out.push_back({alpha, beta, cond, c, g, dl});
                            return false;
                        });
    }
    return out;
}

bool is_transitively_closed(const IndependenceModel& model, const DirectedMixedGraph& d) {
    check_sizes(model, d);
    const SeparationTable table(d);
    const auto edges = d.directed_edges();
    bool ok = true;
    for_each_submask(d.nodes(), [&](NodeSet c) {
        if (!ok) return;
        auto connected = [&](NodeId x, NodeId y) { return !table.separated(x, y, c); };
        for (auto [alpha, beta] : edges) {
            if (c.contains(alpha)) continue;
            if (edge_conditions(model, alpha, beta, c, connected, false,
                                [](Condition, std::optional<NodeId>, std::optional<NodeId>) { return true; })) {
                ok = false;
                return;
            }
        }
    });
    return ok;
}

FaithfulnessCheck check_k_faithful(const IndependenceModel& model, const DirectedMixedGraph& d, std::size_t k,
                                   TripleScope scope) {
    check_sizes(model, d);
    const SeparationTable table(d);
    return scan_triples(model, scope, k, false, [&](NodeSet c) -> PairPredicate {
        return [&model, &table, c](NodeSet a, NodeSet b) { return !table.separated(a, b, c) && model.independent(a, b, c); };
    });
}

bool is_k_faithful(const IndependenceModel& model, const DirectedMixedGraph& d, std::size_t k, TripleScope scope) {
    return check_k_faithful(model, d, k, scope).holds;
}

FaithfulnessCheck check_faithful(const IndependenceModel& model, const DirectedMixedGraph& d, TripleScope scope) {
    return check_k_faithful(model, d, model.num_nodes(), scope);
}

bool is_faithful(const IndependenceModel& model, const DirectedMixedGraph& d, TripleScope scope) {
    return check_faithful(model, d, scope).holds;
}

FaithfulnessCheck check_parent_faithful(const IndependenceModel& model, const DirectedMixedGraph& d, TripleScope scope) {
    check_sizes(model, d);
    return check_structural(model, scope, false, [&](NodeSet c) {
        return relation_rows(d.num_nodes(), c, [&](NodeId alpha, NodeId beta) { return d.has_edge(alpha, beta); });
    });
}

FaithfulnessCheck check_ancestor_faithful(const IndependenceModel& model, const DirectedMixedGraph& d,
                                          TripleScope scope) {
    check_sizes(model, d);
    return check_structural(model, scope, false, [&](NodeSet c) {
        return relation_rows(d.num_nodes(), c,
                             [&](NodeId alpha, NodeId beta) { return exists_connecting_directed_path(d, alpha, beta, c); });
    });
}

FaithfulnessCheck check_trek_faithful(const IndependenceModel& model, const DirectedMixedGraph& d, TripleScope scope,
                                      bool disjoint_only) {
    check_sizes(model, d);
    return check_structural(model, scope, disjoint_only, [&](NodeSet c) {
        return relation_rows(d.num_nodes(), c,
                             [&](NodeId alpha, NodeId beta) { return exists_connecting_trek(d, alpha, beta, c); });
    });
}

FaithfulnessCheck check_parent_dependence(const IndependenceModel& model, const DirectedMixedGraph& d) {
    check_sizes(model, d);
    FaithfulnessCheck result;
    for (auto [alpha, beta] : d.proper_edges()) {
        if (model.independent(alpha, beta, NodeSet::single(beta))) {
            result.holds = false;
            result.witness = IndependenceTriple{NodeSet::single(alpha), NodeSet::single(beta), NodeSet::single(beta)};
            break;
        }
    }
    return result;
}

FaithfulnessCheck check_markov(const IndependenceModel& model, const DirectedMixedGraph& d, TripleScope scope) {
    check_sizes(model, d);
    const SeparationTable table(d);
    return scan_triples(model, scope, model.num_nodes(), false, [&](NodeSet c) -> PairPredicate {
        return [&model, &table, c](NodeSet a, NodeSet b) { return table.separated(a, b, c) && !model.independent(a, b, c); };
    });
}

ConditionHierarchy check_conditions_hierarchy(const IndependenceModel& model, const DirectedMixedGraph& d) {
    check_sizes(model, d);
    const std::size_t n = d.num_nodes();
    const SeparationTable table(d);
    const auto edges = d.directed_edges();
    bool d0 = true, d1p = true, d2 = true, d3p = true;

    for_each_submask(d.nodes(), [&](NodeSet c) {
        // path_into[α]: γ with a μ-connecting directed path γ → … → α given C.
        std::vector<NodeSet> path_into(n);
        std::vector<NodeSet> trek_from(n);
        for (NodeId x = 0; x < n; ++x) {
            for (NodeId y = 0; y < n; ++y) {
                if (exists_connecting_directed_path(d, x, y, c)) path_into[y].insert(x);
                if (exists_connecting_trek(d, x, y, c)) trek_from[x].insert(y);
            }
        }
        auto dependent = [&](NodeId x, NodeId y) { return !model.independent(x, y, c); };
        for (auto [alpha, beta] : edges) {
            if (c.contains(alpha)) continue;
            if (d0 && !dependent(alpha, beta)) d0 = false;
            if (d1p) {
                for (NodeId gamma : path_into[alpha]) {
                    if (!dependent(gamma, beta)) {
                        d1p = false;
                        break;
                    }
                }
            }
            if (c.contains(beta)) {
                if (!d2) continue;
                for (NodeId gamma = 0; gamma < n && d2; ++gamma) {
                    if (table.separated(gamma, beta, c)) continue;
                    for (NodeId delta = 0; delta < n; ++delta) {
                        if (!table.separated(alpha, delta, c) && !dependent(gamma, delta)) {
                            d2 = false;
                            break;
                        }
                    }
                }
            } else if (d3p) {
                for (NodeId gamma : trek_from[alpha]) {
                    if (!dependent(beta, gamma)) {
                        d3p = false;
                        break;
                    }
                }
            }
        }
    });

    ConditionHierarchy h;
    h.d0 = d0;
    h.d0_d1p = d0 && d1p;
    h.d0_d1p_d3p = h.d0_d1p && d3p;
    h.d0_d1p_d2_d3p = h.d0_d1p_d3p && d2;
    return h;
}

std::string to_string(FaithfulnessLevel level) {
    switch (level) {
    case FaithfulnessLevel::parent_dependence: return "parent_dependence";
    case FaithfulnessLevel::causal_minimality: return "causal_minimality";
    case FaithfulnessLevel::parent_faithful: return "parent_faithful";
    case FaithfulnessLevel::ancestor_faithful: return "ancestor_faithful";
    case FaithfulnessLevel::trek_faithful: return "trek_faithful";
    case FaithfulnessLevel::faithful: return "faithful";
    }
    return "unknown";
}

bool check_causal_minimality(const IndependenceModel& model, const DirectedMixedGraph& d, MinimalityMode mode) {
    check_sizes(model, d);
    const std::size_t n = d.num_nodes();
    if (mode == MinimalityMode::pairwise) {
        for (NodeId alpha = 0; alpha < n; ++alpha) {
            const NodeSet rest = d.nodes() - NodeSet::single(alpha);
            for (NodeId beta = 0; beta < n; ++beta) {
                if (alpha == beta) continue;
                if (d.has_edge(alpha, beta) == model.independent(alpha, beta, rest)) return false;
            }
        }
        return true;
    }
    if (!is_markov_table(model, SeparationTable(d))) return false;
    for (auto [alpha, beta] : d.proper_edges()) {
        DirectedMixedGraph smaller = d;
        smaller.remove_edge(alpha, beta);
        if (is_markov_table(model, SeparationTable(smaller))) return false;
    }
    return true;
}

DirectedMixedGraph edge_transitive_graph_bounded(const IndependenceModel& model, std::size_t k) {
    const std::size_t n = model.num_nodes();
    if (n > 0 && k > n - 1) throw std::invalid_argument("k must be at most n - 1");
    DirectedMixedGraph g(n);
    for (NodeId alpha = 0; alpha < n; ++alpha) {
        for (NodeId beta = 0; beta < n; ++beta) {
            if (alpha != beta && edge_transitive_ok(model, alpha, beta, k)) g.add_edge(alpha, beta);
        }
    }
    return g;
}

DirectedMixedGraph edge_transitive_graph(const IndependenceModel& model) {
    const std::size_t n = model.num_nodes();
    return edge_transitive_graph_bounded(model, n == 0 ? 0 : n - 1);
}

DirectedMixedGraph trim(const IndependenceModel& model, const DirectedMixedGraph& d) {
    check_sizes(model, d);
    const std::size_t n = d.num_nodes();
    DirectedMixedGraph g = d;
    // Removing edges only adds separations, so conditions verified earlier
    // keep holding and a single pass suffices.
    auto table = std::make_unique<SeparationTable>(g);
    for (NodeId beta = 0; beta < n; ++beta) {
        for (NodeId alpha = 0; alpha < n; ++alpha) {
            if (alpha == beta || !g.has_edge(alpha, beta)) continue;
            bool violated = false;
            for_each_submask(g.nodes() - NodeSet::single(alpha), [&](NodeSet c) {
                if (violated) return;
                auto connected = [&](NodeId x, NodeId y) { return !table->separated(x, y, c); };
                violated = edge_conditions(model, alpha, beta, c, connected, false,
                                           [](Condition, std::optional<NodeId>, std::optional<NodeId>) { return true; });
            });
            if (violated) {
                g.remove_edge(alpha, beta);
                table = std::make_unique<SeparationTable>(g);
            }
        }
    }
    return g;
}

std::optional<DirectedMixedGraph> find_perfect_map(const IndependenceModel& model) {
    const std::size_t n = model.num_nodes();
    if (n > 4) throw std::invalid_argument("find_perfect_map enumerates all graphs and supports n <= 4");
    std::vector<DirectedEdge> slots;
    for (NodeId a = 0; a < n; ++a) {
        for (NodeId b = 0; b < n; ++b) {
            if (a != b) slots.emplace_back(a, b);
        }
    }
    // Singleton answers of the model, indexed like the separation table.
    std::vector<std::tuple<NodeId, NodeId, NodeSet, bool>> singles;
    for_each_nontrivial_triple(n, true, [&](const IndependenceTriple& t) {
        singles.emplace_back(t.a.first(), t.b.first(), t.c, model.independent(t));
    });

    const std::uint64_t total = std::uint64_t{1} << slots.size();
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        DirectedMixedGraph g(n);
        for (std::size_t i = 0; i < slots.size(); ++i) {
            if ((mask >> i) & 1U) g.add_edge(slots[i].first, slots[i].second);
        }
        const SeparationTable table(g);
        bool match = true;
        for (const auto& [alpha, beta, c, indep] : singles) {
            if (table.separated(alpha, beta, c) != indep) {
                match = false;
                break;
            }
        }
        if (!match) continue;
        for_each_nontrivial_triple(n, false, [&](const IndependenceTriple& t) {
            if (match && table.separated(t.a, t.b, t.c) != model.independent(t)) match = false;
        });
        if (match) return g;
    }
    return std::nullopt;
}

} // namespace localind
