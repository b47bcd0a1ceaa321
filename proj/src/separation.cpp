#include "localind/separation.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <functional>
#include <stdexcept>

namespace localind {

namespace {

constexpr std::size_t mark_index(Mark m) { return m == Mark::head ? 1 : 0; }

// Nodes reachable from `sources` (taken as walk starts, so unconstrained) by a
// nonempty walk ending with a head, where every intermediate collider lies in
// `collider_ok` and every intermediate noncollider lies outside `c`.
NodeSet reachable_heads(const DirectedMixedGraph& d, NodeSet sources, NodeSet c, NodeSet collider_ok) {
    std::array<NodeSet, 2> seen{};
    std::deque<std::pair<NodeId, Mark>> queue;
    auto push = [&](NodeSet targets, Mark arrival) {
        NodeSet fresh = targets - seen[mark_index(arrival)];
        seen[mark_index(arrival)] |= fresh;
        for (NodeId w : fresh) queue.emplace_back(w, arrival);
    };
    for (NodeId s : sources) {
        push(d.children(s), Mark::head);
        push(d.parents(s), Mark::tail);
        push(d.siblings(s), Mark::head);
    }
    while (!queue.empty()) {
        auto [v, arrival] = queue.front();
        queue.pop_front();
        const bool outside_c = !c.contains(v);
        if (outside_c) push(d.children(v), Mark::head);
        const bool head_leave_ok = arrival == Mark::head ? collider_ok.contains(v) : outside_c;
        if (head_leave_ok) {
            push(d.parents(v), Mark::tail);
            push(d.siblings(v), Mark::head);
        }
    }
    return seen[mark_index(Mark::head)];
}

// Nodes reached from x by a nontrivial directed path whose intermediate nodes avoid c.
NodeSet directed_reach(const DirectedMixedGraph& d, NodeId x, NodeSet c) {
    NodeSet reached = d.children(x);
    NodeSet expanded = NodeSet::single(x);
    NodeSet frontier = reached - c;
    while (!frontier.empty()) {
        expanded |= frontier;
        NodeSet next;
        for (NodeId v : frontier) next |= d.children(v);
        reached |= next;
        frontier = (next - c) - expanded;
    }
    return reached;
}

struct Move {
    WalkStep step;
    NodeId next;
    std::size_t traversal; // index of (edge, direction)
};

std::vector<std::vector<Move>> build_moves(const DirectedMixedGraph& d) {
    const std::size_t n = d.num_nodes();
    std::vector<std::vector<Move>> moves(n);
    // directed edge u->v: forward traversal 2*(u*n+v), backward +1; bidirected
    // {a,b}: offset 2n², direction by endpoint order.
    for (NodeId u = 0; u < n; ++u) {
        for (NodeId v : d.children(u)) {
            const std::size_t id = 2 * (u * n + v);
            moves[u].push_back({{EdgeKind::directed, u, v, Mark::tail, Mark::head}, v, id});
            moves[v].push_back({{EdgeKind::directed, u, v, Mark::head, Mark::tail}, u, id + 1});
        }
        for (NodeId w : d.siblings(u)) {
            const NodeId lo = std::min(u, w);
            const NodeId hi = std::max(u, w);
            const std::size_t id = 2 * n * n + 2 * (lo * n + hi) + (u == lo ? 0 : 1);
            moves[u].push_back({{EdgeKind::bidirected, lo, hi, Mark::head, Mark::head}, w, id});
        }
    }
    return moves;
}

} // namespace

std::string WalkWitness::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (i > 0) {
            const WalkStep& s = steps[i - 1];
            if (s.kind == EdgeKind::bidirected) {
                out += " <-> ";
            } else if (s.mark_at_end == Mark::head) {
                out += " -> ";
            } else {
                out += " <- ";
            }
        }
        out += std::to_string(nodes[i]);
    }
    return out;
}

bool mu_separated(const DirectedMixedGraph& d, NodeSet a, NodeSet b, NodeSet c) {
    const NodeSet sources = a - c;
    if (sources.empty() || b.empty()) return true;
    return !reachable_heads(d, sources, c, ancestors(d, c)).intersects(b);
}

bool mu_separated_oracle(const DirectedMixedGraph& d, NodeSet a, NodeSet b, NodeSet c) {
    const NodeSet sources = a - c;
    if (sources.empty() || b.empty()) return true;
    const NodeSet an_c = ancestors(d, c);
    const auto moves = build_moves(d);
    const std::size_t n = d.num_nodes();
    std::vector<bool> used(4 * n * n, false);
    // A walk that enters the same node with the same mark twice can drop the
    // loop in between without changing any collider status, so such repeats
    // never need exploring. Without this cut, trails through bidirected
    // cliques blow up.
    std::vector<bool> entered(2 * n, false);

    // Walk prefix ending at v, arrived with `arrival`; returns true on a
    // connecting walk.
    std::function<bool(NodeId, Mark)> extend = [&](NodeId v, Mark arrival) -> bool {
        for (const Move& m : moves[v]) {
            if (used[m.traversal]) continue;
            const bool collider = arrival == Mark::head && m.step.mark_at_start == Mark::head;
            if (collider ? !an_c.contains(v) : c.contains(v)) continue;
            if (m.step.mark_at_end == Mark::head && b.contains(m.next)) return true;
            const std::size_t state = 2 * m.next + mark_index(m.step.mark_at_end);
            if (entered[state]) continue;
            used[m.traversal] = true;
            entered[state] = true;
            const bool found = extend(m.next, m.step.mark_at_end);
            used[m.traversal] = false;
            entered[state] = false;
            if (found) return true;
        }
        return false;
    };

    for (NodeId alpha : sources) {
        for (const Move& m : moves[alpha]) {
            if (m.step.mark_at_end == Mark::head && b.contains(m.next)) return false;
            const std::size_t state = 2 * m.next + mark_index(m.step.mark_at_end);
            used[m.traversal] = true;
            entered[state] = true;
            const bool found = extend(m.next, m.step.mark_at_end);
            used[m.traversal] = false;
            entered[state] = false;
            if (found) return false;
        }
    }
    return true;
}

std::optional<WalkWitness> connecting_walk_witness(const DirectedMixedGraph& d, NodeSet a, NodeSet b, NodeSet c) {
    const NodeSet sources = a - c;
    if (sources.empty() || b.empty()) return std::nullopt;
    const std::size_t n = d.num_nodes();
    const auto moves = build_moves(d);

    struct Pred {
        bool seen = false;
        bool from_start = false;
        NodeId node = 0;
        Mark arrival = Mark::tail;
        WalkStep step;
    };
    std::vector<Pred> pred(2 * n);
    auto slot = [](NodeId v, Mark m) { return 2 * v + mark_index(m); };
    std::deque<std::pair<NodeId, Mark>> queue;
    std::optional<std::pair<NodeId, Mark>> hit;

    auto visit = [&](const Move& m, bool from_start, NodeId from, Mark from_arrival) {
        Pred& p = pred[slot(m.next, m.step.mark_at_end)];
        if (p.seen) return;
        p = {true, from_start, from, from_arrival, m.step};
        if (m.step.mark_at_end == Mark::head && b.contains(m.next) && !hit) hit.emplace(m.next, Mark::head);
        queue.emplace_back(m.next, m.step.mark_at_end);
    };

    for (NodeId alpha : sources) {
        for (const Move& m : moves[alpha]) visit(m, true, alpha, Mark::tail);
    }
    while (!queue.empty() && !hit) {
        auto [v, arrival] = queue.front();
        queue.pop_front();
        for (const Move& m : moves[v]) {
            const bool collider = arrival == Mark::head && m.step.mark_at_start == Mark::head;
            if (collider ? !c.contains(v) : c.contains(v)) continue;
            visit(m, false, v, arrival);
        }
    }
    if (!hit) return std::nullopt;

    WalkWitness w;
    std::pair<NodeId, Mark> cur = *hit;
    w.nodes.push_back(cur.first);
    while (true) {
        const Pred& p = pred[slot(cur.first, cur.second)];
        w.steps.push_back(p.step);
        w.nodes.push_back(p.node);
        if (p.from_start) break;
        cur = {p.node, p.arrival};
    }
    std::reverse(w.nodes.begin(), w.nodes.end());
    std::reverse(w.steps.begin(), w.steps.end());
    return w;
}

bool is_mu_connecting_walk(const DirectedMixedGraph& d, const WalkWitness& walk, NodeSet a, NodeSet b, NodeSet c,
                           bool colliders_in_c) {
    const std::size_t len = walk.steps.size();
    if (len == 0 || walk.nodes.size() != len + 1) return false;
    for (NodeId v : walk.nodes) {
        if (v >= d.num_nodes()) return false;
    }
    if (!(a - c).contains(walk.nodes.front()) || !b.contains(walk.nodes.back())) return false;
    if (walk.steps.back().mark_at_end != Mark::head) return false;

    for (std::size_t i = 0; i < len; ++i) {
        const WalkStep& s = walk.steps[i];
        const NodeId from = walk.nodes[i];
        const NodeId to = walk.nodes[i + 1];
        if (s.kind == EdgeKind::bidirected) {
            if (s.mark_at_start != Mark::head || s.mark_at_end != Mark::head) return false;
            if (s.tail >= d.num_nodes() || s.head >= d.num_nodes() || !d.has_bidirected(s.tail, s.head)) return false;
            if (!((from == s.tail && to == s.head) || (from == s.head && to == s.tail))) return false;
        } else if (s.mark_at_start == Mark::tail && s.mark_at_end == Mark::head) {
            if (from != s.tail || to != s.head || !d.has_edge(s.tail, s.head)) return false;
        } else if (s.mark_at_start == Mark::head && s.mark_at_end == Mark::tail) {
            if (from != s.head || to != s.tail || !d.has_edge(s.tail, s.head)) return false;
        } else {
            return false;
        }
    }

    const NodeSet collider_ok = colliders_in_c ? c : ancestors(d, c);
    for (std::size_t i = 1; i < len; ++i) {
        const NodeId v = walk.nodes[i];
        const bool collider = walk.steps[i - 1].mark_at_end == Mark::head && walk.steps[i].mark_at_start == Mark::head;
        if (collider ? !collider_ok.contains(v) : c.contains(v)) return false;
    }
    return true;
}

bool exists_connecting_directed_path(const DirectedMixedGraph& d, NodeId alpha, NodeId beta, NodeSet c) {
    if (c.contains(alpha)) return false;
    return directed_reach(d, alpha, c).contains(beta);
}

bool exists_connecting_trek(const DirectedMixedGraph& d, NodeId alpha, NodeId beta, NodeSet c) {
    if (c.contains(alpha)) return false;
    const std::size_t n = d.num_nodes();
    std::vector<NodeSet> reach(n);
    for (NodeId x = 0; x < n; ++x) reach[x] = directed_reach(d, x, c);

    // Trek sources: α itself, or a node outside C with a directed C-avoiding path into α.
    NodeSet tops = NodeSet::single(alpha);
    for (NodeId g : d.nodes() - c) {
        if (reach[g].contains(alpha)) tops.insert(g);
    }
    for (NodeId g : tops) {
        if (reach[g].contains(beta)) return true;
        for (NodeId g2 : d.siblings(g)) {
            if (g2 == beta) return true;
            if (!c.contains(g2) && reach[g2].contains(beta)) return true;
        }
    }
    return false;
}

SeparationTable::SeparationTable(const DirectedMixedGraph& d) : n_(d.num_nodes()) {
    if (n_ > 16) throw std::invalid_argument("SeparationTable supports at most 16 nodes");
    bits_.assign((n_ * n_) << n_, true);
    for_each_submask(d.nodes(), [&](NodeSet c) {
        const NodeSet an_c = ancestors(d, c);
        for (NodeId alpha = 0; alpha < n_; ++alpha) {
            if (c.contains(alpha)) continue;
            for (NodeId beta : reachable_heads(d, NodeSet::single(alpha), c, an_c)) bits_[index(alpha, beta, c)] = false;
        }
    });
}

bool SeparationTable::separated(NodeSet a, NodeSet b, NodeSet c) const {
    for (NodeId alpha : a - c) {
        for (NodeId beta : b) {
            if (!separated(alpha, beta, c)) return false;
        }
    }
    return true;
}

} // namespace localind
