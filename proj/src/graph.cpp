#include "localind/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "localind/separation.hpp"

namespace localind {

DirectedMixedGraph::DirectedMixedGraph(std::size_t n)
    : n_(n), parents_(n), children_(n), siblings_(n) {
    if (n > NodeSet::kMaxNodes) throw std::invalid_argument("graphs are limited to 64 nodes");
    for (NodeId v = 0; v < n; ++v) {
        parents_[v].insert(v);
        children_[v].insert(v);
    }
}

DirectedMixedGraph::DirectedMixedGraph(std::size_t n, const std::vector<DirectedEdge>& directed,
                                       const std::vector<DirectedEdge>& bidirected)
    : DirectedMixedGraph(n) {
    for (auto [from, to] : directed) add_edge(from, to);
    for (auto [a, b] : bidirected) add_bidirected(a, b);
}

DirectedMixedGraph DirectedMixedGraph::complete(std::size_t n) {
    DirectedMixedGraph g(n);
    for (NodeId v = 0; v < n; ++v) {
        g.parents_[v] = g.nodes();
        g.children_[v] = g.nodes();
    }
    return g;
}

void DirectedMixedGraph::check_node(NodeId v) const {
    if (v >= n_) {
        throw std::invalid_argument("node " + std::to_string(v) + " out of range for a graph with " +
                                    std::to_string(n_) + " nodes");
    }
}

void DirectedMixedGraph::add_edge(NodeId from, NodeId to) {
    check_node(from);
    check_node(to);
    parents_[to].insert(from);
    children_[from].insert(to);
}

void DirectedMixedGraph::remove_edge(NodeId from, NodeId to) {
    check_node(from);
    check_node(to);
    if (from == to) throw std::invalid_argument("self-loops cannot be removed");
    parents_[to].erase(from);
    children_[from].erase(to);
}

void DirectedMixedGraph::add_bidirected(NodeId a, NodeId b) {
    check_node(a);
    check_node(b);
    if (a == b) throw std::invalid_argument("bidirected self-loops are not supported");
    siblings_[a].insert(b);
    siblings_[b].insert(a);
}

void DirectedMixedGraph::remove_bidirected(NodeId a, NodeId b) {
    check_node(a);
    check_node(b);
    siblings_[a].erase(b);
    siblings_[b].erase(a);
}

std::vector<DirectedEdge> DirectedMixedGraph::directed_edges() const {
    std::vector<DirectedEdge> out;
    for (NodeId from = 0; from < n_; ++from) {
        for (NodeId to : children_[from]) out.emplace_back(from, to);
    }
    return out;
}

std::vector<DirectedEdge> DirectedMixedGraph::bidirected_edges() const {
    std::vector<DirectedEdge> out;
    for (NodeId a = 0; a < n_; ++a) {
        for (NodeId b : siblings_[a]) {
            if (a < b) out.emplace_back(a, b);
        }
    }
    return out;
}

std::vector<DirectedEdge> DirectedMixedGraph::proper_edges() const {
    std::vector<DirectedEdge> out;
    for (NodeId from = 0; from < n_; ++from) {
        for (NodeId to : children_[from] - NodeSet::single(from)) out.emplace_back(from, to);
    }
    return out;
}

std::size_t DirectedMixedGraph::num_proper_edges() const {
    std::size_t total = 0;
    for (NodeId v = 0; v < n_; ++v) total += parents_[v].size() - 1;
    return total;
}

bool DirectedMixedGraph::has_bidirected_edges() const {
    return std::any_of(siblings_.begin(), siblings_.end(), [](NodeSet s) { return !s.empty(); });
}

DirectedMixedGraph DirectedMixedGraph::directed_part() const {
    DirectedMixedGraph out = *this;
    for (auto& s : out.siblings_) s = NodeSet{};
    return out;
}

NodeSet ancestors(const DirectedMixedGraph& g, NodeSet b) {
    NodeSet result = b & g.nodes();
    NodeSet frontier = result;
    while (!frontier.empty()) {
        NodeSet next;
        for (NodeId v : frontier) next |= g.parents(v);
        frontier = next - result;
        result |= next;
    }
    return result;
}

bool is_subgraph(const DirectedMixedGraph& sub, const DirectedMixedGraph& super) {
    if (sub.num_nodes() != super.num_nodes()) throw std::invalid_argument("is_subgraph: node counts differ");
    for (NodeId v = 0; v < sub.num_nodes(); ++v) {
        if (!sub.parents(v).is_subset_of(super.parents(v))) return false;
        if (!sub.siblings(v).is_subset_of(super.siblings(v))) return false;
    }
    return true;
}

namespace {

// Observed nodes reachable from `start` by a nontrivial directed path whose
// nonendpoint nodes are all hidden.
NodeSet observed_reach(const DirectedMixedGraph& d, NodeId start, NodeSet observed) {
    NodeSet reached;
    NodeSet seen_hidden;
    NodeSet frontier = NodeSet::single(start);
    while (!frontier.empty()) {
        NodeSet next;
        for (NodeId v : frontier) next |= d.children(v);
        reached |= next & observed;
        NodeSet hidden = next - observed - seen_hidden;
        seen_hidden |= hidden;
        frontier = hidden;
    }
    return reached;
}

} // namespace

LatentProjection latent_projection(const DirectedMixedGraph& d, NodeSet observed) {
    if (d.has_bidirected_edges()) throw std::invalid_argument("latent_projection expects a directed graph");
    if (!observed.is_subset_of(d.nodes())) throw std::invalid_argument("observed set is not a subset of V");

    LatentProjection out;
    out.index_map = observed.members();
    std::vector<NodeId> new_index(d.num_nodes(), 0);
    for (NodeId i = 0; i < out.index_map.size(); ++i) new_index[out.index_map[i]] = i;

    out.graph = DirectedMixedGraph(out.index_map.size());
    for (NodeId from : observed) {
        for (NodeId to : observed_reach(d, from, observed)) out.graph.add_edge(new_index[from], new_index[to]);
    }
    for (NodeId hidden : d.nodes() - observed) {
        const std::vector<NodeId> reached = observed_reach(d, hidden, observed).members();
        for (std::size_t i = 0; i < reached.size(); ++i) {
            for (std::size_t j = i + 1; j < reached.size(); ++j) {
                out.graph.add_bidirected(new_index[reached[i]], new_index[reached[j]]);
                out.has_bidirected = true;
            }
        }
    }
    return out;
}

PairOrder pair_order(const DirectedMixedGraph& d, NodeId alpha, NodeId beta) {
    if (alpha == beta) throw std::invalid_argument("pair_order requires alpha != beta");
    if (alpha >= d.num_nodes() || beta >= d.num_nodes()) throw std::invalid_argument("pair_order: node out of range");
    const NodeSet candidates = d.nodes() - NodeSet::single(alpha);
    const NodeSet a = NodeSet::single(alpha);
    const NodeSet b = NodeSet::single(beta);
    for (std::size_t k = 0; k <= candidates.size(); ++k) {
        if (any_subset_of_size(candidates, k, [&](NodeSet c) { return mu_separated(d, a, b, c); })) return k;
    }
    return std::nullopt;
}

GraphOrder graph_order(const DirectedMixedGraph& d) {
    GraphOrder out;
    for (NodeId alpha = 0; alpha < d.num_nodes(); ++alpha) {
        for (NodeId beta = 0; beta < d.num_nodes(); ++beta) {
            if (alpha == beta) continue;
            if (PairOrder o = pair_order(d, alpha, beta)) {
                out.has_finite_pair = true;
                out.value = std::max(out.value, *o);
            }
        }
    }
    return out;
}

DirectedMixedGraph sample_graph(std::size_t n, Rng& rng) {
    if (n == 0) throw std::invalid_argument("sample_graph requires n >= 1");
    std::uniform_real_distribution<double> density(0.0, 0.5);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    const double p = density(rng);
    DirectedMixedGraph g(n);
    for (NodeId from = 0; from < n; ++from) {
        for (NodeId to = 0; to < n; ++to) {
            if (from != to && coin(rng) < p) g.add_edge(from, to);
        }
    }
    return g;
}

void write_graph(std::ostream& out, const DirectedMixedGraph& g) {
    out << "n=" << g.num_nodes() << '\n';
    for (auto [from, to] : g.directed_edges()) out << from << " -> " << to << '\n';
    for (auto [a, b] : g.bidirected_edges()) out << a << " <-> " << b << '\n';
}

std::string format_graph(const DirectedMixedGraph& g) {
    std::ostringstream out;
    write_graph(out, g);
    return out.str();
}

namespace {

std::string trim_copy(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

NodeId parse_index(const std::string& token, std::size_t line_no) {
    std::size_t used = 0;
    unsigned long value = 0;
    try {
        value = std::stoul(token, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != token.size()) {
        throw std::invalid_argument("graph line " + std::to_string(line_no) + ": bad node '" + token + "'");
    }
    return value;
}

} // namespace

DirectedMixedGraph read_graph(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    std::optional<DirectedMixedGraph> g;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim_copy(line);
        if (line.empty() || line.front() == '#') continue;
        if (!g) {
            if (line.rfind("n=", 0) != 0) throw std::invalid_argument("graph file must start with 'n=<int>'");
            g.emplace(parse_index(trim_copy(line.substr(2)), line_no));
            continue;
        }
        bool bidirected = true;
        auto arrow = line.find("<->");
        std::size_t width = 3;
        if (arrow == std::string::npos) {
            bidirected = false;
            arrow = line.find("->");
            width = 2;
        }
        if (arrow == std::string::npos) {
            throw std::invalid_argument("graph line " + std::to_string(line_no) + ": expected 'a -> b' or 'a <-> b'");
        }
        const NodeId a = parse_index(trim_copy(line.substr(0, arrow)), line_no);
        const NodeId b = parse_index(trim_copy(line.substr(arrow + width)), line_no);
        if (bidirected) {
            g->add_bidirected(a, b);
        } else {
            g->add_edge(a, b);
        }
    }
    if (!g) throw std::invalid_argument("graph file is empty");
    return *g;
}

DirectedMixedGraph parse_graph(const std::string& text) {
    std::istringstream in(text);
    return read_graph(in);
}

DirectedMixedGraph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open graph file " + path);
    return read_graph(in);
}

void save_graph(const std::string& path, const DirectedMixedGraph& g) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write graph file " + path);
    write_graph(out, g);
}

} // namespace localind
