#include "localind/independence.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

#include "localind/separation.hpp"

namespace localind {

std::string to_string(const IndependenceTriple& t) {
    return "({" + to_string(t.a) + "}, {" + to_string(t.b) + "}, {" + to_string(t.c) + "})";
}

std::size_t IndependenceTripleHash::operator()(const IndependenceTriple& t) const noexcept {
    std::uint64_t h = t.a.bits() * 0x9e3779b97f4a7c15ULL;
    h ^= t.b.bits() + 0x7f4a7c159e3779b9ULL + (h << 6) + (h >> 2);
    h ^= t.c.bits() + 0x94d049bb133111ebULL + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
}

struct IndependenceModel::QueryCache {
    std::mutex mutex;
    std::unordered_map<IndependenceTriple, bool, IndependenceTripleHash> answers;
};

IndependenceModel::IndependenceModel(std::size_t n) : n_(n), cache_(std::make_unique<QueryCache>()) {
    if (n > NodeSet::kMaxNodes) throw std::invalid_argument("independence models are limited to 64 nodes");
}

IndependenceModel::~IndependenceModel() = default;
IndependenceModel::IndependenceModel(IndependenceModel&&) noexcept = default;
IndependenceModel& IndependenceModel::operator=(IndependenceModel&&) noexcept = default;

void IndependenceModel::check_triple(NodeSet a, NodeSet b, NodeSet c) const {
    const NodeSet all = NodeSet::full(n_);
    if (!a.is_subset_of(all) || !b.is_subset_of(all) || !c.is_subset_of(all)) {
        throw std::invalid_argument("triple " + to_string(IndependenceTriple{a, b, c}) + " mentions nodes outside a model with " +
                                    std::to_string(n_) + " nodes");
    }
}

bool IndependenceModel::independent(NodeSet a, NodeSet b, NodeSet c) const {
    check_triple(a, b, c);
    const IndependenceTriple t{a, b, c};
    if (t.is_trivial()) return true;
    std::lock_guard lock(cache_->mutex);
    if (auto it = cache_->answers.find(t); it != cache_->answers.end()) return it->second;
    const bool answer = evaluate(a, b, c);
    cache_->answers.emplace(t, answer);
    return answer;
}

std::optional<bool> IndependenceModel::lookup(NodeSet a, NodeSet b, NodeSet c) const {
    const IndependenceTriple t{a, b, c};
    if (t.is_trivial()) return true;
    std::lock_guard lock(cache_->mutex);
    if (auto it = cache_->answers.find(t); it != cache_->answers.end()) return it->second;
    return std::nullopt;
}

std::size_t IndependenceModel::query_count() const {
    std::lock_guard lock(cache_->mutex);
    return cache_->answers.size();
}

GraphOracleModel::GraphOracleModel(DirectedMixedGraph graph)
    : IndependenceModel(graph.num_nodes()), graph_(std::move(graph)) {}

bool GraphOracleModel::evaluate(NodeSet a, NodeSet b, NodeSet c) const { return mu_separated(graph_, a, b, c); }

ExplicitModel::ExplicitModel(std::size_t n, std::vector<IndependenceTriple> triples, bool decomposition_closed)
    : IndependenceModel(n), closed_(decomposition_closed) {
    for (const auto& t : triples) {
        check_triple(t.a, t.b, t.c);
        if (!t.is_trivial()) members_.insert(t);
    }
    sorted_.assign(members_.begin(), members_.end());
    std::sort(sorted_.begin(), sorted_.end());
}

bool ExplicitModel::evaluate(NodeSet a, NodeSet b, NodeSet c) const {
    return members_.contains(IndependenceTriple{a, b, c});
}

RestrictedModel::RestrictedModel(std::shared_ptr<const IndependenceModel> base, NodeSet observed)
    : IndependenceModel(observed.size()), base_(std::move(base)), index_map_(observed.members()) {
    if (!base_) throw std::invalid_argument("RestrictedModel needs a base model");
    if (!observed.is_subset_of(NodeSet::full(base_->num_nodes()))) {
        throw std::invalid_argument("observed set is not a subset of the model's nodes");
    }
}

NodeSet RestrictedModel::lift(NodeSet s) const {
    NodeSet out;
    for (NodeId v : s) out.insert(index_map_[v]);
    return out;
}

bool RestrictedModel::evaluate(NodeSet a, NodeSet b, NodeSet c) const {
    return base_->independent(lift(a), lift(b), lift(c));
}

std::shared_ptr<RestrictedModel> restrict_to_observed(std::shared_ptr<const IndependenceModel> model, NodeSet observed) {
    return std::make_shared<RestrictedModel>(std::move(model), observed);
}

ExplicitModel materialize(const IndependenceModel& model) {
    std::vector<IndependenceTriple> triples;
    for_each_nontrivial_triple(model.num_nodes(), false, [&](const IndependenceTriple& t) {
        if (model.independent(t)) triples.push_back(t);
    });
    return ExplicitModel(model.num_nodes(), std::move(triples), model.is_decomposition_closed());
}

ExplicitModel close_under_decomposition(const ExplicitModel& model) {
    TripleSet closed;
    for (const auto& t : model.triples()) {
        for_each_submask(t.a, [&](NodeSet a) {
            if ((a - t.c).empty()) return;
            for_each_submask(t.b, [&](NodeSet b) {
                if (!b.empty()) closed.insert(IndependenceTriple{a, b, t.c});
            });
        });
    }
    return ExplicitModel(model.num_nodes(), {closed.begin(), closed.end()}, true);
}

std::string to_string(GraphoidProperty p) {
    switch (p) {
    case GraphoidProperty::left_decomposition: return "left_decomposition";
    case GraphoidProperty::right_decomposition: return "right_decomposition";
    case GraphoidProperty::left_weak_union: return "left_weak_union";
    case GraphoidProperty::left_contraction: return "left_contraction";
    }
    return "unknown";
}

std::vector<GraphoidViolation> check_graphoids(const ExplicitModel& model) {
    std::vector<GraphoidViolation> out;
    const NodeSet all = NodeSet::full(model.num_nodes());
    auto report = [&](GraphoidProperty p, std::vector<IndependenceTriple> premises, IndependenceTriple missing) {
        out.push_back({p, std::move(premises), missing});
    };

    // Decomposition and weak union only have nontrivial conclusions from
    // nontrivial premises, so the stored triples suffice.
    for (const auto& t : model.triples()) {
        for_each_submask(t.a, [&](NodeSet d) {
            if (d.empty()) return;
            const IndependenceTriple left{d, t.b, t.c};
            if (!model.contains(left)) report(GraphoidProperty::left_decomposition, {t}, left);
            const IndependenceTriple weak{t.a, t.b, t.c | d};
            if (!model.contains(weak)) report(GraphoidProperty::left_weak_union, {t}, weak);
        });
        for_each_submask(t.b, [&](NodeSet d) {
            if (d.empty()) return;
            const IndependenceTriple right{t.a, d, t.c};
            if (!model.contains(right)) report(GraphoidProperty::right_decomposition, {t}, right);
        });
    }

    // Contraction: the first premise may be trivial (A ⊆ C) while the
    // conclusion is not, so every A is enumerated.
    for_each_submask(all, [&](NodeSet c) {
        for_each_submask(all, [&](NodeSet a) {
            if (a.empty()) return;
            for_each_submask(all, [&](NodeSet b) {
                if (b.empty()) return;
                const IndependenceTriple first{a, b, c};
                if (!model.contains(first)) return;
                for_each_submask(all, [&](NodeSet d) {
                    if (d.empty()) return;
                    const IndependenceTriple second{d, b, a | c};
                    if (!model.contains(second)) return;
                    const IndependenceTriple conclusion{a | d, b, c};
                    if (!model.contains(conclusion)) report(GraphoidProperty::left_contraction, {first, second}, conclusion);
                });
            });
        });
    });
    return out;
}

void write_explicit_model(std::ostream& out, const ExplicitModel& model) {
    if (model.is_decomposition_closed()) out << "# closed\n";
    for (const auto& t : model.triples()) out << to_string(t.a) << ';' << to_string(t.b) << ';' << to_string(t.c) << '\n';
}

std::unique_ptr<ExplicitModel> read_explicit_model(std::istream& in, std::optional<std::size_t> n) {
    std::vector<IndependenceTriple> triples;
    bool closed = false;
    bool first_content = true;
    std::string line;
    std::size_t line_no = 0;
    NodeSet mentioned;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        if (line.front() == '#') {
            if (first_content && line.find("closed") != std::string::npos) closed = true;
            first_content = false;
            continue;
        }
        first_content = false;
        const auto s1 = line.find(';');
        const auto s2 = s1 == std::string::npos ? s1 : line.find(';', s1 + 1);
        if (s2 == std::string::npos || line.find(';', s2 + 1) != std::string::npos) {
            throw std::invalid_argument("model line " + std::to_string(line_no) + ": expected 'A;B;C'");
        }
        IndependenceTriple t{parse_node_set(line.substr(0, s1)), parse_node_set(line.substr(s1 + 1, s2 - s1 - 1)),
                             parse_node_set(line.substr(s2 + 1))};
        mentioned |= t.a | t.b | t.c;
        triples.push_back(t);
    }
    std::size_t size = 0;
    if (n) {
        size = *n;
    } else {
        for (NodeId v : mentioned) size = v + 1;
    }
    return std::make_unique<ExplicitModel>(size, std::move(triples), closed);
}

std::unique_ptr<ExplicitModel> load_explicit_model(const std::string& path, std::optional<std::size_t> n) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open model file " + path);
    return read_explicit_model(in, n);
}

} // namespace localind
