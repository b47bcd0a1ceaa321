#include "localind/node_set.hpp"

#include <charconv>
#include <stdexcept>

namespace localind {

std::string to_string(NodeSet s) {
    std::string out;
    for (NodeId v : s) {
        if (!out.empty()) out += ',';
        out += std::to_string(v);
    }
    return out;
}

NodeSet parse_node_set(const std::string& text) {
    NodeSet out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find(',', pos);
        if (end == std::string::npos) end = text.size();
        std::size_t first = pos;
        std::size_t last = end;
        while (first < last && (text[first] == ' ' || text[first] == '\t')) ++first;
        while (last > first && (text[last - 1] == ' ' || text[last - 1] == '\t')) --last;
        if (first == last) {
            if (end == text.size() && pos == 0) break;
            throw std::invalid_argument("empty element in node set '" + text + "'");
        }
        std::size_t value = 0;
        auto [ptr, ec] = std::from_chars(text.data() + first, text.data() + last, value);
        if (ec != std::errc() || ptr != text.data() + last || value >= NodeSet::kMaxNodes) {
            throw std::invalid_argument("bad node index in '" + text + "'");
        }
        out.insert(value);
        pos = end + 1;
    }
    return out;
}

namespace {

bool combinations(const std::vector<NodeId>& pool, std::size_t k, std::size_t start, NodeSet chosen,
                  const std::function<bool(NodeSet)>& f) {
    if (k == 0) return f(chosen);
    for (std::size_t i = start; i + k <= pool.size(); ++i) {
        NodeSet next = chosen;
        next.insert(pool[i]);
        if (combinations(pool, k - 1, i + 1, next, f)) return true;
    }
    return false;
}

} // namespace

bool any_subset_of_size(NodeSet universe, std::size_t k, const std::function<bool(NodeSet)>& f) {
    const std::vector<NodeId> pool = universe.members();
    if (k > pool.size()) return false;
    return combinations(pool, k, 0, NodeSet{}, f);
}

void for_each_subset_of_size(NodeSet universe, std::size_t k, const std::function<void(NodeSet)>& f) {
    any_subset_of_size(universe, k, [&](NodeSet s) {
        f(s);
        return false;
    });
}

std::vector<NodeSet> subsets_by_size(NodeSet universe) {
    std::vector<NodeSet> out;
    out.reserve(std::size_t{1} << universe.size());
    for (std::size_t k = 0; k <= universe.size(); ++k) {
        for_each_subset_of_size(universe, k, [&](NodeSet s) { out.push_back(s); });
    }
    return out;
}

} // namespace localind
