#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <iterator>
#include <string>
#include <vector>

namespace localind {

using NodeId = std::size_t;

/// Fixed-width set of node indices backed by a 64-bit mask. Graphs in this
/// library are limited to 64 nodes; every algorithm that enumerates subsets
/// is exponential long before that limit matters.
class NodeSet {
public:
    static constexpr std::size_t kMaxNodes = 64;

    class iterator {
    public:
        using iterator_category = std::forward_iterator_tag;
        using value_type = NodeId;
        using difference_type = std::ptrdiff_t;
        using pointer = const NodeId*;
        using reference = NodeId;

        constexpr iterator() = default;
        constexpr explicit iterator(std::uint64_t rest) : rest_(rest) {}

        constexpr NodeId operator*() const { return static_cast<NodeId>(std::countr_zero(rest_)); }
        constexpr iterator& operator++() {
            rest_ &= rest_ - 1;
            return *this;
        }
        constexpr iterator operator++(int) {
            iterator old = *this;
            ++*this;
            return old;
        }
        constexpr bool operator==(const iterator&) const = default;

    private:
        std::uint64_t rest_ = 0;
    };

    constexpr NodeSet() = default;
    constexpr explicit NodeSet(std::uint64_t bits) : bits_(bits) {}
    NodeSet(std::initializer_list<NodeId> members) {
        for (NodeId v : members) insert(v);
    }
    explicit NodeSet(const std::vector<NodeId>& members) {
        for (NodeId v : members) insert(v);
    }

    /// {0, ..., n-1}
    static constexpr NodeSet full(std::size_t n) {
        return NodeSet(n >= kMaxNodes ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
    }
    static constexpr NodeSet single(NodeId v) { return NodeSet(std::uint64_t{1} << v); }

    constexpr std::uint64_t bits() const { return bits_; }
    constexpr bool contains(NodeId v) const { return v < kMaxNodes && ((bits_ >> v) & 1U) != 0; }
    constexpr void insert(NodeId v) { bits_ |= std::uint64_t{1} << v; }
    constexpr void erase(NodeId v) { bits_ &= ~(std::uint64_t{1} << v); }
    constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr bool is_subset_of(NodeSet other) const { return (bits_ & ~other.bits_) == 0; }
    constexpr bool intersects(NodeSet other) const { return (bits_ & other.bits_) != 0; }
    /// Smallest member; undefined on the empty set.
    constexpr NodeId first() const { return static_cast<NodeId>(std::countr_zero(bits_)); }

    constexpr iterator begin() const { return iterator(bits_); }
    constexpr iterator end() const { return iterator(0); }

    std::vector<NodeId> members() const { return {begin(), end()}; }

    constexpr NodeSet operator|(NodeSet o) const { return NodeSet(bits_ | o.bits_); }
    constexpr NodeSet operator&(NodeSet o) const { return NodeSet(bits_ & o.bits_); }
    /// Set difference.
    constexpr NodeSet operator-(NodeSet o) const { return NodeSet(bits_ & ~o.bits_); }
    constexpr NodeSet& operator|=(NodeSet o) {
        bits_ |= o.bits_;
        return *this;
    }
    constexpr NodeSet& operator&=(NodeSet o) {
        bits_ &= o.bits_;
        return *this;
    }
    constexpr NodeSet& operator-=(NodeSet o) {
        bits_ &= ~o.bits_;
        return *this;
    }

    constexpr bool operator==(const NodeSet&) const = default;
    constexpr auto operator<=>(const NodeSet&) const = default;

private:
    std::uint64_t bits_ = 0;
};

/// Comma-joined member list, e.g. "1,2,4"; empty string for the empty set.
std::string to_string(NodeSet s);

/// Inverse of to_string. Throws std::invalid_argument on malformed input.
NodeSet parse_node_set(const std::string& text);

/// Calls f(subset) for every subset of `universe` with exactly k members, in
/// lexicographic order of the sorted member lists.
void for_each_subset_of_size(NodeSet universe, std::size_t k, const std::function<void(NodeSet)>& f);

/// Like for_each_subset_of_size, but stops as soon as f returns true.
/// Returns whether f ever returned true.
bool any_subset_of_size(NodeSet universe, std::size_t k, const std::function<bool(NodeSet)>& f);

/// Every subset of `universe` (including empty and full), by increasing
/// cardinality and lexicographically within a cardinality.
std::vector<NodeSet> subsets_by_size(NodeSet universe);

/// Every subset of `universe` in increasing mask order (fast, unordered by size).
template <typename F>
void for_each_submask(NodeSet universe, F&& f) {
    const std::uint64_t u = universe.bits();
    std::uint64_t sub = 0;
    while (true) {
        f(NodeSet(sub));
        if (sub == u) break;
        sub = (sub - u) & u;
    }
}

} // namespace localind

template <>
struct std::hash<localind::NodeSet> {
    std::size_t operator()(localind::NodeSet s) const noexcept { return std::hash<std::uint64_t>{}(s.bits()); }
};
