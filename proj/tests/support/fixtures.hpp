#pragma once

#include "localind/graph.hpp"

namespace fixture {

// Running example, 0-based: 0->1, 2->1, 3->1, 1->3, 2->3 and self-loops.
inline localind::DirectedMixedGraph running_example() {
    return localind::DirectedMixedGraph(4, {{0, 1}, {2, 1}, {3, 1}, {1, 3}, {2, 3}});
}

inline localind::DirectedMixedGraph chain3() { return localind::DirectedMixedGraph(3, {{0, 1}, {1, 2}}); }

inline localind::DirectedMixedGraph fork3() { return localind::DirectedMixedGraph(3, {{0, 1}, {0, 2}}); }

} // namespace fixture
