#pragma once

#include "euclid_match/even_component.hpp"

namespace euclid_match {

// Even Forest Heuristic: build an EMST, delete every "even edge" (an edge
// whose removal splits the tree into two even-cardinality components), and
// match the resulting all-even forest with the even-component algorithm.
Matching even_forest_baseline(const PointSet& ps);

// The even edges of a spanning tree, as ids into tree.edges.
std::vector<Index> even_tree_edges(const ProximityGraph& tree);

}  // namespace euclid_match
