#pragma once

#include <cstdint>
#include <vector>

#include "euclid_match/even_component.hpp"
#include "euclid_match/graph_util.hpp"
#include "euclid_match/schedule.hpp"

namespace euclid_match {

enum class ReduceMode { Tree2d, KnnHighdim };

// One round of node reduction: cluster the active points into even
// components (adding edges for up to r rounds while too many components are
// odd), park one leaf per remaining odd component in `residual`, and match
// everyone else.
struct ReductionResult {
    std::vector<Index> residual;    // W, original indices, ascending
    Matching matched;               // perfect matching on active \ W
    int rounds_q = 0;               // calls made to the edge-adding subroutine
    std::vector<Index> odd_counts;  // odd components of G_0 .. G_q
    std::vector<Index> even_counts; // even components of G_0 .. G_q
    Index knn_exhausted = 0;        // served odd components with no leaving k-NN edge
};

// A spanning-tree leaf of one connected component: DFS from the minimum
// vertex (neighbors in ascending order), then the minimum-index vertex of
// spanning-tree degree <= 1. For a tree component this is its minimum-index
// leaf; a singleton returns itself.
Index leaf_of_component(const std::vector<Index>& vertices, const std::vector<Edge>& edges);

// For each odd component of g, the least-rank tree edge with exactly one
// endpoint inside. Returns deduplicated edge ids into tree.edges, ascending
// by rank. rank_order comes from edge_rank(tree).
std::vector<Index> edges_from_tree(const ComponentStructure& g, const ProximityGraph& tree,
                                   const std::vector<Index>& rank_order);

// k-NN variant: only odd components of size < 3^r + 1 are served, and
// candidates come from the k-NN graph. A served component with no leaving
// k-NN edge is counted in `exhausted` and simply stays odd this round.
struct KnnSelection {
    std::vector<Index> edge_ids;
    Index exhausted = 0;
};
KnnSelection edges_from_knn(const ComponentStructure& g, const ProximityGraph& knn, int r,
                            const std::vector<Index>& rank_order);

// Runs the full reduction on an even-cardinality subset of ps. Tree2d backs
// the edge-adding rounds with an EMST; KnnHighdim with a 3^r-nearest-neighbor
// graph (k capped at n-1).
ReductionResult node_reduction(const PointSet& ps, const std::vector<Index>& active,
                               const Schedule& sched, ReduceMode mode);

}  // namespace euclid_match
