#pragma once

#include <iosfwd>
#include <vector>

#include "euclid_match/geometry.hpp"
#include "euclid_match/kdtree.hpp"

namespace euclid_match {

struct Edge {
    Index u = 0, v = 0;  // u < v
    double length = 0.0;

    bool operator==(const Edge&) const = default;
};

enum class GraphKind { NNForest, KNN, EMST };

struct ProximityGraph {
    Index n = 0;
    GraphKind kind = GraphKind::NNForest;
    int k = 0;  // meaningful for KNN
    std::vector<Edge> edges;

    double total_length() const;
};

// Nearest-neighbor forest: every point is joined to its nearest neighbor,
// distance ties broken by the point set's total order. Requires n >= 2.
ProximityGraph nn_graph(const PointSet& ps);
ProximityGraph nn_graph(const KdTree& tree);

// k-nearest-neighbor graph (union over vertices). Requires n >= k+1.
ProximityGraph knn_graph(const PointSet& ps, int k);
ProximityGraph knn_graph(const KdTree& tree, int k);

// Exact minimum spanning tree of the complete geometric graph, computed by
// Boruvka rounds over the kd-tree. The MST is the unique minimum under the
// edge order (length, max tie rank, min tie rank), which makes the result
// deterministic and guarantees the NN forest is a subgraph. Works in any
// dimension; n = 1 yields an empty edge set.
ProximityGraph emst(const PointSet& ps);
ProximityGraph emst(const KdTree& tree);

// Edge ids of g in ascending (length, u, v) order; the rank of edge
// result[p] is p+1.
std::vector<Index> edge_rank(const ProximityGraph& g);

// Diagnostics output: "u v length" per line.
void write_edge_list(std::ostream& out, const ProximityGraph& g);

}  // namespace euclid_match
