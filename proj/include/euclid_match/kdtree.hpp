#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "euclid_match/geometry.hpp"

namespace euclid_match {

// Static kd-tree over the distinct coordinates of a PointSet. Points with
// identical coordinates are collapsed into one group whose members are kept
// sorted by tie rank, so massive duplicate clusters cost O(1) per query
// instead of degrading the tree.
//
// All query keys are (power_distance, tie_rank) with exact double
// comparison: results are deterministic for a fixed tie order, and distance
// ties are always broken by the point set's total order.
class KdTree {
public:
    explicit KdTree(const PointSet& ps);

    const PointSet& points() const { return *ps_; }

    // Nearest neighbor of i among all other points.
    Index nearest(Index i) const;

    // The k nearest neighbors of i, ascending by (distance, rank). k must be
    // <= n-1.
    std::vector<Index> k_nearest(Index i, int k) const;

    // Candidate edge for Boruvka rounds: keyed by (power distance,
    // max tie rank, min tie rank), the library's total order on edges.
    struct CandidateEdge {
        double pd = std::numeric_limits<double>::infinity();
        Index rank_hi = std::numeric_limits<Index>::max();
        Index rank_lo = std::numeric_limits<Index>::max();
        Index u = 0, v = 0;
        bool valid = false;

        bool better_than(const CandidateEdge& o) const {
            if (!o.valid) return valid;
            if (!valid) return false;
            if (pd != o.pd) return pd < o.pd;
            if (rank_hi != o.rank_hi) return rank_hi < o.rank_hi;
            return rank_lo < o.rank_lo;
        }
    };

    // Prepares component-purity annotations for min_outgoing queries.
    // Annotations are query acceleration state, not tree structure.
    void annotate_components(const std::vector<Index>& comp_of_point) const;

    // Improves `best` with the least edge {i, q} such that
    // comp[q] != comp[i]. Requires annotate_components with the same comp
    // vector beforehand.
    void min_outgoing(Index i, const std::vector<Index>& comp, CandidateEdge& best) const;

private:
    struct Node {
        std::int32_t left = -1, right = -1;  // -1: leaf
        Index begin = 0, end = 0;            // group range in order_
    };

    static constexpr Index kLeafSize = 8;
    static constexpr Index kMixed = std::numeric_limits<Index>::max();

    std::int32_t build(Index begin, Index end, std::vector<double>& tmp_lo, std::vector<double>& tmp_hi);
    double box_power_distance(std::int32_t node, const double* q) const;

    const PointSet* ps_;
    int dim_;
    Index n_groups_ = 0;

    std::vector<Index> group_of_;               // point -> group
    std::vector<std::vector<Index>> members_;   // group -> points by rank
    std::vector<const double*> group_coord_;    // group -> coords

    std::vector<Index> order_;    // group ids, permuted by build
    std::vector<Node> nodes_;
    std::vector<double> boxes_;   // 2*dim per node: lo then hi
    std::int32_t root_ = -1;

    mutable std::vector<Index> group_comp_;  // kMixed when members disagree
    mutable std::vector<Index> node_comp_;
};

}  // namespace euclid_match
