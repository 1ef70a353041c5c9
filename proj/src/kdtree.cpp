#include "euclid_match/kdtree.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <queue>
#include <stdexcept>

namespace euclid_match {

namespace {

struct HeapEntry {
    double pd;
    Index rank;
    Index idx;
    bool operator<(const HeapEntry& o) const {  // max-heap on (pd, rank)
        if (pd != o.pd) return pd < o.pd;
        return rank < o.rank;
    }
};

}  // namespace

KdTree::KdTree(const PointSet& ps) : ps_(&ps), dim_(ps.dim()) {
    Index n = ps.size();
    group_of_.assign(n, 0);
    if (n == 0) return;

    std::vector<Index> by_coord(n);
    for (Index i = 0; i < n; ++i) by_coord[i] = i;
    std::sort(by_coord.begin(), by_coord.end(), [&](Index a, Index b) {
        const double* pa = ps.coord(a);
        const double* pb = ps.coord(b);
        for (int k = 0; k < dim_; ++k)
            if (pa[k] != pb[k]) return pa[k] < pb[k];
        return a < b;
    });

    auto same_coord = [&](Index a, Index b) {
        return std::memcmp(ps.coord(a), ps.coord(b), sizeof(double) * dim_) == 0;
    };
    for (Index pos = 0; pos < n;) {
        Index end = pos + 1;
        while (end < n && same_coord(by_coord[pos], by_coord[end])) ++end;
        std::vector<Index> group(by_coord.begin() + pos, by_coord.begin() + end);
        std::sort(group.begin(), group.end(),
                  [&](Index a, Index b) { return ps.tie_rank(a) < ps.tie_rank(b); });
        Index gid = n_groups_++;
        for (Index m : group) group_of_[m] = gid;
        group_coord_.push_back(ps.coord(group[0]));
        members_.push_back(std::move(group));
        pos = end;
    }

    order_.resize(n_groups_);
    for (Index g = 0; g < n_groups_; ++g) order_[g] = g;
    nodes_.reserve(2 * n_groups_ / kLeafSize + 2);
    std::vector<double> tmp_lo(dim_), tmp_hi(dim_);
    root_ = build(0, n_groups_, tmp_lo, tmp_hi);
}

std::int32_t KdTree::build(Index begin, Index end, std::vector<double>& tmp_lo,
                           std::vector<double>& tmp_hi) {
    std::int32_t id = static_cast<std::int32_t>(nodes_.size());
    nodes_.push_back(Node{-1, -1, begin, end});
    boxes_.resize(boxes_.size() + 2 * dim_);

    for (int k = 0; k < dim_; ++k) {
        tmp_lo[k] = std::numeric_limits<double>::infinity();
        tmp_hi[k] = -std::numeric_limits<double>::infinity();
    }
    for (Index pos = begin; pos < end; ++pos) {
        const double* c = group_coord_[order_[pos]];
        for (int k = 0; k < dim_; ++k) {
            tmp_lo[k] = std::min(tmp_lo[k], c[k]);
            tmp_hi[k] = std::max(tmp_hi[k], c[k]);
        }
    }
    double* box = boxes_.data() + static_cast<std::size_t>(id) * 2 * dim_;
    for (int k = 0; k < dim_; ++k) {
        box[k] = tmp_lo[k];
        box[dim_ + k] = tmp_hi[k];
    }

    if (end - begin <= kLeafSize) return id;

    // Split on the widest box axis (lowest index on ties).
    int axis = 0;
    double best_spread = -1.0;
    for (int k = 0; k < dim_; ++k) {
        double spread = box[dim_ + k] - box[k];
        if (spread > best_spread) {
            best_spread = spread;
            axis = k;
        }
    }
    if (best_spread <= 0.0) return id;  // all groups coincide; cannot happen for distinct groups

    Index mid = begin + (end - begin) / 2;
    std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                     [&](Index a, Index b) {
                         double ca = group_coord_[a][axis];
                         double cb = group_coord_[b][axis];
                         if (ca != cb) return ca < cb;
                         return a < b;
                     });

    std::int32_t l = build(begin, mid, tmp_lo, tmp_hi);
    std::int32_t r = build(mid, end, tmp_lo, tmp_hi);
    nodes_[id].left = l;
    nodes_[id].right = r;
    return id;
}

double KdTree::box_power_distance(std::int32_t node, const double* q) const {
    const double* box = boxes_.data() + static_cast<std::size_t>(node) * 2 * dim_;
    switch (ps_->metric().kind) {
        case MetricKind::L2: {
            double s = 0.0;
            for (int k = 0; k < dim_; ++k) {
                double gap = std::max({0.0, box[k] - q[k], q[k] - box[dim_ + k]});
                s += gap * gap;
            }
            return s;
        }
        case MetricKind::Lp: {
            double s = 0.0;
            for (int k = 0; k < dim_; ++k) {
                double gap = std::max({0.0, box[k] - q[k], q[k] - box[dim_ + k]});
                s += std::pow(gap, ps_->metric().p);
            }
            return s;
        }
        case MetricKind::Linf: {
            double m = 0.0;
            for (int k = 0; k < dim_; ++k)
                m = std::max(m, std::max({0.0, box[k] - q[k], q[k] - box[dim_ + k]}));
            return m;
        }
    }
    return 0.0;
}

Index KdTree::nearest(Index i) const {
    if (ps_->size() < 2) throw std::invalid_argument("nearest requires n >= 2");
    const double* q = ps_->coord(i);
    double best_pd = std::numeric_limits<double>::infinity();
    Index best_rank = std::numeric_limits<Index>::max();
    Index best = i;

    // Explicit stack of (node, box distance); nearer child first.
    std::vector<std::pair<std::int32_t, double>> stack;
    stack.emplace_back(root_, box_power_distance(root_, q));
    while (!stack.empty()) {
        auto [node, bd] = stack.back();
        stack.pop_back();
        if (bd > best_pd) continue;  // equal distance must still be explored for rank ties
        const Node& nd = nodes_[node];
        if (nd.left < 0) {
            for (Index pos = nd.begin; pos < nd.end; ++pos) {
                Index g = order_[pos];
                double pd = ps_->power_distance_to(i, group_coord_[g]);
                if (pd > best_pd) continue;
                for (Index m : members_[g]) {
                    if (m == i) continue;
                    Index r = ps_->tie_rank(m);
                    if (pd < best_pd || (pd == best_pd && r < best_rank)) {
                        best_pd = pd;
                        best_rank = r;
                        best = m;
                    }
                    break;  // members are rank-sorted; first non-i member is the group's best
                }
            }
            continue;
        }
        double dl = box_power_distance(nd.left, q);
        double dr = box_power_distance(nd.right, q);
        if (dl <= dr) {
            if (dr <= best_pd) stack.emplace_back(nd.right, dr);
            stack.emplace_back(nd.left, dl);
        } else {
            if (dl <= best_pd) stack.emplace_back(nd.left, dl);
            stack.emplace_back(nd.right, dr);
        }
    }
    return best;
}

std::vector<Index> KdTree::k_nearest(Index i, int k) const {
    if (k < 1 || static_cast<Index>(k) + 1 > ps_->size())
        throw std::invalid_argument("k_nearest requires 1 <= k <= n-1");
    const double* q = ps_->coord(i);
    std::priority_queue<HeapEntry> heap;  // worst candidate on top
    auto worst_pd = [&] {
        return heap.size() == static_cast<std::size_t>(k)
                   ? heap.top().pd
                   : std::numeric_limits<double>::infinity();
    };

    std::vector<std::pair<std::int32_t, double>> stack;
    stack.emplace_back(root_, box_power_distance(root_, q));
    while (!stack.empty()) {
        auto [node, bd] = stack.back();
        stack.pop_back();
        if (bd > worst_pd()) continue;
        const Node& nd = nodes_[node];
        if (nd.left < 0) {
            for (Index pos = nd.begin; pos < nd.end; ++pos) {
                Index g = order_[pos];
                double pd = ps_->power_distance_to(i, group_coord_[g]);
                if (pd > worst_pd()) continue;
                for (Index m : members_[g]) {
                    if (m == i) continue;
                    HeapEntry e{pd, ps_->tie_rank(m), m};
                    if (heap.size() < static_cast<std::size_t>(k)) {
                        heap.push(e);
                    } else if (e < heap.top()) {
                        heap.pop();
                        heap.push(e);
                    } else {
                        break;  // rank-sorted members: no later member can do better
                    }
                }
            }
            continue;
        }
        double dl = box_power_distance(nd.left, q);
        double dr = box_power_distance(nd.right, q);
        if (dl <= dr) {
            stack.emplace_back(nd.right, dr);
            stack.emplace_back(nd.left, dl);
        } else {
            stack.emplace_back(nd.left, dl);
            stack.emplace_back(nd.right, dr);
        }
    }

    std::vector<Index> out(heap.size());
    for (std::size_t pos = heap.size(); pos-- > 0;) {
        out[pos] = heap.top().idx;
        heap.pop();
    }
    return out;
}

void KdTree::annotate_components(const std::vector<Index>& comp_of_point) const {
    group_comp_.assign(n_groups_, 0);
    for (Index g = 0; g < n_groups_; ++g) {
        Index c = comp_of_point[members_[g][0]];
        for (Index m : members_[g])
            if (comp_of_point[m] != c) {
                c = kMixed;
                break;
            }
        group_comp_[g] = c;
    }
    node_comp_.assign(nodes_.size(), kMixed);
    // Children have larger ids than their parent (preorder build), so a
    // reverse pass sees children before parents.
    for (std::size_t id = nodes_.size(); id-- > 0;) {
        const Node& nd = nodes_[id];
        if (nd.left < 0) {
            Index c = group_comp_[order_[nd.begin]];
            for (Index pos = nd.begin; pos < nd.end && c != kMixed; ++pos)
                if (group_comp_[order_[pos]] != c) c = kMixed;
            node_comp_[id] = c;
        } else {
            Index cl = node_comp_[nd.left];
            Index cr = node_comp_[nd.right];
            node_comp_[id] = (cl == cr) ? cl : kMixed;
        }
    }
}

void KdTree::min_outgoing(Index i, const std::vector<Index>& comp, CandidateEdge& best) const {
    const double* q = ps_->coord(i);
    Index my_comp = comp[i];
    Index my_rank = ps_->tie_rank(i);

    auto key_beats_best = [&](double pd, Index r) {
        if (!best.valid) return true;
        if (pd != best.pd) return pd < best.pd;
        Index hi = std::max(my_rank, r);
        Index lo = std::min(my_rank, r);
        if (hi != best.rank_hi) return hi < best.rank_hi;
        return lo < best.rank_lo;
    };

    std::vector<std::pair<std::int32_t, double>> stack;
    stack.emplace_back(root_, box_power_distance(root_, q));
    while (!stack.empty()) {
        auto [node, bd] = stack.back();
        stack.pop_back();
        if (best.valid && bd > best.pd) continue;
        if (node_comp_[node] == my_comp) continue;
        const Node& nd = nodes_[node];
        if (nd.left < 0) {
            for (Index pos = nd.begin; pos < nd.end; ++pos) {
                Index g = order_[pos];
                if (group_comp_[g] == my_comp) continue;
                double pd = ps_->power_distance_to(i, group_coord_[g]);
                if (best.valid && pd > best.pd) continue;
                for (Index m : members_[g]) {
                    if (comp[m] == my_comp) continue;
                    Index r = ps_->tie_rank(m);
                    if (key_beats_best(pd, r)) {
                        best.pd = pd;
                        best.rank_hi = std::max(my_rank, r);
                        best.rank_lo = std::min(my_rank, r);
                        best.u = i;
                        best.v = m;
                        best.valid = true;
                    }
                    break;  // first valid member has the least rank
                }
            }
            continue;
        }
        double dl = box_power_distance(nd.left, q);
        double dr = box_power_distance(nd.right, q);
        if (dl <= dr) {
            stack.emplace_back(nd.right, dr);
            stack.emplace_back(nd.left, dl);
        } else {
            stack.emplace_back(nd.left, dl);
            stack.emplace_back(nd.right, dr);
        }
    }
}

}  // namespace euclid_match
