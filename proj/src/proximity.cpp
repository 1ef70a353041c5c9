#include "euclid_match/proximity.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace euclid_match {

namespace {

Edge make_edge(const PointSet& ps, Index a, Index b) {
    if (a > b) std::swap(a, b);
    return Edge{a, b, ps.distance(a, b)};
}

void sort_dedup(std::vector<Edge>& edges) {
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
        if (a.u != b.u) return a.u < b.u;
        return a.v < b.v;
    });
    edges.erase(std::unique(edges.begin(), edges.end(),
                            [](const Edge& a, const Edge& b) { return a.u == b.u && a.v == b.v; }),
                edges.end());
}

struct Dsu {
    std::vector<Index> parent;
    explicit Dsu(Index n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    Index find(Index x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    bool unite(Index a, Index b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[b] = a;
        return true;
    }
};

}  // namespace

double ProximityGraph::total_length() const {
    double s = 0.0;
    for (const Edge& e : edges) s += e.length;
    return s;
}

ProximityGraph nn_graph(const KdTree& tree) {
    const PointSet& ps = tree.points();
    if (ps.size() < 2) throw std::invalid_argument("nn_graph requires n >= 2");
    ProximityGraph g{ps.size(), GraphKind::NNForest, 0, {}};
    g.edges.reserve(ps.size());
    for (Index v = 0; v < ps.size(); ++v)
        g.edges.push_back(make_edge(ps, v, tree.nearest(v)));
    sort_dedup(g.edges);
    return g;
}

ProximityGraph nn_graph(const PointSet& ps) { return nn_graph(KdTree(ps)); }

ProximityGraph knn_graph(const KdTree& tree, int k) {
    const PointSet& ps = tree.points();
    if (k < 1 || ps.size() < static_cast<Index>(k) + 1)
        throw std::invalid_argument("knn_graph requires n >= k+1 and k >= 1");
    ProximityGraph g{ps.size(), GraphKind::KNN, k, {}};
    g.edges.reserve(static_cast<std::size_t>(ps.size()) * k);
    for (Index v = 0; v < ps.size(); ++v)
        for (Index w : tree.k_nearest(v, k))
            g.edges.push_back(make_edge(ps, v, w));
    sort_dedup(g.edges);
    return g;
}

ProximityGraph knn_graph(const PointSet& ps, int k) { return knn_graph(KdTree(ps), k); }

ProximityGraph emst(const KdTree& tree) {
    const PointSet& ps = tree.points();
    Index n = ps.size();
    if (n < 1) throw std::invalid_argument("emst requires n >= 1");
    ProximityGraph g{n, GraphKind::EMST, 0, {}};
    if (n == 1) return g;

    // Round one of Boruvka is exactly the NN forest: the least edge leaving
    // a singleton is the point's NN edge under the library's edge order.
    Dsu dsu(n);
    Index comps = n;
    for (const Edge& e : nn_graph(tree).edges)
        if (dsu.unite(e.u, e.v)) {
            g.edges.push_back(e);
            --comps;
        }

    std::vector<Index> comp(n);
    std::vector<KdTree::CandidateEdge> best(n);
    while (comps > 1) {
        for (Index v = 0; v < n; ++v) comp[v] = dsu.find(v);
        tree.annotate_components(comp);
        for (Index v = 0; v < n; ++v) best[v] = KdTree::CandidateEdge{};
        for (Index v = 0; v < n; ++v)
            tree.min_outgoing(v, comp, best[comp[v]]);
        Index added = 0;
        for (Index root = 0; root < n; ++root) {
            const auto& cand = best[root];
            if (!cand.valid) continue;
            if (dsu.unite(cand.u, cand.v)) {
                g.edges.push_back(make_edge(ps, cand.u, cand.v));
                --comps;
                ++added;
            }
        }
        if (added == 0) throw std::logic_error("emst: no progress in Boruvka round");
    }
    sort_dedup(g.edges);
    return g;
}

ProximityGraph emst(const PointSet& ps) {
    KdTree tree(ps);
    return emst(tree);
}

std::vector<Index> edge_rank(const ProximityGraph& g) {
    std::vector<Index> order(g.edges.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](Index a, Index b) {
        const Edge& ea = g.edges[a];
        const Edge& eb = g.edges[b];
        if (ea.length != eb.length) return ea.length < eb.length;
        if (ea.u != eb.u) return ea.u < eb.u;
        return ea.v < eb.v;
    });
    return order;
}

void write_edge_list(std::ostream& out, const ProximityGraph& g) {
    char buf[96];
    for (const Edge& e : g.edges) {
        std::snprintf(buf, sizeof(buf), "%u %u %.17g\n", e.u, e.v, e.length);
        out << buf;
    }
}

}  // namespace euclid_match
