#include "euclid_match/node_reduction.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "euclid_match/kdtree.hpp"

namespace euclid_match {

namespace {

constexpr Index kUnset = std::numeric_limits<Index>::max();

std::int64_t pow3(int r) {
    if (r < 0 || r > 38) throw std::invalid_argument("3^r out of range");
    std::int64_t p = 1;
    while (r-- > 0) p *= 3;
    return p;
}

// Induced point set of the active subset: coordinates copied in order, tie
// ranks inherited from the parent order.
PointSet subset_point_set(const PointSet& ps, const std::vector<Index>& active) {
    std::vector<double> coords;
    coords.reserve(active.size() * ps.dim());
    for (Index orig : active) {
        if (orig >= ps.size()) throw std::out_of_range("active index out of range");
        const double* c = ps.coord(orig);
        coords.insert(coords.end(), c, c + ps.dim());
    }
    std::vector<Index> order(active.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](Index a, Index b) {
        return ps.tie_rank(active[a]) < ps.tie_rank(active[b]);
    });
    return PointSet(std::move(coords), ps.dim(), ps.metric(), std::move(order));
}

ComponentStructure view_of(Dsu& dsu, Index n) {
    ComponentStructure cs;
    cs.comp.resize(n);
    cs.comp_size.assign(n, 0);
    for (Index v = 0; v < n; ++v) cs.comp[v] = dsu.find(v);
    for (Index v = 0; v < n; ++v)
        if (cs.comp[v] == v) {
            cs.comp_size[v] = dsu.size[v];
            if (dsu.size[v] % 2 == 1)
                ++cs.odd_count;
            else
                ++cs.even_count;
        }
    return cs;
}

}  // namespace

Index leaf_of_component(const std::vector<Index>& vertices, const std::vector<Edge>& edges) {
    if (vertices.empty()) throw std::invalid_argument("leaf_of_component: empty component");
    if (vertices.size() == 1) return vertices[0];

    std::vector<Index> verts(vertices);
    std::sort(verts.begin(), verts.end());
    auto local = [&](Index v) {
        auto it = std::lower_bound(verts.begin(), verts.end(), v);
        if (it == verts.end() || *it != v)
            throw std::invalid_argument("leaf_of_component: edge endpoint outside component");
        return static_cast<Index>(it - verts.begin());
    };

    Index m = static_cast<Index>(verts.size());
    std::vector<std::vector<Index>> adj(m);
    for (const Edge& e : edges) {
        Index a = local(e.u), b = local(e.v);
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    for (auto& nb : adj) std::sort(nb.begin(), nb.end());

    // DFS spanning tree from the minimum vertex; count tree degrees.
    std::vector<Index> tree_deg(m, 0);
    std::vector<bool> visited(m, false);
    std::vector<Index> stack{0};
    visited[0] = true;
    while (!stack.empty()) {
        Index v = stack.back();
        stack.pop_back();
        for (Index w : adj[v]) {
            if (visited[w]) continue;
            visited[w] = true;
            ++tree_deg[v];
            ++tree_deg[w];
            stack.push_back(w);
        }
    }
    for (Index v = 0; v < m; ++v)
        if (!visited[v]) throw std::invalid_argument("leaf_of_component: component not connected");
    for (Index v = 0; v < m; ++v)
        if (tree_deg[v] <= 1) return verts[v];
    throw std::logic_error("leaf_of_component: no spanning-tree leaf");
}

std::vector<Index> edges_from_tree(const ComponentStructure& g, const ProximityGraph& tree,
                                   const std::vector<Index>& rank_order) {
    std::vector<Index> selected;
    if (g.odd_count == 0) return selected;
    std::vector<bool> served(g.comp.size(), false);
    Index remaining = g.odd_count;
    for (Index id : rank_order) {
        const Edge& e = tree.edges[id];
        Index ru = g.comp[e.u];
        Index rv = g.comp[e.v];
        if (ru == rv) continue;
        bool take = false;
        if (g.is_odd(ru) && !served[ru]) {
            served[ru] = true;
            take = true;
            --remaining;
        }
        if (g.is_odd(rv) && !served[rv]) {
            served[rv] = true;
            take = true;
            --remaining;
        }
        if (take) selected.push_back(id);
        if (remaining == 0) break;
    }
    if (remaining != 0)
        throw std::logic_error("edges_from_tree: odd component with no leaving tree edge");
    return selected;
}

KnnSelection edges_from_knn(const ComponentStructure& g, const ProximityGraph& knn, int r,
                            const std::vector<Index>& rank_order) {
    KnnSelection out;
    std::int64_t size_cap = pow3(r);  // serve components of size < 3^r + 1
    std::vector<bool> target(g.comp.size(), false);
    Index remaining = 0;
    for (Index v = 0; v < static_cast<Index>(g.comp.size()); ++v)
        if (g.comp[v] == v && g.is_odd(v) && static_cast<std::int64_t>(g.comp_size[v]) <= size_cap) {
            target[v] = true;
            ++remaining;
        }
    if (remaining == 0) return out;

    std::vector<bool> served(g.comp.size(), false);
    for (Index id : rank_order) {
        const Edge& e = knn.edges[id];
        Index ru = g.comp[e.u];
        Index rv = g.comp[e.v];
        if (ru == rv) continue;
        bool take = false;
        if (target[ru] && !served[ru]) {
            served[ru] = true;
            take = true;
            --remaining;
        }
        if (target[rv] && !served[rv]) {
            served[rv] = true;
            take = true;
            --remaining;
        }
        if (take) out.edge_ids.push_back(id);
        if (remaining == 0) break;
    }
    out.exhausted = remaining;
    return out;
}

ReductionResult node_reduction(const PointSet& ps, const std::vector<Index>& active,
                               const Schedule& sched, ReduceMode mode) {
    Index m = static_cast<Index>(active.size());
    if (m < 2) throw std::invalid_argument("node_reduction requires at least 2 active points");
    if (m % 2 != 0) throw std::invalid_argument("node_reduction requires an even active set");

    PointSet sub = subset_point_set(ps, active);
    KdTree tree(sub);
    ProximityGraph g0 = nn_graph(tree);

    ProximityGraph structure;
    if (mode == ReduceMode::Tree2d) {
        structure = emst(tree);
    } else {
        int k = static_cast<int>(std::min<std::int64_t>(pow3(sched.r), m - 1));
        structure = knn_graph(tree, k);
    }
    std::vector<Index> rank_order = edge_rank(structure);

    ReductionResult res;
    std::vector<Edge> current = g0.edges;
    Dsu dsu(m);
    Index comps = m;
    Index odd = m;
    auto unite_edge = [&](const Edge& e) {
        Index ru = dsu.find(e.u);
        Index rv = dsu.find(e.v);
        if (ru == rv) return;
        Index odd_before = dsu.size[ru] % 2 + dsu.size[rv] % 2;
        dsu.unite(ru, rv);
        Index odd_after = dsu.size[dsu.find(e.u)] % 2;
        odd = odd - odd_before + odd_after;
        --comps;
    };
    for (const Edge& e : current) unite_edge(e);
    res.odd_counts.push_back(odd);
    res.even_counts.push_back(comps - odd);

    int q = 0;
    while (q < sched.r &&
           static_cast<double>(odd) > static_cast<double>(m) / sched.xs[q]) {
        ComponentStructure view = view_of(dsu, m);
        std::vector<Index> chosen;
        if (mode == ReduceMode::Tree2d) {
            chosen = edges_from_tree(view, structure, rank_order);
        } else {
            KnnSelection sel = edges_from_knn(view, structure, sched.r, rank_order);
            chosen = std::move(sel.edge_ids);
            res.knn_exhausted += sel.exhausted;
        }
        ++q;
        for (Index id : chosen) {
            const Edge& e = structure.edges[id];
            current.push_back(e);  // a selected edge always crosses components, so no duplicates
            unite_edge(e);
        }
        res.odd_counts.push_back(odd);
        res.even_counts.push_back(comps - odd);
    }
    res.rounds_q = q;

    // Bucket final components; slots appear in min-vertex order.
    ComponentStructure view = view_of(dsu, m);
    std::vector<Index> root_slot(m, kUnset);
    std::vector<std::vector<Index>> comp_vertices;
    for (Index v = 0; v < m; ++v) {
        Index r = view.comp[v];
        if (root_slot[r] == kUnset) {
            root_slot[r] = static_cast<Index>(comp_vertices.size());
            comp_vertices.emplace_back();
        }
        comp_vertices[root_slot[r]].push_back(v);
    }
    std::vector<std::vector<Edge>> comp_edges(comp_vertices.size());
    for (const Edge& e : current) comp_edges[root_slot[view.comp[e.u]]].push_back(e);

    std::vector<bool> in_residual(m, false);
    std::vector<Index> residual_local;
    for (std::size_t c = 0; c < comp_vertices.size(); ++c)
        if (comp_vertices[c].size() % 2 == 1) {
            Index leaf = leaf_of_component(comp_vertices[c], comp_edges[c]);
            in_residual[leaf] = true;
            residual_local.push_back(leaf);
        }

    std::vector<Index> rest;
    rest.reserve(m - residual_local.size());
    for (Index v = 0; v < m; ++v)
        if (!in_residual[v]) rest.push_back(v);
    std::vector<Edge> rest_edges;
    rest_edges.reserve(current.size());
    for (const Edge& e : current)
        if (!in_residual[e.u] && !in_residual[e.v]) rest_edges.push_back(e);
    Matching local = even_component_matching(rest, rest_edges, sub);

    res.residual.reserve(residual_local.size());
    for (Index v : residual_local) res.residual.push_back(active[v]);
    std::sort(res.residual.begin(), res.residual.end());
    res.matched.pairs.reserve(local.pairs.size());
    for (auto [a, b] : local.pairs) res.matched.pairs.emplace_back(active[a], active[b]);
    res.matched.normalize();
    return res;
}

}  // namespace euclid_match
