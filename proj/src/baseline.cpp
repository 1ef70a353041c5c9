#include "euclid_match/baseline.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace euclid_match {

std::vector<Index> even_tree_edges(const ProximityGraph& tree) {
    Index n = tree.n;
    if (tree.edges.size() + 1 != static_cast<std::size_t>(n))
        throw std::invalid_argument("even_tree_edges requires a spanning tree");

    // Root at 0; subtree sizes by processing vertices in reverse BFS order.
    std::vector<std::vector<std::pair<Index, Index>>> adj(n);  // (neighbor, edge id)
    for (Index id = 0; id < static_cast<Index>(tree.edges.size()); ++id) {
        const Edge& e = tree.edges[id];
        adj[e.u].emplace_back(e.v, id);
        adj[e.v].emplace_back(e.u, id);
    }
    std::vector<Index> bfs{0};
    std::vector<Index> parent_edge(n, std::numeric_limits<Index>::max());
    std::vector<bool> visited(n, false);
    visited[0] = true;
    bfs.reserve(n);
    for (std::size_t pos = 0; pos < bfs.size(); ++pos) {
        Index v = bfs[pos];
        for (auto [w, id] : adj[v])
            if (!visited[w]) {
                visited[w] = true;
                parent_edge[w] = id;
                bfs.push_back(w);
            }
    }
    if (bfs.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("even_tree_edges: tree not connected");

    std::vector<Index> subtree(n, 1);
    std::vector<Index> even;
    for (std::size_t pos = bfs.size(); pos-- > 1;) {
        Index v = bfs[pos];
        Index id = parent_edge[v];
        const Edge& e = tree.edges[id];
        Index par = e.u == v ? e.v : e.u;
        subtree[par] += subtree[v];
        if (subtree[v] % 2 == 0) even.push_back(id);
    }
    std::sort(even.begin(), even.end());
    return even;
}

Matching even_forest_baseline(const PointSet& ps) {
    Index n = ps.size();
    if (n < 2 || n % 2 != 0)
        throw std::invalid_argument("even_forest_baseline requires even n >= 2");

    ProximityGraph tree = emst(ps);
    std::vector<Index> drop = even_tree_edges(tree);
    std::vector<bool> dropped(tree.edges.size(), false);
    for (Index id : drop) dropped[id] = true;

    std::vector<Edge> kept;
    kept.reserve(tree.edges.size() - drop.size());
    for (Index id = 0; id < static_cast<Index>(tree.edges.size()); ++id)
        if (!dropped[id]) kept.push_back(tree.edges[id]);

    std::vector<Index> all(n);
    std::iota(all.begin(), all.end(), 0);
    return even_component_matching(all, kept, ps);
}

}  // namespace euclid_match
