#include "euclid_match/even_component.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "euclid_match/graph_util.hpp"

namespace euclid_match {

double Matching::total_length(const PointSet& ps) const {
    double s = 0.0;
    for (auto [a, b] : pairs) s += ps.distance(a, b);
    return s;
}

std::vector<Index> Matching::covered() const {
    std::vector<Index> out;
    out.reserve(2 * pairs.size());
    for (auto [a, b] : pairs) {
        out.push_back(a);
        out.push_back(b);
    }
    std::sort(out.begin(), out.end());
    return out;
}

void Matching::normalize() {
    for (auto& [a, b] : pairs)
        if (a > b) std::swap(a, b);
    std::sort(pairs.begin(), pairs.end());
}

std::vector<Index> euler_circuit(Index n, const std::vector<std::pair<Index, Index>>& multi_edges,
                                 Index start) {
    if (start >= n) throw std::invalid_argument("euler_circuit: start out of range");
    std::size_t m = multi_edges.size();
    std::vector<Index> degree(n, 0);
    for (auto [a, b] : multi_edges) {
        if (a >= n || b >= n) throw std::invalid_argument("euler_circuit: vertex out of range");
        ++degree[a];
        ++degree[b];
    }
    for (Index v = 0; v < n; ++v)
        if (degree[v] % 2 != 0)
            throw std::invalid_argument("euler_circuit: odd-degree vertex");

    // CSR adjacency over directed slots; eid identifies the undirected edge.
    std::vector<std::size_t> offset(n + 1, 0);
    for (Index v = 0; v < n; ++v) offset[v + 1] = offset[v] + degree[v];
    std::vector<Index> to(2 * m);
    std::vector<std::size_t> eid(2 * m);
    std::vector<std::size_t> fill(offset.begin(), offset.end() - 1);
    for (std::size_t e = 0; e < m; ++e) {
        auto [a, b] = multi_edges[e];
        to[fill[a]] = b;
        eid[fill[a]++] = e;
        to[fill[b]] = a;
        eid[fill[b]++] = e;
    }

    std::vector<bool> used(m, false);
    std::vector<std::size_t> ptr(offset.begin(), offset.end() - 1);
    std::vector<Index> stack{start};
    std::vector<Index> path;
    path.reserve(m + 1);
    while (!stack.empty()) {
        Index v = stack.back();
        std::size_t& p = ptr[v];
        while (p < offset[v + 1] && used[eid[p]]) ++p;
        if (p == offset[v + 1]) {
            path.push_back(v);
            stack.pop_back();
        } else {
            used[eid[p]] = true;
            stack.push_back(to[p]);
        }
    }
    if (path.size() != m + 1)
        throw std::invalid_argument("euler_circuit: edges not connected to start");
    std::reverse(path.begin(), path.end());
    return path;
}

std::vector<Index> shortcut(const std::vector<Index>& circuit) {
    if (circuit.size() < 2 || circuit.front() != circuit.back())
        throw std::invalid_argument("shortcut: input must be a closed walk");
    std::vector<Index> sorted(circuit.begin(), circuit.end() - 1);
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

    std::vector<bool> seen(sorted.size(), false);
    std::vector<Index> cycle;
    cycle.reserve(sorted.size());
    for (std::size_t pos = 0; pos + 1 < circuit.size(); ++pos) {
        Index v = circuit[pos];
        std::size_t s = static_cast<std::size_t>(
            std::lower_bound(sorted.begin(), sorted.end(), v) - sorted.begin());
        if (!seen[s]) {
            seen[s] = true;
            cycle.push_back(v);
        }
    }
    return cycle;
}

Matching lighter_half(const std::vector<Index>& cycle, const PointSet& ps) {
    if (cycle.size() < 2 || cycle.size() % 2 != 0)
        throw std::invalid_argument("lighter_half: cycle must have even length >= 2");
    std::size_t m = cycle.size();
    double len_even = 0.0, len_odd = 0.0;
    for (std::size_t pos = 0; pos < m; ++pos) {
        double d = ps.distance(cycle[pos], cycle[(pos + 1) % m]);
        (pos % 2 == 0 ? len_even : len_odd) += d;
    }
    Matching out;
    out.pairs.reserve(m / 2);
    std::size_t first = len_odd < len_even ? 1 : 0;  // ties keep the first edge's half
    for (std::size_t pos = first; pos < m + first; pos += 2)
        out.pairs.emplace_back(cycle[pos % m], cycle[(pos + 1) % m]);
    out.normalize();
    return out;
}

Matching even_component_matching(const std::vector<Index>& vertices,
                                 const std::vector<Edge>& edges, const PointSet& ps) {
    Matching out;
    if (vertices.empty()) return out;

    constexpr Index kUnset = std::numeric_limits<Index>::max();
    Index top = 0;
    for (Index v : vertices) top = std::max(top, v);
    for (const Edge& e : edges) top = std::max({top, e.u, e.v});

    Dsu dsu(top + 1);
    std::vector<bool> in_set(top + 1, false);
    for (Index v : vertices) in_set[v] = true;
    for (const Edge& e : edges) {
        if (!in_set[e.u] || !in_set[e.v])
            throw std::invalid_argument("even_component_matching: edge leaves the vertex set");
        dsu.unite(e.u, e.v);
    }

    std::vector<Index> sorted_vertices(vertices);
    std::sort(sorted_vertices.begin(), sorted_vertices.end());

    std::vector<std::vector<Index>> comp_vertices;
    std::vector<std::vector<const Edge*>> comp_edges;
    std::vector<Index> root_slot(top + 1, kUnset);
    for (Index v : sorted_vertices) {
        Index r = dsu.find(v);
        if (root_slot[r] == kUnset) {
            root_slot[r] = static_cast<Index>(comp_vertices.size());
            comp_vertices.emplace_back();
            comp_edges.emplace_back();
        }
        comp_vertices[root_slot[r]].push_back(v);
    }
    for (const Edge& e : edges) comp_edges[root_slot[dsu.find(e.u)]].push_back(&e);

    std::vector<Index> local_id(top + 1, kUnset);
    for (std::size_t c = 0; c < comp_vertices.size(); ++c) {
        const auto& verts = comp_vertices[c];  // ascending; verts[0] is the min
        if (verts.size() % 2 != 0)
            throw std::invalid_argument("even_component_matching: component of odd cardinality");
        if (verts.size() == 2) {
            out.pairs.emplace_back(verts[0], verts[1]);
            continue;
        }

        // Work on component-local ids so the per-component cost stays linear
        // in the component size. Double every edge to even out all degrees.
        for (std::size_t pos = 0; pos < verts.size(); ++pos)
            local_id[verts[pos]] = static_cast<Index>(pos);
        std::vector<std::pair<Index, Index>> multi;
        multi.reserve(2 * comp_edges[c].size());
        for (const Edge* e : comp_edges[c]) {
            multi.emplace_back(local_id[e->u], local_id[e->v]);
            multi.emplace_back(local_id[e->u], local_id[e->v]);
        }
        std::vector<Index> circuit = euler_circuit(static_cast<Index>(verts.size()), multi, 0);
        std::vector<Index> cycle = shortcut(circuit);
        if (cycle.size() != verts.size())
            throw std::logic_error("even_component_matching: circuit missed vertices");
        for (Index& v : cycle) v = verts[v];
        Matching half = lighter_half(cycle, ps);
        out.pairs.insert(out.pairs.end(), half.pairs.begin(), half.pairs.end());
        for (Index v : verts) local_id[v] = kUnset;
    }
    out.normalize();
    return out;
}

Matching even_component_matching(const ProximityGraph& forest, const PointSet& ps) {
    std::vector<Index> all(forest.n);
    std::iota(all.begin(), all.end(), 0);
    return even_component_matching(all, forest.edges, ps);
}

}  // namespace euclid_match
