#include "euclid_match/graph_util.hpp"

namespace euclid_match {

ComponentStructure components_of(Index n, const std::vector<Edge>& edges) {
    Dsu dsu(n);
    for (const Edge& e : edges) dsu.unite(e.u, e.v);
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

}  // namespace euclid_match
