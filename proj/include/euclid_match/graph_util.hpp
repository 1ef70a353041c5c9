#pragma once

#include <numeric>
#include <vector>

#include "euclid_match/proximity.hpp"

namespace euclid_match {

struct Dsu {
    std::vector<Index> parent;
    std::vector<Index> size;

    explicit Dsu(Index n) : parent(n), size(n, 1) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    Index find(Index x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    // Returns false if already joined.
    bool unite(Index a, Index b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (size[a] < size[b]) std::swap(a, b);
        parent[b] = a;
        size[a] += size[b];
        return true;
    }
};

// Connected components of a graph given as an edge list.
struct ComponentStructure {
    std::vector<Index> comp;       // vertex -> component root
    std::vector<Index> comp_size;  // meaningful at roots only
    Index odd_count = 0;
    Index even_count = 0;

    bool is_odd(Index root) const { return comp_size[root] % 2 == 1; }
};

ComponentStructure components_of(Index n, const std::vector<Edge>& edges);

}  // namespace euclid_match
