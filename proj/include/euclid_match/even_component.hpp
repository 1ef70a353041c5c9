#pragma once

#include <utility>
#include <vector>

#include "euclid_match/proximity.hpp"

namespace euclid_match {

// A partial matching: vertex-disjoint index pairs.
struct Matching {
    std::vector<std::pair<Index, Index>> pairs;  // each a < b; list sorted

    std::size_t size() const { return pairs.size(); }
    double total_length(const PointSet& ps) const;
    std::vector<Index> covered() const;  // sorted union of pair members
    void normalize();                    // order pairs and members
};

// Closed walk through every multigraph edge exactly once (Hierholzer),
// starting and ending at `start`. Requires all degrees even and all edges in
// one connected component containing start.
std::vector<Index> euler_circuit(Index n, const std::vector<std::pair<Index, Index>>& multi_edges,
                                 Index start);

// Collapses a closed walk (front == back) to a Hamiltonian cycle over the
// walk's vertices by keeping first visits; the cycle is returned in open
// form. Never longer than the walk under any metric with the triangle
// inequality.
std::vector<Index> shortcut(const std::vector<Index>& circuit);

// The lighter of the two alternating perfect matchings of an even cycle
// (open form). Ties go to the half containing the cycle's first edge.
Matching lighter_half(const std::vector<Index>& cycle, const PointSet& ps);

// Matches every vertex of a graph whose connected components all have even
// cardinality: per component, double the edges, take an Euler circuit,
// shortcut it, and keep the lighter alternating half. The matched length
// within a component never exceeds the component's total edge length.
// `vertices` lists the graph's vertex set; edges must stay inside it.
Matching even_component_matching(const std::vector<Index>& vertices,
                                 const std::vector<Edge>& edges, const PointSet& ps);

// Whole-point-set convenience overload (the forest covers all of ps).
Matching even_component_matching(const ProximityGraph& forest, const PointSet& ps);

}  // namespace euclid_match
