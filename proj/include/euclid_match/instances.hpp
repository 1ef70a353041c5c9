#pragma once

#include <cstdint>
#include <vector>

#include "euclid_match/geometry.hpp"

namespace euclid_match {

// Recursive lower-bound family: V_0 is two points at distance 1; V_i places
// seven copies of V_{i-1} on a horizontal line with gap 13^(i-1) between
// consecutive copies. |V_i| = 2*7^i, width 13^i, and the minimum matching
// length is exactly 7^i. Coordinates are built in integer arithmetic
// (exactly representable for i <= 8) and embedded in 2D at y = 0.
std::vector<Point> lower_bound_points(int i);

// Tie order that realizes the adversarial execution on lower-bound
// instances: within every group of fourteen consecutive points the order
// prefers outer points first, so the NN graph splits each group into two
// odd paths of seven.
std::vector<Index> adversarial_tie_order(Index n);

std::vector<Point> uniform_points(int dim, Index n, std::uint64_t seed);
std::vector<Point> clustered_points(int dim, Index n, Index clusters, double spread,
                                    std::uint64_t seed);
std::vector<Point> collinear_points(const std::vector<double>& gaps);

// PointSet builders; the seed controls the tie order (and point placement
// for the random generators).
PointSet gen_lower_bound(int i, bool adversarial_ties = false,
                         std::uint64_t tie_seed = 0x9E3779B97F4A7C15ull);
PointSet gen_uniform(int dim, Index n, std::uint64_t seed);
PointSet gen_clustered(int dim, Index n, Index clusters, double spread, std::uint64_t seed);
PointSet gen_collinear(const std::vector<double>& gaps,
                       std::uint64_t tie_seed = 0x9E3779B97F4A7C15ull);

}  // namespace euclid_match
