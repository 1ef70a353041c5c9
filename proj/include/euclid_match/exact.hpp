#pragma once

#include <stdexcept>
#include <vector>

#include "euclid_match/even_component.hpp"
#include "euclid_match/geometry.hpp"

namespace euclid_match {

struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Dense symmetric nonnegative weights with zero diagonal.
class WeightMatrix {
public:
    static constexpr Index kDefaultMaxN = 5000;

    WeightMatrix(Index n, std::vector<double> weights);

    static WeightMatrix from_points(const PointSet& ps, Index max_n = kDefaultMaxN);
    static WeightMatrix from_points(const PointSet& ps, const std::vector<Index>& subset,
                                    Index max_n = kDefaultMaxN);

    Index size() const { return n_; }
    double at(Index i, Index j) const { return w_[static_cast<std::size_t>(i) * n_ + j]; }
    double max_weight() const { return max_w_; }

private:
    Index n_;
    std::vector<double> w_;
    double max_w_ = 0.0;
};

struct ExactResult {
    Matching matching;
    double length = 0.0;
};

// Exhaustive (n-1)!! search; the validation oracle. Requires even n <= 14.
// Ties go to the lexicographically least pair list.
ExactResult brute_force_mwpm(const WeightMatrix& w);

// O(n^3) primal-dual blossom solver for minimum-weight perfect matching on
// the complete graph. Verifies a complementary-slackness certificate before
// returning (tolerance 1e-7 scaled by the largest weight) unless disabled.
ExactResult blossom_mwpm(const WeightMatrix& w, bool check_certificate = true);

}  // namespace euclid_match
