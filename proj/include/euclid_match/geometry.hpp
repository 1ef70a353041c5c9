#pragma once

#include <compare>
#include <cstdint>
#include <vector>

namespace euclid_match {

using Index = std::uint32_t;

enum class MetricKind { L2, Lp, Linf };

// Lp metrics with integer p >= 1; L2 and Linf get dedicated code paths.
struct Metric {
    MetricKind kind = MetricKind::L2;
    int p = 2;

    static Metric l2() { return {MetricKind::L2, 2}; }
    static Metric lp(int p);
    static Metric linf() { return {MetricKind::Linf, 0}; }

    bool operator==(const Metric&) const = default;
};

struct Point {
    std::vector<double> coords;
};

// Immutable point set: flat coordinate storage, a metric, and a total order
// on the points (tie_order) used to break every distance tie in the library.
// tie_order[k] is the index of the point in position k; rank(i) is the
// inverse permutation.
class PointSet {
public:
    PointSet(std::vector<Point> points, Metric metric, std::vector<Index> tie_order);

    // Convenience: flat coords, row-major, n*dim entries.
    PointSet(std::vector<double> coords, int dim, Metric metric, std::vector<Index> tie_order);

    Index size() const { return n_; }
    int dim() const { return dim_; }
    const Metric& metric() const { return metric_; }

    const double* coord(Index i) const { return coords_.data() + static_cast<std::size_t>(i) * dim_; }
    const std::vector<double>& coords() const { return coords_; }
    const std::vector<Index>& tie_order() const { return tie_order_; }

    double distance(Index i, Index j) const;

    // Monotone stand-in for distance (no root): squared for L2, sum of
    // |d|^p for Lp, max |d| for Linf. Exact comparisons on these values
    // order pairs the same way distance does.
    double power_distance(Index i, Index j) const;
    double power_distance_to(Index i, const double* q) const;
    double distance_from_power(double pd) const;

    // Position of point i in the tie order; smaller rank wins ties.
    Index tie_rank(Index i) const { return rank_[i]; }

    std::strong_ordering compare_for_ties(Index i, Index j) const;

private:
    void validate();

    std::vector<double> coords_;
    Index n_ = 0;
    int dim_ = 0;
    Metric metric_;
    std::vector<Index> tie_order_;
    std::vector<Index> rank_;
};

// Identity and seeded-permutation helpers for the tie order.
std::vector<Index> identity_order(Index n);
std::vector<Index> seeded_tie_order(Index n, std::uint64_t seed);

PointSet make_point_set(std::vector<Point> points, Metric metric, std::uint64_t seed);

}  // namespace euclid_match
