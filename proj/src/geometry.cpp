#include "euclid_match/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "euclid_match/rng.hpp"

namespace euclid_match {

Metric Metric::lp(int p) {
    if (p < 1) throw std::invalid_argument("Lp metric requires integer p >= 1");
    return {MetricKind::Lp, p};
}

PointSet::PointSet(std::vector<Point> points, Metric metric, std::vector<Index> tie_order)
    : metric_(metric), tie_order_(std::move(tie_order)) {
    n_ = static_cast<Index>(points.size());
    dim_ = n_ > 0 ? static_cast<int>(points[0].coords.size()) : 0;
    coords_.reserve(static_cast<std::size_t>(n_) * dim_);
    for (const Point& p : points) {
        if (static_cast<int>(p.coords.size()) != dim_)
            throw std::invalid_argument("all points must share one dimension");
        coords_.insert(coords_.end(), p.coords.begin(), p.coords.end());
    }
    validate();
}

PointSet::PointSet(std::vector<double> coords, int dim, Metric metric, std::vector<Index> tie_order)
    : coords_(std::move(coords)), dim_(dim), metric_(metric), tie_order_(std::move(tie_order)) {
    if (dim_ < 1) throw std::invalid_argument("dimension must be >= 1");
    if (coords_.size() % dim_ != 0) throw std::invalid_argument("coords size not a multiple of dim");
    n_ = static_cast<Index>(coords_.size() / dim_);
    validate();
}

void PointSet::validate() {
    if (n_ > 0 && dim_ < 1) throw std::invalid_argument("dimension must be >= 1");
    for (double c : coords_)
        if (!std::isfinite(c)) throw std::invalid_argument("coordinates must be finite");
    if (metric_.kind == MetricKind::Lp && metric_.p < 1)
        throw std::invalid_argument("Lp metric requires p >= 1");
    if (tie_order_.size() != n_) throw std::invalid_argument("tie_order size mismatch");
    std::vector<bool> seen(n_, false);
    for (Index i : tie_order_) {
        if (i >= n_ || seen[i]) throw std::invalid_argument("tie_order must be a permutation");
        seen[i] = true;
    }
    rank_.assign(n_, 0);
    for (Index k = 0; k < n_; ++k)
        rank_[tie_order_[k]] = k;
}

double PointSet::power_distance_to(Index i, const double* q) const {
    const double* a = coord(i);
    switch (metric_.kind) {
        case MetricKind::L2: {
            double s = 0.0;
            for (int k = 0; k < dim_; ++k) {
                double d = a[k] - q[k];
                s += d * d;
            }
            return s;
        }
        case MetricKind::Lp: {
            double s = 0.0;
            for (int k = 0; k < dim_; ++k)
                s += std::pow(std::abs(a[k] - q[k]), metric_.p);
            return s;
        }
        case MetricKind::Linf: {
            double m = 0.0;
            for (int k = 0; k < dim_; ++k)
                m = std::max(m, std::abs(a[k] - q[k]));
            return m;
        }
    }
    return 0.0;
}

double PointSet::power_distance(Index i, Index j) const {
    if (i >= n_ || j >= n_) throw std::out_of_range("point index out of range");
    return power_distance_to(i, coord(j));
}

double PointSet::distance_from_power(double pd) const {
    switch (metric_.kind) {
        case MetricKind::L2:
            return std::sqrt(pd);
        case MetricKind::Lp:
            return std::pow(pd, 1.0 / metric_.p);
        case MetricKind::Linf:
            return pd;
    }
    return pd;
}

double PointSet::distance(Index i, Index j) const {
    return distance_from_power(power_distance(i, j));
}

std::strong_ordering PointSet::compare_for_ties(Index i, Index j) const {
    if (i >= n_ || j >= n_) throw std::out_of_range("point index out of range");
    return rank_[i] <=> rank_[j];
}

std::vector<Index> identity_order(Index n) {
    std::vector<Index> order(n);
    for (Index i = 0; i < n; ++i) order[i] = i;
    return order;
}

std::vector<Index> seeded_tie_order(Index n, std::uint64_t seed) {
    std::vector<Index> order = identity_order(n);
    Rng rng(seed);
    rng.shuffle(order);
    return order;
}

PointSet make_point_set(std::vector<Point> points, Metric metric, std::uint64_t seed) {
    Index n = static_cast<Index>(points.size());
    return PointSet(std::move(points), metric, seeded_tie_order(n, seed));
}

}  // namespace euclid_match
