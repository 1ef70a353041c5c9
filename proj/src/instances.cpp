#include "euclid_match/instances.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

#include "euclid_match/rng.hpp"

namespace euclid_match {

std::vector<Point> lower_bound_points(int i) {
    if (i < 0 || i > 8) throw std::invalid_argument("lower_bound_points requires 0 <= i <= 8");
    std::vector<std::int64_t> xs{0, 1};
    std::int64_t width = 1;
    for (int level = 1; level <= i; ++level) {
        std::int64_t gap = 1;
        for (int p = 1; p < level; ++p) gap *= 13;  // 13^(level-1)
        std::int64_t stride = width + gap;
        std::size_t base_count = xs.size();
        xs.reserve(base_count * 7);
        for (int copy = 1; copy < 7; ++copy)
            for (std::size_t k = 0; k < base_count; ++k) xs.push_back(xs[k] + copy * stride);
        width = 6 * stride + width;  // = 13^level
    }
    std::sort(xs.begin(), xs.end());
    std::vector<Point> out;
    out.reserve(xs.size());
    for (std::int64_t x : xs) out.push_back(Point{{static_cast<double>(x), 0.0}});
    return out;
}

std::vector<Index> adversarial_tie_order(Index n) {
    // Within each group of fourteen: endpoints first, centers last, so every
    // point's tie-broken NN points away from the group's middle.
    static constexpr int kGroupOrder[14] = {0, 13, 1, 12, 2, 11, 3, 10, 4, 9, 5, 8, 6, 7};
    std::vector<Index> order;
    order.reserve(n);
    Index base = 0;
    while (base + 14 <= n) {
        for (int pos : kGroupOrder) order.push_back(base + pos);
        base += 14;
    }
    for (Index v = base; v < n; ++v) order.push_back(v);
    return order;
}

std::vector<Point> uniform_points(int dim, Index n, std::uint64_t seed) {
    if (dim < 1 || dim > 8) throw std::invalid_argument("uniform_points requires 1 <= dim <= 8");
    if (n < 2) throw std::invalid_argument("uniform_points requires n >= 2");
    Rng rng(seed);
    std::vector<Point> out(n);
    for (Index i = 0; i < n; ++i) {
        out[i].coords.resize(dim);
        for (int k = 0; k < dim; ++k) out[i].coords[k] = rng.next_double();
    }
    return out;
}

std::vector<Point> clustered_points(int dim, Index n, Index clusters, double spread,
                                    std::uint64_t seed) {
    if (dim < 1 || dim > 8) throw std::invalid_argument("clustered_points requires 1 <= dim <= 8");
    if (n < 2 || clusters < 1) throw std::invalid_argument("clustered_points: bad sizes");
    if (!(spread >= 0.0)) throw std::invalid_argument("clustered_points: spread must be >= 0");
    Rng rng(seed);
    std::vector<Point> centers(clusters);
    for (Index c = 0; c < clusters; ++c) {
        centers[c].coords.resize(dim);
        for (int k = 0; k < dim; ++k) centers[c].coords[k] = rng.next_double();
    }
    std::vector<Point> out(n);
    for (Index i = 0; i < n; ++i) {
        const Point& c = centers[rng.next_below(clusters)];
        out[i].coords.resize(dim);
        for (int k = 0; k < dim; ++k) out[i].coords[k] = c.coords[k] + spread * rng.next_normal();
    }
    return out;
}

std::vector<Point> collinear_points(const std::vector<double>& gaps) {
    if (gaps.empty()) throw std::invalid_argument("collinear_points requires at least one gap");
    std::vector<Point> out;
    out.reserve(gaps.size() + 1);
    double x = 0.0;
    out.push_back(Point{{0.0, 0.0}});
    for (double g : gaps) {
        if (!(g > 0.0)) throw std::invalid_argument("collinear_points: gaps must be positive");
        x += g;
        out.push_back(Point{{x, 0.0}});
    }
    return out;
}

PointSet gen_lower_bound(int i, bool adversarial_ties, std::uint64_t tie_seed) {
    std::vector<Point> pts = lower_bound_points(i);
    Index n = static_cast<Index>(pts.size());
    if (adversarial_ties) return PointSet(std::move(pts), Metric::l2(), adversarial_tie_order(n));
    return PointSet(std::move(pts), Metric::l2(), seeded_tie_order(n, tie_seed));
}

PointSet gen_uniform(int dim, Index n, std::uint64_t seed) {
    std::vector<Point> pts = uniform_points(dim, n, seed);
    return PointSet(std::move(pts), Metric::l2(), seeded_tie_order(n, seed ^ 0xDA3E39CB94B95BDBull));
}

PointSet gen_clustered(int dim, Index n, Index clusters, double spread, std::uint64_t seed) {
    std::vector<Point> pts = clustered_points(dim, n, clusters, spread, seed);
    return PointSet(std::move(pts), Metric::l2(), seeded_tie_order(n, seed ^ 0xDA3E39CB94B95BDBull));
}

PointSet gen_collinear(const std::vector<double>& gaps, std::uint64_t tie_seed) {
    std::vector<Point> pts = collinear_points(gaps);
    Index n = static_cast<Index>(pts.size());
    return PointSet(std::move(pts), Metric::l2(), seeded_tie_order(n, tie_seed));
}

}  // namespace euclid_match
