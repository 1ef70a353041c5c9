#include <algorithm>
#include <cmath>
#include <limits>

#include "euclid_match/exact.hpp"

namespace euclid_match {

WeightMatrix::WeightMatrix(Index n, std::vector<double> weights) : n_(n), w_(std::move(weights)) {
    if (w_.size() != static_cast<std::size_t>(n_) * n_)
        throw std::invalid_argument("weight matrix size mismatch");
    for (Index i = 0; i < n_; ++i) {
        if (at(i, i) != 0.0) throw std::invalid_argument("weight matrix diagonal must be zero");
        for (Index j = 0; j < n_; ++j) {
            double x = at(i, j);
            if (!std::isfinite(x) || x < 0.0)
                throw std::invalid_argument("weights must be finite and nonnegative");
            if (x != at(j, i)) throw std::invalid_argument("weight matrix must be symmetric");
            max_w_ = std::max(max_w_, x);
        }
    }
}

WeightMatrix WeightMatrix::from_points(const PointSet& ps, Index max_n) {
    std::vector<Index> all(ps.size());
    for (Index i = 0; i < ps.size(); ++i) all[i] = i;
    return from_points(ps, all, max_n);
}

WeightMatrix WeightMatrix::from_points(const PointSet& ps, const std::vector<Index>& subset,
                                       Index max_n) {
    Index n = static_cast<Index>(subset.size());
    if (n > max_n)
        throw CapacityError("instance of size " + std::to_string(n) +
                            " exceeds the dense weight matrix cap of " + std::to_string(max_n));
    std::vector<double> w(static_cast<std::size_t>(n) * n, 0.0);
    for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j) {
            double d = ps.distance(subset[i], subset[j]);
            w[static_cast<std::size_t>(i) * n + j] = d;
            w[static_cast<std::size_t>(j) * n + i] = d;
        }
    return WeightMatrix(n, std::move(w));
}

namespace {

struct BruteState {
    const WeightMatrix* w;
    Index n;
    std::vector<Index> mate;
    std::vector<std::pair<Index, Index>> current;
    std::vector<std::pair<Index, Index>> best_pairs;
    double best = std::numeric_limits<double>::infinity();

    // Enumerates pair lists in lexicographic order, so the first optimum
    // found is the lexicographically least one.
    void search(Index from, double acc) {
        if (acc >= best) return;
        Index a = from;
        while (a < n && mate[a] != n) ++a;
        if (a == n) {
            best = acc;
            best_pairs = current;
            return;
        }
        for (Index b = a + 1; b < n; ++b) {
            if (mate[b] != n) continue;
            mate[a] = b;
            mate[b] = a;
            current.emplace_back(a, b);
            search(a + 1, acc + w->at(a, b));
            current.pop_back();
            mate[a] = n;
            mate[b] = n;
        }
    }
};

}  // namespace

ExactResult brute_force_mwpm(const WeightMatrix& w) {
    Index n = w.size();
    if (n < 2 || n > 14 || n % 2 != 0)
        throw std::invalid_argument("brute_force_mwpm requires even n in [2, 14]");
    BruteState st;
    st.w = &w;
    st.n = n;
    st.mate.assign(n, n);
    st.search(0, 0.0);

    ExactResult res;
    res.matching.pairs = std::move(st.best_pairs);
    res.matching.normalize();
    res.length = st.best;
    return res;
}

}  // namespace euclid_match
