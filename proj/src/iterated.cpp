#include "euclid_match/iterated.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace euclid_match {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

ReduceMode resolve_mode(const PointSet& ps, SolveMode mode) {
    switch (mode) {
        case SolveMode::Tree2d:
            return ReduceMode::Tree2d;
        case SolveMode::KnnHighdim:
            return ReduceMode::KnnHighdim;
        case SolveMode::Auto:
            break;
    }
    return ps.dim() <= 2 ? ReduceMode::Tree2d : ReduceMode::KnnHighdim;
}

ExactEngine resolve_engine(ExactEngine engine, Index tail_size) {
    if (engine != ExactEngine::Auto) return engine;
    return tail_size <= 10 ? ExactEngine::BruteForce : ExactEngine::Blossom;
}

ExactResult run_exact(const PointSet& ps, const std::vector<Index>& subset, ExactEngine engine,
                      Index capacity) {
    WeightMatrix wm = WeightMatrix::from_points(ps, subset, capacity);
    ExactResult local =
        engine == ExactEngine::BruteForce ? brute_force_mwpm(wm) : blossom_mwpm(wm);
    ExactResult out;
    out.length = local.length;
    out.matching.pairs.reserve(local.matching.pairs.size());
    for (auto [a, b] : local.matching.pairs)
        out.matching.pairs.emplace_back(subset[a], subset[b]);
    out.matching.normalize();
    return out;
}

}  // namespace

const char* to_string(SolveMode mode) {
    switch (mode) {
        case SolveMode::Auto:
            return "auto";
        case SolveMode::Tree2d:
            return "tree2d";
        case SolveMode::KnnHighdim:
            return "knn_highdim";
    }
    return "?";
}

const char* to_string(ExactEngine engine) {
    switch (engine) {
        case ExactEngine::Auto:
            return "auto";
        case ExactEngine::Blossom:
            return "blossom";
        case ExactEngine::BruteForce:
            return "bruteforce";
    }
    return "?";
}

SolveResult solve(const PointSet& ps, const SolveConfig& cfg) {
    Index n = ps.size();
    if (n == 0) throw std::invalid_argument("solve: empty point set");
    if (n % 2 != 0) throw std::invalid_argument("solve: odd-cardinality input");
    if (!(cfg.epsilon > 0.0)) throw std::invalid_argument("solve: epsilon must be positive");
    if (!(cfg.threshold_exponent - cfg.epsilon > 0.0))
        throw std::invalid_argument("solve: threshold_exponent - epsilon must be positive");
    if (cfg.knn_r_cap < 0 || cfg.knn_r_cap > 6)
        throw std::invalid_argument("solve: knn_r_cap must be in [0, 6]");

    Clock::time_point t_start = Clock::now();
    ReduceMode mode = resolve_mode(ps, cfg.mode);
    int r_eff = mode == ReduceMode::KnnHighdim ? std::min(cfg.r, cfg.knn_r_cap) : cfg.r;
    Schedule sched = solve_schedule(r_eff);
    double threshold = std::pow(static_cast<double>(n), cfg.threshold_exponent - cfg.epsilon);

    SolveResult result;
    RunReport& rep = result.report;
    rep.n = n;
    rep.dim = ps.dim();
    rep.config = cfg;
    rep.resolved_mode = mode == ReduceMode::Tree2d ? "tree2d" : "knn_highdim";

    std::vector<Index> active(n);
    std::iota(active.begin(), active.end(), 0);
    while (static_cast<double>(active.size()) > threshold) {
        if (active.size() % 2 != 0)
            throw std::logic_error("solve: residual set with odd cardinality");
        Clock::time_point t0 = Clock::now();
        ReductionResult red = node_reduction(ps, active, sched, mode);
        if (red.residual.size() >= active.size())
            throw std::logic_error("solve: node reduction made no progress");

        IterationRecord it;
        it.size_in = static_cast<Index>(active.size());
        it.size_out = static_cast<Index>(red.residual.size());
        it.q = red.rounds_q;
        it.odd_counts = std::move(red.odd_counts);
        it.even_counts = std::move(red.even_counts);
        it.matching_length = red.matched.total_length(ps);
        it.knn_exhausted = red.knn_exhausted;
        it.wall_seconds = seconds_since(t0);
        rep.reduction_seconds += it.wall_seconds;
        rep.total_length += it.matching_length;
        rep.iterations.push_back(std::move(it));

        result.matching.pairs.insert(result.matching.pairs.end(), red.matched.pairs.begin(),
                                     red.matched.pairs.end());
        active = std::move(red.residual);
    }

    rep.exact_tail.size = static_cast<Index>(active.size());
    if (active.size() >= 2) {
        Clock::time_point t0 = Clock::now();
        ExactEngine engine = resolve_engine(cfg.exact_engine, static_cast<Index>(active.size()));
        if (engine == ExactEngine::BruteForce && active.size() > 14)
            throw CapacityError("solve: brute-force tail limited to n <= 14");
        ExactResult tail = run_exact(ps, active, engine, cfg.exact_capacity);
        rep.exact_tail.length = tail.length;
        rep.exact_tail_seconds = seconds_since(t0);
        rep.total_length += tail.length;
        result.matching.pairs.insert(result.matching.pairs.end(), tail.matching.pairs.begin(),
                                     tail.matching.pairs.end());
    }

    result.matching.normalize();
    std::vector<Index> cov = result.matching.covered();
    if (cov.size() != static_cast<std::size_t>(n))
        throw std::logic_error("solve: matching is not perfect");
    for (Index i = 0; i < n; ++i)
        if (cov[i] != i) throw std::logic_error("solve: matching is not perfect");

    rep.total_seconds = seconds_since(t_start);
    return result;
}

double approximation_ratio(const PointSet& ps, const SolveConfig& cfg, Index capacity) {
    Index n = ps.size();
    if (n % 2 != 0) throw std::invalid_argument("approximation_ratio: odd-cardinality input");
    if (n > capacity)
        throw CapacityError("approximation_ratio: instance exceeds the exact-solver capacity");

    SolveResult sol = solve(ps, cfg);
    std::vector<Index> all(n);
    std::iota(all.begin(), all.end(), 0);
    ExactEngine engine = n <= 14 ? ExactEngine::BruteForce : ExactEngine::Blossom;
    ExactResult exact = run_exact(ps, all, engine, capacity);

    if (exact.length <= 0.0)
        return sol.report.total_length <= 1e-12 ? 1.0
                                                : std::numeric_limits<double>::infinity();
    return sol.report.total_length / exact.length;
}

}  // namespace euclid_match
