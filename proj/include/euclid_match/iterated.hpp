#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "euclid_match/exact.hpp"
#include "euclid_match/node_reduction.hpp"

namespace euclid_match {

inline constexpr std::uint64_t kDefaultSeed = 0x9E3779B97F4A7C15ull;

enum class SolveMode { Auto, Tree2d, KnnHighdim };
enum class ExactEngine { Auto, Blossom, BruteForce };

struct SolveConfig {
    int r = 1000;
    double epsilon = 0.01;
    double threshold_exponent = 1.0 / 3.0;  // quality runs use 2/3
    SolveMode mode = SolveMode::Auto;
    std::uint64_t seed = kDefaultSeed;
    ExactEngine exact_engine = ExactEngine::Auto;
    int knn_r_cap = 3;  // high-dimension r cap; k = 3^r edges per vertex
    Index exact_capacity = WeightMatrix::kDefaultMaxN;
};

struct IterationRecord {
    Index size_in = 0;
    Index size_out = 0;
    int q = 0;
    std::vector<Index> odd_counts;
    std::vector<Index> even_counts;
    double matching_length = 0.0;
    double wall_seconds = 0.0;
    Index knn_exhausted = 0;
};

struct ExactTailRecord {
    Index size = 0;
    double length = 0.0;
};

struct RunReport {
    Index n = 0;
    int dim = 0;
    std::vector<IterationRecord> iterations;
    ExactTailRecord exact_tail;
    double total_length = 0.0;
    double reduction_seconds = 0.0;
    double exact_tail_seconds = 0.0;
    double total_seconds = 0.0;
    SolveConfig config;
    std::string resolved_mode;  // tree2d or knn_highdim after Auto resolution
};

struct SolveResult {
    Matching matching;
    RunReport report;
};

// Iterated node reduction: reduce while the active set is larger than
// n^(threshold_exponent - epsilon), then finish the tail with an exact
// solver. Deterministic for a fixed config.
SolveResult solve(const PointSet& ps, const SolveConfig& cfg);

// solve length / exact length on the same point set. Requires even n within
// the exact capacity (blossom referee; brute force when n <= 14).
double approximation_ratio(const PointSet& ps, const SolveConfig& cfg, Index capacity = 2000);

const char* to_string(SolveMode mode);
const char* to_string(ExactEngine engine);

}  // namespace euclid_match
