#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "euclid_match/baseline.hpp"
#include "euclid_match/exact.hpp"
#include "euclid_match/graph_util.hpp"
#include "euclid_match/instances.hpp"
#include "euclid_match/iterated.hpp"
#include "euclid_match/point_io.hpp"
#include "euclid_match/report_json.hpp"
#include "euclid_match/schedule.hpp"

namespace em = euclid_match;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 2;    // parity / invalid input values
constexpr int kExitParse = 3;     // I/O or file format
constexpr int kExitCapacity = 4;  // exact solver too large

std::uint64_t default_seed() {
    if (const char* env = std::getenv("EUCLID_MATCH_SEED")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0') return v;
        std::cerr << "warning: ignoring malformed EUCLID_MATCH_SEED\n";
    }
    return em::kDefaultSeed;
}

struct MetricOpts {
    std::string name = "l2";
    int p = 3;

    em::Metric build() const {
        if (name == "l2") return em::Metric::l2();
        if (name == "linf") return em::Metric::linf();
        return em::Metric::lp(p);
    }
};

em::PointSet load_point_set(const std::string& path, const em::Metric& metric,
                            std::uint64_t seed) {
    std::vector<em::Point> pts = em::read_points_file(path);
    return em::make_point_set(std::move(pts), metric, seed);
}

void write_matching_output(const em::Matching& m, const std::string& out_path) {
    if (out_path.empty()) {
        em::write_matching(std::cout, m);
    } else {
        std::ofstream out(out_path);
        if (!out) throw em::PointFileError("cannot open '" + out_path + "' for writing");
        em::write_matching(out, m);
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw em::PointFileError("cannot open '" + path + "' for writing");
    out << text;
}

// ---------------------------------------------------------------- solve ---

struct SolveOpts {
    std::string file;
    std::string out_path;
    std::string json_path;
    MetricOpts metric;
    em::SolveConfig cfg;
    bool quality = false;
    std::string mode = "auto";
    std::string engine = "auto";
};

int run_solve(SolveOpts& o) {
    static const std::map<std::string, em::SolveMode> modes{
        {"auto", em::SolveMode::Auto},
        {"tree2d", em::SolveMode::Tree2d},
        {"knn", em::SolveMode::KnnHighdim},
        {"knn_highdim", em::SolveMode::KnnHighdim}};
    static const std::map<std::string, em::ExactEngine> engines{
        {"auto", em::ExactEngine::Auto},
        {"blossom", em::ExactEngine::Blossom},
        {"bruteforce", em::ExactEngine::BruteForce}};
    o.cfg.mode = modes.at(o.mode);
    o.cfg.exact_engine = engines.at(o.engine);
    if (o.quality) o.cfg.threshold_exponent = 2.0 / 3.0;

    em::PointSet ps = load_point_set(o.file, o.metric.build(), o.cfg.seed);
    em::SolveResult res = em::solve(ps, o.cfg);

    write_matching_output(res.matching, o.out_path);
    if (!o.json_path.empty()) write_text_file(o.json_path, em::report_to_json(res.report) + "\n");
    std::cerr << "n=" << res.report.n << " dim=" << res.report.dim << " mode="
              << res.report.resolved_mode << " iterations=" << res.report.iterations.size()
              << " tail=" << res.report.exact_tail.size << " total_length="
              << res.report.total_length << " seconds=" << res.report.total_seconds << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------- exact ---

struct ExactOpts {
    std::string file;
    std::string out_path;
    MetricOpts metric;
    std::uint64_t seed = em::kDefaultSeed;
    std::string engine = "auto";
    em::Index capacity = em::WeightMatrix::kDefaultMaxN;
};

int run_exact_cmd(ExactOpts& o) {
    em::PointSet ps = load_point_set(o.file, o.metric.build(), o.seed);
    if (ps.size() % 2 != 0) throw std::invalid_argument("exact: odd-cardinality input");
    em::WeightMatrix wm = em::WeightMatrix::from_points(ps, o.capacity);
    em::ExactResult res;
    if (o.engine == "bruteforce" || (o.engine == "auto" && ps.size() <= 14))
        res = em::brute_force_mwpm(wm);
    else
        res = em::blossom_mwpm(wm);
    write_matching_output(res.matching, o.out_path);
    std::cerr << "n=" << ps.size() << " exact_length=" << res.length << "\n";
    return kExitOk;
}

// ------------------------------------------------------------------ gen ---

struct GenCommon {
    std::string out_path;

    void emit(const std::vector<em::Point>& pts) const {
        if (out_path.empty())
            em::write_points(std::cout, pts);
        else
            em::write_points_file(out_path, pts);
    }
};

// ------------------------------------------------------------- schedule ---

int run_schedule(int r, bool as_json) {
    em::Schedule s = em::solve_schedule(r);
    if (as_json) {
        nlohmann::json j;
        j["r"] = s.r;
        j["xs"] = s.xs;
        j["x_terminal"] = s.x_terminal;
        std::cout << j.dump(2) << "\n";
        return kExitOk;
    }
    char buf[64];
    for (std::size_t i = 0; i < s.xs.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "x[%zu] = %.12g", i + 1, s.xs[i]);
        std::cout << buf << "\n";
    }
    std::snprintf(buf, sizeof(buf), "x[%zu] = %.12g  (terminal)", s.xs.size() + 1, s.x_terminal);
    std::cout << buf << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------- bench ---

struct BenchOpts {
    std::string kind = "uniform";
    std::vector<em::Index> ns;
    std::vector<int> is;
    int dim = 2;
    std::uint64_t seed = em::kDefaultSeed;
    std::vector<std::string> algos{"inra"};
    bool quality = false;
    bool adversarial = true;
    std::string json_path;
    em::Index exact_capacity = 2000;
};

struct BenchRecord {
    std::string id;
    em::Index n = 0;
    int dim = 0;
    std::string algorithm;
    bool ok = false;
    std::string error;
    double length = 0.0;
    double wall_seconds = 0.0;
    double reduce_seconds = 0.0;
    double ratio = 0.0;  // 0 when exact is unavailable
};

int run_bench(BenchOpts& o) {
    struct Instance {
        std::string id;
        em::PointSet ps;
    };
    std::vector<Instance> instances;
    if (o.kind == "uniform" || o.kind == "clustered") {
        for (em::Index n : o.ns) {
            std::ostringstream id;
            id << o.kind << "-d" << o.dim << "-n" << n << "-s" << o.seed;
            instances.push_back(
                {id.str(), o.kind == "uniform"
                               ? em::gen_uniform(o.dim, n, o.seed)
                               : em::gen_clustered(o.dim, n, std::max<em::Index>(1, n / 64),
                                                   0.01, o.seed)});
        }
    } else if (o.kind == "lower_bound") {
        for (int i : o.is) {
            std::ostringstream id;
            id << "lower_bound-i" << i << (o.adversarial ? "-adv" : "");
            instances.push_back({id.str(), em::gen_lower_bound(i, o.adversarial, o.seed)});
        }
    } else {
        throw std::invalid_argument("bench: unknown kind '" + o.kind + "'");
    }

    std::vector<BenchRecord> records;
    for (const Instance& inst : instances) {
        double exact_len = -1.0;
        for (const std::string& algo : o.algos) {
            BenchRecord rec;
            rec.id = inst.id;
            rec.n = inst.ps.size();
            rec.dim = inst.ps.dim();
            rec.algorithm = algo;
            auto t0 = std::chrono::steady_clock::now();
            try {
                if (algo == "inra") {
                    em::SolveConfig cfg;
                    cfg.seed = o.seed;
                    if (o.quality) cfg.threshold_exponent = 2.0 / 3.0;
                    em::SolveResult res = em::solve(inst.ps, cfg);
                    rec.length = res.report.total_length;
                    rec.reduce_seconds = res.report.reduction_seconds;
                } else if (algo == "even_forest_baseline" || algo == "baseline") {
                    rec.length = em::even_forest_baseline(inst.ps).total_length(inst.ps);
                } else if (algo == "exact") {
                    em::WeightMatrix wm = em::WeightMatrix::from_points(inst.ps, o.exact_capacity);
                    em::ExactResult res = inst.ps.size() <= 14 ? em::brute_force_mwpm(wm)
                                                               : em::blossom_mwpm(wm);
                    rec.length = res.length;
                    exact_len = res.length;
                } else {
                    throw std::invalid_argument("bench: unknown algorithm '" + algo + "'");
                }
                rec.ok = true;
            } catch (const std::exception& e) {
                rec.error = e.what();
            }
            rec.wall_seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            records.push_back(rec);
        }
        if (exact_len > 0.0)
            for (BenchRecord& rec : records)
                if (rec.id == inst.id && rec.ok && rec.algorithm != "exact")
                    rec.ratio = rec.length / exact_len;
    }

    std::printf("%-28s %8s %4s %-22s %14s %10s %8s\n", "instance", "n", "dim", "algorithm",
                "length", "seconds", "ratio");
    for (const BenchRecord& rec : records) {
        if (!rec.ok) {
            std::printf("%-28s %8u %4d %-22s failed: %s\n", rec.id.c_str(), rec.n, rec.dim,
                        rec.algorithm.c_str(), rec.error.c_str());
            continue;
        }
        std::printf("%-28s %8u %4d %-22s %14.6f %10.3f %8s\n", rec.id.c_str(), rec.n, rec.dim,
                    rec.algorithm.c_str(), rec.length, rec.wall_seconds,
                    rec.ratio > 0.0 ? std::to_string(rec.ratio).c_str() : "-");
    }

    if (!o.json_path.empty()) {
        nlohmann::json j;
        j["schema"] = "1";
        j["records"] = nlohmann::json::array();
        for (const BenchRecord& rec : records) {
            nlohmann::json jr{{"id", rec.id},           {"n", rec.n},
                              {"dim", rec.dim},         {"algorithm", rec.algorithm},
                              {"ok", rec.ok},           {"length", rec.length},
                              {"wall_seconds", rec.wall_seconds},
                              {"reduce_seconds", rec.reduce_seconds}};
            if (rec.ratio > 0.0) jr["ratio"] = rec.ratio;
            if (!rec.ok) jr["error"] = rec.error;
            j["records"].push_back(jr);
        }
        write_text_file(o.json_path, j.dump(2) + "\n");
    }
    return kExitOk;
}

// --------------------------------------------------------------- verify ---

int run_verify(const std::string& file, std::uint64_t seed, bool with_exact) {
    em::PointSet ps = load_point_set(file, em::Metric::l2(), seed);
    em::Index n = ps.size();
    if (n % 2 != 0) throw std::invalid_argument("verify: odd-cardinality input");
    if (n < 2) throw std::invalid_argument("verify: need at least 2 points");
    int failures = 0;
    auto check = [&](bool ok, const std::string& what) {
        std::cout << (ok ? "[ok]   " : "[FAIL] ") << what << "\n";
        if (!ok) ++failures;
    };

    em::ProximityGraph nn = em::nn_graph(ps);
    {
        em::Dsu dsu(n);
        bool acyclic = true;
        for (const em::Edge& e : nn.edges)
            if (!dsu.unite(e.u, e.v)) acyclic = false;
        check(acyclic, "nearest-neighbor graph is a forest");
    }
    {
        em::ProximityGraph tree = em::emst(ps);
        std::vector<std::pair<em::Index, em::Index>> tree_pairs;
        for (const em::Edge& e : tree.edges) tree_pairs.emplace_back(e.u, e.v);
        std::sort(tree_pairs.begin(), tree_pairs.end());
        bool contained = true;
        for (const em::Edge& e : nn.edges)
            if (!std::binary_search(tree_pairs.begin(), tree_pairs.end(),
                                    std::make_pair(e.u, e.v)))
                contained = false;
        check(contained, "nearest-neighbor graph is a subgraph of the EMST");
    }

    em::SolveConfig cfg;
    cfg.seed = seed;
    em::SolveResult a = em::solve(ps, cfg);
    em::SolveResult b = em::solve(ps, cfg);
    check(a.matching.pairs == b.matching.pairs, "solve is deterministic for the fixed seed");
    {
        std::vector<em::Index> cov = a.matching.covered();
        bool perfect = cov.size() == n;
        for (em::Index i = 0; perfect && i < n; ++i) perfect = cov[i] == i;
        check(perfect, "solve returns a perfect matching");
    }
    {
        double acc = a.report.exact_tail.length;
        for (const em::IterationRecord& it : a.report.iterations) acc += it.matching_length;
        check(std::abs(acc - a.report.total_length) <= 1e-9 * std::max(1.0, acc),
              "report totals are consistent");
    }

    bool exact_feasible = n <= 14 || (with_exact && n <= 2000);
    if (exact_feasible) {
        em::WeightMatrix wm = em::WeightMatrix::from_points(ps);
        em::ExactResult ex = n <= 14 ? em::brute_force_mwpm(wm) : em::blossom_mwpm(wm);
        check(nn.total_length() <= 2.0 * ex.length + 1e-9,
              "NN length is at most twice the optimal matching length");
        if (ex.length > 0.0) {
            double ratio = a.report.total_length / ex.length;
            check(ratio >= 1.0 - 1e-9, "solve length is at least the optimum");
            double bound = 1.0;
            if (!a.report.iterations.empty()) {
                int q_last = a.report.iterations.back().q;
                bound = 2.0 * (2.0 * q_last + 2.0);
                for (const em::IterationRecord& it : a.report.iterations)
                    bound *= 2.0 * it.q + 3.0;
            }
            check(ratio <= bound + 1e-9, "solve ratio is within the per-run derived bound");
        }
    } else {
        std::cout << "[skip] exact referee (n too large; rerun with --exact for n <= 2000)\n";
    }

    return failures == 0 ? kExitOk : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Deterministic approximation and exact solvers for Euclidean minimum-weight "
                 "perfect matching"};
    app.require_subcommand(1);
    std::uint64_t seed = default_seed();

    // solve
    SolveOpts so;
    so.cfg.seed = seed;
    CLI::App* solve_cmd = app.add_subcommand("solve", "Iterated-node-reduction matching");
    solve_cmd->add_option("file", so.file, "point file")->required();
    solve_cmd->add_option("--r", so.cfg.r, "schedule length r");
    solve_cmd->add_option("--epsilon", so.cfg.epsilon, "threshold epsilon");
    solve_cmd->add_option("--seed", so.cfg.seed, "tie-order seed");
    solve_cmd->add_option("--mode", so.mode, "auto|tree2d|knn")
        ->check(CLI::IsMember({"auto", "tree2d", "knn", "knn_highdim"}));
    solve_cmd->add_flag("--quality", so.quality, "use the n^(2/3) tail threshold");
    solve_cmd->add_option("--exact-engine", so.engine, "auto|blossom|bruteforce")
        ->check(CLI::IsMember({"auto", "blossom", "bruteforce"}));
    solve_cmd->add_option("--knn-r-cap", so.cfg.knn_r_cap, "high-dimension r cap (<= 6)");
    solve_cmd->add_option("--out", so.out_path, "matching output file (default stdout)");
    solve_cmd->add_option("--json", so.json_path, "write the run report as JSON");
    solve_cmd->add_option("--metric", so.metric.name, "l2|linf|lp")
        ->check(CLI::IsMember({"l2", "linf", "lp"}));
    solve_cmd->add_option("--p", so.metric.p, "p for the lp metric");

    // exact
    ExactOpts eo;
    eo.seed = seed;
    CLI::App* exact_cmd = app.add_subcommand("exact", "Exact minimum-weight perfect matching");
    exact_cmd->add_option("file", eo.file, "point file")->required();
    exact_cmd->add_option("--engine", eo.engine, "auto|blossom|bruteforce")
        ->check(CLI::IsMember({"auto", "blossom", "bruteforce"}));
    exact_cmd->add_option("--capacity", eo.capacity, "dense weight matrix cap");
    exact_cmd->add_option("--out", eo.out_path, "matching output file (default stdout)");
    exact_cmd->add_option("--metric", eo.metric.name, "l2|linf|lp")
        ->check(CLI::IsMember({"l2", "linf", "lp"}));
    exact_cmd->add_option("--p", eo.metric.p, "p for the lp metric");

    // gen
    CLI::App* gen_cmd = app.add_subcommand("gen", "Instance generators");
    gen_cmd->require_subcommand(1);
    GenCommon gen_common;
    int g_dim = 2, g_i = 1;
    em::Index g_n = 100, g_clusters = 8;
    double g_spread = 0.01;
    std::uint64_t g_seed = seed;
    std::vector<double> g_gaps;

    CLI::App* gu = gen_cmd->add_subcommand("uniform", "i.i.d. uniform in [0,1]^dim");
    gu->add_option("--dim", g_dim)->check(CLI::Range(1, 8));
    gu->add_option("--n", g_n)->required();
    gu->add_option("--seed", g_seed);
    gu->add_option("--out", gen_common.out_path);

    CLI::App* gc = gen_cmd->add_subcommand("clustered", "Gaussian clusters");
    gc->add_option("--dim", g_dim)->check(CLI::Range(1, 8));
    gc->add_option("--n", g_n)->required();
    gc->add_option("--clusters", g_clusters);
    gc->add_option("--spread", g_spread);
    gc->add_option("--seed", g_seed);
    gc->add_option("--out", gen_common.out_path);

    CLI::App* gl = gen_cmd->add_subcommand("lower-bound", "recursive adversarial family");
    gl->add_option("--i", g_i, "recursion depth (n = 2*7^i)")->required()->check(CLI::Range(0, 8));
    gl->add_option("--out", gen_common.out_path);

    CLI::App* gg = gen_cmd->add_subcommand("collinear", "points on a line at prefix sums of gaps");
    gg->add_option("--gaps", g_gaps, "comma-separated positive gaps")
        ->required()
        ->delimiter(',');
    gg->add_option("--out", gen_common.out_path);

    // schedule
    int sched_r = 1000;
    bool sched_json = false;
    CLI::App* sched_cmd = app.add_subcommand("schedule", "Solve the threshold schedule");
    sched_cmd->add_option("--r", sched_r, "schedule length")->required();
    sched_cmd->add_flag("--json", sched_json);

    // bench
    BenchOpts bo;
    bo.seed = seed;
    CLI::App* bench_cmd = app.add_subcommand("bench", "Benchmark harness");
    bench_cmd->add_option("--kind", bo.kind, "uniform|clustered|lower_bound")
        ->check(CLI::IsMember({"uniform", "clustered", "lower_bound"}));
    bench_cmd->add_option("--n", bo.ns, "instance sizes")->delimiter(',');
    bench_cmd->add_option("--i", bo.is, "lower-bound depths")->delimiter(',');
    bench_cmd->add_option("--dim", bo.dim)->check(CLI::Range(1, 8));
    bench_cmd->add_option("--seed", bo.seed);
    bench_cmd->add_option("--algos", bo.algos, "inra,baseline,exact")->delimiter(',');
    bench_cmd->add_flag("--quality", bo.quality);
    bench_cmd->add_flag("--adversarial,!--no-adversarial", bo.adversarial,
                        "adversarial tie profile for lower-bound instances");
    bench_cmd->add_option("--exact-capacity", bo.exact_capacity);
    bench_cmd->add_option("--json", bo.json_path);

    // verify
    std::string verify_file;
    bool verify_exact = false;
    std::uint64_t verify_seed = seed;
    CLI::App* verify_cmd = app.add_subcommand("verify", "Run the invariant suite on a point file");
    verify_cmd->add_option("file", verify_file)->required();
    verify_cmd->add_option("--seed", verify_seed);
    verify_cmd->add_flag("--exact", verify_exact, "use the blossom referee up to n = 2000");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve_cmd->parsed()) return run_solve(so);
        if (exact_cmd->parsed()) return run_exact_cmd(eo);
        if (gen_cmd->parsed()) {
            if (gu->parsed()) gen_common.emit(em::uniform_points(g_dim, g_n, g_seed));
            if (gc->parsed())
                gen_common.emit(em::clustered_points(g_dim, g_n, g_clusters, g_spread, g_seed));
            if (gl->parsed()) gen_common.emit(em::lower_bound_points(g_i));
            if (gg->parsed()) gen_common.emit(em::collinear_points(g_gaps));
            return kExitOk;
        }
        if (sched_cmd->parsed()) return run_schedule(sched_r, sched_json);
        if (bench_cmd->parsed()) return run_bench(bo);
        if (verify_cmd->parsed()) return run_verify(verify_file, verify_seed, verify_exact);
    } catch (const em::PointFileError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const em::CapacityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCapacity;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitOk;
}
