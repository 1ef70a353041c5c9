#include <doctest.h>

#include <algorithm>
#include <set>

#include "euclid_match/graph_util.hpp"
#include "euclid_match/proximity.hpp"
#include "euclid_match/instances.hpp"
#include "oracles.hpp"

using namespace euclid_match;

TEST_SUITE_BEGIN("proximity");

namespace {

std::vector<std::pair<Index, Index>> pairs_of(const ProximityGraph& g) {
    std::vector<std::pair<Index, Index>> out;
    for (const Edge& e : g.edges) out.emplace_back(e.u, e.v);
    std::sort(out.begin(), out.end());
    return out;
}

bool is_forest(const ProximityGraph& g) {
    Dsu dsu(g.n);
    for (const Edge& e : g.edges)
        if (!dsu.unite(e.u, e.v)) return false;
    return true;
}

PointSet collinear_identity(std::vector<double> xs) {
    std::vector<Point> pts;
    for (double x : xs) pts.push_back(Point{{x, 0.0}});
    Index n = static_cast<Index>(pts.size());
    return PointSet(std::move(pts), Metric::l2(), identity_order(n));
}

}  // namespace

TEST_CASE("nn_graph collinear example") {
    PointSet ps = collinear_identity({0, 1, 3, 7});
    ProximityGraph g = nn_graph(ps);
    // brute force over all pairs: x=0 and x=1 pair up, x=3 goes to x=1,
    // x=7 goes to x=3
    CHECK(pairs_of(g) == oracles::brute_nn_edges(ps));
    CHECK(pairs_of(g) == std::vector<std::pair<Index, Index>>{{0, 1}, {1, 2}, {2, 3}});
}

TEST_CASE("nn_graph two points") {
    PointSet ps = collinear_identity({0, 5});
    ProximityGraph g = nn_graph(ps);
    CHECK(pairs_of(g) == std::vector<std::pair<Index, Index>>{{0, 1}});
    CHECK_THROWS_AS(nn_graph(collinear_identity({1})), std::invalid_argument);
}

TEST_CASE("nn_graph unit square ties") {
    // Corners (0,0),(1,0),(0,1),(1,1) with identity ties. Each corner has two
    // neighbors at distance 1 and picks the lower-indexed one, giving the
    // forest {0-1, 0-2, 1-3}: three unit edges, acyclic.
    PointSet ps({Point{{0, 0}}, Point{{1, 0}}, Point{{0, 1}}, Point{{1, 1}}}, Metric::l2(),
                identity_order(4));
    ProximityGraph g = nn_graph(ps);
    CHECK(pairs_of(g) == oracles::brute_nn_edges(ps));
    CHECK(pairs_of(g) == std::vector<std::pair<Index, Index>>{{0, 1}, {0, 2}, {1, 3}});
    for (const Edge& e : g.edges) CHECK(e.length == doctest::Approx(1.0));
    CHECK(is_forest(g));
}

TEST_CASE("nn_graph matches the brute oracle and stays a forest") {
    Rng rng(101);
    for (int trial = 0; trial < 40; ++trial) {
        Index n = 2 + static_cast<Index>(rng.next_below(60));
        int dim = 1 + static_cast<int>(rng.next_below(3));
        bool rough = trial % 2 == 0;
        PointSet ps = oracles::random_point_set(rng, n, dim, rough);
        ProximityGraph g = nn_graph(ps);
        CHECK(pairs_of(g) == oracles::brute_nn_edges(ps));
        CHECK(is_forest(g));
        std::vector<int> deg(n, 0);
        for (const Edge& e : g.edges) {
            ++deg[e.u];
            ++deg[e.v];
        }
        for (Index v = 0; v < n; ++v) CHECK(deg[v] >= 1);
    }
}

TEST_CASE("nn_graph acyclic at scale with heavy duplicates") {
    Rng rng(77);
    PointSet ps = oracles::random_point_set(rng, 10000, 2, true);
    CHECK(is_forest(nn_graph(ps)));

    // all points identical: one big duplicate group
    std::vector<Point> same(5000, Point{{0.25, 0.75}});
    PointSet dup(std::move(same), Metric::l2(), seeded_tie_order(5000, 9));
    CHECK(is_forest(nn_graph(dup)));
}

TEST_CASE("knn_graph collinear k=2 example") {
    PointSet ps = collinear_identity({0, 1, 3, 7});
    ProximityGraph g = knn_graph(ps, 2);
    // all pairwise distances, two smallest per vertex, union:
    // x=0 -> {1,3}; x=1 -> {0,3}; x=3 -> {1,0}; x=7 -> {3,1}
    CHECK(pairs_of(g) == oracles::brute_knn_edges(ps, 2));
    CHECK(pairs_of(g) ==
          std::vector<std::pair<Index, Index>>{{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}});
}

TEST_CASE("knn_graph edge cases") {
    PointSet ps = collinear_identity({0, 1, 3, 7});
    CHECK(knn_graph(ps, 3).edges.size() == 6);  // k = n-1: complete graph
    CHECK(pairs_of(knn_graph(ps, 1)) == pairs_of(nn_graph(ps)));
    CHECK_THROWS_AS(knn_graph(ps, 4), std::invalid_argument);

    Rng rng(55);
    for (int trial = 0; trial < 20; ++trial) {
        Index n = 5 + static_cast<Index>(rng.next_below(40));
        PointSet rps = oracles::random_point_set(rng, n, 2, trial % 2 == 0);
        int k = 1 + static_cast<int>(rng.next_below(std::min<Index>(n - 1, 8)));
        CHECK(pairs_of(knn_graph(rps, k)) == oracles::brute_knn_edges(rps, k));
        CHECK(pairs_of(knn_graph(rps, 1)) == pairs_of(nn_graph(rps)));
    }
}

TEST_CASE("emst collinear example") {
    PointSet ps = collinear_identity({0, 1, 3, 7});
    ProximityGraph t = emst(ps);
    CHECK(pairs_of(t) == std::vector<std::pair<Index, Index>>{{0, 1}, {1, 2}, {2, 3}});
    CHECK(t.total_length() == doctest::Approx(7.0));
}

TEST_CASE("emst small cases") {
    CHECK(emst(collinear_identity({0, 5})).edges.size() == 1);
    CHECK(emst(collinear_identity({3})).edges.empty());

    PointSet square({Point{{0, 0}}, Point{{1, 0}}, Point{{0, 1}}, Point{{1, 1}}}, Metric::l2(),
                    identity_order(4));
    ProximityGraph t = emst(square);
    REQUIRE(t.edges.size() == 3);
    for (const Edge& e : t.edges) CHECK(e.length == doctest::Approx(1.0));
    CHECK(t.total_length() == doctest::Approx(oracles::brute_mst_length(square)));
}

TEST_CASE("emst equals the Kruskal oracle") {
    Rng rng(303);
    for (int trial = 0; trial < 50; ++trial) {
        Index n = 1 + static_cast<Index>(rng.next_below(70));
        int dim = 1 + static_cast<int>(rng.next_below(3));
        PointSet ps = oracles::random_point_set(rng, n, dim, trial % 3 == 0);
        ProximityGraph t = emst(ps);
        REQUIRE(t.edges.size() + 1 == n);
        CHECK(pairs_of(t) == oracles::brute_mst_edges(ps));
    }
}

TEST_CASE("nn_graph is a subgraph of emst") {
    Rng rng(404);
    for (int trial = 0; trial < 30; ++trial) {
        Index n = 2 + static_cast<Index>(rng.next_below(120));
        PointSet ps = oracles::random_point_set(rng, n, 2, trial % 2 == 0);
        std::vector<std::pair<Index, Index>> tree = pairs_of(emst(ps));
        for (const Edge& e : nn_graph(ps).edges)
            CHECK(std::binary_search(tree.begin(), tree.end(), std::make_pair(e.u, e.v)));
    }
    // the adversarial tie profile is the stress case for tie consistency
    PointSet adv = gen_lower_bound(2, true);
    std::vector<std::pair<Index, Index>> tree = pairs_of(emst(adv));
    for (const Edge& e : nn_graph(adv).edges)
        CHECK(std::binary_search(tree.begin(), tree.end(), std::make_pair(e.u, e.v)));
}

TEST_CASE("edge_rank sorts by length then endpoints") {
    ProximityGraph g;
    g.n = 4;
    g.edges = {Edge{2, 3, 2.0}, Edge{0, 1, 1.0}, Edge{1, 2, 1.0}};
    std::vector<Index> order = edge_rank(g);
    CHECK(order == std::vector<Index>{1, 2, 0});

    ProximityGraph single;
    single.n = 2;
    single.edges = {Edge{0, 1, 5.0}};
    CHECK(edge_rank(single) == std::vector<Index>{0});

    ProximityGraph equal;
    equal.n = 4;
    equal.edges = {Edge{1, 3, 1.0}, Edge{0, 2, 1.0}, Edge{0, 1, 1.0}};
    CHECK(edge_rank(equal) == std::vector<Index>{2, 1, 0});
}

TEST_SUITE_END();
