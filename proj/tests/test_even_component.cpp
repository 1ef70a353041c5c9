#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "euclid_match/even_component.hpp"
#include "euclid_match/graph_util.hpp"
#include "oracles.hpp"

using namespace euclid_match;

TEST_SUITE_BEGIN("even_component");

namespace {

PointSet line(std::vector<double> xs) {
    std::vector<Point> pts;
    for (double x : xs) pts.push_back(Point{{x, 0.0}});
    Index n = static_cast<Index>(pts.size());
    return PointSet(std::move(pts), Metric::l2(), identity_order(n));
}

Edge mk(const PointSet& ps, Index a, Index b) {
    if (a > b) std::swap(a, b);
    return Edge{a, b, ps.distance(a, b)};
}

std::vector<Index> all_of(Index n) {
    std::vector<Index> v(n);
    std::iota(v.begin(), v.end(), 0);
    return v;
}

// Random forest whose components all have even vertex count: grow trees by
// attaching each new vertex to a random earlier vertex of the same block.
std::vector<Edge> random_even_forest(Rng& rng, const PointSet& ps) {
    Index n = ps.size();
    std::vector<Edge> edges;
    Index pos = 0;
    while (pos < n) {
        Index half = (n - pos) / 2;
        Index block = 2 * (1 + static_cast<Index>(rng.next_below(std::min<Index>(4, half))));
        for (Index v = pos + 1; v < pos + block; ++v) {
            Index u = pos + static_cast<Index>(rng.next_below(v - pos));
            edges.push_back(mk(ps, u, v));
        }
        pos += block;
    }
    return edges;
}

double edges_length(const std::vector<Edge>& edges) {
    double s = 0.0;
    for (const Edge& e : edges) s += e.length;
    return s;
}

}  // namespace

TEST_CASE("euler_circuit doubled structures") {
    // doubled single edge
    std::vector<std::pair<Index, Index>> multi{{0, 1}, {0, 1}};
    CHECK(euler_circuit(2, multi, 0) == std::vector<Index>{0, 1, 0});

    // doubled path of 3 vertices: 4 edges, middle visited twice
    std::vector<std::pair<Index, Index>> path{{0, 1}, {0, 1}, {1, 2}, {1, 2}};
    std::vector<Index> circ = euler_circuit(3, path, 0);
    CHECK(circ.size() == 5);
    CHECK(circ.front() == 0);
    CHECK(circ.back() == 0);

    // doubled star with 3 leaves: 6 edges, each used exactly once
    std::vector<std::pair<Index, Index>> star;
    for (Index leaf = 1; leaf <= 3; ++leaf) {
        star.emplace_back(0, leaf);
        star.emplace_back(0, leaf);
    }
    std::vector<Index> sc = euler_circuit(4, star, 0);
    CHECK(sc.size() == 7);
    std::map<std::pair<Index, Index>, int> used;
    for (std::size_t i = 0; i + 1 < sc.size(); ++i) {
        auto key = std::minmax(sc[i], sc[i + 1]);
        ++used[{key.first, key.second}];
    }
    for (Index leaf = 1; leaf <= 3; ++leaf) CHECK(used[{0, leaf}] == 2);

    // error paths
    std::vector<std::pair<Index, Index>> odd{{0, 1}};
    CHECK_THROWS_AS(euler_circuit(2, odd, 0), std::invalid_argument);
    std::vector<std::pair<Index, Index>> disconnected{{0, 1}, {0, 1}, {2, 3}, {2, 3}};
    CHECK_THROWS_AS(euler_circuit(4, disconnected, 0), std::invalid_argument);
}

TEST_CASE("shortcut examples") {
    CHECK(shortcut({7, 9, 7}) == std::vector<Index>{7, 9});
    CHECK(shortcut({0, 1, 2, 3, 2, 1, 0}) == std::vector<Index>{0, 1, 2, 3});
    CHECK(shortcut({4, 5, 6, 4}) == std::vector<Index>{4, 5, 6});  // already Hamiltonian
    CHECK_THROWS_AS(shortcut({0, 1, 2}), std::invalid_argument);
}

TEST_CASE("shortcut never increases length under any Lp metric") {
    Rng rng(501);
    for (Metric m : {Metric::l2(), Metric::lp(1), Metric::lp(4), Metric::linf()}) {
        for (int trial = 0; trial < 25; ++trial) {
            Index n = 4 + static_cast<Index>(rng.next_below(10));
            PointSet ps = oracles::random_point_set(rng, n, 2, false, m);
            // random closed walk touching every vertex
            std::vector<Index> walk;
            for (Index v = 0; v < n; ++v) walk.push_back(v);
            for (int extra = 0; extra < 8; ++extra)
                walk.push_back(static_cast<Index>(rng.next_below(n)));
            rng.shuffle(walk);
            walk.push_back(walk.front());

            double walk_len = 0.0;
            for (std::size_t i = 0; i + 1 < walk.size(); ++i)
                walk_len += ps.distance(walk[i], walk[i + 1]);
            std::vector<Index> cycle = shortcut(walk);
            CHECK(cycle.size() == n);
            double cycle_len = 0.0;
            for (std::size_t i = 0; i < cycle.size(); ++i)
                cycle_len += ps.distance(cycle[i], cycle[(i + 1) % cycle.size()]);
            CHECK(cycle_len <= walk_len + 1e-9);
        }
    }
}

TEST_CASE("lighter_half examples") {
    // rectangle with sides 1,5,1,5: the two length-1 edges win
    PointSet rect({Point{{0, 0}}, Point{{1, 0}}, Point{{1, 5}}, Point{{0, 5}}}, Metric::l2(),
                  identity_order(4));
    Matching m = lighter_half({0, 1, 2, 3}, rect);
    CHECK(m.pairs == std::vector<std::pair<Index, Index>>{{0, 1}, {2, 3}});
    CHECK(m.total_length(rect) == doctest::Approx(2.0));

    PointSet two = line({0, 3});
    Matching pair = lighter_half({0, 1}, two);
    CHECK(pair.pairs == std::vector<std::pair<Index, Index>>{{0, 1}});

    // regular hexagon: both halves come to three side lengths
    std::vector<Point> hex;
    for (int k = 0; k < 6; ++k)
        hex.push_back(Point{{std::cos(k * M_PI / 3.0), std::sin(k * M_PI / 3.0)}});
    PointSet hps(std::move(hex), Metric::l2(), identity_order(6));
    Matching hm = lighter_half({0, 1, 2, 3, 4, 5}, hps);
    CHECK(hm.total_length(hps) == doctest::Approx(3.0));

    // exact tie (integer coordinates): the half with the first edge wins
    PointSet square({Point{{0, 0}}, Point{{1, 0}}, Point{{1, 1}}, Point{{0, 1}}}, Metric::l2(),
                    identity_order(4));
    Matching sm = lighter_half({0, 1, 2, 3}, square);
    CHECK(sm.pairs == std::vector<std::pair<Index, Index>>{{0, 1}, {2, 3}});

    CHECK_THROWS_AS(lighter_half({0, 1, 2}, rect), std::invalid_argument);
}

TEST_CASE("even_component_matching path example") {
    PointSet ps = line({0, 1, 2, 3});
    std::vector<Edge> path{mk(ps, 0, 1), mk(ps, 1, 2), mk(ps, 2, 3)};
    Matching m = even_component_matching(all_of(4), path, ps);
    // doubled path -> Euler tour 0,1,2,3,2,1,0 -> cycle 0,1,2,3; halves are
    // {01,23} at 2 vs {12,30} at 4
    CHECK(m.pairs == std::vector<std::pair<Index, Index>>{{0, 1}, {2, 3}});
    CHECK(m.total_length(ps) == doctest::Approx(2.0));
    CHECK(m.total_length(ps) <= edges_length(path));
}

TEST_CASE("even_component_matching small components") {
    PointSet ps = line({0, 1, 10, 11});
    std::vector<Edge> one{mk(ps, 0, 1)};
    Matching single = even_component_matching({0, 1}, one, ps);
    CHECK(single.pairs == std::vector<std::pair<Index, Index>>{{0, 1}});

    std::vector<Edge> two{mk(ps, 0, 1), mk(ps, 2, 3)};
    Matching both = even_component_matching(all_of(4), two, ps);
    CHECK(both.pairs == std::vector<std::pair<Index, Index>>{{0, 1}, {2, 3}});
    CHECK(both.total_length(ps) == doctest::Approx(2.0));
}

TEST_CASE("even_component_matching rejects odd components") {
    PointSet ps = line({0, 1, 2});
    std::vector<Edge> path{mk(ps, 0, 1), mk(ps, 1, 2)};
    CHECK_THROWS_AS(even_component_matching(all_of(3), path, ps), std::invalid_argument);
}

TEST_CASE("disjoint cover and per-component length bound on random even forests") {
    Rng rng(909);
    for (int trial = 0; trial < 60; ++trial) {
        Index n = 2 * (2 + static_cast<Index>(rng.next_below(30)));
        PointSet ps = oracles::random_point_set(rng, n, 2, trial % 3 == 0);
        std::vector<Edge> forest = random_even_forest(rng, ps);
        Matching m = even_component_matching(all_of(n), forest, ps);

        std::vector<Index> cov = m.covered();
        REQUIRE(cov.size() == n);
        for (Index v = 0; v < n; ++v) CHECK(cov[v] == v);

        // per component: matched length <= component edge length
        ComponentStructure cs = components_of(n, forest);
        std::map<Index, double> comp_edge_len, comp_match_len;
        for (const Edge& e : forest) comp_edge_len[cs.comp[e.u]] += e.length;
        for (auto [a, b] : m.pairs) comp_match_len[cs.comp[a]] += ps.distance(a, b);
        for (auto [root, matched_len] : comp_match_len) {
            double cap = comp_edge_len[root];
            CHECK(matched_len <= cap + 1e-9 * std::max(1.0, cap));
        }
    }
}

TEST_SUITE_END();
