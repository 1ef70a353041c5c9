#include <doctest.h>

#include <cmath>
#include <sstream>

#include "euclid_match/geometry.hpp"
#include "euclid_match/point_io.hpp"
#include "euclid_match/rng.hpp"
#include "oracles.hpp"

using namespace euclid_match;

TEST_SUITE_BEGIN("geometry");

namespace {
PointSet two_points(Metric m) {
    return PointSet({Point{{0.0, 0.0}}, Point{{3.0, 4.0}}}, m, identity_order(2));
}
}  // namespace

TEST_CASE("distance basics") {
    CHECK(two_points(Metric::l2()).distance(0, 1) == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(two_points(Metric::linf()).distance(0, 1) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(two_points(Metric::l2()).distance(1, 1) == 0.0);
    CHECK(two_points(Metric::lp(1)).distance(0, 1) == doctest::Approx(7.0).epsilon(1e-12));
    CHECK_THROWS_AS((void)two_points(Metric::l2()).distance(0, 2), std::out_of_range);
}

TEST_CASE("construction rejects bad input") {
    CHECK_THROWS_AS(PointSet({Point{{0.0}}, Point{{1.0, 2.0}}}, Metric::l2(), identity_order(2)),
                    std::invalid_argument);
    CHECK_THROWS_AS(PointSet({Point{{std::nan("")}}}, Metric::l2(), identity_order(1)),
                    std::invalid_argument);
    CHECK_THROWS_AS(PointSet({Point{{0.0}}, Point{{1.0}}}, Metric::l2(), {0, 0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(Metric::lp(0), std::invalid_argument);
    // duplicates are fine
    PointSet dup({Point{{1.0, 1.0}}, Point{{1.0, 1.0}}}, Metric::l2(), identity_order(2));
    CHECK(dup.distance(0, 1) == 0.0);
}

TEST_CASE("compare_for_ties is the tie_order") {
    PointSet ps({Point{{0.}}, Point{{1.}}, Point{{2.}}, Point{{3.}}, Point{{4.}}, Point{{5.}}},
                Metric::l2(), identity_order(6));
    CHECK(ps.compare_for_ties(2, 5) == std::strong_ordering::less);
    CHECK(ps.compare_for_ties(5, 2) == std::strong_ordering::greater);

    std::vector<Index> reversed{3, 2, 1, 0};
    PointSet rev({Point{{0.}}, Point{{1.}}, Point{{2.}}, Point{{3.}}}, Metric::l2(), reversed);
    CHECK(rev.compare_for_ties(0, 3) == std::strong_ordering::greater);
}

TEST_CASE("compare_for_ties is a strict total order") {
    Rng rng(7);
    PointSet ps = oracles::random_point_set(rng, 50, 2);
    for (int trial = 0; trial < 300; ++trial) {
        Index i = static_cast<Index>(rng.next_below(50));
        Index j = static_cast<Index>(rng.next_below(50));
        Index k = static_cast<Index>(rng.next_below(50));
        if (i != j) {
            auto ij = ps.compare_for_ties(i, j);
            auto ji = ps.compare_for_ties(j, i);
            CHECK(((ij == std::strong_ordering::less) != (ji == std::strong_ordering::less)));
        }
        if (i != j && j != k && i != k) {
            bool lt_ij = ps.compare_for_ties(i, j) == std::strong_ordering::less;
            bool lt_jk = ps.compare_for_ties(j, k) == std::strong_ordering::less;
            bool lt_ik = ps.compare_for_ties(i, k) == std::strong_ordering::less;
            if (lt_ij && lt_jk) CHECK(lt_ik);
        }
    }
}

TEST_CASE("triangle inequality holds for all metrics") {
    Rng rng(11);
    for (Metric m : {Metric::l2(), Metric::lp(1), Metric::lp(3), Metric::linf()}) {
        PointSet ps = oracles::random_point_set(rng, 40, 3, false, m);
        for (int trial = 0; trial < 400; ++trial) {
            Index i = static_cast<Index>(rng.next_below(40));
            Index j = static_cast<Index>(rng.next_below(40));
            Index k = static_cast<Index>(rng.next_below(40));
            double lhs = ps.distance(i, k);
            double rhs = ps.distance(i, j) + ps.distance(j, k);
            CHECK(lhs <= rhs + 1e-12 * std::max(1.0, rhs));
        }
    }
}

TEST_CASE("seeded tie order is a reproducible permutation") {
    std::vector<Index> a = seeded_tie_order(1000, 42);
    std::vector<Index> b = seeded_tie_order(1000, 42);
    std::vector<Index> c = seeded_tie_order(1000, 43);
    CHECK(a == b);
    CHECK(a != c);
    std::vector<bool> seen(1000, false);
    for (Index v : a) {
        CHECK(!seen[v]);
        seen[v] = true;
    }
}

TEST_CASE("point file round trip") {
    std::vector<Point> pts{Point{{0.1, -2.5}}, Point{{1.0 / 3.0, 7e-17}}, Point{{12345.678, 0.0}}};
    std::ostringstream out;
    write_points(out, pts);
    std::istringstream in(out.str());
    std::vector<Point> back = read_points(in);
    REQUIRE(back.size() == pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t k = 0; k < 2; ++k) CHECK(back[i].coords[k] == pts[i].coords[k]);
}

TEST_CASE("point file format") {
    std::istringstream ok("# comment\n1 2\n\n  3 4\n");
    std::vector<Point> pts = read_points(ok);
    REQUIRE(pts.size() == 2);
    CHECK(pts[1].coords[0] == 3.0);

    std::istringstream bad_dim("1 2\n3\n");
    CHECK_THROWS_AS(read_points(bad_dim), PointFileError);
    std::istringstream bad_tok("1 2\n3 x\n");
    CHECK_THROWS_AS(read_points(bad_tok), PointFileError);
}

TEST_SUITE_END();
