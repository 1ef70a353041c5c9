#include <doctest.h>

#include <cmath>
#include <cstring>
#include <stdexcept>

#include "euclid_match/schedule.hpp"

using namespace euclid_match;

TEST_SUITE_BEGIN("schedule");

TEST_CASE("r=3 reproduces the published anchors") {
    Schedule s = solve_schedule(3);
    REQUIRE(s.xs.size() == 3);
    CHECK(std::abs(s.xs[0] - 4.34480819) <= 1e-6);
    CHECK(std::abs(s.xs[1] - 8.60221014) <= 1e-6);
    CHECK(std::abs(s.xs[2] - 13.48967391) <= 1e-6);
    CHECK(std::abs(s.x_terminal - 18.87735817) <= 1e-6);
}

TEST_CASE("r=0 is the empty schedule") {
    Schedule s = solve_schedule(0);
    CHECK(s.xs.empty());
    CHECK(s.x_terminal == 3.0);
}

TEST_CASE("r=1000 reproduces the published anchors") {
    Schedule s = solve_schedule(1000);
    REQUIRE(s.xs.size() == 1000);
    CHECK(std::abs(s.xs[0] - 5.92564164) / 5.92564164 <= 1e-6);
    CHECK(std::abs(s.xs[1] - 13.5530448442) / 13.5530448442 <= 1e-6);
    // Converged terminal value (50-digit bisection oracle: 222500.95630193).
    CHECK(std::abs(s.x_terminal - 222500.956302) / 222500.956302 <= 1e-6);

    // The published terminal 222558.785733 comes from evaluating the
    // x_{r+1} = 3/(1 - 2 sum 1/x_i) formula at the 8-digit x1 = 5.92564164;
    // the sum route is so sensitive there that the two routes differ by
    // 2.6e-4 at that x1. Reproduce the published digits along that path.
    double inv_c = std::log(5.92564164) / std::log(3.0);
    double sum = 0.0;
    for (int i = 1; i <= 1000; ++i) sum += std::exp(-inv_c * std::log(2.0 * i + 1.0));
    double published_path = 3.0 / (1.0 - 2.0 * sum);
    CHECK(std::abs(published_path - 222558.785733) / 222558.785733 <= 1e-6);
}

TEST_CASE("residual examples") {
    // r=0: residual(x1) = 3 - 3^(log x1 / log 3); zero at x1 = 3
    CHECK(std::abs(schedule_residual(3.0, 0)) <= 1e-12);
    CHECK(std::abs(schedule_residual(4.34480819, 3)) < 1e-6);
    // bracket validation for the bisection
    CHECK(schedule_residual(4.0, 3) > 0.0);
    CHECK(schedule_residual(6.0, 3) < 0.0);
    CHECK_THROWS_AS(schedule_residual(1.5, 3), std::invalid_argument);
}

TEST_CASE("common exponent is constant across the schedule") {
    for (int r : {1, 2, 3, 5, 10, 64, 200}) {
        Schedule s = solve_schedule(r);
        REQUIRE(static_cast<int>(s.xs.size()) == r);
        double c = std::log(3.0) / std::log(s.xs[0]);
        for (int q = 1; q < r; ++q) {
            double cq = std::log(2.0 * q + 3.0) / std::log(s.xs[q]);
            CHECK(std::abs(cq - c) <= 1e-8);
        }
        double ct = std::log(2.0 * r + 3.0) / std::log(s.x_terminal);
        CHECK(std::abs(ct - c) <= 1e-8);

        // x_terminal two ways: common exponent vs 3/(1 - 2 sum 1/x_i)
        double xt_exp = std::exp(std::log(2.0 * r + 3.0) / c);
        CHECK(std::abs(xt_exp - s.x_terminal) / s.x_terminal <= 1e-6);

        // strictly increasing, x1 > 2, feasible sum
        CHECK(s.xs[0] > 2.0);
        for (int q = 1; q < r; ++q) CHECK(s.xs[q] > s.xs[q - 1]);
        CHECK(s.x_terminal > s.xs[r - 1]);
    }
}

TEST_CASE("solver is bitwise deterministic") {
    for (int r : {3, 17, 1000}) {
        Schedule a = solve_schedule(r);
        Schedule b = solve_schedule(r);
        REQUIRE(a.xs.size() == b.xs.size());
        CHECK(std::memcmp(a.xs.data(), b.xs.data(), a.xs.size() * sizeof(double)) == 0);
        CHECK(std::memcmp(&a.x_terminal, &b.x_terminal, sizeof(double)) == 0);
    }
}

TEST_CASE("rejects out-of-range r") {
    CHECK_THROWS_AS(solve_schedule(-1), std::invalid_argument);
    CHECK_THROWS_AS(solve_schedule(5001), std::invalid_argument);
}

TEST_SUITE_END();
