#pragma once

#include <vector>

namespace euclid_match {

// Threshold schedule x_1 < x_2 < ... < x_r for the node-reduction rounds,
// plus the derived terminal value x_{r+1} = 3 / (1 - 2 * sum 1/x_i).
// The x_i are coupled through a common exponent: log(2q+3) / log(x_{q+1})
// is the same for every q = 0..r, including the terminal.
struct Schedule {
    int r = 0;
    std::vector<double> xs;
    double x_terminal = 3.0;
};

// Root function in x1 whose zero yields the schedule: with
// c = log 3 / log x1 and x_i = (2i+1)^(1/c), returns
// 3/(1 - 2 sum 1/x_i) - (2r+3)^(1/c). Infeasible x1 (nonpositive
// denominator) counts as +infinity for bracketing.
double schedule_residual(double x1, int r);

// Solves the schedule for a given r by bisection on x1 over
// [2 + 1e-9, 2r+3]. Deterministic; r in {1..64} is memoized eagerly.
// r = 0 yields an empty schedule with x_terminal = 3.
Schedule solve_schedule(int r);

}  // namespace euclid_match
