#include "euclid_match/schedule.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>

namespace euclid_match {

namespace {

// sum of 1/x_i for x_i = (2i+1)^(inv_c), i = 1..r
double inverse_sum(double inv_c, int r) {
    double s = 0.0;
    for (int i = 1; i <= r; ++i) s += std::exp(-inv_c * std::log(2.0 * i + 1.0));
    return s;
}

Schedule build_schedule(double x1, int r) {
    Schedule sched;
    sched.r = r;
    sched.xs.resize(r);
    double inv_c = std::log(x1) / std::log(3.0);
    double sum = 0.0;
    for (int i = 1; i <= r; ++i) {
        sched.xs[i - 1] = std::exp(inv_c * std::log(2.0 * i + 1.0));
        sum += 1.0 / sched.xs[i - 1];
    }
    double denom = 1.0 - 2.0 * sum;
    if (denom <= 0.0) throw std::runtime_error("schedule: infeasible x1");
    sched.x_terminal = 3.0 / denom;
    return sched;
}

Schedule solve_uncached(int r) {
    if (r == 0) return Schedule{0, {}, 3.0};

    double lo = 2.0 + 1e-9;
    double hi = 2.0 * r + 3.0;
    double f_lo = schedule_residual(lo, r);
    double f_hi = schedule_residual(hi, r);
    if (!(f_lo > 0.0) || !(f_hi < 0.0))
        throw std::runtime_error("schedule: no sign change over the x1 bracket");
    while (hi - lo > 1e-12) {
        double mid = 0.5 * (lo + hi);
        if (schedule_residual(mid, r) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return build_schedule(0.5 * (lo + hi), r);
}

}  // namespace

double schedule_residual(double x1, int r) {
    if (!(x1 > 2.0)) throw std::invalid_argument("schedule_residual requires x1 > 2");
    double inv_c = std::log(x1) / std::log(3.0);
    double denom = 1.0 - 2.0 * inverse_sum(inv_c, r);
    if (denom <= 0.0) return std::numeric_limits<double>::infinity();
    return 3.0 / denom - std::exp(inv_c * std::log(2.0 * r + 3.0));
}

Schedule solve_schedule(int r) {
    if (r < 0 || r > 5000) throw std::invalid_argument("solve_schedule requires 0 <= r <= 5000");

    static std::mutex mu;
    static std::map<int, Schedule> memo;
    std::lock_guard<std::mutex> lock(mu);
    if (memo.empty())
        for (int warm = 1; warm <= 64; ++warm) memo.emplace(warm, solve_uncached(warm));
    auto it = memo.find(r);
    if (it == memo.end()) it = memo.emplace(r, solve_uncached(r)).first;
    return it->second;
}

}  // namespace euclid_match
