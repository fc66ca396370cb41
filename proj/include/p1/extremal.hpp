#pragma once

#include "p1/level_maps.hpp"
#include "p1/numerics.hpp"

namespace p1 {

struct ExtremalResult {
    double value = kNaN;
    double arg = kNaN;  // optimal level y_l, initial value y0, or slope, depending on the function
    double v = kNaN;    // pole parameter at x0 of the witness when it is a pole solution
    double slope = kNaN;  // initial slope at x0 of a phase-launched witness
    Trajectory witness;
    bool multiple = false;
    int local_count = 0;
    double second_arg = kNaN, second_value = kNaN;
};

// Searches grid = center + [-1,1]*half (64 points), doubling half while the optimum sits on the edge.
Extremum adaptive_extremize(const std::function<ValueSlope(double)>& fd, double center, double half, Sense sense,
                            int max_expand = 6, int points = 64);

ExtremalResult X_min_fn(double x0, const SolveConfig& cfg = default_config());
ExtremalResult X_minus_fn(double x0, const SolveConfig& cfg = default_config());
ExtremalResult X_fn(double x0, const SolveConfig& cfg = default_config());

struct XiResult {
    double xi_min = kNaN, xi = kNaN;
    double v_min = kNaN, v = kNaN;  // optimal pole parameters at x0
    double y_l_min = kNaN, y_l = kNaN;
    bool multiple = false;      // either search saw a competing optimum
    bool multiple_min = false;  // the minimum-abscissa search did
};
// cross_check re-solves the inverse identities and throws ToleranceFailure on a 1e-6 mismatch.
XiResult Xi_fns(double x0, bool cross_check = false, const SolveConfig& cfg = default_config());

// Witness of X_fn with dense output: pole at x0 on the right, pole at X(x0) on the left.
Trajectory maximal_solution(double x0, const SolveConfig& cfg = default_config());

// Pole-family scale of v at x0, used to size search grids.
double v_scale(double x0);

}  // namespace p1
