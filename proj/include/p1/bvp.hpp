#pragma once

#include <vector>

#include "p1/extremal.hpp"

namespace p1 {

struct BvpProblem {
    double x0 = 0, y0 = 0;
    double x1 = -1, y_up = 0;
    void validate() const;
};

struct BvpOutcome {
    int count = 0;
    std::vector<Trajectory> solutions;  // upper branch first
    std::vector<double> slopes;         // initial slopes at x0
    std::vector<double> residuals;      // |y(x1) - y_up|
    double z_value = kNaN;
};

inline constexpr double kBvpTieTol = 1e-9;

// Leftmost crossing of y_up by the solution through (x0, y0) whose left minimum is y_l.
double cal_Z(double x0, double y0, double y_up, double y_l, const SolveConfig& cfg = default_config());

// Leftmost crossing of y_up after the left minimum, for the solution with slope s at (x0, y0),
// with its derivative in s. Throws when the solution reaches its pole first.
ValueSlope z_of_slope(double x0, double y0, double y_up, double s, const SolveConfig& cfg = default_config());

// Infimum of reachable crossings; arg is the witness level, slope its slope at x0.
ExtremalResult Z_fn(double x0, double y0, double y_up, const SolveConfig& cfg = default_config());

// Infimum over slopes of the minimum abscissa of solutions through (x0, y0).
ExtremalResult X_min_xy(double x0, double y0, const SolveConfig& cfg = default_config());

int count_from_z(double x1, double z);
int count_solutions(const BvpProblem& p, const SolveConfig& cfg = default_config());

// y(x1) of the solution leaving (x0, y0) leftwards with slope s; +inf when a pole comes first.
ValueSlope shoot(const BvpProblem& p, double s, const SolveConfig& cfg = default_config());

BvpOutcome solve_bvp(const BvpProblem& p, const SolveConfig& cfg = default_config());

// Crossings of two dense trajectories on [lo, hi], shared poles at the window ends included.
int intersection_count(const Trajectory& a, const Trajectory& b, double lo, double hi, int grid = 4000);

// Common slope scale for shooting grids at a boundary point.
double slope_scale(double x0, double y0, double y_up);

}  // namespace p1
