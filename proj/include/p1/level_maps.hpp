#pragma once

#include "p1/integrator.hpp"

namespace p1 {

enum class Side { MinLeft, MinRight };

struct LevelTriple {
    double x0 = 0, y0 = 0, y_l = 0;
    Side side = Side::MinLeft;
};

struct PoleDatum {
    double x_pole = 0;
    double v = 0;
};

const SolveConfig& default_config();

// Slope at x0 realizing the first minimum y_l on the given side.
double slope_f(double x0, double y0, double y_l, Side side, const SolveConfig& cfg = default_config());
double delta_sym(double x0, double y0, double y_l, Side side = Side::MinLeft,
                 const SolveConfig& cfg = default_config());

// First minimum reached from the phase point with the given slope, and its sensitivity to the slope.
struct MinimumInfo {
    double x_min = 0, y_l = 0;
    double dx_min = kNaN, dy_l = kNaN;
};
MinimumInfo minimum_from_slope(double x0, double y0, double slope, Side side, const SolveConfig& cfg = default_config());

// Member of the pole family at x_pole launched in dir: its minimum and the far pole,
// with derivatives in v.
struct PoleRun {
    double x_min = kNaN, y_l = kNaN, dx_min = kNaN, dy_l = kNaN;
    double x_far = kNaN, v_far = kNaN, dx_far = kNaN;
};
PoleRun pole_run(const PoleDatum& p, Direction dir, bool to_far_pole, const SolveConfig& cfg = default_config());

struct LevelPoint {
    double y_l = 0;
    double x_min = 0;
};
LevelPoint level_from_pole(const PoleDatum& p, Direction dir = Direction::Left,
                           const SolveConfig& cfg = default_config());
double v_from_level(double x_pole, double y_l, Direction dir = Direction::Left,
                    const SolveConfig& cfg = default_config());

double cal_X_min(double x0, double y_l, const SolveConfig& cfg = default_config());
double cal_X(double x0, double y_l, const SolveConfig& cfg = default_config());

struct XiLevel {
    double xi_min = 0;
    double xi = 0;
    double v = 0;
};
XiLevel var_Xi(double x0, double y_l, const SolveConfig& cfg = default_config());

}  // namespace p1
