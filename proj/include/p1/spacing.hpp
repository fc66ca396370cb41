#pragma once

#include "p1/extremal.hpp"

namespace p1 {

enum class ZeroSide { LeftOfX0, RightOfX0 };

struct ZeroPair {
    double z1 = kNaN, z2 = kNaN;  // z1 is the zero between the anchor and the minimum
    double slope1 = kNaN, slope2 = kNaN;
    double x_min = kNaN, y_min = kNaN;
    ZeroSide side = ZeroSide::LeftOfX0;
    double spacing() const { return std::abs(z1 - z2); }
};

// Zeros bracketing the minimum nearest the trajectory's origin on the given side.
ZeroPair zero_pair(const Trajectory& t, ZeroSide side);

struct SpacingValue {
    double delta = kNaN;
    double d_slope = kNaN;  // derivative of delta in the initial slope (or v for pole launches)
    double d_level = kNaN;  // derivative of the minimum value in the same parameter
    ZeroPair pair;
};

// Spacing of the solution through (x0, y0) with its minimum y_l < 0 on the given side.
SpacingValue delta_level(double x0, double y0, double y_l, ZeroSide side, const SolveConfig& cfg = default_config());
// Spacing for the solution leaving (x0, y0) with slope s.
SpacingValue delta_of_slope(double x0, double y0, double s, ZeroSide side, const SolveConfig& cfg = default_config());
// Spacing for the pole family at x0.
SpacingValue delta_of_pole(double x0, double v, ZeroSide side, const SolveConfig& cfg = default_config());

// Supremum over levels y_l < 0; arg is the optimal level, slope the witness slope.
ExtremalResult delta_sup(double x0, double y0, ZeroSide side, const SolveConfig& cfg = default_config());
// Supremum over the pole family at x0; v is the optimal pole parameter, arg its level.
ExtremalResult delta_pole_sup(double x0, ZeroSide side, const SolveConfig& cfg = default_config());

}  // namespace p1
