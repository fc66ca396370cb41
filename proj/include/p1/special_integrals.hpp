#pragma once

#include <optional>
#include <string>

#include "p1/integrator.hpp"
#include "p1/numerics.hpp"

namespace p1 {

struct ConstantBundle {
    double C = 0;
    double v_min_max = 0;
    double x_max = 0;
    double C0 = 0;
    double x_max0 = 0;  // inner argmax of C(0, x)
    bool multiple_peaks = false;
};

// I(v0, v_min); v0 may be +infinity.
double integral_I(double v0, double v_min);
// d/dv_min of I(+inf, v_min)
double integral_I_inf_slope(double v_min);
// I_nu = 2 * int_0^inf dv / sqrt(v^4 + 3 nu v^2 + 3 nu^2), nu != 0
double integral_I_nu(double nu);
// The same constant through its defining form int_nu^inf dw / sqrt(w^3 - nu^3).
double integral_I_nu_direct(double nu);

const ConstantBundle& constant_C();

// C(v0, x) and its x-derivative.
ValueSlope C_of_x(double v0, double x);
struct COfResult {
    double value = 0;
    double x_max = 0;
    bool multiple = false;
};
COfResult C_of_detail(double v0);
double C_of(double v0);

// Positive root of eta^5 - |x0| eta = factor * C, or factor * C(y0/eta^2) when weighted.
double eta_root(double x0, std::optional<double> weight_y0 = std::nullopt, double factor = 1.0);

enum class BoundKind { XminBound, XminusBound, XBound, XminXYBound, ZBound };
const char* to_string(BoundKind k);

struct BoundArgs {
    double x0 = 0;
    double y0 = kNaN;
    double y_up = kNaN;
    // X_min(x0) for XBound (optional sharpening), X_min(x0, y0) for ZBound (required)
    double xmin_value = kNaN;
};

struct BoundPair {
    double lower = 0;
    double upper = 0;
    BoundKind kind{};
};

BoundPair bounds_report(BoundKind kind, const BoundArgs& args);

}  // namespace p1
