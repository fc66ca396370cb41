#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "p1/dop853.hpp"
#include "p1/errors.hpp"

namespace p1 {

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Direction { Left = -1, Right = 1 };
inline double sign_of(Direction d) { return d == Direction::Left ? -1.0 : 1.0; }

struct PhaseState {
    double x = 0, y = 0, dy = 0;
};

struct PolarState {
    double x = 0, z = 0, v = 0;
};

// y = 1/z^2 and the slope relation; branch is the sign of z.
PhaseState to_natural(const PolarState& s);
PolarState to_polar(const PhaseState& s, double branch);

enum class EventKind { Zero, Minimum, Maximum, LevelCrossing, PoleLeftEnd, PoleRightEnd };
const char* to_string(EventKind k);

struct Event {
    EventKind kind{};
    double x = 0;
    // slope at a zero or level crossing, value at a critical point, v at a pole
    double payload = 0;
    // sensitivities with respect to the seeded tangent direction (NaN when unseeded)
    double dx = kNaN;
    double dpayload = kNaN;
};

enum class EndKind { Pole, Clipped, Origin };
const char* to_string(EndKind k);

struct End {
    double x = 0;
    EndKind kind = EndKind::Origin;
    double v = kNaN;  // pole parameter when kind == Pole
};

struct Origin {
    bool from_pole = false;
    double x = 0, y = 0, dy = 0;  // phase data
    double v = kNaN;              // pole data
    Direction direction = Direction::Left;
};

enum class Chart { Natural, Polar };

// Dense interpolant of one step in whichever chart was active; comps = (y, y') or (z, v).
struct DenseSegment {
    Chart chart = Chart::Natural;
    DenseStep<4> step;
    double lo() const { return std::min(step.x0, step.x0 + step.h); }
    double hi() const { return std::max(step.x0, step.x0 + step.h); }
};

struct Trajectory {
    Origin origin;
    std::vector<Event> events;  // ascending in x
    End a, b;                   // a < b
    std::vector<DenseSegment> samples;  // ascending, only when SolveConfig::keep_dense
    PhaseState last;                    // state at the far end when it is not a pole
    double last_dy = kNaN, last_ddy = kNaN;  // tangent of (y, y') at the clipped end when seeded

    bool has_dense() const { return !samples.empty(); }
    // Natural-form state at x from the dense samples; x must lie in [a, b].
    PhaseState at(double x) const;
    std::vector<Event> of_kind(EventKind k) const;
    std::optional<Event> first_minimum() const;
    double length() const { return b.x - a.x; }
};

enum class StopRule {
    None,
    FirstMinimum,        // first critical point with y'' > 0
    LevelAfterMinimum,   // first level crossing past the first minimum
    ZeroAfterMinimum,    // first zero past the first minimum
};

struct SolveConfig {
    double rk_rel_tol = 1e-12;
    double rk_abs_tol = 1e-12;
    double y_switch = 14.0;  // above 1/z_switch^2 = 12.76; higher values amplify slope error in the handoff
    double z_switch = 0.28;
    double event_tol = 1e-13;
    double max_span = 60.0;
    double clip_lo = -kInf;
    double clip_hi = kInf;
    double level = kNaN;  // LevelCrossing events for y = level when finite
    StopRule stop = StopRule::None;
    bool keep_dense = false;

    void validate() const;
};

// Tangent seed. For phase origins (dy0, dy1); for pole origins (dx_pole, dv).
struct Tangent {
    double a = 0, b = 0;
};

Trajectory integrate_ivp(double x0, double y0, double y1, Direction dir, const SolveConfig& cfg,
                         std::optional<Tangent> tangent = std::nullopt);
Trajectory integrate_from_pole(double x_pole, double v, Direction dir, const SolveConfig& cfg,
                               std::optional<Tangent> tangent = std::nullopt);

// Both directions from a phase point joined into one trajectory.
Trajectory integrate_through(double x0, double y0, double y1, const SolveConfig& cfg);

// Wronskian of d/dx_pole y and d/dc y at x_eval (constant 14 on exact solutions).
double wronskian_J(double x_pole, double v, double x_eval, const SolveConfig& cfg);

// Laurent expansion about a pole with derivatives in (x_pole, c).
struct LaurentValue {
    double y = 0, dy = 0;        // value, x-derivative
    double y_xp = 0, dy_xp = 0;  // d/dx_pole of (y, y')
    double y_c = 0, dy_c = 0;    // d/dc of (y, y')
};
LaurentValue laurent_eval(double x_pole, double c, double x, int order = 40);

}  // namespace p1
