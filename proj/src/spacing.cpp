#include "p1/spacing.hpp"

#include <cmath>

namespace p1 {

namespace {

struct PairEvents {
    std::optional<Event> min, z1, z2;
};

// Minimum nearest x0 on the side, then the nearest zero on each side of it.
PairEvents pair_events(const std::vector<Event>& evs, double x0, ZeroSide side) {
    const double sg = side == ZeroSide::LeftOfX0 ? -1.0 : 1.0;
    const double eps = 1e-12 * std::max(1.0, std::abs(x0));
    PairEvents p;
    for (const Event& e : evs)
        if (e.kind == EventKind::Minimum && sg * (e.x - x0) >= -eps && (!p.min || sg * e.x < sg * p.min->x)) p.min = e;
    if (!p.min) return p;
    const double xm = p.min->x;
    for (const Event& e : evs) {
        if (e.kind != EventKind::Zero) continue;
        if (sg * (e.x - xm) > 0) {
            if (!p.z2 || sg * e.x < sg * p.z2->x) p.z2 = e;
        } else if (sg * (e.x - xm) < 0) {
            if (!p.z1 || sg * e.x > sg * p.z1->x) p.z1 = e;
        }
    }
    return p;
}

void fill(ZeroPair& zp, const PairEvents& p, ZeroSide side) {
    zp.side = side;
    zp.x_min = p.min->x;
    zp.y_min = p.min->payload;
    zp.z1 = p.z1->x;
    zp.slope1 = p.z1->payload;
    zp.z2 = p.z2->x;
    zp.slope2 = p.z2->payload;
}

SolveConfig spacing_config(const SolveConfig& cfg, ZeroSide side) {
    SolveConfig c = cfg;
    c.stop = StopRule::ZeroAfterMinimum;
    // right-side spacings stay on the negative semi-axis
    if (side == ZeroSide::RightOfX0) c.clip_hi = std::min(c.clip_hi, 0.0);
    return c;
}

SpacingValue from_events(std::vector<Event> evs, double x0, ZeroSide side,
                         const std::function<std::vector<Event>()>& far_side_zeros) {
    PairEvents p = pair_events(evs, x0, side);
    if (!p.min) throw Error(ErrorKind::NoZeros, "no minimum on the requested side");
    if (p.min->payload >= 0) throw Error(ErrorKind::NoZeros, "minimum is non-negative");
    if (!p.z1) {
        // anchor below zero: the inner zero lies beyond x0
        evs = far_side_zeros();
        const double sg = side == ZeroSide::LeftOfX0 ? -1.0 : 1.0;
        for (const Event& e : evs)
            if (e.kind == EventKind::Zero && sg * (e.x - x0) <= 0 && (!p.z1 || sg * e.x > sg * p.z1->x)) p.z1 = e;
    }
    if (!p.z1 || !p.z2) throw Error(ErrorKind::NoZeros, "zero pair incomplete");
    SpacingValue out;
    fill(out.pair, p, side);
    out.delta = out.pair.spacing();
    const double sg = side == ZeroSide::LeftOfX0 ? 1.0 : -1.0;
    out.d_slope = sg * (p.z1->dx - p.z2->dx);
    out.d_level = p.min->dpayload;
    return out;
}

}  // namespace

ZeroPair zero_pair(const Trajectory& t, ZeroSide side) {
    const PairEvents p = pair_events(t.events, t.origin.x, side);
    if (!p.min || p.min->payload >= 0) throw Error(ErrorKind::NoZeros, "no negative minimum on the requested side");
    if (!p.z1 || !p.z2) throw Error(ErrorKind::NoZeros, "zero pair incomplete");
    ZeroPair zp;
    fill(zp, p, side);
    return zp;
}

SpacingValue delta_of_slope(double x0, double y0, double s, ZeroSide side, const SolveConfig& cfg) {
    const Direction dir = side == ZeroSide::LeftOfX0 ? Direction::Left : Direction::Right;
    const Direction back = side == ZeroSide::LeftOfX0 ? Direction::Right : Direction::Left;
    const Trajectory t = integrate_ivp(x0, y0, s, dir, spacing_config(cfg, side), Tangent{0.0, 1.0});
    return from_events(t.events, x0, side, [&] {
        SolveConfig c = cfg;
        c.stop = StopRule::None;
        return integrate_ivp(x0, y0, s, back, c, Tangent{0.0, 1.0}).events;
    });
}

SpacingValue delta_level(double x0, double y0, double y_l, ZeroSide side, const SolveConfig& cfg) {
    if (!(y_l < 0)) throw Error(ErrorKind::NoZeros, "level must be negative");
    const Side s_side = side == ZeroSide::LeftOfX0 ? Side::MinLeft : Side::MinRight;
    return delta_of_slope(x0, y0, slope_f(x0, y0, y_l, s_side, cfg), side, cfg);
}

SpacingValue delta_of_pole(double x0, double v, ZeroSide side, const SolveConfig& cfg) {
    const Direction dir = side == ZeroSide::LeftOfX0 ? Direction::Left : Direction::Right;
    const Trajectory t = integrate_from_pole(x0, v, dir, spacing_config(cfg, side), Tangent{0.0, 1.0});
    return from_events(t.events, x0, side, [] { return std::vector<Event>{}; });
}

ExtremalResult delta_sup(double x0, double y0, ZeroSide side, const SolveConfig& cfg) {
    if (x0 > 0) throw Error(ErrorKind::DomainError, "spacing needs x0 <= 0");
    const Side s_side = side == ZeroSide::LeftOfX0 ? Side::MinLeft : Side::MinRight;
    const double top = std::min(0.0, y0);
    const double lambda = 1 + std::sqrt(std::abs(x0));
    // y_l = top - lambda*sinh(u), u > 0
    auto fd = [&](double u) -> ValueSlope {
        const double y_l = top - lambda * std::sinh(u);
        const double s = slope_f(x0, y0, y_l, s_side, cfg);
        const SpacingValue d = delta_of_slope(x0, y0, s, side, cfg);
        return {d.delta, d.d_slope / d.d_level * (-lambda * std::cosh(u))};
    };
    const Extremum e = adaptive_extremize(fd, 2.5, 2.5 - 1e-6, Sense::Maximize);
    ExtremalResult r;
    r.value = e.value;
    r.multiple = e.multiple;
    r.local_count = e.local_count;
    r.arg = top - lambda * std::sinh(e.arg);
    r.slope = slope_f(x0, y0, r.arg, s_side, cfg);
    SolveConfig c = cfg;
    c.keep_dense = true;
    c.clip_hi = 0;
    r.witness = integrate_through(x0, y0, r.slope, c);
    return r;
}

ExtremalResult delta_pole_sup(double x0, ZeroSide side, const SolveConfig& cfg) {
    if (x0 > 0) throw Error(ErrorKind::DomainError, "spacing needs x0 <= 0");
    auto fd = [&](double v) -> ValueSlope {
        const SpacingValue d = delta_of_pole(x0, v, side, cfg);
        return {d.delta, d.d_slope};
    };
    const Extremum e = adaptive_extremize(fd, 0.0, 4 * v_scale(x0), Sense::Maximize);
    ExtremalResult r;
    r.value = e.value;
    r.multiple = e.multiple;
    r.local_count = e.local_count;
    r.v = e.arg;
    SolveConfig c = cfg;
    c.keep_dense = true;
    c.stop = StopRule::None;
    r.witness = integrate_from_pole(x0, e.arg, side == ZeroSide::LeftOfX0 ? Direction::Left : Direction::Right, c);
    r.arg = r.witness.first_minimum()->payload;
    return r;
}

}  // namespace p1
