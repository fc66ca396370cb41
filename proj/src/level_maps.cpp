#include "p1/level_maps.hpp"

#include <cmath>

#include "p1/numerics.hpp"

namespace p1 {

const SolveConfig& default_config() {
    static const SolveConfig cfg{};
    return cfg;
}

MinimumInfo minimum_from_slope(double x0, double y0, double slope, Side side, const SolveConfig& cfg) {
    if (slope == 0.0) {
        const double ypp = 6 * y0 * y0 - x0;
        return {x0, y0, ypp > 0 ? -1.0 / ypp : kNaN, 0.0};
    }
    SolveConfig c = cfg;
    c.stop = StopRule::FirstMinimum;
    const Direction dir = side == Side::MinLeft ? Direction::Left : Direction::Right;
    const Trajectory t = integrate_ivp(x0, y0, slope, dir, c, Tangent{0.0, 1.0});
    const std::optional<Event> m = t.first_minimum();
    if (!m || m->x == x0) throw Error(ErrorKind::BracketFailure, "trajectory ends before a minimum");
    return {m->x, m->payload, m->dx, m->dpayload};
}

double slope_f(double x0, double y0, double y_l, Side side, const SolveConfig& cfg) {
    if (!std::isfinite(x0) || !std::isfinite(y0) || !std::isfinite(y_l))
        throw Error(ErrorKind::DomainError, "non-finite level data");
    if (y_l == y0) return 0.0;
    if (y_l > y0) {
        // continuation across the diagonal: f(x0; y0, y_l) = f+(x0; y_l, y0)
        return slope_f(x0, y_l, y0, side == Side::MinLeft ? Side::MinRight : Side::MinLeft, cfg);
    }
    const double sg = side == Side::MinLeft ? 1.0 : -1.0;
    auto g = [&](double s) { return minimum_from_slope(x0, y0, sg * s, side, cfg).y_l - y_l; };
    double lo = 0.0, glo = y0 - y_l;
    double hi = 1.0, ghi = g(hi);
    while (ghi > 0) {
        lo = hi;
        glo = ghi;
        hi *= 2;
        if (hi > 1e12) throw Error(ErrorKind::BracketFailure, "slope doubling exceeded the cap");
        ghi = g(hi);
    }
    const double s = find_root(g, lo, hi, glo, ghi, 1e-15 * std::max(1.0, hi));
    return sg * s;
}

double delta_sym(double x0, double y0, double y_l, Side side, const SolveConfig& cfg) {
    return slope_f(x0, y0, y_l, side, cfg) - slope_f(x0, -y_l, -y0, side, cfg);
}

PoleRun pole_run(const PoleDatum& p, Direction dir, bool to_far_pole, const SolveConfig& cfg) {
    SolveConfig c = cfg;
    c.stop = to_far_pole ? StopRule::None : StopRule::FirstMinimum;
    const Trajectory t = integrate_from_pole(p.x_pole, p.v, dir, c, Tangent{0.0, 1.0});
    PoleRun r;
    if (const auto m = t.first_minimum()) {
        r.x_min = m->x;
        r.y_l = m->payload;
        r.dx_min = m->dx;
        r.dy_l = m->dpayload;
    }
    if (to_far_pole) {
        const Event& far = dir == Direction::Left ? t.events.front() : t.events.back();
        if (t.a.kind != EndKind::Pole || t.b.kind != EndKind::Pole)
            throw Error(ErrorKind::SpanExceeded, "far pole not reached");
        r.x_far = far.x;
        r.v_far = far.payload;
        r.dx_far = far.dx;
    }
    return r;
}

LevelPoint level_from_pole(const PoleDatum& p, Direction dir, const SolveConfig& cfg) {
    const PoleRun r = pole_run(p, dir, false, cfg);
    if (std::isnan(r.y_l)) throw Error(ErrorKind::BracketFailure, "no minimum after the pole");
    return {r.y_l, r.x_min};
}

double v_from_level(double x_pole, double y_l, Direction dir, const SolveConfig& cfg) {
    auto g = [&](double v) { return level_from_pole({x_pole, v}, dir, cfg).y_l - y_l; };
    double a = 0.0, ga = g(a);
    if (ga == 0.0) return a;
    const double step0 = std::max(1.0, std::pow(1 + std::abs(x_pole), 1.5));
    double step = ga < 0 ? step0 : -step0;
    double b = a + step, gb = g(b);
    while (std::signbit(gb) == std::signbit(ga)) {
        a = b;
        ga = gb;
        step *= 2;
        if (std::abs(step) > 1e12) throw Error(ErrorKind::BracketFailure, "pole parameter bracket overflow");
        b = a + step;
        gb = g(b);
    }
    return find_root(g, a, b, ga, gb, 1e-15 * std::max(1.0, std::abs(b)));
}

double cal_X_min(double x0, double y_l, const SolveConfig& cfg) {
    if (x0 > 0) throw Error(ErrorKind::DomainError, "cal_X_min needs x0 <= 0");
    return level_from_pole({x0, v_from_level(x0, y_l, Direction::Left, cfg)}, Direction::Left, cfg).x_min;
}

double cal_X(double x0, double y_l, const SolveConfig& cfg) {
    if (x0 > 0) throw Error(ErrorKind::DomainError, "cal_X needs x0 <= 0");
    const double v = v_from_level(x0, y_l, Direction::Left, cfg);
    return pole_run({x0, v}, Direction::Left, true, cfg).x_far;
}

XiLevel var_Xi(double x0, double y_l, const SolveConfig& cfg) {
    const double v = v_from_level(x0, y_l, Direction::Right, cfg);
    const PoleRun r = pole_run({x0, v}, Direction::Right, true, cfg);
    if (r.x_far > 1e-12) throw Error(ErrorKind::DomainError, "interval leaves the negative semi-axis");
    return {r.x_min, r.x_far, v};
}

}  // namespace p1
