#include "p1/bvp.hpp"

#include <cmath>

namespace p1 {

void BvpProblem::validate() const {
    if (!std::isfinite(x0) || !std::isfinite(y0) || !std::isfinite(x1) || !std::isfinite(y_up))
        throw Error(ErrorKind::DomainError, "non-finite boundary data");
    if (!(x1 < x0) || x0 > 0) throw Error(ErrorKind::DomainError, "need x1 < x0 <= 0");
}

double slope_scale(double x0, double y0, double y_up) {
    const double m = std::max(std::abs(y0), std::abs(y_up));
    return 1 + std::pow(std::abs(x0), 0.75) + std::pow(m, 1.5);
}

ValueSlope z_of_slope(double x0, double y0, double y_up, double s, const SolveConfig& cfg) {
    SolveConfig c = cfg;
    c.level = y_up;
    c.stop = StopRule::LevelAfterMinimum;
    const Trajectory t = integrate_ivp(x0, y0, s, Direction::Left, c, Tangent{0.0, 1.0});
    if (t.a.kind != EndKind::Clipped || t.events.empty() || t.events.front().kind != EventKind::LevelCrossing)
        throw Error(ErrorKind::BracketFailure, "level not reached before the pole");
    return {t.events.front().x, t.events.front().dx};
}

double cal_Z(double x0, double y0, double y_up, double y_l, const SolveConfig& cfg) {
    if (y_l == y0) return x0;
    if (y_l > std::min(y0, y_up)) throw Error(ErrorKind::DomainError, "level above the boundary values");
    const double s = slope_f(x0, y0, y_l, Side::MinLeft, cfg);
    if (y_up == y_l) return minimum_from_slope(x0, y0, s, Side::MinLeft, cfg).x_min;
    return z_of_slope(x0, y0, y_up, s, cfg).value;
}

namespace {

// s = sigma*sinh(u) spreads the search over many orders of magnitude of slope.
struct SlopeMap {
    double sigma;
    double s(double u) const { return sigma * std::sinh(u); }
    double ds(double u) const { return sigma * std::cosh(u); }
    double u(double s) const { return std::asinh(s / sigma); }
};

Trajectory dense_through(double x0, double y0, double s, const SolveConfig& cfg) {
    SolveConfig c = cfg;
    c.keep_dense = true;
    c.stop = StopRule::None;
    c.clip_hi = 0;  // right of 0 a near-separatrix solution may stay bounded for a long way
    return integrate_through(x0, y0, s, c);
}

// Level grid y_l = -lambda*sinh(u), capped at the top level where the convention gives x0.
struct LevelMap {
    double lambda, top;
    double y(double u) const { return std::min(top, -lambda * std::sinh(u)); }
    double dy(double u) const { return -lambda * std::cosh(u); }
    double u_top() const { return std::asinh(-top / lambda); }
};

LevelMap level_map(double x0, double top) { return {1 + std::sqrt(std::abs(x0)), top}; }

// Optimizes over levels strictly below top; value_of returns the quantity and its slope in y_l.
Extremum level_search(const LevelMap& lm, const std::function<ValueSlope(double)>& value_of) {
    auto fd = [&](double u) -> ValueSlope {
        const ValueSlope r = value_of(lm.y(u));
        return {r.value, r.slope * lm.dy(u)};
    };
    const double lo = lm.u_top() + 1e-9, hi = std::max(lo, 0.0) + 4.0;
    const Extremum e = extremize(fd, linspace(lo, hi, 64), Sense::Minimize);
    if (!e.at_boundary || e.arg < hi) return e;
    return adaptive_extremize(fd, hi, 4.0, Sense::Minimize);
}

}  // namespace

ExtremalResult Z_fn(double x0, double y0, double y_up, const SolveConfig& cfg) {
    if (x0 > 0) throw Error(ErrorKind::DomainError, "Z needs x0 <= 0");
    const LevelMap lm = level_map(x0, std::min(y0, y_up));
    auto value_of = [&](double y_l) -> ValueSlope {
        const double s = slope_f(x0, y0, y_l, Side::MinLeft, cfg);
        const MinimumInfo mi = minimum_from_slope(x0, y0, s, Side::MinLeft, cfg);
        const ValueSlope z = z_of_slope(x0, y0, y_up, s, cfg);
        return {z.value, z.slope / mi.dy_l};
    };
    const Extremum e = level_search(lm, value_of);
    ExtremalResult r;
    r.value = e.value;
    r.multiple = e.multiple;
    r.local_count = e.local_count;
    r.arg = lm.y(e.arg);
    r.slope = slope_f(x0, y0, r.arg, Side::MinLeft, cfg);
    r.witness = dense_through(x0, y0, r.slope, cfg);
    return r;
}

ExtremalResult X_min_xy(double x0, double y0, const SolveConfig& cfg) {
    if (x0 > 0) throw Error(ErrorKind::DomainError, "X_min(x0, y0) needs x0 <= 0");
    const LevelMap lm = level_map(x0, y0);
    auto value_of = [&](double y_l) -> ValueSlope {
        const double s = slope_f(x0, y0, y_l, Side::MinLeft, cfg);
        const MinimumInfo mi = minimum_from_slope(x0, y0, s, Side::MinLeft, cfg);
        return {mi.x_min, mi.dx_min / mi.dy_l};
    };
    const Extremum e = level_search(lm, value_of);
    ExtremalResult r;
    r.value = e.value;
    r.multiple = e.multiple;
    r.local_count = e.local_count;
    r.arg = lm.y(e.arg);
    r.slope = slope_f(x0, y0, r.arg, Side::MinLeft, cfg);
    return r;
}

int count_from_z(double x1, double z) {
    if (std::abs(x1 - z) <= kBvpTieTol) return 1;
    return x1 < z ? 0 : 2;
}

int count_solutions(const BvpProblem& p, const SolveConfig& cfg) {
    p.validate();
    return count_from_z(p.x1, Z_fn(p.x0, p.y0, p.y_up, cfg).value);
}

ValueSlope shoot(const BvpProblem& p, double s, const SolveConfig& cfg) {
    SolveConfig c = cfg;
    c.clip_lo = p.x1;
    c.stop = StopRule::None;
    const Trajectory t = integrate_ivp(p.x0, p.y0, s, Direction::Left, c, Tangent{0.0, 1.0});
    if (t.a.kind == EndKind::Pole) return {kInf, kNaN};
    return {t.last.y, t.last_dy};
}

BvpOutcome solve_bvp(const BvpProblem& p, const SolveConfig& cfg) {
    p.validate();
    BvpOutcome out;
    const ExtremalResult z = Z_fn(p.x0, p.y0, p.y_up, cfg);
    out.z_value = z.value;
    out.count = count_from_z(p.x1, z.value);
    auto record = [&](double s) {
        Trajectory t = dense_through(p.x0, p.y0, s, cfg);
        const double res = std::abs(t.at(p.x1).y - p.y_up);
        out.solutions.push_back(std::move(t));
        out.slopes.push_back(s);
        out.residuals.push_back(res);
    };
    if (out.count == 0) return out;
    if (out.count == 1) {
        record(z.slope);
        return out;
    }

    const SlopeMap m{slope_scale(p.x0, p.y0, p.y_up)};
    auto g = [&](double u) { return shoot(p, m.s(u), cfg).value - p.y_up; };
    auto fd = [&](double u) -> ValueSlope {
        const ValueSlope v = shoot(p, m.s(u), cfg);
        if (!std::isfinite(v.value)) throw Error(ErrorKind::BracketFailure, "pole before x1");
        return {v.value, v.slope * m.ds(u)};
    };
    // the shooting map is U-shaped; its bottom separates the two roots
    const Extremum e = adaptive_extremize(fd, m.u(z.slope), 1.0, Sense::Minimize, 6, 33);
    const double u_star = e.arg;
    const double g_star = e.value - p.y_up;
    if (!(g_star < 0)) throw Error(ErrorKind::ToleranceFailure, "shooting map does not dip below the boundary value");

    for (double side : {-1.0, 1.0}) {
        double h = 1e-3, u = u_star + side * h, gu = g(u);
        while (gu < 0) {
            h *= 2;
            if (h > 64) throw Error(ErrorKind::BracketFailure, "no shooting bracket");
            u = u_star + side * h;
            gu = g(u);
        }
        const double root = find_root(g, u_star, u, g_star, gu, 1e-15 * std::max(1.0, std::abs(u)));
        record(m.s(root));
    }
    for (double r : out.residuals)
        if (r > 1e-8) throw Error(ErrorKind::ToleranceFailure, "boundary residual above 1e-8");
    return out;
}

int intersection_count(const Trajectory& a, const Trajectory& b, double lo, double hi, int grid) {
    int count = 0;
    auto same_pole = [](const End& p, const End& q) {
        return p.kind == EndKind::Pole && q.kind == EndKind::Pole && std::abs(p.x - q.x) < 1e-9;
    };
    const double w = hi - lo;
    double l = lo, r = hi;
    // shared poles count once; stay clear of them when sampling
    if (same_pole(a.a, b.a) && std::abs(lo - a.a.x) < 1e-9) {
        ++count;
        l += 1e-3 * w;
    }
    if (same_pole(a.b, b.b) && std::abs(hi - a.b.x) < 1e-9) {
        ++count;
        r -= 1e-3 * w;
    }
    auto d = [&](double x) { return a.at(x).y - b.at(x).y; };
    auto tiny = [&](double x, double v) { return std::isfinite(v) && std::abs(v) <= 1e-7 * (1 + std::abs(a.at(x).y)); };
    const double dl = d(l), dr = d(r);
    if (l == lo && tiny(l, dl)) {
        ++count;
        l += 1e-6 * w;
    }
    if (r == hi && tiny(r, dr)) {
        ++count;
        r -= 1e-6 * w;
    }
    // only differences above the integration noise carry a sign; near a shared pole
    // a - b ~ dc (x - x_p)^4 sinks below it while y itself blows up
    auto significant = [&](double x, double v) { return std::abs(v) > 1e-9 * (1 + std::abs(a.at(x).y)); };
    int prev = 0;
    for (int i = 0; i <= grid; ++i) {
        const double x = l + (r - l) * i / grid;
        const double cur = d(x);
        if (!significant(x, cur)) continue;
        const int sg = cur > 0 ? 1 : -1;
        if (prev != 0 && sg != prev) ++count;
        prev = sg;
    }
    return count;
}

}  // namespace p1
