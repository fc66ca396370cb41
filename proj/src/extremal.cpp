#include "p1/extremal.hpp"

#include <cmath>

namespace p1 {

double v_scale(double x0) { return std::pow(1 + std::abs(x0), 1.5); }

Extremum adaptive_extremize(const std::function<ValueSlope(double)>& fd, double center, double half, Sense sense,
                            int max_expand, int points) {
    Extremum e;
    for (int k = 0; k <= max_expand; ++k) {
        e = extremize(fd, linspace(center - half, center + half, points), sense);
        if (!e.at_boundary) return e;
        // recentre on the edge winner and widen
        center = e.arg;
        half *= 2;
    }
    return e;
}

namespace {

void copy_extremum(const Extremum& e, ExtremalResult& r) {
    r.value = e.value;
    r.multiple = e.multiple;
    r.local_count = e.local_count;
    if (e.multiple) {
        r.second_arg = e.second_arg;
        r.second_value = e.second_value;
    }
}

Trajectory full_pole_run(double x_pole, double v, Direction dir, const SolveConfig& cfg) {
    SolveConfig c = cfg;
    c.stop = StopRule::None;
    c.keep_dense = true;
    return integrate_from_pole(x_pole, v, dir, c);
}

}  // namespace

ExtremalResult X_min_fn(double x0, const SolveConfig& cfg) {
    if (x0 > 0) throw Error(ErrorKind::DomainError, "X_min needs x0 <= 0");
    auto fd = [&](double v) -> ValueSlope {
        const PoleRun r = pole_run({x0, v}, Direction::Left, false, cfg);
        if (std::isnan(r.x_min)) throw Error(ErrorKind::BracketFailure, "no minimum");
        return {r.x_min, r.dx_min};
    };
    const Extremum e = adaptive_extremize(fd, 0.0, 4 * v_scale(x0), Sense::Minimize);
    ExtremalResult r;
    copy_extremum(e, r);
    r.v = e.arg;
    r.witness = full_pole_run(x0, e.arg, Direction::Left, cfg);
    r.arg = r.witness.first_minimum()->payload;
    return r;
}

ExtremalResult X_minus_fn(double x0, const SolveConfig& cfg) {
    if (x0 > 0) throw Error(ErrorKind::DomainError, "X_minus needs x0 <= 0");
    auto fd = [&](double y0) -> ValueSlope {
        const Trajectory t = integrate_ivp(x0, y0, 0.0, Direction::Left, cfg, Tangent{1.0, 0.0});
        if (t.a.kind != EndKind::Pole) throw Error(ErrorKind::SpanExceeded, "no left pole");
        return {t.events.front().x, t.events.front().dx};
    };
    const Extremum e = adaptive_extremize(fd, 0.0, 3 * std::sqrt(1 + std::abs(x0)), Sense::Minimize);
    ExtremalResult r;
    copy_extremum(e, r);
    r.arg = e.arg;
    SolveConfig c = cfg;
    c.keep_dense = true;
    r.witness = integrate_ivp(x0, e.arg, 0.0, Direction::Left, c);
    r.v = r.witness.a.v;
    return r;
}

ExtremalResult X_fn(double x0, const SolveConfig& cfg) {
    if (x0 > 0) throw Error(ErrorKind::DomainError, "X needs x0 <= 0");
    auto fd = [&](double v) -> ValueSlope {
        const PoleRun r = pole_run({x0, v}, Direction::Left, true, cfg);
        return {r.x_far, r.dx_far};
    };
    const Extremum e = adaptive_extremize(fd, 0.0, 4 * v_scale(x0), Sense::Minimize);
    ExtremalResult r;
    copy_extremum(e, r);
    r.v = e.arg;
    r.witness = full_pole_run(x0, e.arg, Direction::Left, cfg);
    r.arg = r.witness.first_minimum()->payload;
    return r;
}

XiResult Xi_fns(double x0, bool cross_check, const SolveConfig& cfg) {
    auto run = [&](double v) { return pole_run({x0, v}, Direction::Right, true, cfg); };
    auto fd_min = [&](double v) -> ValueSlope {
        const PoleRun r = run(v);
        return {r.x_min, r.dx_min};
    };
    auto fd_far = [&](double v) -> ValueSlope {
        const PoleRun r = run(v);
        return {r.x_far, r.dx_far};
    };
    const double half = 4 * v_scale(x0);
    const Extremum e_far = adaptive_extremize(fd_far, 0.0, half, Sense::Maximize);
    if (e_far.value > 1e-7) throw Error(ErrorKind::DomainError, "x0 lies right of X(0)");
    const Extremum e_min = adaptive_extremize(fd_min, 0.0, half, Sense::Maximize);

    XiResult out;
    out.xi = std::min(e_far.value, 0.0);
    out.xi_min = e_min.value;
    out.v = e_far.arg;
    out.v_min = e_min.arg;
    out.y_l = run(out.v).y_l;
    out.y_l_min = run(out.v_min).y_l;
    out.multiple = e_far.multiple || e_min.multiple;
    out.multiple_min = e_min.multiple;
    if (cross_check) {
        const double back = X_fn(out.xi, cfg).value;
        const double back_min = X_minus_fn(out.xi_min, cfg).value;
        if (std::abs(back - x0) > 1e-6 || std::abs(back_min - x0) > 1e-6)
            throw Error(ErrorKind::ToleranceFailure, "inverse identity mismatch");
    }
    return out;
}

Trajectory maximal_solution(double x0, const SolveConfig& cfg) { return X_fn(x0, cfg).witness; }

}  // namespace p1
