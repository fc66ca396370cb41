#include "p1/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "p1/numerics.hpp"

namespace p1 {

const char* to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::StepFailure: return "StepFailure";
        case ErrorKind::SpanExceeded: return "SpanExceeded";
        case ErrorKind::NonPositiveY: return "NonPositiveY";
        case ErrorKind::BracketFailure: return "BracketFailure";
        case ErrorKind::DomainError: return "DomainError";
        case ErrorKind::ToleranceFailure: return "ToleranceFailure";
        case ErrorKind::NoZeros: return "NoZeros";
    }
    return "Error";
}

const char* to_string(EventKind k) {
    switch (k) {
        case EventKind::Zero: return "Zero";
        case EventKind::Minimum: return "Minimum";
        case EventKind::Maximum: return "Maximum";
        case EventKind::LevelCrossing: return "LevelCrossing";
        case EventKind::PoleLeftEnd: return "PoleLeftEnd";
        case EventKind::PoleRightEnd: return "PoleRightEnd";
    }
    return "?";
}

const char* to_string(EndKind k) {
    switch (k) {
        case EndKind::Pole: return "Pole";
        case EndKind::Clipped: return "ClippedAtBoundary";
        case EndKind::Origin: return "Origin";
    }
    return "?";
}

void SolveConfig::validate() const {
    if (!(rk_rel_tol > 0 && rk_abs_tol > 0 && event_tol > 0 && max_span > 0 && z_switch > 0))
        throw Error(ErrorKind::DomainError, "tolerances must be positive");
    if (!(y_switch > 1)) throw Error(ErrorKind::DomainError, "y_switch must exceed 1");
    if (1.0 / (z_switch * z_switch) >= y_switch)
        throw Error(ErrorKind::DomainError, "patch radius leaves no hysteresis band");
}

PhaseState to_natural(const PolarState& s) {
    if (s.z == 0.0) return {s.x, kInf, kNaN};
    const double z = s.z, z2 = z * z, z3 = z2 * z;
    return {s.x, 1.0 / z2, -2.0 / z3 + s.x * z / 2 + z2 / 2 + s.v * z3};
}

PolarState to_polar(const PhaseState& s, double branch) {
    if (!(s.y > 0)) throw Error(ErrorKind::NonPositiveY, "polar patch needs y > 0");
    const double z = (branch >= 0 ? 1.0 : -1.0) / std::sqrt(s.y);
    const double z2 = z * z, z3 = z2 * z;
    const double v = (s.dy + 2.0 / z3 - s.x * z / 2 - z2 / 2) / z3;
    return {s.x, z, v};
}

namespace {

using S4 = std::array<double, 4>;

struct NatRhs {
    void operator()(double x, const S4& u, S4& du) const {
        du[0] = u[1];
        du[1] = 6 * u[0] * u[0] - x;
        du[2] = u[3];
        du[3] = 12 * u[0] * u[2];
    }
};

struct PolRhs {
    void operator()(double x, const S4& u, S4& du) const {
        const double z = u[0], v = u[1];
        const double z2 = z * z, z3 = z2 * z, z4 = z2 * z2, z5 = z4 * z, z6 = z3 * z3;
        du[0] = 1 - x * z4 / 4 - z5 / 4 - v * z6 / 2;
        du[1] = x * x * z / 8 + 0.375 * x * z2 + (0.25 + x * v) * z3 + 1.25 * v * z4 + 1.5 * v * v * z5;
        const double fz = -x * z3 - 1.25 * z4 - 3 * v * z5;
        const double fv = -z6 / 2;
        const double gz = x * x / 8 + 0.75 * x * z + 3 * (0.25 + x * v) * z2 + 5 * v * z3 + 7.5 * v * v * z4;
        const double gv = x * z3 + 1.25 * z4 + 3 * v * z5;
        du[2] = fz * u[2] + fv * u[3];
        du[3] = gz * u[2] + gv * u[3];
    }
};

// (z, v, dz, dv) -> (y, p, dy, dp)
S4 polar_to_nat(double x, const S4& u) {
    const double z = u[0], v = u[1];
    const double z2 = z * z, z3 = z2 * z, z4 = z2 * z2;
    const double q1 = 6.0 / z4 + x / 2 + z + 3 * v * z2;
    return {1.0 / z2, -2.0 / z3 + x * z / 2 + z2 / 2 + v * z3, -2.0 / z3 * u[2], q1 * u[2] + z3 * u[3]};
}

S4 nat_to_polar(double x, const S4& u, double branch) {
    const PolarState ps = to_polar({x, u[0], u[1]}, branch);
    const double z = ps.z, v = ps.v;
    const double z2 = z * z, z3 = z2 * z, z4 = z2 * z2;
    const double dz = -z3 / 2 * u[2];
    const double q1 = 6.0 / z4 + x / 2 + z + 3 * v * z2;
    return {z, v, dz, (u[3] - q1 * dz) / z3};
}

struct Runner {
    const SolveConfig& cfg;
    double dir;
    double x_start;
    bool tangent_on;
    Trajectory traj;
    std::vector<Event> evs;  // in integration order
    bool seen_min = false;
    bool done = false;
    S4 last_nat{};

    Dop853<4, NatRhs> nat;
    Dop853<4, PolRhs> pol;
    Chart chart = Chart::Natural;

    Runner(const SolveConfig& c, double d, double x0, bool tan)
        : cfg(c), dir(d), x_start(x0), tangent_on(tan), nat(NatRhs{}, c.rk_rel_tol, c.rk_abs_tol),
          pol(PolRhs{}, c.rk_rel_tol, c.rk_abs_tol) {}

    S4 natural_of(Chart ch, double x, const S4& u) const {
        if (ch == Chart::Natural) return u;
        if (u[0] == 0.0) return {kInf, -dir * kInf, 0, 0};
        return polar_to_nat(x, u);
    }

    double clip() const { return dir > 0 ? cfg.clip_hi : cfg.clip_lo; }

    Event make_event(EventKind kind, double x, const S4& n) const {
        Event e{kind, x, 0.0, kNaN, kNaN};
        const double ypp = 6 * n[0] * n[0] - x;
        if (kind == EventKind::Minimum || kind == EventKind::Maximum) {
            e.payload = n[0];
            if (tangent_on) {
                e.dx = -n[3] / ypp;
                e.dpayload = n[2];
            }
        } else {
            e.payload = n[1];
            if (tangent_on) {
                e.dx = -n[2] / n[1];
                e.dpayload = n[3] + ypp * e.dx;
            }
        }
        return e;
    }

    template <class D>
    void find_events(Chart ch, const D& dense, double xa, const S4& na, double xb, const S4& nb,
                     std::vector<Event>& out) const {
        auto nat_at = [&](double x) { return natural_of(ch, x, dense(x)); };
        auto root = [&](auto g, double a, double b, double ga, double gb) {
            return find_root(g, a, b, ga, gb, cfg.event_tol);
        };
        // critical points first, they split the step for the value crossings
        std::vector<double> cuts{xa};
        std::vector<S4> cut_states{na};
        if (std::signbit(na[1]) != std::signbit(nb[1]) && na[1] != 0.0) {
            auto g = [&](double x) { return nat_at(x)[1]; };
            const double xc = root(g, xa, xb, na[1], nb[1]);
            const S4 n = nat_at(xc);
            const double ypp = 6 * n[0] * n[0] - xc;
            out.push_back(make_event(ypp > 0 ? EventKind::Minimum : EventKind::Maximum, xc, n));
            cuts.push_back(xc);
            cut_states.push_back(n);
        }
        cuts.push_back(xb);
        cut_states.push_back(nb);
        for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
            const double a = cuts[k], b = cuts[k + 1];
            const S4 &sa = cut_states[k], &sb = cut_states[k + 1];
            if (ch == Chart::Natural && sa[0] != 0.0 && std::signbit(sa[0]) != std::signbit(sb[0]) &&
                sb[0] != 0.0) {
                auto g = [&](double x) { return nat_at(x)[0]; };
                const double xz = root(g, a, b, sa[0], sb[0]);
                out.push_back(make_event(EventKind::Zero, xz, nat_at(xz)));
            } else if (ch == Chart::Natural && sb[0] == 0.0 && sb[1] != 0.0) {
                out.push_back(make_event(EventKind::Zero, b, sb));
            }
            if (std::isfinite(cfg.level)) {
                const double ga = sa[0] - cfg.level, gb = sb[0] - cfg.level;
                if (ga != 0.0 && std::signbit(ga) != std::signbit(gb)) {
                    auto g = [&](double x) { return nat_at(x)[0] - cfg.level; };
                    const double xl = root(g, a, b, ga, std::isfinite(gb) ? gb : 1e300);
                    out.push_back(make_event(EventKind::LevelCrossing, xl, nat_at(xl)));
                }
            }
        }
        std::sort(out.begin(), out.end(),
                  [&](const Event& p, const Event& q) { return dir * p.x < dir * q.x; });
    }

    // Applies stop rules; returns the index one past the last kept event or npos.
    std::optional<std::size_t> stop_index(const std::vector<Event>& es) {
        for (std::size_t i = 0; i < es.size(); ++i) {
            const Event& e = es[i];
            switch (cfg.stop) {
                case StopRule::None: break;
                case StopRule::FirstMinimum:
                    if (e.kind == EventKind::Minimum) return i + 1;
                    break;
                case StopRule::LevelAfterMinimum:
                    if (seen_min && e.kind == EventKind::LevelCrossing) return i + 1;
                    break;
                case StopRule::ZeroAfterMinimum:
                    if (seen_min && e.kind == EventKind::Zero) return i + 1;
                    break;
            }
            if (e.kind == EventKind::Minimum) seen_min = true;
        }
        return std::nullopt;
    }

    void finish_clipped(double x, const S4& n) {
        traj.b = {x, EndKind::Clipped, kNaN};
        traj.last = {x, n[0], n[1]};
        if (tangent_on) {
            traj.last_dy = n[2];
            traj.last_ddy = n[3];
        }
        last_nat = n;
        done = true;
    }

    template <class St>
    void step_once(St& st) {
        const Chart ch = chart;
        double h_cap = dir * (clip() - st.x());
        if (!(h_cap > 0)) {
            finish_clipped(st.x(), natural_of(ch, st.x(), st.y()));
            return;
        }
        if (!st.step(h_cap)) {
            std::ostringstream os;
            os << "step size underflow near x=" << st.x();
            throw Error(ErrorKind::StepFailure, os.str());
        }
        const double xa = st.x_old();
        double xb = st.x();
        const S4 ua = st.y_old();
        S4 ub = st.y();
        for (double c : ub)
            if (!std::isfinite(c)) throw Error(ErrorKind::StepFailure, "non-finite state");
        const bool at_clip = std::abs(xb - clip()) <= 1e-13 * std::max(1.0, std::abs(xb));

        bool pole = false;
        Event pole_ev;
        S4 na = natural_of(ch, xa, ua);
        S4 nb;
        if (ch == Chart::Polar && ua[0] != 0.0 && (ub[0] == 0.0 || std::signbit(ua[0]) != std::signbit(ub[0]))) {
            const auto& d = st.dense();
            double xp = xb;
            if (ub[0] != 0.0) {
                auto g = [&](double x) { return d(x)[0]; };
                xp = find_root(g, xa, xb, ua[0], ub[0], cfg.event_tol);
            }
            const S4 up = d(xp);
            pole = true;
            pole_ev.kind = dir < 0 ? EventKind::PoleLeftEnd : EventKind::PoleRightEnd;
            pole_ev.x = xp;
            pole_ev.payload = up[1];
            if (tangent_on) {
                // z' = 1 and v' = 0 at z = 0
                pole_ev.dx = -up[2];
                pole_ev.dpayload = up[3];
            }
            xb = xp;
            nb = {kInf, dir * kInf, 0, 0};
        } else {
            nb = natural_of(ch, xb, ub);
        }

        std::vector<Event> step_events;
        const bool crit = na[1] != 0.0 && std::signbit(na[1]) != std::signbit(nb[1]);
        const bool zero = ch == Chart::Natural && ((na[0] != 0.0 && std::signbit(na[0]) != std::signbit(nb[0])) ||
                                                   (nb[0] == 0.0 && nb[1] != 0.0));
        const bool lvl = std::isfinite(cfg.level) && (na[0] - cfg.level) != 0.0 &&
                         std::signbit(na[0] - cfg.level) != std::signbit(nb[0] - cfg.level);
        if (crit || zero || lvl) find_events(ch, st.dense(), xa, na, xb, nb, step_events);

        if (cfg.keep_dense) traj.samples.push_back({ch, st.dense()});

        if (auto k = stop_index(step_events)) {
            step_events.resize(*k);
            const Event& last = step_events.back();
            evs.insert(evs.end(), step_events.begin(), step_events.end());
            const auto& d = st.dense();
            finish_clipped(last.x, natural_of(ch, last.x, d(last.x)));
            return;
        }
        evs.insert(evs.end(), step_events.begin(), step_events.end());
        if (pole) {
            evs.push_back(pole_ev);
            traj.b = {pole_ev.x, EndKind::Pole, pole_ev.payload};
            traj.last = {pole_ev.x, kInf, kNaN};
            last_nat = {kInf, kNaN, kNaN, kNaN};
            done = true;
            return;
        }
        if (at_clip) {
            finish_clipped(clip(), nb);
            return;
        }
        if (std::abs(xb - x_start) > cfg.max_span) {
            std::ostringstream os;
            os << "no pole within " << cfg.max_span << " of x=" << x_start;
            throw Error(ErrorKind::SpanExceeded, os.str());
        }
        const double hn = st.h_next();
        if (ch == Chart::Natural) {
            if (nb[0] > cfg.y_switch && nb[1] * dir > 0) {
                chart = Chart::Polar;
                pol.reset(xb, nat_to_polar(xb, nb, -dir), hn, dir);
            }
        } else {
            if (std::abs(ub[0]) > cfg.z_switch) {
                chart = Chart::Natural;
                nat.reset(xb, nb, hn, dir);
            } else if (nb[1] * dir > 0 && std::signbit(ub[0]) != std::signbit(-dir)) {
                pol.reset(xb, nat_to_polar(xb, nb, -dir), hn, dir);
            }
        }
    }

    Trajectory run() {
        long guard = 0;
        while (!done) {
            if (++guard > 2000000) throw Error(ErrorKind::StepFailure, "step budget exhausted");
            if (chart == Chart::Natural)
                step_once(nat);
            else
                step_once(pol);
        }
        // orient ascending in x
        if (dir < 0) {
            std::reverse(evs.begin(), evs.end());
            std::swap(traj.a, traj.b);
            std::reverse(traj.samples.begin(), traj.samples.end());
        }
        traj.events = std::move(evs);
        return std::move(traj);
    }
};

Trajectory finish(Runner& r) { return r.run(); }

}  // namespace

Trajectory integrate_ivp(double x0, double y0, double y1, Direction direction, const SolveConfig& cfg,
                         std::optional<Tangent> tangent) {
    cfg.validate();
    if (!std::isfinite(x0) || !std::isfinite(y0) || !std::isfinite(y1))
        throw Error(ErrorKind::DomainError, "non-finite initial data");
    const double dir = sign_of(direction);
    Runner r(cfg, dir, x0, tangent.has_value());
    r.traj.origin = {false, x0, y0, y1, kNaN, direction};
    r.traj.a = {x0, EndKind::Origin, kNaN};
    const S4 n0{y0, y1, tangent ? tangent->a : 0.0, tangent ? tangent->b : 0.0};
    if (y0 == 0.0 && y1 != 0.0) r.evs.push_back(r.make_event(EventKind::Zero, x0, n0));
    if (y1 == 0.0 && 6 * y0 * y0 - x0 > 0) {
        r.evs.push_back(r.make_event(EventKind::Minimum, x0, n0));
        r.seen_min = true;
    }
    if (y0 > cfg.y_switch) {
        r.chart = Chart::Polar;
        const double branch = (y1 * dir >= 0) ? -dir : dir;
        r.pol.reset(x0, nat_to_polar(x0, n0, branch), 0.0, dir);
    } else {
        r.nat.reset(x0, n0, 0.0, dir);
    }
    return finish(r);
}

Trajectory integrate_from_pole(double x_pole, double v, Direction direction, const SolveConfig& cfg,
                               std::optional<Tangent> tangent) {
    cfg.validate();
    if (!std::isfinite(x_pole) || !std::isfinite(v)) throw Error(ErrorKind::DomainError, "non-finite pole data");
    const double dir = sign_of(direction);
    Runner r(cfg, dir, x_pole, tangent.has_value());
    r.traj.origin = {true, x_pole, kNaN, kNaN, v, direction};
    r.traj.a = {x_pole, EndKind::Pole, v};
    Event start{dir < 0 ? EventKind::PoleRightEnd : EventKind::PoleLeftEnd, x_pole, v, kNaN, kNaN};
    if (tangent) {
        start.dx = tangent->a;
        start.dpayload = tangent->b;
    }
    r.evs.push_back(start);
    r.chart = Chart::Polar;
    // z(x; x_pole) vanishes at x_pole, so dz/dx_pole = -1 there
    const S4 u0{0.0, v, tangent ? -tangent->a : 0.0, tangent ? tangent->b : 0.0};
    r.pol.reset(x_pole, u0, 0.0, dir);
    return finish(r);
}

Trajectory integrate_through(double x0, double y0, double y1, const SolveConfig& cfg) {
    Trajectory L = integrate_ivp(x0, y0, y1, Direction::Left, cfg);
    Trajectory R = integrate_ivp(x0, y0, y1, Direction::Right, cfg);
    Trajectory t;
    t.origin = L.origin;
    t.a = L.a;
    t.b = R.b;
    t.last = R.last;
    t.events = L.events;
    for (const Event& e : R.events) {
        const bool dup = !t.events.empty() && e.x == x0 && t.events.back().x == x0 && t.events.back().kind == e.kind;
        if (!dup) t.events.push_back(e);
    }
    t.samples = L.samples;
    t.samples.insert(t.samples.end(), R.samples.begin(), R.samples.end());
    return t;
}

PhaseState Trajectory::at(double x) const {
    if (samples.empty()) throw Error(ErrorKind::DomainError, "trajectory has no dense samples");
    auto it = std::lower_bound(samples.begin(), samples.end(), x,
                               [](const DenseSegment& s, double xv) { return s.hi() < xv; });
    if (it == samples.end()) --it;
    if (x < it->lo() - 1e-12 || x > it->hi() + 1e-12)
        throw Error(ErrorKind::DomainError, "abscissa outside the trajectory");
    const auto u = it->step(x);
    if (it->chart == Chart::Natural) return {x, u[0], u[1]};
    return to_natural({x, u[0], u[1]});
}

std::vector<Event> Trajectory::of_kind(EventKind k) const {
    std::vector<Event> out;
    for (const Event& e : events)
        if (e.kind == k) out.push_back(e);
    return out;
}

std::optional<Event> Trajectory::first_minimum() const {
    std::optional<Event> best;
    for (const Event& e : events)
        if (e.kind == EventKind::Minimum) {
            if (!best) best = e;
            else if (origin.direction == Direction::Left ? e.x > best->x : e.x < best->x) best = e;
        }
    return best;
}

LaurentValue laurent_eval(double x_pole, double c, double x, int order) {
    // y = sum a_n s^(n-2); (n-6)(n+1) a_n = 6 sum_{i=1}^{n-1} a_i a_{n-i} for n >= 7
    struct D {
        double v = 0, dx = 0, dc = 0;
    };
    std::vector<D> a(order + 1);
    a[0] = {1, 0, 0};
    if (order >= 4) a[4] = {x_pole / 10, 0.1, 0};
    if (order >= 5) a[5] = {1.0 / 6, 0, 0};
    if (order >= 6) a[6] = {c, 0, 1};
    for (int n = 7; n <= order; ++n) {
        D s;
        for (int i = 1; i < n; ++i) {
            s.v += a[i].v * a[n - i].v;
            s.dx += a[i].dx * a[n - i].v + a[i].v * a[n - i].dx;
            s.dc += a[i].dc * a[n - i].v + a[i].v * a[n - i].dc;
        }
        const double k = 6.0 / ((n - 6.0) * (n + 1.0));
        a[n] = {k * s.v, k * s.dx, k * s.dc};
    }
    const double s = x - x_pole;
    LaurentValue r;
    double ypp = 0, ax = 0, ax1 = 0;
    for (int n = 0; n <= order; ++n) {
        const double p2 = std::pow(s, n - 2), p3 = std::pow(s, n - 3), p4 = std::pow(s, n - 4);
        r.y += a[n].v * p2;
        r.dy += a[n].v * (n - 2) * p3;
        ypp += a[n].v * (n - 2) * (n - 3) * p4;
        ax += a[n].dx * p2;
        ax1 += a[n].dx * (n - 2) * p3;
        r.y_c += a[n].dc * p2;
        r.dy_c += a[n].dc * (n - 2) * p3;
    }
    r.y_xp = ax - r.dy;
    r.dy_xp = ax1 - ypp;
    return r;
}

double wronskian_J(double x_pole, double v, double x_eval, const SolveConfig& cfg) {
    cfg.validate();
    const double c = v / 7;  // from the slope relation of the polar patch at z = 0
    const double d = x_eval >= x_pole ? 1.0 : -1.0;
    const double seed_off = 0.25;
    if (std::abs(x_eval - x_pole) <= seed_off) {
        const LaurentValue L = laurent_eval(x_pole, c, x_eval);
        return L.y_xp * L.dy_c - L.dy_xp * L.y_c;
    }
    const double xs = x_pole + d * seed_off;
    const LaurentValue L = laurent_eval(x_pole, c, xs);
    using S6 = std::array<double, 6>;
    auto rhs = [](double x, const S6& u, S6& du) {
        du[0] = u[1];
        du[1] = 6 * u[0] * u[0] - x;
        du[2] = u[3];
        du[3] = 12 * u[0] * u[2];
        du[4] = u[5];
        du[5] = 12 * u[0] * u[4];
    };
    Dop853<6, decltype(rhs)> st(rhs, cfg.rk_rel_tol, cfg.rk_abs_tol);
    st.reset(xs, S6{L.y, L.dy, L.y_xp, L.dy_xp, L.y_c, L.dy_c}, 0.0, d);
    long guard = 0;
    const double end_tol = 1e-14 * (1 + std::abs(x_eval));
    while (d * (x_eval - st.x()) > end_tol) {
        if (++guard > 1000000 || !st.step(d * (x_eval - st.x())))
            throw Error(ErrorKind::StepFailure, "variational integration failed");
        if (!std::isfinite(st.y()[0]) || std::abs(st.y()[0]) > 1e8)
            throw Error(ErrorKind::DomainError, "x_eval beyond the pole's interval");
    }
    const S6& u = st.y();
    return u[2] * u[5] - u[3] * u[4];
}

}  // namespace p1
