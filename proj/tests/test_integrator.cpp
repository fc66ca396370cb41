#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/numeric/odeint.hpp>

#include "p1/integrator.hpp"
#include "p1/level_maps.hpp"
#include "util.hpp"

using namespace p1;

namespace {

SolveConfig dense() {
    SolveConfig c;
    c.keep_dense = true;
    return c;
}

// Independent reference: Fehlberg 7(8) in the natural form only, seeded a quarter step off the pole
// from the Laurent series summed here by its own recursion.
double odeint_y(double x_pole, double v, double x_target) {
    namespace oi = boost::numeric::odeint;
    using St = std::array<double, 2>;
    std::array<double, 41> a{};  // y = sum a_n s^(n-2)
    a[0] = 1;
    a[4] = x_pole / 10;
    a[5] = 1.0 / 6;
    a[6] = v / 7;
    for (int n = 7; n <= 40; ++n) {
        double acc = 0;
        for (int i = 1; i < n; ++i) acc += a[i] * a[n - i];
        a[n] = 6 * acc / ((n - 6.0) * (n + 1.0));
    }
    const double d = x_target < x_pole ? -1.0 : 1.0;
    const double s = d * 0.25;
    St u{0, 0};
    for (int n = 0; n <= 40; ++n) {
        u[0] += a[n] * std::pow(s, n - 2);
        u[1] += a[n] * (n - 2) * std::pow(s, n - 3);
    }
    auto rhs = [](const St& y, St& dy, double x) {
        dy[0] = y[1];
        dy[1] = 6 * y[0] * y[0] - x;
    };
    auto stepper = oi::make_controlled(1e-14, 1e-14, oi::runge_kutta_fehlberg78<St>());
    oi::integrate_adaptive(stepper, rhs, u, x_pole + s, x_target, d * 1e-4);
    return u[0];
}

}  // namespace

TEST_CASE("ivp examples reach the tabulated poles") {
    const SolveConfig cfg;
    auto t = integrate_ivp(0, -0.124293080, 0, Direction::Left, cfg);
    REQUIRE(t.a.kind == EndKind::Pole);
    CHECK_NEAR(t.a.x, -2.677058361, 1e-8);
    CHECK_NEAR(t.a.v, -0.438744582, 1e-7);

    t = integrate_ivp(0, 0, 0, Direction::Left, cfg);
    CHECK_NEAR(t.a.x, -2.615571209, 1e-8);
    CHECK_NEAR(t.a.v, -0.371644061, 1e-7);

    t = integrate_ivp(-1, -0.249902470, 0, Direction::Right, cfg);
    REQUIRE(t.b.kind == EndKind::Pole);
    CHECK_NEAR(t.b.x, 1.848036525, 1e-8);
    CHECK_NEAR(t.b.v, 0.161869969, 1e-7);
}

TEST_CASE("pole launches reproduce the tabulated data") {
    const SolveConfig cfg;
    auto t = integrate_from_pole(0, 0.110489160, Direction::Left, cfg);
    const auto m = t.first_minimum();
    REQUIRE(m);
    CHECK_NEAR(m->x, -2.055505831, 1e-8);
    CHECK_NEAR(m->payload, -0.322633511, 1e-8);
    const auto zs = t.of_kind(EventKind::Zero);
    REQUIRE(zs.size() == 2);
    CHECK_NEAR(zs[1].x, -1.528989716, 1e-8);
    CHECK_NEAR(zs[0].x, -2.546577118, 1e-8);
    CHECK_NEAR(t.a.x, -3.915285797, 1e-8);
    CHECK_NEAR(t.a.v, -0.916786830, 1e-7);

    t = integrate_from_pole(0, 0, Direction::Left, cfg);
    CHECK_NEAR(t.a.x, -3.902470099, 1e-8);
    CHECK_NEAR(t.first_minimum()->payload, -0.423460899, 1e-8);

    t = integrate_from_pole(-1, -0.045841066, Direction::Left, cfg);
    CHECK_NEAR(t.first_minimum()->x, -2.853690013, 1e-7);
    CHECK_NEAR(t.a.x, -4.589833499, 1e-7);
}

TEST_CASE("chart conversions") {
    const PhaseState p{-1, 30, -250};
    const PhaseState q = to_natural(to_polar(p, 1));
    CHECK(std::abs(q.y - p.y) <= 1e-12 * std::abs(p.y));
    CHECK(std::abs(q.dy - p.dy) <= 1e-12 * std::abs(p.dy));

    for (double z : {-1e-2, -1e-4, -1e-6}) {
        const PhaseState s = to_natural({0.3, z, 0.7});
        CHECK(std::abs(s.y * z * z - 1) < 1e-15);
    }
    CHECK_THROWS_AS(to_polar({0, 0, 1}, 1), Error);
    try {
        to_polar({0, -1, 0}, 1);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NonPositiveY);
    }
}

TEST_CASE("state sampled off the pole transports back to the same pole") {
    const SolveConfig cfg = dense();
    const auto t = integrate_from_pole(0, 0.110489160, Direction::Left, cfg);
    const PhaseState s = t.at(-0.5);
    const auto back = integrate_ivp(-0.5, s.y, s.dy, Direction::Right, SolveConfig{});
    REQUIRE(back.b.kind == EndKind::Pole);
    CHECK_NEAR(back.b.x, 0.0, 1e-10);
    CHECK_NEAR(back.b.v, 0.110489160, 1e-8);
}

TEST_CASE("wronskian of the pole-family variations is 14") {
    const SolveConfig cfg;
    CHECK_NEAR(wronskian_J(0, 0.110489160, -1.0, cfg), 14.0, 1e-6);
    CHECK_NEAR(wronskian_J(-1, 0, -2.0, cfg), 14.0, 1e-6);
    CHECK(std::abs(wronskian_J(-1, 0, -2.0, cfg) - wronskian_J(-1, 0, -1.5, cfg)) < 1e-8);

    tu::Rng rng(2024);
    for (int i = 0; i < 20; ++i) {
        const double xp = rng.uniform(-3, 0), v = rng.uniform(-1, 1);
        const auto t = integrate_from_pole(xp, v, Direction::Left, cfg);
        const double xe = xp + rng.uniform(0.3, 0.8) * (t.a.x - xp);
        CHECK_NEAR(wronskian_J(xp, v, xe, cfg), 14.0, 1e-5);
    }
}

TEST_CASE("energy identity along a pole-free segment") {
    const auto t = integrate_from_pole(0, 0.110489160, Direction::Left, dense());
    auto energy_part = [&](double x) {
        const PhaseState s = t.at(x);
        return s.dy * s.dy - 4 * s.y * s.y * s.y;
    };
    const double xa = -3.5;
    for (double xb : {-2.5, -1.5, -0.5}) {
        const double work = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
            [&](double x) { return x * t.at(x).dy; }, xa, xb, 15, 1e-14);
        CHECK_NEAR(energy_part(xb) + 2 * work, energy_part(xa), 1e-8);
    }
}

TEST_CASE("pole detection closure") {
    const SolveConfig cfg;
    const auto t = integrate_ivp(0, -0.124293080, 0, Direction::Left, cfg);
    REQUIRE(t.a.kind == EndKind::Pole);
    SolveConfig c2;
    c2.stop = StopRule::FirstMinimum;
    const auto r = integrate_from_pole(t.a.x, t.a.v, Direction::Right, c2);
    const auto m = r.first_minimum();
    REQUIRE(m);
    CHECK_NEAR(m->x, 0.0, 1e-8);
    CHECK_NEAR(m->payload, -0.124293080, 1e-8);
}

TEST_CASE("Laurent consistency near a pole") {
    const double v = 0.110489160, x0 = -0.7;
    const auto t = integrate_from_pole(x0, v, Direction::Left, dense());
    auto resid = [&](double h, double c) {
        const double s = -h;
        const double L = 1 / (s * s) + x0 / 10 * s * s + s * s * s / 6 + c * s * s * s * s;
        return std::abs(t.at(x0 + s).y - L);
    };
    for (double h : {0.2, 0.1, 0.05}) CHECK(resid(h, v / 7) < h * h * h * h * h);
    // the fourth coefficient matters: the residual is then of order h^4
    CHECK(resid(0.05, v / 7 + 0.5) > 0.4 * std::pow(0.05, 4));
}

TEST_CASE("agreement with an independent natural-form integrator") {
    const auto t = integrate_from_pole(0, 0.110489160, Direction::Left, dense());
    for (double x : {-0.3, -1.0, -2.0, -3.0, -3.7}) CHECK_NEAR(t.at(x).y, odeint_y(0, 0.110489160, x), 1e-8);
    const auto u = integrate_from_pole(-2, -0.3, Direction::Left, dense());
    for (double f : {0.2, 0.5, 0.8}) {
        const double x = -2 + f * (u.a.x + 2);
        CHECK_NEAR(u.at(x).y, odeint_y(-2, -0.3, x), 1e-8);
    }
}

TEST_CASE("regular symmetric solution follows its Taylor start") {
    const auto t = integrate_ivp(0, 0, 0, Direction::Left, dense());
    for (double x : {-0.05, -0.1, -0.2}) CHECK_NEAR(t.at(x).y, -x * x * x / 6 + std::pow(x, 8) / 336, 1e-12);
}

TEST_CASE("event list invariants on random pole launches") {
    const SolveConfig cfg = dense();
    tu::Rng rng(11);
    for (int i = 0; i < 30; ++i) {
        const double xp = rng.uniform(-4, 0), v = rng.uniform(-1.5, 1.5);
        const auto t = integrate_from_pole(xp, v, Direction::Left, cfg);
        for (std::size_t k = 1; k < t.events.size(); ++k) CHECK(t.events[k - 1].x < t.events[k].x);
        const auto zs = t.of_kind(EventKind::Zero);
        for (const auto& z : zs) CHECK(z.payload != 0.0);
        for (std::size_t k = 0; k + 1 < zs.size(); ++k) {
            const double sgn = t.at(0.5 * (zs[k].x + zs[k + 1].x)).y;
            for (double f : {0.2, 0.8}) CHECK(t.at(zs[k].x + f * (zs[k + 1].x - zs[k].x)).y * sgn > 0);
        }
        if (t.a.kind == EndKind::Pole && zs.size() >= 2) {
            int mins = 0;
            for (const auto& e : t.of_kind(EventKind::Minimum))
                if (e.x > zs[zs.size() - 2].x && e.x < zs.back().x) ++mins;
            CHECK(mins == 1);
        }
        for (const auto& e : t.of_kind(EventKind::Minimum)) CHECK(std::abs(t.at(e.x).dy) < 1e-8);
    }
}

TEST_CASE("configuration errors and truncated spans") {
    SolveConfig bad;
    bad.rk_rel_tol = -1;
    CHECK_THROWS_AS(bad.validate(), Error);
    SolveConfig shortspan;
    shortspan.max_span = 0.5;
    try {
        integrate_ivp(0, 0, 0, Direction::Left, shortspan);
        FAIL("expected SpanExceeded");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SpanExceeded);
    }
}

TEST_CASE("patch radius: results are stable under the handoff radius") {
    SolveConfig a, b;
    b.z_switch = 0.2;
    b.y_switch = 40;
    const auto ta = integrate_from_pole(0, 0.110489160, Direction::Left, a);
    const auto tb = integrate_from_pole(0, 0.110489160, Direction::Left, b);
    CHECK_NEAR(ta.a.x, tb.a.x, 1e-10);
    CHECK_NEAR(ta.a.v, tb.a.v, 1e-7);
}
