#include "oracle.hpp"
#include "p1/bvp.hpp"
#include "p1/spacing.hpp"
#include "p1/special_integrals.hpp"
#include "util.hpp"

using namespace p1;

namespace {

SolveConfig dense() {
    SolveConfig c;
    c.keep_dense = true;
    return c;
}

BvpProblem random_problem(tu::Rng& rng) {
    BvpProblem p{rng.uniform(-3, 0), rng.uniform(-1, 3), 0, rng.uniform(-1, 3)};
    p.x1 = p.x0 - rng.uniform(0.2, 4.2);
    return p;
}

}  // namespace

TEST_CASE("level crossing map") {
    CHECK(cal_Z(-1, 0.7, 2.0, 0.7) == -1);
    const double z = cal_Z(0, 0.5, 0.5, -0.3);
    CHECK(z > cal_X(0, -0.3));
    CHECK(z < 0);
    double prev = 0;
    for (double yu : {-0.2, 0.0, 0.5, 2.0, 10.0}) {
        const double zz = cal_Z(0, 0.5, yu, -0.3);
        CHECK(zz < prev);
        prev = zz;
    }
}

TEST_CASE("leftmost crossing function") {
    CHECK_NEAR(Z_fn(0, 0, 0).value, -delta_sup(0, 0, ZeroSide::LeftOfX0).value, 1e-7);
    const double X0 = -3.915285797;
    double prev = 0;
    for (double y : {1e2, 1e3, 1e4}) {
        const double z = Z_fn(0, y, y).value;
        CHECK(z < prev);
        CHECK(z > X0);
        prev = z;
    }
    CHECK(std::abs(prev - X0) < 2e-2);
    const double z = Z_fn(0, 1, 1).value;
    CHECK(X0 < z);
    CHECK(z < 0);
}

TEST_CASE("crossing function monotonicity and Lipschitz bound") {
    tu::Rng rng(17);
    for (int i = 0; i < 12; ++i) {
        const double x0 = rng.uniform(-3, 0), xh = std::min(0.0, x0 + rng.uniform(0.02, 0.6));
        const double y0 = rng.uniform(-0.5, 2.5), yu = rng.uniform(-0.5, 2.5);
        const double z = Z_fn(x0, y0, yu).value;
        const double d = Z_fn(xh, y0, yu).value - z;
        CHECK(d > 0);
        CHECK(d < xh - x0);
        CHECK(Z_fn(x0, y0 + 0.3, yu).value < z);
        CHECK(Z_fn(x0, y0, yu + 0.3).value < z);
    }
}

TEST_CASE("crossing function between its analytic bounds") {
    tu::Rng rng(19);
    for (int i = 0; i < 20; ++i) {
        BoundArgs a;
        a.x0 = rng.uniform(-3, -0.05);
        a.y0 = rng.uniform(-0.5, 2.5);
        a.y_up = rng.uniform(-0.5, 2.5);
        a.xmin_value = X_min_xy(a.x0, a.y0).value;
        const double z = Z_fn(a.x0, a.y0, a.y_up).value;
        const BoundPair b = bounds_report(BoundKind::ZBound, a);
        CHECK(b.lower < z);
        CHECK(z < b.upper);
        const BoundPair bm = bounds_report(BoundKind::XminXYBound, a);
        CHECK(bm.lower < a.xmin_value);
        CHECK(a.xmin_value < bm.upper);
    }
}

TEST_CASE("counting examples") {
    CHECK(count_solutions({0, 0.2, -5, 0.1}) == 0);
    const double z = Z_fn(0, 0.7, 0.7).value;
    CHECK(count_solutions({0, 0.7, z, 0.7}) == 1);
    CHECK(count_solutions({0, 0.7, z + 1e-10, 0.7}) == 1);
    CHECK(count_solutions({0, 0.7, z + 1e-6, 0.7}) == 2);
    CHECK(count_solutions({0, 0.7, z - 1e-6, 0.7}) == 0);
    const BvpProblem p{0, 1, -1, 1};
    CHECK(count_solutions(p) == 2);
    CHECK(oracle::slope_sweep(p).count == 2);
    // x1 = -3 lies left of Z(0, 0.2, 0.5) = -1.994, so no solution exists
    const BvpProblem q{0, 0.2, -3, 0.5};
    CHECK(count_solutions(q) == 0);
    CHECK(oracle::slope_sweep(q).count == 0);
    CHECK_THROWS_AS(BvpProblem({0, 0, 0.5, 0}).validate(), Error);
}

TEST_CASE("two-solution case") {
    const BvpProblem p{0, 1, -1, 1};
    const BvpOutcome out = solve_bvp(p, dense());
    REQUIRE(out.count == 2);
    REQUIRE(out.solutions.size() == 2);
    for (double r : out.residuals) CHECK(r < 1e-8);
    CHECK(intersection_count(out.solutions[0], out.solutions[1], p.x1, p.x0) == 2);
    const double ws = Z_fn(p.x0, p.y0, p.y_up).slope;
    CHECK(std::min(out.slopes[0], out.slopes[1]) < ws);
    CHECK(ws < std::max(out.slopes[0], out.slopes[1]));
    // no third solution: the sweep finds exactly the returned slopes
    const auto o = oracle::slope_sweep(p);
    REQUIRE(o.count == 2);
    std::vector<double> got = out.slopes;
    std::sort(got.begin(), got.end());
    CHECK_NEAR(o.roots[0], got[0], 1e-7 * (1 + std::abs(got[0])));
    CHECK_NEAR(o.roots[1], got[1], 1e-7 * (1 + std::abs(got[1])));
}

TEST_CASE("one-solution case is the crossing witness") {
    const double x0 = -0.5, y0 = 0.4, yu = 1.2;
    const auto zr = Z_fn(x0, y0, yu, dense());
    const BvpProblem p{x0, y0, zr.value, yu};
    const BvpOutcome out = solve_bvp(p, dense());
    REQUIRE(out.count == 1);
    const Trajectory& t = out.solutions[0];
    CHECK(out.residuals[0] < 1e-8);
    const auto w = integrate_ivp(x0, y0, zr.slope, Direction::Left, dense());
    for (int k = 0; k < 50; ++k) {
        const double x = p.x1 + (x0 - p.x1) * k / 49.0;
        CHECK_NEAR(t.at(x).y, w.at(x).y, 1e-8);
    }
}

TEST_CASE("trichotomy agrees with the slope-sweep oracle") {
    tu::Rng rng(23);
    int seen[3] = {0, 0, 0};
    for (int i = 0; i < 40; ++i) {
        const BvpProblem p = random_problem(rng);
        const int c = count_solutions(p);
        const auto o = oracle::slope_sweep(p, 4000);
        INFO("x0=" << p.x0 << " y0=" << p.y0 << " x1=" << p.x1 << " y_up=" << p.y_up);
        CHECK(c == o.count);
        ++seen[c];
        if (c > 0) {
            const auto out = solve_bvp(p);
            CHECK(out.count == c);
            for (double r : out.residuals) CHECK(r < 1e-8);
        }
    }
    CHECK(seen[0] > 0);
    CHECK(seen[2] > 0);
}

TEST_CASE("intersection counts") {
    const SolveConfig cfg = dense();
    const auto ymax = integrate_from_pole(0, 0.110489160, Direction::Left, cfg);
    const auto ssym = integrate_from_pole(0, 0.0, Direction::Left, cfg);
    CHECK(intersection_count(ymax, ssym, ssym.a.x, 0) == 2);
    const auto shifted = integrate_from_pole(0, 0.3, Direction::Left, cfg);
    CHECK(intersection_count(ymax, shifted, std::max(ymax.a.x, shifted.a.x), 0) >= 1);

    tu::Rng rng(29);
    for (int i = 0; i < 50; ++i) {
        const auto a = integrate_from_pole(0, rng.uniform(-1, 1), Direction::Left, cfg);
        const auto b = integrate_from_pole(0, rng.uniform(-1, 1), Direction::Left, cfg);
        CHECK(intersection_count(a, b, std::max(a.a.x, b.a.x), 0) <= 2);
    }
    SolveConfig clipped = cfg;
    clipped.clip_hi = 0;
    for (int i = 0; i < 50; ++i) {
        const double x0 = rng.uniform(-3, -0.5);
        const auto a = integrate_through(x0, rng.uniform(-1, 2), rng.uniform(-3, 3), clipped);
        const auto b = integrate_through(x0, rng.uniform(-1, 2), rng.uniform(-3, 3), clipped);
        const double lo = std::max(a.a.x, b.a.x), hi = std::min({a.b.x, b.b.x, 0.0});
        if (hi - lo < 1e-3) continue;
        CHECK(intersection_count(a, b, lo + 1e-9, hi - 1e-9) <= 2);
    }
}
