// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "oracle.hpp"
#include "p1/bvp.hpp"
#include "p1/reports.hpp"
#include "p1/spacing.hpp"
#include "p1/special_integrals.hpp"

using namespace p1;

namespace {

struct Verdict {
    bool pass = true;
    std::ostringstream detail;
    void require(bool ok, const std::string& what) {
        if (!ok) {
            if (pass) detail << "failed: ";
            else detail << "; ";
            detail << what;
            pass = false;
        }
    }
};

struct Rng {
    std::mt19937_64 g;
    explicit Rng(std::uint64_t s) : g(s) {}
    double operator()(double a, double b) { return std::uniform_real_distribution<double>(a, b)(g); }
};

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

int failures = 0;

void run(int id, const char* name, double budget, const std::function<void(Verdict&)>& body) {
    Verdict v;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(v);
    } catch (const std::exception& e) {
        v.require(false, std::string("threw ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (budget > 0 && secs > budget) {
        std::ostringstream m;
        m << "runtime " << secs << " s over " << budget << " s";
        v.require(false, m.str());
    }
    if (!v.pass) ++failures;
    std::printf("%s  %2d %-22s %8.2f s  %s\n", v.pass ? "PASS" : "FAIL", id, name, secs, v.detail.str().c_str());
    std::fflush(stdout);
}

void table_rows(Verdict& v, const TableReport& r) {
    for (const auto& row : r.rows) v.require(row.pass, r.id + " " + row.quantity);
}

}  // namespace

int main() {
    const SolveConfig cfg;

    run(1, "constants", 5, [](Verdict& v) {
        const ConstantBundle& k = constant_C();
        v.require(std::abs(k.C - 2.32470720434238) <= 1e-13 * 2.32470720434238, "C");
        v.require(near(k.v_min_max, -0.226003876353, 1e-9), "v_min_max");
        v.require(near(k.x_max, 9.788997737, 1e-7), "x_max");
        v.require(near(k.C0, 0.696635876400193, 1e-12), "C(0)");
        v.detail << "C=" << k.C << " C(0)=" << k.C0;
    });

    run(2, "table 2", 30, [&](Verdict& v) {
        const TableReport r = run_table(2, cfg);
        v.require(r.rows.size() == 27, "27 cells");
        table_rows(v, r);
        double worst = 0;
        for (const auto& row : r.rows) worst = std::max(worst, row.abs_error);
        v.detail << r.rows.size() << " cells, max err " << worst;
    });

    run(3, "tables 1, 3, 4", 60, [&](Verdict& v) {
        int cells = 0;
        for (int n : {1, 3, 4}) {
            const TableReport r = run_table(n, cfg);
            table_rows(v, r);
            cells += static_cast<int>(r.rows.size());
        }
        v.detail << cells << " cells";
    });

    run(4, "extremal values", 0, [&](Verdict& v) {
        struct Case {
            const char* name;
            double x0, expect;
            ExtremalResult (*fn)(double, const SolveConfig&);
            BoundKind kind;
        };
        const Case cases[] = {{"X(0)", 0, -3.915285797, X_fn, BoundKind::XBound},
                              {"X-(0)", 0, -2.677058361, X_minus_fn, BoundKind::XminusBound},
                              {"X_min(0)", 0, -2.055703500, X_min_fn, BoundKind::XminBound},
                              {"X(-1)", -1, -4.589970403, X_fn, BoundKind::XBound},
                              {"X_min(-1)", -1, -2.853690013, X_min_fn, BoundKind::XminBound},
                              {"X-(-1)", -1, -3.121759948, X_minus_fn, BoundKind::XminusBound}};
        for (const Case& c : cases) {
            const double val = c.fn(c.x0, cfg).value;
            v.require(near(val, c.expect, 1e-6), std::string(c.name) + " value");
            BoundArgs a;
            a.x0 = c.x0;
            if (c.kind == BoundKind::XBound && c.x0 < 0) a.xmin_value = X_min_fn(c.x0, cfg).value;
            const BoundPair b = bounds_report(c.kind, a);
            v.require(b.lower < val && val < b.upper, std::string(c.name) + " bounds");
        }
        v.detail << "6 values";
    });

    run(5, "zero spacing", 0, [&](Verdict& v) {
        const ExtremalResult r = delta_pole_sup(0, ZeroSide::LeftOfX0, cfg);
        v.require(near(r.value, 1.1808499889180, 1e-8), "value");
        const ZeroPair zp = zero_pair(r.witness, ZeroSide::LeftOfX0);
        v.require(near(r.v, -0.518045, 1e-5), "v(0)");
        v.require(near(zp.z1, -1.3362856, 1e-5), "z1");
        v.require(near(zp.x_min, -1.9417146, 1e-5), "x_min");
        v.require(near(zp.y_min, -0.741427, 1e-5), "y_min");
        v.require(near(zp.z2, -2.5171356, 1e-5), "z2");
        v.require(near(r.witness.a.x, -3.7427412, 1e-5), "x_p");
        v.require(near(r.witness.a.v, -1.798000, 1e-5), "v(x_p)");
        v.detail << "delta=" << r.value;
    });

    run(6, "wronskian", 0, [&](Verdict& v) {
        Rng rng(6);
        double worst = 0;
        for (int i = 0; i < 20; ++i) {
            const double xp = rng(-3, 0), vv = rng(-1, 1);
            const Trajectory t = integrate_from_pole(xp, vv, Direction::Left, cfg);
            const double J = wronskian_J(xp, vv, xp + rng(0.2, 0.8) * (t.a.x - xp), cfg);
            worst = std::max(worst, std::abs(J - 14));
        }
        v.require(worst <= 1e-5, "J = 14");
        v.detail << "20 pole data, max |J-14| " << worst;
    });

    run(7, "asymptotics", 0, [&](Verdict& v) {
        const double C = constant_C().C;
        for (double x0 : {-10.0, -30.0, -100.0}) {
            const double a = std::abs(x0);
            const double rx = X_fn(x0, cfg).value - x0 + 2 * C / std::pow(a, 0.25);
            v.require(rx > 0 && rx < C * C / std::pow(a, 1.5), "X window");
            const double rm = X_min_fn(x0, cfg).value - x0 + C / std::pow(a, 0.25);
            v.require(rm > 0 && rm < C * C / (4 * std::pow(a, 1.5)), "X_min window");
            const double rn = X_minus_fn(x0, cfg).value - x0 + C / std::pow(a, 0.25);
            v.require(rn > 0 && rn < C * C / (4 * std::pow(a, 1.5)), "X- window");
        }
        v.detail << "x0 in {-10, -30, -100}";
    });

    run(8, "bvp trichotomy", 0, [&](Verdict& v) {
        Rng rng(8);
        int hist[3] = {0, 0, 0}, mismatches = 0;
        double worst_res = 0;
        for (int i = 0; i < 200; ++i) {
            BvpProblem p{rng(-3, 0), rng(-1, 3), 0, rng(-1, 3)};
            p.x1 = p.x0 - rng(0.2, 4.2);
            const int c = count_solutions(p, cfg);
            const auto o = oracle::slope_sweep(p, 10000);
            if (c != o.count) ++mismatches;
            ++hist[std::min(c, 2)];
            if (c > 0) {
                const BvpOutcome out = solve_bvp(p, cfg);
                for (double r : out.residuals) worst_res = std::max(worst_res, r);
            }
        }
        v.require(mismatches == 0, std::to_string(mismatches) + " count mismatches");
        v.require(worst_res < 1e-8, "residuals");
        double worst_inv = 0;
        for (int k = 0; k < 10; ++k) {
            const double x0 = -4.0 - 0.9 * k;
            const XiResult xi = Xi_fns(x0, false, cfg);
            worst_inv = std::max(worst_inv, std::abs(X_fn(xi.xi, cfg).value - x0));
            worst_inv = std::max(worst_inv, std::abs(X_minus_fn(xi.xi_min, cfg).value - x0));
        }
        v.require(worst_inv <= 1e-7, "inverse identities");
        v.detail << "counts 0/1/2 = " << hist[0] << "/" << hist[1] << "/" << hist[2] << ", max residual " << worst_res
                 << ", max inverse err " << worst_inv;
    });

    run(9, "property suites", 0, [&](Verdict& v) {
        Rng rng(9);
        int checks = 0;
        auto want = [&](bool ok, const char* what) {
            ++checks;
            v.require(ok, what);
        };
        for (int i = 0; i < 10; ++i) {
            // level maps: Lipschitz sandwich, decay bound, 4.2 chain
            const double yl = rng(-3, 1), x2 = rng(-4, 0), x1 = x2 - rng(0.02, 2);
            const double m1 = cal_X_min(x1, yl, cfg), m2 = cal_X_min(x2, yl, cfg);
            const double X1 = cal_X(x1, yl, cfg), X2 = cal_X(x2, yl, cfg);
            want(0 < m2 - m1 && m2 - m1 < x2 - x1, "X_min level map Lipschitz");
            const double In = integral_I_nu(yl > 0 ? 1.0 : -1.0);
            want(0 < x2 - m2 && x2 - m2 < In / (2 * std::sqrt(std::abs(yl))), "minimum decay bound");
            want(0 < X2 - X1 && X2 - X1 < m2 - m1 && m2 < 0.5 * (x2 + X2), "X level map chain");
            // extremal functions
            const double a2 = rng(-5, 0), a1 = a2 - rng(0.05, 2);
            for (auto F : {X_min_fn, X_minus_fn}) {
                const double d = F(a2, cfg).value - F(a1, cfg).value;
                want(0 < d && d < a2 - a1, "extremal Lipschitz");
            }
            // right-side family
            const double yr = rng(-2, 0.5), top = cal_X(0, yr, cfg) - 1e-3;
            const double r2 = top - rng(0, 3), r1 = r2 - rng(0.02, 1.5);
            const XiLevel p = var_Xi(r1, yr, cfg), q = var_Xi(r2, yr, cfg);
            want(r2 - r1 < q.xi_min - p.xi_min && q.xi_min - p.xi_min < q.xi - p.xi, "Xi level map chain");
            // crossing function
            const double z0 = rng(-3, 0), zh = std::min(0.0, z0 + rng(0.02, 0.6));
            const double y0 = rng(-0.5, 2.5), yu = rng(-0.5, 2.5);
            const double z = Z_fn(z0, y0, yu, cfg).value;
            const double dz = Z_fn(zh, y0, yu, cfg).value - z;
            want(0 < dz && dz < zh - z0, "Z Lipschitz");
            want(Z_fn(z0, y0 + 0.3, yu, cfg).value < z && Z_fn(z0, y0, yu + 0.3, cfg).value < z, "Z monotone");
            // spacings
            const double s2 = rng(-2, 0), s1 = s2 - rng(0.05, 1), sy = rng(0, 2), sl = rng(-1.1, -0.1);
            const double ds = delta_level(s2, sy, sl, ZeroSide::LeftOfX0, cfg).delta -
                              delta_level(s1, sy, sl, ZeroSide::LeftOfX0, cfg).delta;
            want(0 < ds && ds < s2 - s1, "left spacing Lipschitz");
            const double bl = rng(-1.1, -0.1), btop = cal_X(0, bl, cfg) - 1e-6;
            double L = 1;
            for (double s = btop; s > btop - 6; s -= 0.25)
                L = std::max(L, (var_Xi(s, bl, cfg).xi - var_Xi(s - 1e-4, bl, cfg).xi) / 1e-4);
            const double b2 = btop - rng(0, 2), b1 = b2 - rng(0.05, 1), by = rng(0, 2);
            const double db = delta_level(b2, by, bl, ZeroSide::RightOfX0, cfg).delta -
                              delta_level(b1, by, bl, ZeroSide::RightOfX0, cfg).delta;
            want(0 < db && db < (L - 1) * (b2 - b1), "right spacing bound");
        }
        SolveConfig d = cfg;
        d.keep_dense = true;
        int worst = 0;
        for (int i = 0; i < 100; ++i) {
            const Trajectory a = integrate_from_pole(0, rng(-1, 1), Direction::Left, d);
            const Trajectory b = integrate_from_pole(0, rng(-1, 1), Direction::Left, d);
            const int n = intersection_count(a, b, std::max(a.a.x, b.a.x), 0);
            worst = std::max(worst, n);
            want(n <= 2, "intersections");
        }
        v.detail << checks << " checks, max intersections " << worst;
    });

    run(10, "conjecture scans", 0, [&](Verdict& v) {
        for (int id = 1; id <= 5; ++id) {
            const ConjectureReport r = scan_conjecture(id, cfg, 1);
            v.require(r.pass(), "conjecture " + std::to_string(id));
            v.detail << "C" << id << ":" << r.checked << "/" << r.violations << " ";
        }
        v.detail << "(checked/violations)";
    });

    std::printf("%s\n", failures == 0 ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL");
    return failures == 0 ? 0 : 1;
}
