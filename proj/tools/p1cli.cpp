#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "p1/bvp.hpp"
#include "p1/extremal.hpp"
#include "p1/reports.hpp"
#include "p1/serialize.hpp"
#include "p1/spacing.hpp"
#include "p1/special_integrals.hpp"

using nlohmann::json;
using namespace p1;

namespace {

struct Globals {
    double tol = 0;
    double rk_tol = 1e-12;
    std::string format = "json";
    std::string out;
    std::uint64_t seed = 1;

    SolveConfig config() const {
        SolveConfig c;
        c.rk_rel_tol = c.rk_abs_tol = rk_tol;
        c.validate();
        return c;
    }
};

struct Sink {
    std::ofstream file;
    std::ostream* os = &std::cout;
    explicit Sink(const std::string& path) {
        if (path.empty()) return;
        file.open(path, std::ios::binary);
        if (!file) throw std::runtime_error("cannot open " + path);
        os = &file;
    }
};

Side parse_side(const std::string& s) { return s == "right" ? Side::MinRight : Side::MinLeft; }
Direction parse_dir(const std::string& s) { return s == "right" ? Direction::Right : Direction::Left; }
ZeroSide parse_zside(const std::string& s) { return s == "right" ? ZeroSide::RightOfX0 : ZeroSide::LeftOfX0; }

// Key/value records in the requested format.
void emit_record(std::ostream& os, const std::string& format, const json& j) {
    if (format == "csv") {
        write_csv_row(os, {"key", "value"});
        for (auto it = j.begin(); it != j.end(); ++it) {
            const json& v = it.value();
            write_csv_row(os, {it.key(), v.is_number() ? fmt15(v.get<double>()) : v.is_string() ? v.get<std::string>() : v.dump()});
        }
    } else if (format == "pretty") {
        os << j.dump(2) << "\n";
    } else {
        os << j.dump() << "\n";
    }
}

std::vector<double> read_x0_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<double> xs;
    std::string line;
    while (std::getline(in, line)) {
        const auto cut = line.find(',');
        std::string cell = line.substr(0, cut);
        try {
            std::size_t used = 0;
            const double v = std::stod(cell, &used);
            if (used > 0) xs.push_back(v);
        } catch (const std::exception&) {
            // header or blank line
        }
    }
    return xs;
}

struct XfunOut {
    double value, arg;
};

XfunOut xfun(const std::string& which, double x0, const SolveConfig& cfg) {
    if (which == "xmin") {
        const auto r = X_min_fn(x0, cfg);
        return {r.value, r.arg};
    }
    if (which == "xminus") {
        const auto r = X_minus_fn(x0, cfg);
        return {r.value, r.arg};
    }
    if (which == "x") {
        const auto r = X_fn(x0, cfg);
        return {r.value, r.arg};
    }
    const auto r = Xi_fns(x0, true, cfg);
    if (which == "ximin") return {r.xi_min, r.y_l_min};
    return {r.xi, r.y_l};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Real solutions of y'' = 6y^2 - x on the negative semi-axis"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--tol", g.tol, "pass tolerance override for table reports");
    app.add_option("--rk-tol", g.rk_tol, "integrator relative and absolute tolerance");
    app.add_option("--format", g.format, "json | csv | pretty")->check(CLI::IsMember({"json", "csv", "pretty"}));
    app.add_option("--out", g.out, "output file (default stdout)");
    app.add_option("--seed", g.seed, "seed for randomized scans");

    bool all_pass = true;
    std::function<void()> action;

    auto* c_const = app.add_subcommand("constants", "quadrature constants");
    c_const->callback([&] {
        action = [&] {
            Sink s(g.out);
            emit_record(*s.os, g.format, to_json(constant_C()));
        };
    });

    double x0 = 0, y0 = 0, yl = 0, v = 0, x1 = -1, yup = 0;
    std::string side = "left", dir = "left";

    auto* c_slope = app.add_subcommand("slope", "initial slope realizing a minimum value");
    c_slope->add_option("--x0", x0)->required();
    c_slope->add_option("--y0", y0)->required();
    c_slope->add_option("--yl", yl)->required();
    c_slope->add_option("--side", side)->check(CLI::IsMember({"left", "right"}));
    bool want_delta = false;
    c_slope->add_flag("--delta", want_delta, "also report the symmetry defect");
    c_slope->callback([&] {
        action = [&] {
            const SolveConfig cfg = g.config();
            const double s = slope_f(x0, y0, yl, parse_side(side), cfg);
            // above the diagonal the value is the mirrored-side slope at (x0, yl) reaching y0
            const bool mirrored = yl > y0;
            const Side sd = parse_side(side);
            const Side used = mirrored ? (sd == Side::MinLeft ? Side::MinRight : Side::MinLeft) : sd;
            const double reached = minimum_from_slope(x0, mirrored ? yl : y0, s, used, cfg).y_l;
            json j{{"inputs", {{"x0", x0}, {"y0", y0}, {"y_l", yl}, {"side", side}}},
                   {"value", num15(s)},
                   {"residual", num15(std::abs(reached - (mirrored ? y0 : yl)))}};
            if (want_delta) j["delta"] = num15(delta_sym(x0, y0, yl, parse_side(side), cfg));
            Sink out(g.out);
            emit_record(*out.os, g.format, j);
        };
    });

    std::optional<double> level_target;
    auto* c_level = app.add_subcommand("level", "pole parameter <-> minimum value");
    c_level->add_option("--x0", x0, "pole abscissa")->required();
    c_level->add_option("--v", v, "pole parameter");
    c_level->add_option("--yl", level_target, "invert: find v for this minimum value");
    c_level->add_option("--dir", dir)->check(CLI::IsMember({"left", "right"}));
    c_level->callback([&] {
        action = [&] {
            const SolveConfig cfg = g.config();
            json j;
            if (level_target) {
                const double vv = v_from_level(x0, *level_target, parse_dir(dir), cfg);
                const LevelPoint p = level_from_pole({x0, vv}, parse_dir(dir), cfg);
                j = {{"inputs", {{"x_pole", x0}, {"y_l", *level_target}, {"dir", dir}}},
                     {"value", num15(vv)},
                     {"residual", num15(std::abs(p.y_l - *level_target))}};
            } else {
                const LevelPoint p = level_from_pole({x0, v}, parse_dir(dir), cfg);
                j = {{"inputs", {{"x_pole", x0}, {"v", v}, {"dir", dir}}},
                     {"value", num15(p.y_l)},
                     {"x_min", num15(p.x_min)},
                     {"residual", 0.0}};
            }
            Sink out(g.out);
            emit_record(*out.os, g.format, j);
        };
    });

    std::string calx_which = "x";
    auto* c_calx = app.add_subcommand("calx", "level-resolved extremal abscissae");
    c_calx->add_option("--x0", x0)->required();
    c_calx->add_option("--yl", yl)->required();
    c_calx->add_option("--which", calx_which)->check(CLI::IsMember({"xmin", "x", "xi"}));
    c_calx->callback([&] {
        action = [&] {
            const SolveConfig cfg = g.config();
            json j{{"inputs", {{"x0", x0}, {"y_l", yl}, {"which", calx_which}}}};
            if (calx_which == "xi") {
                const XiLevel r = var_Xi(x0, yl, cfg);
                j["value"] = num15(r.xi);
                j["xi_min"] = num15(r.xi_min);
                j["residual"] = num15(std::abs(cal_X(r.xi, yl, cfg) - x0));
            } else {
                const double vv = v_from_level(x0, yl, Direction::Left, cfg);
                const PoleRun r = pole_run({x0, vv}, Direction::Left, calx_which == "x", cfg);
                j["value"] = num15(calx_which == "x" ? r.x_far : r.x_min);
                j["residual"] = num15(std::abs(r.y_l - yl));
            }
            Sink out(g.out);
            emit_record(*out.os, g.format, j);
        };
    });

    std::string which = "x", batch;
    auto* c_xfun = app.add_subcommand("xfun", "extremal functions X_min, X_-, X, Xi_min, Xi");
    c_xfun->add_option("--which", which)->check(CLI::IsMember({"xmin", "xminus", "x", "ximin", "xi"}));
    auto* o_x0 = c_xfun->add_option("--x0", x0);
    c_xfun->add_option("--batch", batch, "CSV file whose first column holds x0 values")->excludes(o_x0);
    c_xfun->callback([&] {
        action = [&] {
            const SolveConfig cfg = g.config();
            Sink out(g.out);
            const std::vector<double> xs = batch.empty() ? std::vector<double>{x0} : read_x0_csv(batch);
            if (!batch.empty() || g.format == "csv") {
                write_csv_row(*out.os, {"x0", "value", "arg"});
                for (double x : xs) {
                    const XfunOut r = xfun(which, x, cfg);
                    write_csv_row(*out.os, {fmt15(x), fmt15(r.value), fmt15(r.arg)});
                }
            } else {
                const XfunOut r = xfun(which, x0, cfg);
                emit_record(*out.os, g.format,
                            {{"inputs", {{"x0", x0}, {"which", which}}}, {"value", num15(r.value)}, {"arg", num15(r.arg)}});
            }
        };
    });

    std::string curves;
    auto* c_bvp = app.add_subcommand("bvp", "Dirichlet problem y(x0)=y0, y(x1)=yup");
    c_bvp->require_subcommand(1);
    auto bvp_opts = [&](CLI::App* a, bool with_x1) {
        a->add_option("--x0", x0)->required();
        a->add_option("--y0", y0)->required();
        a->add_option("--yup", yup)->required();
        if (with_x1) a->add_option("--x1", x1)->required();
    };
    auto* b_z = c_bvp->add_subcommand("z", "boundary function Z");
    bvp_opts(b_z, false);
    b_z->callback([&] {
        action = [&] {
            const ExtremalResult z = Z_fn(x0, y0, yup, g.config());
            Sink out(g.out);
            emit_record(*out.os, g.format,
                        {{"inputs", {{"x0", x0}, {"y0", y0}, {"yup", yup}}},
                         {"value", num15(z.value)},
                         {"level", num15(z.arg)},
                         {"slope", num15(z.slope)},
                         {"multiple", z.multiple}});
        };
    });
    auto* b_count = c_bvp->add_subcommand("count", "number of solutions");
    bvp_opts(b_count, true);
    b_count->callback([&] {
        action = [&] {
            const BvpProblem p{x0, y0, x1, yup};
            p.validate();
            const double z = Z_fn(x0, y0, yup, g.config()).value;
            Sink out(g.out);
            emit_record(*out.os, g.format,
                        {{"inputs", {{"x0", x0}, {"y0", y0}, {"x1", x1}, {"yup", yup}}},
                         {"count", count_from_z(x1, z)},
                         {"z", num15(z)}});
        };
    });
    auto* b_solve = c_bvp->add_subcommand("solve", "solutions by shooting");
    bvp_opts(b_solve, true);
    b_solve->add_option("--curves", curves, "CSV dump of the solution curves on [x1, x0]");
    b_solve->callback([&] {
        action = [&] {
            const BvpProblem p{x0, y0, x1, yup};
            const BvpOutcome o = solve_bvp(p, g.config());
            json sols = json::array();
            for (std::size_t i = 0; i < o.solutions.size(); ++i) {
                json t = to_json(o.solutions[i]);
                t["slope"] = num15(o.slopes[i]);
                t["residual"] = num15(o.residuals[i]);
                sols.push_back(t);
            }
            Sink out(g.out);
            emit_record(*out.os, g.format == "csv" ? "json" : g.format,
                        {{"count", o.count}, {"z", num15(o.z_value)}, {"solutions", sols}});
            if (!curves.empty()) {
                std::ofstream f(curves, std::ios::binary);
                if (!f) throw std::runtime_error("cannot open " + curves);
                write_csv_row(f, {"solution", "x", "y", "dy"});
                for (std::size_t i = 0; i < o.solutions.size(); ++i)
                    for (int k = 0; k < 400; ++k) {
                        const double x = x1 + (x0 - x1) * k / 399.0;
                        const PhaseState st = o.solutions[i].at(x);
                        write_csv_row(f, {std::to_string(i), fmt15(x), fmt15(st.y), fmt15(st.dy)});
                    }
            }
        };
    });

    bool pole = false;
    auto* c_sp = app.add_subcommand("spacing", "zero spacing suprema");
    c_sp->add_option("--x0", x0)->required();
    c_sp->add_option("--y0", y0);
    c_sp->add_option("--side", side)->check(CLI::IsMember({"left", "right"}));
    c_sp->add_flag("--pole", pole, "supremum over the pole family at x0");
    c_sp->callback([&] {
        action = [&] {
            const SolveConfig cfg = g.config();
            const ExtremalResult r = pole ? delta_pole_sup(x0, parse_zside(side), cfg) : delta_sup(x0, y0, parse_zside(side), cfg);
            const ZeroPair zp = zero_pair(r.witness, parse_zside(side));
            json j{{"inputs", {{"x0", x0}, {"side", side}, {"pole", pole}}},
                   {"value", num15(r.value)},
                   {"level", num15(r.arg)},
                   {"z1", num15(zp.z1)},
                   {"z2", num15(zp.z2)},
                   {"x_min", num15(zp.x_min)},
                   {"multiple", r.multiple}};
            if (pole) {
                j["v"] = num15(r.v);
                const End far = side == "left" ? r.witness.a : r.witness.b;
                j["x_p"] = num15(far.x);
                j["v_p"] = num15(far.v);
            } else {
                j["inputs"]["y0"] = y0;
                j["slope"] = num15(r.slope);
            }
            Sink out(g.out);
            emit_record(*out.os, g.format, j);
        };
    });

    int table_id = 0;
    auto* c_table = app.add_subcommand("table", "reproduce a reference table (0 = constants)");
    c_table->add_option("n", table_id)->required()->check(CLI::Range(0, 4));
    c_table->callback([&] {
        action = [&] {
            const TableReport r = run_table(table_id, g.config(), g.tol);
            all_pass = all_pass && r.pass();
            Sink out(g.out);
            if (g.format == "csv")
                emit_csv(*out.os, r);
            else if (g.format == "pretty")
                print_pretty(*out.os, r);
            else
                *out.os << to_json(r).dump() << "\n";
        };
    });

    int conj_id = 1;
    auto* c_conj = app.add_subcommand("conjecture", "numeric scan of a conjecture (1..5)");
    c_conj->add_option("id", conj_id)->required()->check(CLI::Range(1, 5));
    c_conj->callback([&] {
        action = [&] {
            const ConjectureReport r = scan_conjecture(conj_id, g.config(), g.seed);
            all_pass = all_pass && r.pass();
            Sink out(g.out);
            if (g.format == "pretty")
                print_pretty(*out.os, r);
            else
                emit_record(*out.os, g.format, to_json(r));
        };
    });

    int samples = 0;
    auto* c_pm = app.add_subcommand("polemap", "trajectory launched from a pole");
    c_pm->add_option("--x0", x0, "pole abscissa")->required();
    c_pm->add_option("--v", v)->required();
    c_pm->add_option("--dir", dir)->check(CLI::IsMember({"left", "right"}));
    c_pm->add_option("--samples", samples, "CSV of x,y,dy on this many points instead of JSON");
    c_pm->callback([&] {
        action = [&] {
            SolveConfig cfg = g.config();
            cfg.keep_dense = samples > 0;
            const Trajectory t = integrate_from_pole(x0, v, parse_dir(dir), cfg);
            Sink out(g.out);
            if (samples > 0)
                write_trajectory_csv(*out.os, t, samples);
            else
                *out.os << (g.format == "pretty" ? to_json(t).dump(2) : to_json(t).dump()) << "\n";
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }
    try {
        if (action) action();
    } catch (const Error& e) {
        std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return all_pass ? 0 : 1;
}
