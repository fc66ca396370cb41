#pragma once

// Bracketed root finding and 1-D extremum search.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "p1/errors.hpp"
#include "p1/sweep.hpp"

namespace p1 {

namespace detail {
inline double finite_or(double v) {
    if (std::isnan(v)) return v;
    if (v == INFINITY) return 1e300;
    if (v == -INFINITY) return -1e300;
    return v;
}
}  // namespace detail

// Root of g in [a, b] given opposite-signed end values; |bracket| <= tol on exit.
template <class G>
double find_root(G&& g, double a, double b, double ga, double gb, double tol) {
    ga = detail::finite_or(ga);
    gb = detail::finite_or(gb);
    if (ga == 0.0) return a;
    if (gb == 0.0) return b;
    if (a > b) {
        std::swap(a, b);
        std::swap(ga, gb);
    }
    if (std::signbit(ga) == std::signbit(gb)) throw Error(ErrorKind::BracketFailure, "root not bracketed");
    std::uintmax_t iters = 300;
    auto f = [&](double x) { return detail::finite_or(g(x)); };
    auto stop = [tol](double lo, double hi) { return std::abs(hi - lo) <= tol; };
    const auto r = boost::math::tools::toms748_solve(f, a, b, ga, gb, stop, iters);
    return 0.5 * (r.first + r.second);
}

template <class G>
double find_root(G&& g, double a, double b, double tol) {
    return find_root(g, a, b, g(a), g(b), tol);
}

// Value-only local minimum on [a, b] (Brent's parabolic/golden search).
template <class F>
std::pair<double, double> local_minimum(F&& f, double a, double b, int bits = 40) {
    std::uintmax_t iters = 500;
    return boost::math::tools::brent_find_minima(f, a, b, bits, iters);
}

struct ValueSlope {
    double value = 0;
    double slope = 0;  // derivative with respect to the argument
};

struct Extremum {
    double arg = 0;
    double value = 0;
    int local_count = 0;     // local extrema found on the grid
    bool multiple = false;   // a second, well-separated local extremum exists
    bool at_boundary = false;
    double second_arg = 0;   // best competitor when multiple
    double second_value = 0;
};

enum class Sense { Minimize, Maximize };

// Scans fd on the grid, polishes each interior sign change of the slope by root finding on
// the slope, and returns the best candidate. fd may throw; such grid points are skipped.
Extremum extremize(const std::function<ValueSlope(double)>& fd, const std::vector<double>& grid, Sense sense,
                   double arg_tol = 1e-12, double separation = 1e-6);

std::vector<double> linspace(double a, double b, int n);

}  // namespace p1
