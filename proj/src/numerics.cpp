#include "p1/numerics.hpp"

#include <optional>

namespace p1 {

bool& sweep_use_parallel() {
    static bool flag = true;
    return flag;
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = n == 1 ? a : a + (b - a) * i / (n - 1);
    return g;
}

Extremum extremize(const std::function<ValueSlope(double)>& fd, const std::vector<double>& grid, Sense sense,
                   double arg_tol, double separation) {
    const double sg = sense == Sense::Maximize ? 1.0 : -1.0;
    const auto evals = sweep<std::optional<ValueSlope>>(grid.size(), [&](std::size_t i) -> std::optional<ValueSlope> {
        try {
            return fd(grid[i]);
        } catch (const Error&) {
            return std::nullopt;
        }
    });

    struct Cand {
        double arg, value;
    };
    std::vector<Cand> cands;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        if (!evals[i] || !evals[i + 1]) continue;
        const double s0 = sg * evals[i]->slope, s1 = sg * evals[i + 1]->slope;
        if (!(s0 > 0 && s1 <= 0)) continue;
        try {
            auto slope = [&](double x) { return fd(x).slope; };
            const double r = find_root(slope, grid[i], grid[i + 1], evals[i]->slope, evals[i + 1]->slope, arg_tol);
            cands.push_back({r, fd(r).value});
        } catch (const Error&) {
            const std::size_t k = sg * evals[i]->value >= sg * evals[i + 1]->value ? i : i + 1;
            cands.push_back({grid[k], evals[k]->value});
        }
    }

    Extremum out;
    out.local_count = static_cast<int>(cands.size());
    if (cands.empty()) {
        std::optional<std::size_t> best;
        for (std::size_t i = 0; i < grid.size(); ++i)
            if (evals[i] && (!best || sg * evals[i]->value > sg * evals[*best]->value)) best = i;
        if (!best) throw Error(ErrorKind::BracketFailure, "no admissible grid point");
        out.arg = grid[*best];
        out.value = evals[*best]->value;
        out.at_boundary = true;
        return out;
    }
    std::size_t b = 0;
    for (std::size_t k = 1; k < cands.size(); ++k)
        if (sg * cands[k].value > sg * cands[b].value) b = k;
    out.arg = cands[b].arg;
    out.value = cands[b].value;
    for (std::size_t k = 0; k < cands.size(); ++k) {
        if (k == b || std::abs(cands[k].arg - out.arg) <= separation) continue;
        if (!out.multiple || sg * cands[k].value > sg * out.second_value) {
            out.multiple = true;
            out.second_arg = cands[k].arg;
            out.second_value = cands[k].value;
        }
    }
    return out;
}

}  // namespace p1
