#include "p1/special_integrals.hpp"

#include <cmath>
#include <mutex>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace p1 {

namespace {

template <class F>
double quad(F&& f, double a, double b) {
    if (a == b) return 0.0;
    double err = 0;
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 8, 1e-14, &err);
}

// int_0^W dw / sqrt(w^4 + p w^2 + q); beyond w = 1 the map w = 1/t keeps the integrand smooth.
double quartic_integral(double p, double q, double W) {
    auto f = [p, q](double w) { return 1.0 / std::sqrt(w * w * w * w + p * w * w + q); };
    auto g = [p, q](double t) { return 1.0 / std::sqrt(1.0 + p * t * t + q * t * t * t * t); };
    if (W <= 1.0) return quad(f, 0.0, W);
    const double t0 = std::isinf(W) ? 0.0 : 1.0 / W;
    return quad(f, 0.0, 1.0) + quad(g, t0, 1.0);
}

// int_0^W dw / (w^4 + p w^2 + q)^{3/2}
double quartic_integral32(double p, double q, double W) {
    auto f = [p, q](double w) {
        const double Q = w * w * w * w + p * w * w + q;
        return 1.0 / (Q * std::sqrt(Q));
    };
    auto g = [p, q](double t) {
        const double t2 = t * t;
        const double Q = 1.0 + p * t2 + q * t2 * t2;
        return t2 * t2 / (Q * std::sqrt(Q));
    };
    if (W <= 1.0) return quad(f, 0.0, W);
    const double t0 = std::isinf(W) ? 0.0 : 1.0 / W;
    return quad(f, 0.0, 1.0) + quad(g, t0, 1.0);
}

}  // namespace

const char* to_string(BoundKind k) {
    switch (k) {
        case BoundKind::XminBound: return "XminBound";
        case BoundKind::XminusBound: return "XminusBound";
        case BoundKind::XBound: return "XBound";
        case BoundKind::XminXYBound: return "XminXYBound";
        case BoundKind::ZBound: return "ZBound";
    }
    return "?";
}

double integral_I(double v0, double v_min) {
    if (!(v_min <= v0)) throw Error(ErrorKind::DomainError, "integral_I needs v_min <= v0");
    const double W = std::isinf(v0) ? kInf : std::sqrt(v0 - v_min);
    return quartic_integral(3 * v_min, 3 * v_min * v_min + 0.5, W);
}

double integral_I_inf_slope(double v) {
    // d/dv of (w^4 + 3v w^2 + 3v^2 + 1/2)^{-1/2}
    auto f = [v](double w) {
        const double w2 = w * w;
        const double Q = w2 * w2 + 3 * v * w2 + 3 * v * v + 0.5;
        return -(3 * w2 + 6 * v) / (2 * Q * std::sqrt(Q));
    };
    auto g = [v](double t) {
        const double t2 = t * t;
        const double Q = 1.0 + 3 * v * t2 + (3 * v * v + 0.5) * t2 * t2;
        return -(3 * t2 + 6 * v * t2 * t2) / (2 * Q * std::sqrt(Q));
    };
    return quad(f, 0.0, 1.0) + quad(g, 0.0, 1.0);
}

double integral_I_nu(double nu) {
    if (nu == 0.0) throw Error(ErrorKind::DomainError, "I_nu diverges at nu = 0");
    return 2 * quartic_integral(3 * nu, 3 * nu * nu, kInf);
}

double integral_I_nu_direct(double nu) {
    if (nu == 0.0) throw Error(ErrorKind::DomainError, "I_nu diverges at nu = 0");
    // w = nu + s^2 removes the endpoint singularity; the tail uses s = 1/t
    const double n3 = nu * nu * nu;
    auto h = [nu, n3](double s) {
        const double w = nu + s * s;
        const double d = w * w * w - n3;
        if (s == 0.0) return 2.0 / std::sqrt(3 * nu * nu);
        return 2 * s / std::sqrt(d);
    };
    auto ht = [&](double t) {
        if (t == 0.0) return 2.0;
        const double s = 1.0 / t;
        return h(s) / (t * t);
    };
    return quad(h, 0.0, 1.0) + quad(ht, 0.0, 1.0);
}

const ConstantBundle& constant_C() {
    static ConstantBundle bundle;
    static std::once_flag once;
    std::call_once(once, [] {
        const double lo = -std::sqrt(2.0 / 3.0);
        std::vector<double> grid;
        for (int i = 0; i < 64; ++i) grid.push_back(lo * std::pow(1e-3, i / 63.0) * (1 - 1e-12));
        std::sort(grid.begin(), grid.end());
        const Extremum e = extremize([](double v) { return ValueSlope{integral_I(kInf, v), integral_I_inf_slope(v)}; },
                                     grid, Sense::Maximize, 1e-15);
        bundle.C = e.value;
        bundle.v_min_max = e.arg;
        bundle.x_max = 1.0 / (2 * e.arg * e.arg);
        bundle.multiple_peaks = e.multiple;
        const COfResult c0 = C_of_detail(0.0);
        bundle.C0 = c0.value;
        bundle.x_max0 = c0.x_max;
        bundle.multiple_peaks = bundle.multiple_peaks || c0.multiple;
    });
    return bundle;
}

ValueSlope C_of_x(double v0, double x) {
    if (!(x > 0)) throw Error(ErrorKind::DomainError, "C(v0, x) needs x > 0");
    const double r = std::sqrt(2 * x);
    double U, dU = 0;
    if (std::isinf(v0)) {
        if (v0 < 0) return {0.0, 0.0};
        U = kInf;
    } else {
        const double u2 = 1 + v0 * r;
        if (!(u2 > 0)) throw Error(ErrorKind::DomainError, "C(v0, x) needs v0 sqrt(2x) > -1");
        U = std::sqrt(u2);
        dU = v0 / (2 * U * r);
    }
    const double K = quartic_integral(-3.0, 3.0 + x, U);
    double dK = -0.5 * quartic_integral32(-3.0, 3.0 + x, U);
    if (std::isfinite(U)) dK += dU / std::sqrt(U * U * U * U - 3 * U * U + 3 + x);
    const double f4 = std::pow(2 * x, 0.25);
    return {f4 * K, 0.5 * std::pow(2 * x, -0.75) * K + f4 * dK};
}

COfResult C_of_detail(double v0) {
    if (std::isinf(v0) && v0 < 0) return {0.0, 0.0, false};
    double xlo = 1e-3, xhi = 1e3;
    if (v0 < 0) {
        const double cap = 1.0 / (2 * v0 * v0);
        xhi = cap * (1 - 1e-9);
        xlo = std::min(xlo, cap * 1e-4);
    }
    std::vector<double> grid;
    for (int i = 0; i < 64; ++i) grid.push_back(xlo * std::pow(xhi / xlo, i / 63.0));
    const Extremum e = extremize([v0](double x) { return C_of_x(v0, x); }, grid, Sense::Maximize, 1e-14);
    return {e.value, e.arg, e.multiple};
}

double C_of(double v0) { return C_of_detail(v0).value; }

double eta_root(double x0, std::optional<double> weight_y0, double factor) {
    if (x0 > 0) throw Error(ErrorKind::DomainError, "eta_root needs x0 <= 0");
    const double a = std::abs(x0);
    const double C = constant_C().C;
    auto rhs = [&](double eta) { return factor * (weight_y0 ? C_of(*weight_y0 / (eta * eta)) : C); };
    auto h = [&](double eta) { return eta * eta * eta * eta * eta - a * eta - rhs(eta); };
    double lo = std::max(std::pow(a, 0.25), 1e-3);
    double hlo = h(lo);
    while (hlo > 0) {
        lo *= 0.5;
        hlo = h(lo);
    }
    double hi = std::pow(a, 0.25) + std::pow(factor * C, 0.2) + 1.0;
    double hhi = h(hi);
    while (hhi < 0) {
        hi *= 2;
        hhi = h(hi);
    }
    return find_root(h, lo, hi, hlo, hhi, 1e-15 * hi);
}

BoundPair bounds_report(BoundKind kind, const BoundArgs& args) {
    const double C = constant_C().C;
    const double x0 = args.x0;
    if (!(x0 <= 0)) throw Error(ErrorKind::DomainError, "bounds need x0 <= 0");
    const double x_hat = -std::pow(C / 4, 0.8);
    auto xmin_lower = [&](double x) { return x <= x_hat ? x - C / std::pow(-x, 0.25) : -5 * std::pow(C / 4, 0.8); };
    BoundPair b;
    b.kind = kind;
    switch (kind) {
        case BoundKind::XminBound:
        case BoundKind::XminusBound: {
            b.lower = xmin_lower(x0);
            b.upper = x0 - C / eta_root(x0);
            break;
        }
        case BoundKind::XBound: {
            const double L = std::isfinite(args.xmin_value) ? args.xmin_value : xmin_lower(x0);
            b.lower = L - C / std::pow(-L, 0.25);
            const double s = std::pow(2.0, 0.8);
            b.upper = x0 - s * C / eta_root(x0 / s);
            break;
        }
        case BoundKind::XminXYBound: {
            if (!(x0 < 0)) throw Error(ErrorKind::DomainError, "X_min(x0, y0) bounds need x0 < 0");
            if (!std::isfinite(args.y0)) throw Error(ErrorKind::DomainError, "y0 required");
            const double a = -x0;
            const double eta = eta_root(x0, args.y0);
            b.upper = -(eta * eta * eta * eta);
            b.lower = -(a + C_of(args.y0 / std::sqrt(a)) / std::pow(a, 0.25));
            break;
        }
        case BoundKind::ZBound: {
            if (!std::isfinite(args.y0) || !std::isfinite(args.y_up) || !std::isfinite(args.xmin_value))
                throw Error(ErrorKind::DomainError, "Z bounds need y0, y_up and X_min(x0, y0)");
            const double m = -args.xmin_value;
            if (!(m > 0)) throw Error(ErrorKind::DomainError, "X_min(x0, y0) must be negative");
            b.lower = -(m + C_of(args.y_up / std::sqrt(m)) / std::pow(m, 0.25));
            const double eta = eta_root(x0, std::min(args.y0, args.y_up), 2.0);
            b.upper = -(eta * eta * eta * eta);
            break;
        }
    }
    if (!(b.lower < b.upper)) throw Error(ErrorKind::DomainError, "bound hypotheses fail at this point");
    return b;
}

}  // namespace p1
