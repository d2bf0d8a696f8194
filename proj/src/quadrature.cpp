#include "funceq/quadrature.hpp"

#include <cmath>
#include <cstdio>
#include <string>

namespace funceq {

namespace {

constexpr int kMaxSimpsonDepth = 48;

std::string format_point(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

double finite_eval(const RealFn& f, double x) {
    const double v = f(x);
    if (!std::isfinite(v))
        throw InputError("integrand is non-finite at t=" + format_point(x));
    return v;
}

// One Simpson panel over [a, b] given endpoint/midpoint values.
double simpson_panel(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double simpson_recurse(const RealFn& f, double a, double b, double fa, double fm, double fb,
                       double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = finite_eval(f, lm);
    const double frm = finite_eval(f, rm);
    const double left = simpson_panel(a, m, fa, flm, fm);
    const double right = simpson_panel(m, b, fm, frm, fb);
    const double err = left + right - whole;
    if (depth >= kMaxSimpsonDepth || std::fabs(err) <= 15.0 * tol)
        return left + right + err / 15.0;
    return simpson_recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           simpson_recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

} // namespace

double adaptive_simpson(const RealFn& f, double a, double b, double abs_tol) {
    if (!f)
        throw UsageError("adaptive_simpson: integrand not set");
    if (!std::isfinite(a) || !std::isfinite(b))
        throw InputError("adaptive_simpson: non-finite interval");
    if (abs_tol <= 0.0)
        throw UsageError("adaptive_simpson: tolerance must be positive");
    if (a == b)
        return 0.0;

    const double fa = finite_eval(f, a);
    const double fb = finite_eval(f, b);
    const double fm = finite_eval(f, 0.5 * (a + b));
    const double whole = simpson_panel(a, b, fa, fm, fb);
    return simpson_recurse(f, a, b, fa, fm, fb, whole, abs_tol, 0);
}

double riemann_gamma(const RealFn& g, double x, double delta) {
    if (!g)
        throw UsageError("riemann_gamma: function not set");
    if (!(x > 0.0) || !std::isfinite(x))
        throw UsageError("riemann_gamma: x must be positive and finite");
    if (!(delta > 0.0) || !(delta < x))
        throw UsageError("riemann_gamma: need 0 < delta < x");

    // i = ceil(x / delta), snapping near-exact multiples so that an x that is
    // mathematically a multiple of delta is treated as one despite rounding.
    const double q = x / delta;
    const double r = std::round(q);
    long long i;
    if (std::fabs(q - r) <= 1e-9 * std::fmax(1.0, q))
        i = static_cast<long long>(r);
    else
        i = static_cast<long long>(std::ceil(q));
    if (i < 1)
        i = 1;

    double sum = 0.0;
    for (long long m = 1; m <= i; ++m) {
        const double v = g(static_cast<double>(m - 1) * delta);
        if (!std::isfinite(v))
            throw InputError("riemann_gamma: non-finite value at t=" +
                             format_point(static_cast<double>(m - 1) * delta));
        sum += v;
    }
    return delta * sum;
}

double quadrature_H(const RealFn& h, const RealFn& k, double x, double abs_tol) {
    if (!h || !k)
        throw UsageError("quadrature_H: both h and k must be set");
    if (!std::isfinite(x) || x < 0.0)
        throw UsageError("quadrature_H: x must be finite and >= 0");
    if (x == 0.0)
        return 0.0;

    const RealFn integrand = [&h, &k](double t) {
        const double kv = k(t);
        if (!(kv > 0.0))
            throw PositivityError("quadrature_H: k(t) <= 0 at t=" + format_point(t));
        return h(t) / kv;
    };
    return adaptive_simpson(integrand, 0.0, x, abs_tol);
}

} // namespace funceq
