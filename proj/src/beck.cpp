#include "funceq/beck.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

namespace funceq {

namespace {

std::string fmt(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

double positive_phi(const RealFn& phi, double t) {
    const double p = phi(t);
    if (!(p > 0.0))
        throw PositivityError("beck iteration: phi(t)=" + fmt(p) + " <= 0 at t=" + fmt(t));
    if (!std::isfinite(p))
        throw RangeError("beck iteration: phi(t) non-finite at t=" + fmt(t));
    return p;
}

} // namespace

BeckSequence beck_iterate(const RealFn& phi, double u, int n, double t_cap) {
    if (!phi)
        throw UsageError("beck_iterate: phi not set");
    if (!(u > 0.0) || !std::isfinite(u))
        throw UsageError("beck_iterate: u must be positive and finite");
    if (n < 1)
        throw UsageError("beck_iterate: n must be >= 1");

    BeckSequence seq;
    seq.u = u;
    seq.phi_u = phi(u);
    seq.terms.reserve(static_cast<std::size_t>(n) + 1);
    seq.terms.push_back(0.0);
    double t = 0.0;
    for (int m = 0; m < n; ++m) {
        const double p = positive_phi(phi, t);
        const double next = t + u * p;
        if (!std::isfinite(next))
            throw RangeError("beck_iterate: term overflow after index " + std::to_string(m));
        seq.terms.push_back(next);
        t = next;
        if (next > t_cap) {
            seq.stop = BeckStop::ExceededCap;
            return seq;
        }
    }
    seq.stop = BeckStop::ReachedCount;
    return seq;
}

double beck_closed_form(double phi_u, double u, long long m) {
    if (!(u > 0.0) || !std::isfinite(u))
        throw UsageError("beck_closed_form: u must be positive and finite");
    if (!std::isfinite(phi_u))
        throw UsageError("beck_closed_form: phi_u must be finite");
    if (m < 0)
        throw UsageError("beck_closed_form: m must be >= 0");
    if (m == 0)
        return 0.0;

    const double md = static_cast<double>(m);
    const double delta = phi_u - 1.0;
    if (delta == 0.0)
        return md * u;
    double t;
    if (std::fabs(delta) < 0.5) {
        // phi_u^m - 1 = expm1(m log1p(delta)): accurate to a few ulp even when
        // phi_u is within rounding distance of one, where the naive pow-then-
        // subtract form cancels catastrophically.
        t = u * std::expm1(md * std::log1p(delta)) / delta;
    } else {
        // Away from one the subtraction cannot cancel, and pow keeps exact
        // cases (integer phi_u, small m) bit-exact.
        t = u * (std::pow(phi_u, md) - 1.0) / delta;
    }
    if (!std::isfinite(t))
        throw RangeError("beck_closed_form: phi_u^m overflows for phi_u=" + fmt(phi_u) +
                         ", m=" + std::to_string(m));
    return t;
}

JumpIndex jump_index(const RealFn& phi, double u, double t, long long max_steps) {
    if (!phi)
        throw UsageError("jump_index: phi not set");
    if (!(u > 0.0) || !std::isfinite(u))
        throw UsageError("jump_index: u must be positive and finite");
    if (!(t > 0.0) || !std::isfinite(t))
        throw UsageError("jump_index: t must be positive and finite");
    if (max_steps < 1)
        throw UsageError("jump_index: max_steps must be >= 1");

    double tm = 0.0;
    for (long long m = 0; m <= max_steps; ++m) {
        const double p = positive_phi(phi, tm);
        const double next = tm + u * p;
        if (!std::isfinite(next))
            throw RangeError("jump_index: term overflow at index " + std::to_string(m));
        if (next > t)
            return {m, tm, next};
        tm = next;
    }
    throw DivergenceError("jump_index: no crossing of t=" + fmt(t) + " within " +
                          std::to_string(max_steps) + " steps");
}

GapBound delta_gap_bound(const RealFn& lambda, double u, double T) {
    if (!lambda)
        throw UsageError("delta_gap_bound: lambda not set");
    if (!(T > 0.0) || !std::isfinite(T))
        throw UsageError("delta_gap_bound: T must be positive and finite");

    const JumpIndex j = jump_index(lambda, u, T);
    GapBound g;
    g.m = j.m;
    g.delta = j.t_next - j.t_m;
    g.bound = T * (lambda(u) - 1.0) + u;
    g.ok = g.delta <= g.bound + 1e-12 * (1.0 + std::fabs(g.bound));
    return g;
}

} // namespace funceq
