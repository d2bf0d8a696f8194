#pragma once

#include <limits>
#include <vector>

#include "funceq/errors.hpp"
#include "funceq/real_fn.hpp"

namespace funceq {

/// Why iteration stopped.
enum class BeckStop {
    ReachedCount, // produced the requested index
    ExceededCap,  // a term passed t_cap
};

/// The recursively generated sequence t_0 = 0, t_{m+1} = t_m + u * phi(t_m).
/// For a multiplicative-solution phi this walks the orbit on which
/// phi(t_m) = phi(u)^m, so the increments grow geometrically.
struct BeckSequence {
    double u = 0.0;
    double phi_u = 0.0; // phi evaluated at u
    std::vector<double> terms;
    BeckStop stop = BeckStop::ReachedCount;
};

/// Iterate up to index n (inclusive; terms.size() == n+1 when the cap never
/// triggers) or until a term exceeds t_cap. phi must stay strictly positive
/// along the orbit (PositivityError names the first offending t); a
/// non-finite term raises RangeError.
BeckSequence beck_iterate(const RealFn& phi, double u, int n,
                          double t_cap = std::numeric_limits<double>::infinity());

/// Closed form t_m = u (phi_u^m - 1) / (phi_u - 1), evaluated via
/// expm1(m log1p(phi_u - 1)) so no precision is lost when phi_u is near one;
/// at phi_u == 1 it degenerates to m u. Overflow of phi_u^m raises RangeError.
double beck_closed_form(double phi_u, double u, long long m);

/// The bracketing index m with t_m <= t < t_{m+1}.
struct JumpIndex {
    long long m = 0;
    double t_m = 0.0;
    double t_next = 0.0;
};

/// Walk the sequence until it passes t. Requires u > 0, t > 0; gives up with
/// DivergenceError after max_steps.
JumpIndex jump_index(const RealFn& phi, double u, double t, long long max_steps = 1'000'000);

/// Gap of the sequence step straddling T, against the uniform bound
/// T (lambda(u) - 1) + u.
struct GapBound {
    long long m = 0;
    double delta = 0.0; // t_{m+1} - t_m at the straddling step
    double bound = 0.0; // T (lambda(u) - 1) + u
    bool ok = false;    // delta <= bound + 1e-12 (1 + bound)
};

GapBound delta_gap_bound(const RealFn& lambda, double u, double T);

} // namespace funceq
