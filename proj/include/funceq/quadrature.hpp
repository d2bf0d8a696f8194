#pragma once

#include "funceq/errors.hpp"
#include "funceq/real_fn.hpp"

namespace funceq {

/// Adaptive-Simpson integral of f over [a, b] to absolute tolerance abs_tol.
/// Non-finite integrand values raise InputError.
double adaptive_simpson(const RealFn& f, double a, double b, double abs_tol);

/// Left-endpoint Riemann sum
///
///     delta * sum_{m=1..i} g((m-1) * delta),   i = ceil(x / delta),
///
/// the first-order approximation of the integral of g over [0, x]. A
/// near-integer x/delta (within 1e-9 relative) snaps to the exact multiple so
/// that constants integrate exactly when x is a multiple of delta.
/// Requires x > 0 and 0 < delta < x.
double riemann_gamma(const RealFn& g, double x, double delta);

/// Integral of h(t)/k(t) over [0, x] by adaptive Simpson. k must be strictly
/// positive at every evaluated node (PositivityError otherwise). Requires
/// x >= 0; x == 0 yields 0.
double quadrature_H(const RealFn& h, const RealFn& k, double x, double abs_tol = 1e-10);

} // namespace funceq
