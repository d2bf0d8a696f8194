#pragma once

#include <cmath>

#include "funceq/errors.hpp"

namespace funceq {

/// Below this |rho * t| the quotient form of the rho-kernel cancels badly and
/// evaluation switches to a truncated power series.
inline constexpr double kHrhoSeriesSwitch = 1e-4;

/// Evaluate the rho-kernel
///
///     H_rho(t) = (1 - exp(-rho * t)) / rho,      H_0(t) = t,
///
/// the one-parameter family interpolating between the identity (rho = 0) and
/// saturating exponentials. For rho = 0 the result is exactly t; for
/// |rho * t| < kHrhoSeriesSwitch a truncated series is used.
double eval_hrho(double rho, double t);

/// H_rho as a function object.
struct RhoKernel {
    double rho = 0.0;

    double operator()(double t) const { return eval_hrho(rho, t); }
};

/// The auxiliary map u -> exp(-rho * u) paired with RhoKernel solutions.
struct ExpAuxiliary {
    double rho = 0.0;

    double operator()(double u) const { return std::exp(-rho * u); }
};

/// The affine map t -> 1 + c * t with slope c >= 0.
struct AffineSolution {
    double c = 0.0;

    double operator()(double t) const { return 1.0 + c * t; }
};

} // namespace funceq
