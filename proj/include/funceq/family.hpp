#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "funceq/real_fn.hpp"

namespace funceq {

/// Closed-form solution families the library recognizes. Each variant is
/// evaluable at any t >= 0 and yields a finite real.
struct ConstantOne {};

/// t -> 1 + c t (slope c >= 0 for genuine solutions).
struct Affine {
    double c = 0.0;
};

/// t -> c t.
struct Linear {
    double c = 0.0;
};

/// t -> c * H_rho(t), the scaled rho-kernel.
struct RhoKernelScaled {
    double c = 0.0;
    double rho = 0.0;
};

/// t -> exp(-rho t).
struct Exponential {
    double rho = 0.0;
};

/// t -> c * Int_0^t h(s)/k(s) ds, evaluated by adaptive quadrature.
struct IntegralSolution {
    double c = 1.0;
    RealFn h;
    RealFn k;
    double abs_tol = 1e-10;
};

using SolutionFamily =
    std::variant<ConstantOne, Affine, Linear, RhoKernelScaled, Exponential, IntegralSolution>;

/// Evaluate a family member at t.
double eval_family(const SolutionFamily& family, double t);

/// Wrap a family member as a RealFn (copies the member into the closure).
RealFn to_function(const SolutionFamily& family);

/// Stable lower-case identifier: "constant_one", "affine", "linear",
/// "rho_kernel_scaled", "exponential", "integral".
std::string family_name(const SolutionFamily& family);

/// Named numeric parameters of the member, in a fixed order.
std::vector<std::pair<std::string, double>> family_parameters(const SolutionFamily& family);

} // namespace funceq
