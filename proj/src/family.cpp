#include "funceq/family.hpp"

#include <cmath>

#include "funceq/errors.hpp"
#include "funceq/kernels.hpp"
#include "funceq/quadrature.hpp"

namespace funceq {

double eval_family(const SolutionFamily& family, double t) {
    return std::visit(
        [t](const auto& f) -> double {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, ConstantOne>) {
                return 1.0;
            } else if constexpr (std::is_same_v<T, Affine>) {
                return 1.0 + f.c * t;
            } else if constexpr (std::is_same_v<T, Linear>) {
                return f.c * t;
            } else if constexpr (std::is_same_v<T, RhoKernelScaled>) {
                return f.c * eval_hrho(f.rho, t);
            } else if constexpr (std::is_same_v<T, Exponential>) {
                return std::exp(-f.rho * t);
            } else {
                static_assert(std::is_same_v<T, IntegralSolution>);
                if (!f.h || !f.k)
                    throw UsageError("eval_family: integral member needs both h and k");
                return f.c * quadrature_H(f.h, f.k, t, f.abs_tol);
            }
        },
        family);
}

RealFn to_function(const SolutionFamily& family) {
    return [family](double t) { return eval_family(family, t); };
}

std::string family_name(const SolutionFamily& family) {
    return std::visit(
        [](const auto& f) -> std::string {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, ConstantOne>)
                return "constant_one";
            else if constexpr (std::is_same_v<T, Affine>)
                return "affine";
            else if constexpr (std::is_same_v<T, Linear>)
                return "linear";
            else if constexpr (std::is_same_v<T, RhoKernelScaled>)
                return "rho_kernel_scaled";
            else if constexpr (std::is_same_v<T, Exponential>)
                return "exponential";
            else
                return "integral";
        },
        family);
}

std::vector<std::pair<std::string, double>> family_parameters(const SolutionFamily& family) {
    using Params = std::vector<std::pair<std::string, double>>;
    return std::visit(
        [](const auto& f) -> Params {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, ConstantOne>)
                return {};
            else if constexpr (std::is_same_v<T, Affine>)
                return {{"c", f.c}};
            else if constexpr (std::is_same_v<T, Linear>)
                return {{"c", f.c}};
            else if constexpr (std::is_same_v<T, RhoKernelScaled>)
                return {{"c", f.c}, {"rho", f.rho}};
            else if constexpr (std::is_same_v<T, Exponential>)
                return {{"rho", f.rho}};
            else
                return {{"c", f.c}};
        },
        family);
}

} // namespace funceq
