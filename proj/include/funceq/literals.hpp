#pragma once

#include <memory>
#include <optional>
#include <string>

#include "funceq/family.hpp"
#include "funceq/real_fn.hpp"
#include "funceq/sampled.hpp"
#include "funceq/zsqrt2.hpp"

namespace funceq {

/// A function given on the command line. Forms:
///   const:V            constant V
///   linear:c=C         t -> C*t
///   affine:c=C         t -> 1 + C*t
///   exp:rho=R          t -> exp(-R*t)
///   hrho:c=C,rho=R     t -> C * H_rho(t)
///   table:PATH         tabulated samples from a CSV file (monotone cubic)
///   additive:alpha=A,beta=B   exact coefficientwise map on Z[sqrt2]
///                             (A, B are rationals like 3/2 or 1)
/// `fn` is unset for additive literals (they act on exact points only).
struct ParsedFunction {
    std::string text;
    RealFn fn;
    std::optional<SolutionFamily> family;
    std::shared_ptr<SampledFunction> table;
    std::shared_ptr<ExactAdditiveOnZSqrt2> additive;
};

ParsedFunction parse_function_literal(const std::string& text);

} // namespace funceq
