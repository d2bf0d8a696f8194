#pragma once

#include <optional>
#include <string>
#include <vector>

#include "funceq/domain.hpp"
#include "funceq/family.hpp"
#include "funceq/quadrature.hpp"
#include "funceq/residuals.hpp"
#include "funceq/sampled.hpp"

namespace funceq {

/// Robust estimate of the proportionality constant kappa in K = kappa (g - 1).
struct KappaEstimate {
    double kappa = 0.0;  // median of K(u) / (g(u) - 1) over retained points
    double spread = 0.0; // max - min of the ratios
    int points_used = 0;
};

/// Ratios are formed at the u-range points of the domain; points with
/// |g(u) - 1| <= one_tol are excluded. Fewer than 2 surviving points is a
/// DegenerateError.
KappaEstimate extract_kappa(const RealFn& K, const RealFn& g, const DomainSpec& domain,
                            double one_tol);

/// Zero-intercept least squares of -log g(x) against x.
struct ExpFit {
    double rho = 0.0;
    double rms = 0.0; // in log space
};

/// Requires >= 3 points; g(x) <= 0 at any point is a DomainError.
ExpFit fit_exponential_rho(const RealFn& g, const std::vector<double>& points);

/// Limit of (lambda(u) - 1) / u as u decreases to 0, by extrapolating the
/// difference quotients at the tail of u_sequence.
struct SlopeAtZero {
    double rho = 0.0;
    std::vector<double> quotients; // diagnostic: one per input u
};

/// u_sequence must be strictly decreasing, positive, with >= 5 terms.
/// Quotients that spread apart instead of settling raise NonConvergenceError.
SlopeAtZero slope_at_zero(const RealFn& lambda, const std::vector<double>& u_sequence);

/// One examined candidate during classification.
struct TraceEntry {
    std::string family;
    double fit_rms = 0.0;           // +inf when the candidate is inapplicable
    double equation_residual = 0.0; // max relative residual after substitution; +inf if unchecked
    bool accepted = false;
};

struct ClassificationResult {
    std::optional<SolutionFamily> family; // empty: no candidate survived
    double fit_rms = 0.0;
    double equation_residual_after_fit = 0.0;
    std::vector<TraceEntry> trace;
};

/// Try closed-form candidates simplest-first (constant one, linear, affine,
/// exponential, scaled rho-kernel): least-squares fit the parameters, then
/// re-check the *original* equation with the fitted closed form substituted.
/// The first candidate with fit_rms <= tol and equation residual <= tol wins.
/// Requires >= 10 samples spanning a positive interval. Supported equations:
/// cfe, cee, gfe, bfe, mik (the others are underdetermined for one table).
ClassificationResult classify(const SampledFunction& data, EquationKind equation, double tol);

} // namespace funceq
