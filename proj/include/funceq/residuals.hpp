#pragma once

#include <optional>
#include <string>

#include "funceq/domain.hpp"
#include "funceq/real_fn.hpp"
#include "funceq/zsqrt2.hpp"

namespace funceq {

/// The functional equations the residual engine understands.
///
///   CfeAdditive        K(u+v) = K(u) + K(v)
///   CeeMultiplicative  g(u+v) = g(u) g(v)
///   Gfe                K(u+v) = g(v) K(u) + K(v)
///   Bfe                f(v + u f(v)) = f(u) f(v)
///   Gbe                K(v + u k(v)) = K(v) + g(u) k(v)
///   Gbep               K(v + u k(v)) = K(v) + g(u) h(v)
///   Mik                f(u+v) = f(u) + f(v)  whenever |f(u+v)| > tol
enum class EquationKind { CfeAdditive, CeeMultiplicative, Gfe, Bfe, Gbe, Gbep, Mik };

std::string equation_name(EquationKind kind);

/// Role-indexed function bundle. Each equation consumes an exact set of
/// roles; supplying more or fewer is a UsageError.
///
///   CfeAdditive: K     CeeMultiplicative: g     Mik: f     Bfe: f
///   Gfe: K, g          Gbe: K, k, g             Gbep: K, k, g, h
struct FunctionSet {
    std::optional<RealFn> K;
    std::optional<RealFn> g;
    std::optional<RealFn> k;
    std::optional<RealFn> h;
    std::optional<RealFn> f;

    static FunctionSet for_cfe(RealFn K);
    static FunctionSet for_cee(RealFn g);
    static FunctionSet for_mik(RealFn f);
    static FunctionSet for_bfe(RealFn phi);
    static FunctionSet for_gfe(RealFn K, RealFn g);
    static FunctionSet for_gbe(RealFn K, RealFn k, RealFn g);
    static FunctionSet for_gbep(RealFn K, RealFn k, RealFn g, RealFn h);
};

/// Scale-aware relative residual |lhs - rhs| / (1 + |lhs| + |rhs|).
double relative_residual(double abs_resid, double lhs, double rhs);

/// Aggregate residual report over all (u, v) pairs of a domain.
struct ResidualReport {
    EquationKind kind = EquationKind::CfeAdditive;
    std::string domain;
    long long n_pairs = 0;   // pairs aggregated (excludes conditional skips)
    long long n_skipped = 0; // Mik pairs whose condition suppressed the check
    double max_abs = 0.0;
    double max_rel = 0.0;
    double rms = 0.0;
    double argmax_u = 0.0; // lexicographically smallest maximizer of |residual|
    double argmax_v = 0.0;
    double tol = 0.0;
    bool pass = false; // max_rel <= tol
};

/// Check `kind` over every pair (u, v) of the domain. Reports are
/// deterministic: same inputs, bit-identical result. Passing judgment uses
/// the relative metric; max_abs is reported alongside.
ResidualReport equation_residual(EquationKind kind, const FunctionSet& funcs,
                                 const DomainSpec& domain, double tol);

/// Absolute residual of `kind` at a single pair.
double equation_residual_at(EquationKind kind, const FunctionSet& funcs, double u, double v);

/// Exact-arithmetic residual check for the additive equations (CfeAdditive,
/// Mik) with a coefficient-wise additive map on the Z[sqrt2] subgroup. All
/// arithmetic is rational; a genuine additive map reports max_abs == 0
/// exactly. When the all-pairs count exceeds max_pairs the point list is
/// thinned deterministically (fixed stride).
ResidualReport equation_residual_exact(EquationKind kind, const ExactAdditiveOnZSqrt2& K,
                                       const ZSqrt2Spec& domain, double tol,
                                       long long max_pairs = 2'000'000);

/// One-sided inequality report.
struct InequalityReport {
    std::string domain;
    long long n_pairs = 0;
    long long n_violations = 0;
    double worst_violation = 0.0; // largest raw positive excess among violations
    double worst_u = 0.0;
    double worst_v = 0.0;
    double tol = 0.0;
};

/// Check F(u+v) <= e^{rho v} F(u) + F(v) over all pairs. The violation amount
/// at (u, v) is max(0, F(u+v) - e^{rho v} F(u) - F(v)); amounts within
/// tol * (1 + scale of the three terms) count as rounding, not violations.
InequalityReport gfi_check(const RealFn& F, double rho, const DomainSpec& domain,
                           double tol = 1e-12);

enum class Direction { Sub, Super };

/// Sub: flags F(u+v) > F(u) + F(v) + tol. Super: flags F(u+v) < F(u) + F(v) - tol.
InequalityReport subadditivity_check(const RealFn& F, const DomainSpec& domain, Direction dir,
                                     double tol = 1e-12);

/// Shrinking-window estimate of limsup_{u -> 0+} F(u).
struct HsReport {
    std::vector<double> windows;
    std::vector<double> window_sups; // supremum of F over (0, w] per window
    double estimate = 0.0;           // last window's supremum
    double tol = 0.0;
    bool pass = false; // estimate <= tol
};

/// Requires >= 3 strictly decreasing positive windows.
HsReport hs_check(const RealFn& F, const std::vector<double>& windows, double tol = 1e-6,
                  int samples_per_window = 128);

} // namespace funceq
