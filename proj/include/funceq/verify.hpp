#pragma once

#include <optional>
#include <string>
#include <vector>

#include "funceq/domain.hpp"
#include "funceq/real_fn.hpp"
#include "funceq/zsqrt2.hpp"

namespace funceq {

/// Outcome of a theorem-style suite.
///
///   Pass          every sub-check held
///   Fail          at least one sub-check failed (witness present)
///   VacuousPass   the statement's hypotheses select nothing to check
///   NotApplicable the input does not satisfy the statement's hypotheses
enum class CheckStatus { Pass, Fail, VacuousPass, NotApplicable };

std::string status_name(CheckStatus s);

struct SubCheck {
    std::string name;
    bool ok = true;
    double value = 0.0; // the measured quantity the check judged
};

/// A concrete point (pair) exhibiting a failure.
struct Witness {
    double x = 0.0;
    double y = 0.0;
    std::string what;
};

struct TheoremReport {
    std::string suite;
    CheckStatus status = CheckStatus::Pass;
    bool pass = true; // conjunction of sub-checks
    std::vector<SubCheck> checks;
    std::optional<Witness> witness; // present iff some sub-check failed
    std::string note;
};

/// Contradiction witness for dips below one: when phi(u) < 1 - tol the point
/// v = u / (1 - phi(u)) satisfies v = u + v phi(u), so the equation residual
/// at that pair is |phi(v)| |1 - phi(u)| > 0 — no genuine positive solution
/// can dip. Returns nothing when phi(u) >= 1 - tol. phi(u) <= 0 raises
/// PositivityError.
struct DipWitness {
    double v = 0.0;
    double residual_abs = 0.0;
    double residual_rel = 0.0;
};

std::optional<DipWitness> theorem5_witness(const RealFn& phi, double u, double tol);

enum class LevelPredicate { AboveOne, EqualOne };

struct LevelSet {
    std::vector<double> points;
    long long grid_size = 0;
};

/// Grid points where f > 1 (AboveOne) or |f - 1| <= tol (EqualOne).
LevelSet level_set(const RealFn& f, const std::vector<double>& grid, LevelPredicate pred,
                   double tol = 1e-9);

/// Does x sit in the additivity nucleus of K relative to the domain's points:
/// max_a |K(x + a) - K(x) - K(a)| <= tol?
bool nucleus_check(const RealFn& K, double x, const DomainSpec& domain, double tol);

/// Exact variant on Z[sqrt2]; additive maps put every x in the nucleus.
bool nucleus_check_exact(const ExactAdditiveOnZSqrt2& K, const ZSqrt2& x, const ZSqrt2Spec& domain);

/// Structure of the set where f attains 1: given one point a with f(a) = 1
/// (searched on the probe grid when not supplied), f must be a-periodic,
/// equal 1 at integer multiples of a, and equal 1 at w*a for sampled range
/// values w = f(x). No such a at all is a vacuous pass.
TheoremReport range_group_check(const RealFn& f, std::optional<double> a,
                                const std::vector<double>& probe_grid, double tol,
                                int multiple_budget = 16);

/// Dichotomy for positive multiplicative-composition solutions: either f
/// never attains 1 on the grid (beyond tol) or f is identically 1. Inputs
/// that fail a relative-residual pre-check of the equation itself are
/// NotApplicable.
TheoremReport one_implies_constant(const RealFn& f, const std::vector<double>& grid, double tol);

/// Constancy of (f(x) - 1) / x for f satisfying the exchange symmetry
/// x + y f(x) = y + x f(y). Hypothesis: f > 0 and f != 1 on the grid (else
/// NotApplicable). On pass, the sub-check named "c" carries the median slope.
TheoremReport bm_constancy_check(const RealFn& f, const std::vector<double>& grid, double tol);

/// Strict increase along the grid; a rise below 1e-14 counts as a tie and
/// fails. The witness names the first inversion.
TheoremReport monotonicity_check(const RealFn& F, const std::vector<double>& grid);

/// Demonstration that a coefficient-wise additive map on Z[sqrt2] is exactly
/// additive yet wildly non-linear: additivity residual is exactly zero,
/// the ratios K(x)/x spread widely on (0, interval_bound], and
/// max |K| over the truncated subgroup grows without bound as the coefficient
/// bound doubles (2, 4, 8, ... up to coeff_bound).
TheoremReport dichotomy_demo(const ExactAdditiveOnZSqrt2& K, std::int64_t coeff_bound,
                             double interval_bound, double growth_threshold = 1e3);

} // namespace funceq
