#include "funceq/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "funceq/errors.hpp"
#include "funceq/residuals.hpp"

namespace funceq {

namespace {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void finish(TheoremReport& r) {
    r.pass = true;
    for (const auto& c : r.checks) r.pass = r.pass && c.ok;
    if (r.status == CheckStatus::Pass && !r.pass) r.status = CheckStatus::Fail;
    if (r.status == CheckStatus::Fail) r.pass = false;
}

} // namespace

std::string status_name(CheckStatus s) {
    switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::VacuousPass: return "vacuous_pass";
    case CheckStatus::NotApplicable: return "not_applicable";
    }
    return "unknown";
}

std::optional<DipWitness> theorem5_witness(const RealFn& phi, double u, double tol) {
    if (!(u > 0.0)) throw UsageError("theorem5_witness: u must be positive");
    if (!(tol > 0.0)) throw UsageError("theorem5_witness: tol must be positive");
    const double pu = phi(u);
    if (!std::isfinite(pu)) throw InputError("theorem5_witness: phi(u) is not finite at u=" + fmt17(u));
    if (!(pu > 0.0)) throw PositivityError("theorem5_witness: phi(u) <= 0 at u=" + fmt17(u));
    if (pu >= 1.0 - tol) return std::nullopt;

    DipWitness w;
    w.v = u / (1.0 - pu);
    const double pv = phi(w.v);
    if (!std::isfinite(pv)) throw InputError("theorem5_witness: phi(v) is not finite at v=" + fmt17(w.v));
    // At this v, v = u + v*phi(u), so the equation would demand
    // phi(v) = phi(u)*phi(v); the gap is |phi(v)| * |1 - phi(u)|.
    const double lhs = phi(u + w.v * pu);
    const double rhs = pu * pv;
    w.residual_abs = std::fabs(lhs - rhs);
    w.residual_rel = relative_residual(w.residual_abs, lhs, rhs);
    return w;
}

LevelSet level_set(const RealFn& f, const std::vector<double>& grid, LevelPredicate pred,
                   double tol) {
    if (grid.empty()) throw UsageError("level_set: empty grid");
    if (!(tol > 0.0)) throw UsageError("level_set: tol must be positive");
    LevelSet out;
    out.grid_size = static_cast<long long>(grid.size());
    for (double x : grid) {
        const double v = f(x);
        if (!std::isfinite(v)) throw InputError("level_set: f not finite at x=" + fmt17(x));
        const bool keep = (pred == LevelPredicate::AboveOne) ? (v > 1.0 + tol)
                                                             : (std::fabs(v - 1.0) <= tol);
        if (keep) out.points.push_back(x);
    }
    return out;
}

bool nucleus_check(const RealFn& K, double x, const DomainSpec& domain, double tol) {
    if (!(tol > 0.0)) throw UsageError("nucleus_check: tol must be positive");
    const std::vector<double> pts = domain_points(domain);
    const double Kx = K(x);
    if (!std::isfinite(Kx)) throw InputError("nucleus_check: K not finite at x=" + fmt17(x));
    for (double a : pts) {
        const double lhs = K(x + a);
        const double rhs = Kx + K(a);
        if (!std::isfinite(lhs) || !std::isfinite(rhs))
            throw InputError("nucleus_check: K not finite near a=" + fmt17(a));
        if (std::fabs(lhs - rhs) > tol) return false;
    }
    return true;
}

bool nucleus_check_exact(const ExactAdditiveOnZSqrt2& K, const ZSqrt2& x, const ZSqrt2Spec& domain) {
    const std::vector<SubgroupPoint> pts = subgroup_points(domain);
    const Rational Kx = K(x);
    for (const auto& p : pts) {
        const ZSqrt2 a = *p.exact;
        const Rational lhs = K(x + a);
        const Rational rhs = Kx + K(a);
        if (lhs != rhs) return false;
    }
    return true;
}

TheoremReport range_group_check(const RealFn& f, std::optional<double> a,
                                const std::vector<double>& probe_grid, double tol,
                                int multiple_budget) {
    if (probe_grid.empty()) throw UsageError("range_group_check: empty probe grid");
    if (!(tol > 0.0)) throw UsageError("range_group_check: tol must be positive");
    if (multiple_budget < 1) throw UsageError("range_group_check: multiple_budget must be >= 1");

    TheoremReport r;
    r.suite = "range_group";

    double anchor = 0.0;
    bool have_anchor = false;
    if (a.has_value()) {
        anchor = *a;
        const double fa = f(anchor);
        if (!std::isfinite(fa)) throw InputError("range_group_check: f not finite at a=" + fmt17(anchor));
        if (std::fabs(fa - 1.0) > tol) {
            r.status = CheckStatus::NotApplicable;
            r.note = "supplied anchor does not attain one: |f(a)-1|=" + fmt17(std::fabs(fa - 1.0));
            finish(r);
            return r;
        }
        have_anchor = true;
    } else {
        for (double x : probe_grid) {
            const double v = f(x);
            if (!std::isfinite(v)) throw InputError("range_group_check: f not finite at x=" + fmt17(x));
            if (x > 0.0 && std::fabs(v - 1.0) <= tol) {
                anchor = x;
                have_anchor = true;
                break;
            }
        }
        if (!have_anchor) {
            r.status = CheckStatus::VacuousPass;
            r.note = "f never attains one on the probe grid";
            finish(r);
            return r;
        }
    }

    const double hi = probe_grid.back();

    // Sub-check 1: 1 at integer multiples of the anchor.
    {
        SubCheck c{"one_at_multiples", true, 0.0};
        for (int m = 1; m <= multiple_budget; ++m) {
            const double x = m * anchor;
            if (x > hi) break;
            const double dev = std::fabs(f(x) - 1.0);
            c.value = std::max(c.value, dev);
            if (dev > tol) {
                c.ok = false;
                if (!r.witness) r.witness = Witness{x, 0.0, "f(m*a) != 1 at m=" + std::to_string(m)};
                break;
            }
        }
        r.checks.push_back(c);
    }

    // Sub-check 2: periodicity f(x + a) = f(x) on probe points that stay in range.
    {
        SubCheck c{"periodicity", true, 0.0};
        for (double x : probe_grid) {
            if (x + anchor > hi) break;
            const double dev = std::fabs(f(x + anchor) - f(x));
            c.value = std::max(c.value, dev);
            if (dev > tol * (1.0 + std::fabs(f(x)))) {
                c.ok = false;
                if (!r.witness) r.witness = Witness{x, x + anchor, "f(x+a) != f(x)"};
                break;
            }
        }
        r.checks.push_back(c);
    }

    // Sub-check 3: scaled copies — for sampled range values w = f(x), f(w*a) = 1.
    {
        SubCheck c{"one_at_range_scaled", true, 0.0};
        const std::size_t stride = std::max<std::size_t>(1, probe_grid.size() / 16);
        for (std::size_t i = 0; i < probe_grid.size(); i += stride) {
            const double w = f(probe_grid[i]);
            if (!(w > 0.0)) continue;
            const double x = w * anchor;
            if (x <= 0.0 || x > hi) continue;
            const double dev = std::fabs(f(x) - 1.0);
            c.value = std::max(c.value, dev);
            if (dev > tol) {
                c.ok = false;
                if (!r.witness)
                    r.witness = Witness{probe_grid[i], x, "f(f(x)*a) != 1"};
                break;
            }
        }
        r.checks.push_back(c);
    }

    finish(r);
    return r;
}

TheoremReport one_implies_constant(const RealFn& f, const std::vector<double>& grid, double tol) {
    if (grid.size() < 2) throw UsageError("one_implies_constant: need at least 2 grid points");
    if (!(tol > 0.0)) throw UsageError("one_implies_constant: tol must be positive");

    TheoremReport r;
    r.suite = "one_implies_constant";

    // Hypothesis pre-check: f must be positive and satisfy the composition
    // equation f(v + u f(v)) = f(u) f(v) on in-range pairs, else the
    // dichotomy says nothing about it.
    {
        const double hi = grid.back();
        double worst = 0.0;
        long long used = 0;
        for (double u : grid) {
            const double fu = f(u);
            if (!std::isfinite(fu)) throw InputError("one_implies_constant: f not finite at x=" + fmt17(u));
            if (!(fu > 0.0)) {
                r.status = CheckStatus::NotApplicable;
                r.note = "f is not positive at x=" + fmt17(u);
                finish(r);
                return r;
            }
        }
        const std::size_t stride = std::max<std::size_t>(1, grid.size() / 24);
        for (std::size_t i = 0; i < grid.size(); i += stride) {
            for (std::size_t j = 0; j < grid.size(); j += stride) {
                const double u = grid[i], v = grid[j];
                const double arg = v + u * f(v);
                if (arg > hi || arg < grid.front()) continue;
                const double lhs = f(arg), rhs = f(u) * f(v);
                worst = std::max(worst, relative_residual(std::fabs(lhs - rhs), lhs, rhs));
                ++used;
            }
        }
        if (used == 0) {
            r.status = CheckStatus::NotApplicable;
            r.note = "no test pair lands inside the grid range";
            finish(r);
            return r;
        }
        if (worst > std::max(tol, 1e-6)) {
            r.status = CheckStatus::NotApplicable;
            r.note = "f does not satisfy the composition equation (worst rel residual " + fmt17(worst) + ")";
            finish(r);
            return r;
        }
    }

    // Pass iff f never attains one on the grid, or is identically one there.
    double min_dev = std::numeric_limits<double>::infinity();
    double max_dev = 0.0;
    double x_one = 0.0, x_far = 0.0;
    for (double x : grid) {
        const double dev = std::fabs(f(x) - 1.0);
        if (dev < min_dev) {
            min_dev = dev;
            x_one = x;
        }
        if (dev > max_dev) {
            max_dev = dev;
            x_far = x;
        }
    }
    if (min_dev > tol) {
        r.checks.push_back(SubCheck{"never_attains_one", true, min_dev});
    } else if (max_dev <= tol) {
        r.checks.push_back(SubCheck{"identically_one", true, max_dev});
    } else {
        r.checks.push_back(SubCheck{"one_in_range_forces_constant", false, max_dev});
        r.witness = Witness{x_one, x_far, "f attains one yet is not identically one"};
    }
    finish(r);
    return r;
}

TheoremReport bm_constancy_check(const RealFn& f, const std::vector<double>& grid, double tol) {
    if (grid.size() < 2) throw UsageError("bm_constancy_check: need at least 2 grid points");
    if (!(tol > 0.0)) throw UsageError("bm_constancy_check: tol must be positive");

    TheoremReport r;
    r.suite = "bm_constancy";

    std::vector<double> xs, slopes;
    for (double x : grid) {
        if (!(x > 0.0)) throw UsageError("bm_constancy_check: grid must be positive");
        const double v = f(x);
        if (!std::isfinite(v)) throw InputError("bm_constancy_check: f not finite at x=" + fmt17(x));
        if (!(v > 0.0)) {
            r.status = CheckStatus::NotApplicable;
            r.note = "f is not positive at x=" + fmt17(x);
            finish(r);
            return r;
        }
        if (std::fabs(v - 1.0) <= tol) {
            r.status = CheckStatus::NotApplicable;
            r.note = "f attains one at x=" + fmt17(x) + "; slope quotient is undefined there";
            finish(r);
            return r;
        }
        xs.push_back(x);
        slopes.push_back((v - 1.0) / x);
    }

    // Sub-check 1: the exchange symmetry x + y f(x) = y + x f(y).
    {
        SubCheck c{"exchange_symmetry", true, 0.0};
        const std::size_t stride = std::max<std::size_t>(1, xs.size() / 24);
        for (std::size_t i = 0; i < xs.size() && c.ok; i += stride) {
            for (std::size_t j = i + stride; j < xs.size(); j += stride) {
                const double x = xs[i], y = xs[j];
                const double dev = std::fabs(x + y * f(x) - (y + x * f(y)));
                c.value = std::max(c.value, dev);
                if (dev > tol * (1.0 + x + y)) {
                    c.ok = false;
                    r.witness = Witness{x, y, "x + y f(x) != y + x f(y)"};
                    break;
                }
            }
        }
        r.checks.push_back(c);
    }

    // Sub-check 2: the quotients (f(x)-1)/x agree across the grid.
    {
        SubCheck c{"slope_constancy", true, 0.0};
        std::vector<double> sorted = slopes;
        std::sort(sorted.begin(), sorted.end());
        const double median = sorted[sorted.size() / 2];
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double dev = std::fabs(slopes[i] - median);
            c.value = std::max(c.value, dev);
            if (dev > tol * (1.0 + std::fabs(median))) {
                c.ok = false;
                if (!r.witness)
                    r.witness = Witness{xs[i], 0.0, "(f(x)-1)/x deviates from the common slope"};
                break;
            }
        }
        r.checks.push_back(c);

        SubCheck cc{"c", true, median};
        r.checks.push_back(cc);
    }

    finish(r);
    return r;
}

TheoremReport monotonicity_check(const RealFn& F, const std::vector<double>& grid) {
    if (grid.size() < 3) throw UsageError("monotonicity_check: need at least 3 grid points");

    TheoremReport r;
    r.suite = "monotonicity";
    SubCheck c{"strictly_increasing", true, std::numeric_limits<double>::infinity()};

    double prev = F(grid.front());
    if (!std::isfinite(prev)) throw InputError("monotonicity_check: F not finite at x=" + fmt17(grid.front()));
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double cur = F(grid[i]);
        if (!std::isfinite(cur)) throw InputError("monotonicity_check: F not finite at x=" + fmt17(grid[i]));
        const double rise = cur - prev;
        c.value = std::min(c.value, rise);
        if (!(rise > 1e-14)) {
            c.ok = false;
            r.witness = Witness{grid[i - 1], grid[i],
                                rise < 0 ? "F decreases between consecutive grid points"
                                         : "F is flat (tie) between consecutive grid points"};
            break;
        }
        prev = cur;
    }
    r.checks.push_back(c);
    finish(r);
    return r;
}

TheoremReport dichotomy_demo(const ExactAdditiveOnZSqrt2& K, std::int64_t coeff_bound,
                             double interval_bound, double growth_threshold) {
    if (coeff_bound < 2) throw UsageError("dichotomy_demo: coeff_bound must be >= 2");
    if (!(interval_bound > 0.0)) throw UsageError("dichotomy_demo: interval_bound must be positive");
    if (!(growth_threshold > 0.0)) throw UsageError("dichotomy_demo: growth_threshold must be positive");

    TheoremReport r;
    r.suite = "dichotomy";

    const ZSqrt2Spec spec{coeff_bound, interval_bound};
    const std::vector<SubgroupPoint> pts = subgroup_points(spec);
    if (pts.size() < 2) throw DomainError("dichotomy_demo: domain holds fewer than 2 points");

    // Sub-check 1: additivity is EXACT (rational arithmetic, zero residual)
    // on a thinned set of pairs.
    {
        SubCheck c{"additivity_exact", true, 0.0};
        const std::size_t stride = std::max<std::size_t>(1, pts.size() / 64);
        for (std::size_t i = 0; i < pts.size() && c.ok; i += stride) {
            for (std::size_t j = i; j < pts.size(); j += stride) {
                const ZSqrt2 x = *pts[i].exact;
                const ZSqrt2 y = *pts[j].exact;
                const Rational lhs = K(x + y);
                const Rational rhs = K(x) + K(y);
                if (lhs != rhs) {
                    c.ok = false;
                    c.value = 1.0;
                    r.witness = Witness{pts[i].x, pts[j].x, "K(x+y) != K(x)+K(y) exactly"};
                    break;
                }
            }
        }
        r.checks.push_back(c);
    }

    // Sub-check 2: the ratios K(x)/x are NOT close to one constant —
    // report (max - min) / (1 + |max| + |min|) over the positive points.
    {
        SubCheck c{"linearity_spread", true, 0.0};
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        for (const auto& p : pts) {
            if (!(p.x > 0.0)) continue;
            const double ratio = K.value(*p.exact) / p.x;
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
        c.value = (hi - lo) / (1.0 + std::fabs(hi) + std::fabs(lo));
        c.ok = c.value > 0.1; // a genuinely non-linear map spreads widely
        if (!c.ok) r.witness = Witness{lo, hi, "K(x)/x ratios nearly constant"};
        r.checks.push_back(c);
    }

    // Sub-check 3: growth schedule — M(N) = max |K| over coefficient bound N
    // must exceed growth_threshold by N = coeff_bound, and at least double
    // from N to 4N along the way (|K| is unbounded on any interval).
    {
        SubCheck c{"unbounded_growth", true, 0.0};
        std::vector<std::pair<std::int64_t, Rational>> schedule;
        Rational prev_m = 0;
        for (std::int64_t n = 2; n <= coeff_bound; n *= 2) {
            Rational m = 0;
            // The dominating |K| values sit at extreme coefficients; scan
            // interval endpoints in a: for each b, |K(a + b sqrt2)| is
            // monotone in a on each side, so endpoints suffice.
            for (std::int64_t b = -n; b <= n; ++b) {
                // positivity window: a in (-b sqrt2, bound - b sqrt2]
                const double lo_f = -static_cast<double>(b) * std::sqrt(2.0);
                std::int64_t a_lo = static_cast<std::int64_t>(std::floor(lo_f)) - 2;
                while (sign(ZSqrt2{a_lo, b}) <= 0) ++a_lo;
                std::int64_t a_hi = static_cast<std::int64_t>(std::floor(interval_bound - lo_f)) + 2;
                while (a_hi >= a_lo && ZSqrt2{a_hi, b}.real() > interval_bound) --a_hi;
                if (a_hi < a_lo) continue;
                a_lo = std::max<std::int64_t>(a_lo, -n);
                a_hi = std::min<std::int64_t>(a_hi, n);
                if (a_hi < a_lo) continue;
                for (std::int64_t a : {a_lo, a_hi}) {
                    Rational v = K(ZSqrt2{a, b});
                    if (v < 0) v = -v;
                    if (v > m) m = v;
                }
            }
            schedule.emplace_back(n, m);
            if (schedule.size() >= 3) {
                const auto& [pn, pm] = schedule[schedule.size() - 3]; // N = n/4
                if (pm > 0 && m < 2 * pm) {
                    c.ok = false;
                    r.witness = Witness{static_cast<double>(pn), static_cast<double>(n),
                                        "max|K| failed to double from N to 4N"};
                }
            }
            prev_m = m;
        }
        c.value = static_cast<double>(prev_m);
        if (coeff_bound >= 1024 && !(c.value > growth_threshold)) {
            c.ok = false;
            if (!r.witness)
                r.witness = Witness{static_cast<double>(coeff_bound), c.value,
                                    "max|K| stayed below the growth threshold"};
        }
        r.checks.push_back(c);
    }

    finish(r);
    return r;
}

} // namespace funceq
