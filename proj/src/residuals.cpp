#include "funceq/residuals.hpp"

#include <cmath>
#include <limits>

namespace funceq {

std::string equation_name(EquationKind kind) {
    switch (kind) {
    case EquationKind::CfeAdditive: return "cfe";
    case EquationKind::CeeMultiplicative: return "cee";
    case EquationKind::Gfe: return "gfe";
    case EquationKind::Bfe: return "bfe";
    case EquationKind::Gbe: return "gbe";
    case EquationKind::Gbep: return "gbep";
    case EquationKind::Mik: return "mik";
    }
    return "unknown";
}

FunctionSet FunctionSet::for_cfe(RealFn K) {
    FunctionSet s;
    s.K = std::move(K);
    return s;
}
FunctionSet FunctionSet::for_cee(RealFn g) {
    FunctionSet s;
    s.g = std::move(g);
    return s;
}
FunctionSet FunctionSet::for_mik(RealFn f) {
    FunctionSet s;
    s.f = std::move(f);
    return s;
}
FunctionSet FunctionSet::for_bfe(RealFn phi) {
    FunctionSet s;
    s.f = std::move(phi);
    return s;
}
FunctionSet FunctionSet::for_gfe(RealFn K, RealFn g) {
    FunctionSet s;
    s.K = std::move(K);
    s.g = std::move(g);
    return s;
}
FunctionSet FunctionSet::for_gbe(RealFn K, RealFn k, RealFn g) {
    FunctionSet s;
    s.K = std::move(K);
    s.k = std::move(k);
    s.g = std::move(g);
    return s;
}
FunctionSet FunctionSet::for_gbep(RealFn K, RealFn k, RealFn g, RealFn h) {
    FunctionSet s;
    s.K = std::move(K);
    s.k = std::move(k);
    s.g = std::move(g);
    s.h = std::move(h);
    return s;
}

double relative_residual(double abs_resid, double lhs, double rhs) {
    return abs_resid / (1.0 + std::fabs(lhs) + std::fabs(rhs));
}

namespace {

// Required roles per equation, in the fixed order (K, g, k, h, f).
struct Arity {
    bool K = false, g = false, k = false, h = false, f = false;
};

Arity required_roles(EquationKind kind) {
    switch (kind) {
    case EquationKind::CfeAdditive: return {.K = true};
    case EquationKind::CeeMultiplicative: return {.g = true};
    case EquationKind::Gfe: return {.K = true, .g = true};
    case EquationKind::Bfe: return {.f = true};
    case EquationKind::Gbe: return {.K = true, .g = true, .k = true};
    case EquationKind::Gbep: return {.K = true, .g = true, .k = true, .h = true};
    case EquationKind::Mik: return {.f = true};
    }
    return {};
}

void check_arity(EquationKind kind, const FunctionSet& funcs) {
    const Arity need = required_roles(kind);
    auto mismatch = [&](bool required, const std::optional<RealFn>& fn, const char* role) {
        if (required && !fn)
            throw UsageError("equation " + equation_name(kind) + ": missing role '" + role + "'");
        if (!required && fn)
            throw UsageError("equation " + equation_name(kind) + ": unexpected role '" + role +
                             "' (exact arity required)");
    };
    mismatch(need.K, funcs.K, "K");
    mismatch(need.g, funcs.g, "g");
    mismatch(need.k, funcs.k, "k");
    mismatch(need.h, funcs.h, "h");
    mismatch(need.f, funcs.f, "f");
}

struct PairResidual {
    double lhs = 0.0;
    double rhs = 0.0;
    bool skipped = false; // Mik condition suppressed the pair
};

// Each equation's sides, computed with a fixed evaluation order so repeated
// runs (and structurally matching reductions) agree bit-for-bit.
PairResidual sides_at(EquationKind kind, const FunctionSet& funcs, double u, double v,
                      double mik_band) {
    PairResidual r;
    switch (kind) {
    case EquationKind::CfeAdditive: {
        const RealFn& K = *funcs.K;
        r.lhs = K(u + v);
        r.rhs = K(u) + K(v);
        break;
    }
    case EquationKind::CeeMultiplicative: {
        const RealFn& g = *funcs.g;
        r.lhs = g(u + v);
        r.rhs = g(u) * g(v);
        break;
    }
    case EquationKind::Gfe: {
        const RealFn& K = *funcs.K;
        const RealFn& g = *funcs.g;
        r.lhs = K(u + v);
        r.rhs = K(u) * g(v) + K(v);
        break;
    }
    case EquationKind::Bfe: {
        const RealFn& f = *funcs.f;
        const double fv = f(v);
        r.lhs = f(v + u * fv);
        r.rhs = f(u) * fv;
        break;
    }
    case EquationKind::Gbe: {
        const RealFn& K = *funcs.K;
        const RealFn& k = *funcs.k;
        const RealFn& g = *funcs.g;
        const double kv = k(v);
        r.lhs = K(v + u * kv);
        r.rhs = g(u) * kv + K(v);
        break;
    }
    case EquationKind::Gbep: {
        const RealFn& K = *funcs.K;
        const RealFn& k = *funcs.k;
        const RealFn& g = *funcs.g;
        const RealFn& h = *funcs.h;
        const double kv = k(v);
        r.lhs = K(v + u * kv);
        r.rhs = g(u) * h(v) + K(v);
        break;
    }
    case EquationKind::Mik: {
        const RealFn& f = *funcs.f;
        r.lhs = f(u + v);
        if (std::fabs(r.lhs) <= mik_band) {
            r.skipped = true;
            break;
        }
        r.rhs = f(u) + f(v);
        break;
    }
    }
    return r;
}

} // namespace

double equation_residual_at(EquationKind kind, const FunctionSet& funcs, double u, double v) {
    check_arity(kind, funcs);
    const PairResidual r = sides_at(kind, funcs, u, v, 0.0);
    if (r.skipped)
        return 0.0;
    return std::fabs(r.lhs - r.rhs);
}

ResidualReport equation_residual(EquationKind kind, const FunctionSet& funcs,
                                 const DomainSpec& domain, double tol) {
    check_arity(kind, funcs);
    if (!(tol > 0.0))
        throw UsageError("equation_residual: tolerance must be positive");

    const DomainPoints pts = domain_pairs(domain);
    ResidualReport report;
    report.kind = kind;
    report.domain = domain_summary(domain);
    report.tol = tol;

    double sum_sq = 0.0;
    bool have_max = false;
    for (double u : pts.u) {
        for (double v : pts.v) {
            const PairResidual r = sides_at(kind, funcs, u, v, tol);
            if (r.skipped) {
                ++report.n_skipped;
                continue;
            }
            const double abs_resid = std::fabs(r.lhs - r.rhs);
            const double rel = relative_residual(abs_resid, r.lhs, r.rhs);
            ++report.n_pairs;
            sum_sq += abs_resid * abs_resid;
            if (!have_max || abs_resid > report.max_abs) {
                have_max = true;
                report.max_abs = abs_resid;
                report.argmax_u = u;
                report.argmax_v = v;
            }
            if (rel > report.max_rel)
                report.max_rel = rel;
        }
    }
    report.rms = report.n_pairs > 0 ? std::sqrt(sum_sq / static_cast<double>(report.n_pairs)) : 0.0;
    report.pass = report.max_rel <= tol;
    return report;
}

ResidualReport equation_residual_exact(EquationKind kind, const ExactAdditiveOnZSqrt2& K,
                                       const ZSqrt2Spec& domain, double tol, long long max_pairs) {
    if (kind != EquationKind::CfeAdditive && kind != EquationKind::Mik)
        throw UsageError("equation_residual_exact: only cfe and mik run in exact mode");
    if (!(tol > 0.0))
        throw UsageError("equation_residual_exact: tolerance must be positive");
    if (max_pairs < 1)
        throw UsageError("equation_residual_exact: max_pairs must be >= 1");

    std::vector<SubgroupPoint> pts = subgroup_points(DenseSubgroupSpec{domain});
    // Thin deterministically (fixed stride) if the all-pairs count is too big.
    std::size_t stride = 1;
    while (static_cast<long long>(pts.size() / stride) * static_cast<long long>(pts.size() / stride) >
           max_pairs)
        ++stride;
    std::vector<ZSqrt2> sel;
    for (std::size_t i = 0; i < pts.size(); i += stride)
        sel.push_back(*pts[i].exact);

    ResidualReport report;
    report.kind = kind;
    report.domain = domain_summary(DomainSpec{SubgroupDomain{DenseSubgroupSpec{domain}}});
    report.tol = tol;

    Rational max_abs = 0;
    ZSqrt2 arg_u{0, 0}, arg_v{0, 0};
    bool have_max = false;
    Rational sum_sq = 0;
    for (const ZSqrt2& x : sel) {
        for (const ZSqrt2& y : sel) {
            const Rational lhs = K(x + y);
            if (kind == EquationKind::Mik && lhs == 0) {
                ++report.n_skipped;
                continue;
            }
            Rational resid = lhs - (K(x) + K(y));
            if (resid < 0)
                resid = -resid;
            ++report.n_pairs;
            sum_sq += resid * resid;
            if (!have_max || resid > max_abs) {
                have_max = true;
                max_abs = resid;
                arg_u = x;
                arg_v = y;
            }
        }
    }
    report.max_abs = static_cast<double>(max_abs);
    report.max_rel = report.max_abs; // relative metric only shrinks it; keep the exact bound
    report.argmax_u = arg_u.real();
    report.argmax_v = arg_v.real();
    report.rms = report.n_pairs > 0
                     ? std::sqrt(static_cast<double>(sum_sq) / static_cast<double>(report.n_pairs))
                     : 0.0;
    report.pass = report.max_rel <= tol;
    return report;
}

InequalityReport gfi_check(const RealFn& F, double rho, const DomainSpec& domain, double tol) {
    if (!F)
        throw UsageError("gfi_check: F not set");
    const DomainPoints pts = domain_pairs(domain);
    InequalityReport report;
    report.domain = domain_summary(domain);
    report.tol = tol;
    for (double u : pts.u) {
        for (double v : pts.v) {
            ++report.n_pairs;
            const double t1 = F(u + v);
            const double t2 = std::exp(rho * v) * F(u);
            const double t3 = F(v);
            const double amount = t1 - t2 - t3;
            const double slack = tol * (1.0 + std::fabs(t1) + std::fabs(t2) + std::fabs(t3));
            if (amount > slack) {
                ++report.n_violations;
                if (amount > report.worst_violation) {
                    report.worst_violation = amount;
                    report.worst_u = u;
                    report.worst_v = v;
                }
            }
        }
    }
    return report;
}

InequalityReport subadditivity_check(const RealFn& F, const DomainSpec& domain, Direction dir,
                                     double tol) {
    if (!F)
        throw UsageError("subadditivity_check: F not set");
    const DomainPoints pts = domain_pairs(domain);
    InequalityReport report;
    report.domain = domain_summary(domain);
    report.tol = tol;
    for (double u : pts.u) {
        for (double v : pts.v) {
            ++report.n_pairs;
            const double whole = F(u + v);
            const double split = F(u) + F(v);
            const double amount = dir == Direction::Sub ? whole - split : split - whole;
            if (amount > tol) {
                ++report.n_violations;
                if (amount > report.worst_violation) {
                    report.worst_violation = amount;
                    report.worst_u = u;
                    report.worst_v = v;
                }
            }
        }
    }
    return report;
}

HsReport hs_check(const RealFn& F, const std::vector<double>& windows, double tol,
                  int samples_per_window) {
    if (!F)
        throw UsageError("hs_check: F not set");
    if (windows.size() < 3)
        throw UsageError("hs_check: need at least 3 windows");
    if (samples_per_window < 2)
        throw UsageError("hs_check: need at least 2 samples per window");
    for (std::size_t i = 0; i < windows.size(); ++i) {
        if (!(windows[i] > 0.0) || !std::isfinite(windows[i]))
            throw UsageError("hs_check: windows must be positive and finite");
        if (i > 0 && !(windows[i] < windows[i - 1]))
            throw UsageError("hs_check: windows must be strictly decreasing");
    }

    HsReport report;
    report.windows = windows;
    report.tol = tol;
    for (double w : windows) {
        double sup = -std::numeric_limits<double>::infinity();
        for (int j = 1; j <= samples_per_window; ++j) {
            const double x = w * static_cast<double>(j) / static_cast<double>(samples_per_window);
            sup = std::fmax(sup, F(x));
        }
        report.window_sups.push_back(sup);
    }
    report.estimate = report.window_sups.back();
    report.pass = report.estimate <= tol;
    return report;
}

} // namespace funceq
