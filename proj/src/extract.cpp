#include "funceq/extract.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "funceq/kernels.hpp"

namespace funceq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    if (n % 2 == 1)
        return v[n / 2];
    return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

} // namespace

KappaEstimate extract_kappa(const RealFn& K, const RealFn& g, const DomainSpec& domain,
                            double one_tol) {
    if (!K || !g)
        throw UsageError("extract_kappa: both K and g must be set");
    if (!(one_tol >= 0.0))
        throw UsageError("extract_kappa: one_tol must be >= 0");

    const std::vector<double> points = domain_points(domain);
    std::vector<double> ratios;
    ratios.reserve(points.size());
    for (double u : points) {
        const double denom = g(u) - 1.0;
        if (std::fabs(denom) <= one_tol)
            continue;
        ratios.push_back(K(u) / denom);
    }
    if (ratios.size() < 2)
        throw DegenerateError("extract_kappa: g is 1 (within one_tol) on nearly all of the domain; "
                              "no ratio to estimate");

    KappaEstimate est;
    est.points_used = static_cast<int>(ratios.size());
    est.kappa = median_of(ratios);
    const auto [mn, mx] = std::minmax_element(ratios.begin(), ratios.end());
    est.spread = *mx - *mn;
    return est;
}

ExpFit fit_exponential_rho(const RealFn& g, const std::vector<double>& points) {
    if (!g)
        throw UsageError("fit_exponential_rho: g not set");
    if (points.size() < 3)
        throw UsageError("fit_exponential_rho: need at least 3 points");

    double sxx = 0.0, sxy = 0.0;
    std::vector<double> ys(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double x = points[i];
        if (!(x > 0.0) || !std::isfinite(x))
            throw UsageError("fit_exponential_rho: points must be positive and finite");
        const double gv = g(x);
        if (!(gv > 0.0))
            throw DomainError("fit_exponential_rho: g(x)=" + fmt(gv) + " <= 0 at x=" + fmt(x));
        ys[i] = -std::log(gv);
        sxx += x * x;
        sxy += x * ys[i];
    }
    ExpFit fit;
    fit.rho = sxy / sxx;
    double ss = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double r = ys[i] - fit.rho * points[i];
        ss += r * r;
    }
    fit.rms = std::sqrt(ss / static_cast<double>(points.size()));
    return fit;
}

SlopeAtZero slope_at_zero(const RealFn& lambda, const std::vector<double>& u_sequence) {
    if (!lambda)
        throw UsageError("slope_at_zero: lambda not set");
    if (u_sequence.size() < 5)
        throw UsageError("slope_at_zero: need at least 5 u values");
    for (std::size_t i = 0; i < u_sequence.size(); ++i) {
        if (!(u_sequence[i] > 0.0) || !std::isfinite(u_sequence[i]))
            throw UsageError("slope_at_zero: u values must be positive and finite");
        if (i > 0 && !(u_sequence[i] < u_sequence[i - 1]))
            throw UsageError("slope_at_zero: u values must be strictly decreasing");
    }

    SlopeAtZero out;
    out.quotients.reserve(u_sequence.size());
    for (double u : u_sequence)
        out.quotients.push_back((lambda(u) - 1.0) / u);

    // Divergence guard: the gaps between consecutive quotients should shrink
    // toward the tail; if they keep growing the limit does not exist.
    const std::size_t nq = out.quotients.size();
    std::vector<double> gaps(nq - 1);
    for (std::size_t i = 0; i + 1 < nq; ++i)
        gaps[i] = std::fabs(out.quotients[i + 1] - out.quotients[i]);
    const std::size_t w = std::min<std::size_t>(4, gaps.size());
    bool growing = true;
    for (std::size_t i = gaps.size() - w; i + 1 < gaps.size(); ++i)
        if (gaps[i + 1] < gaps[i] * (1.0 - 1e-12))
            growing = false;
    const double q_scale = 1.0 + std::fabs(out.quotients.back());
    if (w >= 2 && growing && gaps.back() > 2.0 * gaps[gaps.size() - w] &&
        gaps.back() > 1e-9 * q_scale)
        throw NonConvergenceError("slope_at_zero: difference quotients diverge (gap " +
                                  fmt(gaps.back()) + " still growing at the smallest u)");

    // Extrapolate to u = 0 with a least-squares line through the last points:
    // exact for constant quotients, first-order accurate otherwise.
    const std::size_t tail = std::min<std::size_t>(3, nq);
    double su = 0.0, sq = 0.0;
    for (std::size_t i = nq - tail; i < nq; ++i) {
        su += u_sequence[i];
        sq += out.quotients[i];
    }
    const double ubar = su / static_cast<double>(tail);
    const double qbar = sq / static_cast<double>(tail);
    double num = 0.0, den = 0.0;
    for (std::size_t i = nq - tail; i < nq; ++i) {
        num += (u_sequence[i] - ubar) * (out.quotients[i] - qbar);
        den += (u_sequence[i] - ubar) * (u_sequence[i] - ubar);
    }
    const double slope = den > 0.0 ? num / den : 0.0;
    out.rho = qbar - slope * ubar;
    return out;
}

namespace {

struct CandidateFit {
    SolutionFamily family;
    double rms = kInf;
    bool applicable = false;
};

double value_rms(const std::vector<double>& xs, const std::vector<double>& vs,
                 const SolutionFamily& fam) {
    double ss = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = vs[i] - eval_family(fam, xs[i]);
        ss += r * r;
    }
    return std::sqrt(ss / static_cast<double>(xs.size()));
}

CandidateFit fit_constant_one(const std::vector<double>& xs, const std::vector<double>& vs) {
    CandidateFit f;
    f.family = ConstantOne{};
    f.rms = value_rms(xs, vs, f.family);
    f.applicable = true;
    return f;
}

CandidateFit fit_linear(const std::vector<double>& xs, const std::vector<double>& vs) {
    double sxx = 0.0, sxv = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += xs[i] * xs[i];
        sxv += xs[i] * vs[i];
    }
    CandidateFit f;
    f.family = Linear{sxv / sxx};
    f.rms = value_rms(xs, vs, f.family);
    f.applicable = true;
    return f;
}

CandidateFit fit_affine(const std::vector<double>& xs, const std::vector<double>& vs) {
    double sxx = 0.0, sxv = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += xs[i] * xs[i];
        sxv += xs[i] * (vs[i] - 1.0);
    }
    double c = sxv / sxx;
    CandidateFit f;
    // The affine family carries slope >= 0; a clearly negative fit is not a
    // member (a negative-slope line eventually leaves the positive range).
    if (c < -1e-12)
        return f;
    c = std::fmax(c, 0.0);
    f.family = Affine{c};
    f.rms = value_rms(xs, vs, f.family);
    f.applicable = true;
    return f;
}

CandidateFit fit_exponential(const std::vector<double>& xs, const std::vector<double>& vs) {
    CandidateFit f;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!(vs[i] > 0.0))
            return f; // log fit impossible
        sxx += xs[i] * xs[i];
        sxy += xs[i] * -std::log(vs[i]);
    }
    f.family = Exponential{sxy / sxx};
    f.rms = value_rms(xs, vs, f.family);
    f.applicable = true;
    return f;
}

// For fixed rho the best scale is linear least squares; scan rho, then refine
// the best bracket by golden section.
double kernel_rms_at(const std::vector<double>& xs, const std::vector<double>& vs, double rho,
                     double* c_out) {
    double sww = 0.0, swv = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double w = eval_hrho(rho, xs[i]);
        sww += w * w;
        swv += w * vs[i];
    }
    const double c = sww > 0.0 ? swv / sww : 0.0;
    if (c_out)
        *c_out = c;
    double ss = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = vs[i] - c * eval_hrho(rho, xs[i]);
        ss += r * r;
    }
    return std::sqrt(ss / static_cast<double>(xs.size()));
}

CandidateFit fit_rho_kernel(const std::vector<double>& xs, const std::vector<double>& vs) {
    constexpr double kRhoLo = -16.0, kRhoHi = 16.0;
    constexpr int kScan = 801;
    double best_rho = 0.0, best_rms = kInf;
    for (int i = 0; i < kScan; ++i) {
        const double rho = kRhoLo + (kRhoHi - kRhoLo) * static_cast<double>(i) / (kScan - 1);
        const double rms = kernel_rms_at(xs, vs, rho, nullptr);
        if (rms < best_rms) {
            best_rms = rms;
            best_rho = rho;
        }
    }
    const double step = (kRhoHi - kRhoLo) / (kScan - 1);
    double a = best_rho - step, b = best_rho + step;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = kernel_rms_at(xs, vs, x1, nullptr);
    double f2 = kernel_rms_at(xs, vs, x2, nullptr);
    for (int it = 0; it < 120 && (b - a) > 1e-12; ++it) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = kernel_rms_at(xs, vs, x1, nullptr);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = kernel_rms_at(xs, vs, x2, nullptr);
        }
    }
    const double rho = 0.5 * (a + b);
    double c = 0.0;
    const double rms = kernel_rms_at(xs, vs, rho, &c);
    CandidateFit f;
    f.family = RhoKernelScaled{c, rho};
    f.rms = rms;
    f.applicable = true;
    return f;
}

// The auxiliary paired with a candidate when re-checking a two-role equation.
RealFn gfe_auxiliary_for(const SolutionFamily& fam) {
    if (const auto* rk = std::get_if<RhoKernelScaled>(&fam)) {
        const double rho = rk->rho;
        return [rho](double v) { return std::exp(-rho * v); };
    }
    if (const auto* ex = std::get_if<Exponential>(&fam)) {
        const double rho = ex->rho;
        return [rho](double v) { return std::exp(-rho * v); };
    }
    return [](double) { return 1.0; }; // linear / affine / constant pair with the trivial auxiliary
}

double recheck_residual(EquationKind equation, const SolutionFamily& fam,
                        const SampledFunction& data) {
    // Grid drawn from the data's own range; closed forms evaluate anywhere,
    // so transformed arguments are safe.
    const double hi = data.max_x();
    double lo = data.min_x();
    if (!(lo > 0.0))
        lo = hi * 1e-3;
    const std::vector<double> grid = uniform_grid(lo, hi, 16);
    const RealFn fn = to_function(fam);

    FunctionSet funcs;
    switch (equation) {
    case EquationKind::CfeAdditive: funcs = FunctionSet::for_cfe(fn); break;
    case EquationKind::CeeMultiplicative: funcs = FunctionSet::for_cee(fn); break;
    case EquationKind::Bfe: funcs = FunctionSet::for_bfe(fn); break;
    case EquationKind::Mik: funcs = FunctionSet::for_mik(fn); break;
    case EquationKind::Gfe: funcs = FunctionSet::for_gfe(fn, gfe_auxiliary_for(fam)); break;
    default:
        throw UsageError("classify: equation " + equation_name(equation) +
                         " is underdetermined for a single table");
    }
    const ResidualReport rep =
        equation_residual(equation, funcs, DomainSpec{RealGridDomain{grid}}, 1.0);
    return rep.max_rel;
}

} // namespace

ClassificationResult classify(const SampledFunction& data, EquationKind equation, double tol) {
    if (data.size() < 10)
        throw UsageError("classify: need at least 10 samples");
    if (!(tol > 0.0))
        throw UsageError("classify: tolerance must be positive");
    if (!(data.max_x() > data.min_x()) || !(data.max_x() > 0.0))
        throw UsageError("classify: samples must span a positive interval");
    if (equation == EquationKind::Gbe || equation == EquationKind::Gbep)
        throw UsageError("classify: equation " + equation_name(equation) +
                         " is underdetermined for a single table");

    const std::vector<double>& xs = data.xs();
    const std::vector<double>& vs = data.values();

    using Fitter = CandidateFit (*)(const std::vector<double>&, const std::vector<double>&);
    struct Candidate {
        const char* name;
        Fitter fitter;
    };
    const Candidate candidates[] = {{"constant_one", fit_constant_one},
                                    {"linear", fit_linear},
                                    {"affine", fit_affine},
                                    {"exponential", fit_exponential},
                                    {"rho_kernel_scaled", fit_rho_kernel}};

    ClassificationResult result;
    result.fit_rms = kInf;
    result.equation_residual_after_fit = kInf;
    for (const Candidate& candidate : candidates) {
        CandidateFit cand = candidate.fitter(xs, vs);
        TraceEntry entry;
        entry.family = candidate.name;
        entry.fit_rms = cand.rms;
        entry.equation_residual = kInf;
        if (cand.applicable && cand.rms <= tol) {
            entry.equation_residual = recheck_residual(equation, cand.family, data);
            if (entry.equation_residual <= tol) {
                entry.accepted = true;
                result.family = cand.family;
                result.fit_rms = cand.rms;
                result.equation_residual_after_fit = entry.equation_residual;
                result.trace.push_back(entry);
                return result;
            }
        }
        result.trace.push_back(entry);
    }
    return result;
}

} // namespace funceq
