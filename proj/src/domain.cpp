#include "funceq/domain.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace funceq {

namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

void validate_grid(const std::vector<double>& points, const char* what) {
    if (points.empty())
        throw DomainError(std::string(what) + ": empty grid");
    double prev = 0.0;
    for (double x : points) {
        if (!std::isfinite(x))
            throw UsageError(std::string(what) + ": non-finite grid point");
        if (!(x > 0.0))
            throw UsageError(std::string(what) + ": grid points must be strictly positive");
        if (!(x > prev) && &x != &points.front())
            throw UsageError(std::string(what) + ": grid points must be strictly increasing");
        prev = x;
    }
}

std::vector<SubgroupPoint> dyadic_points(const DyadicSpec& spec) {
    if (spec.level < 1 || spec.level > 52)
        throw UsageError("dyadic subgroup: level must be in 1..52");
    if (!(spec.bound > 0.0) || !std::isfinite(spec.bound))
        throw UsageError("dyadic subgroup: bound must be positive and finite");

    const double step = std::ldexp(1.0, -spec.level); // exact
    // Largest m with m * step <= bound; m * step is exact for m < 2^53.
    long long m_max = static_cast<long long>(std::floor(spec.bound / step));
    while (static_cast<double>(m_max) * step > spec.bound)
        --m_max;
    while (static_cast<double>(m_max + 1) * step <= spec.bound)
        ++m_max;
    if (m_max < 1)
        throw DomainError("dyadic subgroup: no point in (0, " + fmt(spec.bound) + "] at level " +
                          std::to_string(spec.level));

    std::vector<SubgroupPoint> out;
    out.reserve(static_cast<std::size_t>(m_max));
    for (long long m = 1; m <= m_max; ++m)
        out.push_back({static_cast<double>(m) * step, std::nullopt});
    return out;
}

std::vector<SubgroupPoint> zsqrt2_points(const ZSqrt2Spec& spec) {
    if (spec.coeff_bound < 1)
        throw UsageError("zsqrt2 subgroup: coefficient bound must be >= 1");
    if (spec.coeff_bound > (1LL << 40))
        throw UsageError("zsqrt2 subgroup: coefficient bound too large to enumerate");
    if (!(spec.bound > 0.0) || !std::isfinite(spec.bound))
        throw UsageError("zsqrt2 subgroup: bound must be positive and finite");

    const double sqrt2 = std::sqrt(2.0);
    const std::int64_t n = spec.coeff_bound;
    std::vector<SubgroupPoint> out;
    for (std::int64_t b = -n; b <= n; ++b) {
        // Candidate a-range for 0 < a + b*sqrt2 <= bound, then fix the lower
        // end with exact sign checks (the upper cut at a real bound is
        // inherently floating).
        const double t = -static_cast<double>(b) * sqrt2;
        std::int64_t a_lo = static_cast<std::int64_t>(std::floor(t)) + 1;
        while (sign({a_lo - 1, b}) > 0)
            --a_lo;
        while (sign({a_lo, b}) <= 0)
            ++a_lo;
        std::int64_t a_hi = static_cast<std::int64_t>(std::floor(spec.bound + t));
        while (ZSqrt2{a_hi, b}.real() > spec.bound)
            --a_hi;
        while (ZSqrt2{a_hi + 1, b}.real() <= spec.bound)
            ++a_hi;
        a_lo = std::max(a_lo, -n);
        a_hi = std::min(a_hi, n);
        for (std::int64_t a = a_lo; a <= a_hi; ++a) {
            ZSqrt2 z{a, b};
            out.push_back({z.real(), z});
        }
    }
    if (out.empty())
        throw DomainError("zsqrt2 subgroup: no point in (0, " + fmt(spec.bound) + "] with |a|,|b| <= " +
                          std::to_string(n));
    std::sort(out.begin(), out.end(), [](const SubgroupPoint& x, const SubgroupPoint& y) {
        return less_exact(*x.exact, *y.exact);
    });
    return out;
}

} // namespace

std::vector<SubgroupPoint> subgroup_points(const DenseSubgroupSpec& spec) {
    if (std::holds_alternative<DyadicSpec>(spec))
        return dyadic_points(std::get<DyadicSpec>(spec));
    return zsqrt2_points(std::get<ZSqrt2Spec>(spec));
}

std::vector<double> subgroup_reals(const DenseSubgroupSpec& spec) {
    std::vector<SubgroupPoint> pts = subgroup_points(spec);
    std::vector<double> out;
    out.reserve(pts.size());
    for (const SubgroupPoint& p : pts)
        out.push_back(p.x);
    return out;
}

std::vector<double> domain_points(const DomainSpec& spec) {
    return domain_pairs(spec).u;
}

DomainPoints domain_pairs(const DomainSpec& spec) {
    DomainPoints out;
    if (const auto* grid = std::get_if<RealGridDomain>(&spec)) {
        validate_grid(grid->points, "real grid domain");
        out.u = grid->points;
        out.v = grid->points;
    } else if (const auto* sub = std::get_if<SubgroupDomain>(&spec)) {
        std::vector<SubgroupPoint> pts = subgroup_points(sub->spec);
        out.u.reserve(pts.size());
        for (const SubgroupPoint& p : pts) {
            out.u.push_back(p.x);
            if (p.exact)
                out.u_exact.push_back(*p.exact);
        }
        out.v = out.u;
    } else {
        const auto& mixed = std::get<MixedDomain>(spec);
        std::vector<SubgroupPoint> pts = subgroup_points(mixed.u_domain);
        out.u.reserve(pts.size());
        for (const SubgroupPoint& p : pts) {
            out.u.push_back(p.x);
            if (p.exact)
                out.u_exact.push_back(*p.exact);
        }
        validate_grid(mixed.v_grid, "mixed domain v-grid");
        out.v = mixed.v_grid;
    }
    return out;
}

namespace {

std::string subgroup_summary(const DenseSubgroupSpec& spec) {
    if (const auto* d = std::get_if<DyadicSpec>(&spec))
        return "dyadic(level=" + std::to_string(d->level) + ", bound=" + fmt(d->bound) + ")";
    const auto& z = std::get<ZSqrt2Spec>(spec);
    return "zsqrt2(coeff_bound=" + std::to_string(z.coeff_bound) + ", bound=" + fmt(z.bound) + ")";
}

} // namespace

std::string domain_summary(const DomainSpec& spec) {
    if (const auto* grid = std::get_if<RealGridDomain>(&spec)) {
        const auto& p = grid->points;
        return "grid[n=" + std::to_string(p.size()) + ", " + fmt(p.front()) + ".." + fmt(p.back()) +
               "] x same";
    }
    if (const auto* sub = std::get_if<SubgroupDomain>(&spec))
        return "subgroup " + subgroup_summary(sub->spec) + " x same";
    const auto& mixed = std::get<MixedDomain>(spec);
    return "mixed[u: " + subgroup_summary(mixed.u_domain) + ", v: grid n=" +
           std::to_string(mixed.v_grid.size()) + "]";
}

std::vector<double> uniform_grid(double lo, double hi, int count) {
    if (count < 2)
        throw UsageError("uniform_grid: need at least 2 points");
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
        throw UsageError("uniform_grid: need finite lo < hi");
    std::vector<double> out(static_cast<std::size_t>(count));
    const double step = (hi - lo) / static_cast<double>(count - 1);
    for (int i = 0; i < count; ++i)
        out[static_cast<std::size_t>(i)] = lo + step * static_cast<double>(i);
    out.back() = hi;
    return out;
}

} // namespace funceq
