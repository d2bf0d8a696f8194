#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "funceq/zsqrt2.hpp"

namespace funceq {

/// Dyadic rationals m / 2^level truncated to (0, bound].
struct DyadicSpec {
    int level = 1;     // 1..52 so every point is an exact double
    double bound = 1.0; // truncation bound, > 0
};

/// Elements a + b*sqrt2 with |a|,|b| <= coeff_bound truncated to (0, bound].
struct ZSqrt2Spec {
    std::int64_t coeff_bound = 1;
    double bound = 1.0;
};

using DenseSubgroupSpec = std::variant<DyadicSpec, ZSqrt2Spec>;

/// A materialized subgroup point: real embedding plus, for Z[sqrt2] specs,
/// the exact coordinates.
struct SubgroupPoint {
    double x = 0.0;
    std::optional<ZSqrt2> exact;
};

/// Enumerate the truncated subgroup in increasing order (exact order for
/// Z[sqrt2]). Throws DomainError when the truncation is empty.
std::vector<SubgroupPoint> subgroup_points(const DenseSubgroupSpec& spec);

/// Real embeddings only.
std::vector<double> subgroup_reals(const DenseSubgroupSpec& spec);

/// Quantifier domains for pairwise equation checks.
struct RealGridDomain {
    std::vector<double> points; // strictly increasing, all > 0, finite
};

struct SubgroupDomain {
    DenseSubgroupSpec spec;
};

/// u ranges over a dense subgroup, v over a real grid.
struct MixedDomain {
    DenseSubgroupSpec u_domain;
    std::vector<double> v_grid;
};

using DomainSpec = std::variant<RealGridDomain, SubgroupDomain, MixedDomain>;

/// The u-range of the domain, sorted increasing. Validates grids (sorted,
/// strictly positive, finite) and non-emptiness.
std::vector<double> domain_points(const DomainSpec& spec);

/// Both quantifier ranges. u_exact is nonempty (parallel to u) exactly when
/// the u-range is a Z[sqrt2] subgroup.
struct DomainPoints {
    std::vector<double> u;
    std::vector<double> v;
    std::vector<ZSqrt2> u_exact;
};

DomainPoints domain_pairs(const DomainSpec& spec);

/// One-line description for reports.
std::string domain_summary(const DomainSpec& spec);

/// Inclusive uniform grid with `count >= 2` points from lo to hi.
std::vector<double> uniform_grid(double lo, double hi, int count);

} // namespace funceq
