#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <limits>

#include "funceq/domain.hpp"
#include "funceq/errors.hpp"
#include "funceq/zsqrt2.hpp"

using namespace funceq;

TEST_CASE("ZSqrt2: arithmetic and exact sign") {
    const ZSqrt2 a{1, 1}, b{2, -1};
    const ZSqrt2 s = a + b;
    CHECK(s.a == 3);
    CHECK(s.b == 0);
    CHECK(sign(ZSqrt2{0, 0}) == 0);
    CHECK(sign(ZSqrt2{1, -1}) == -1); // 1 - sqrt2 < 0
    CHECK(sign(ZSqrt2{3, -2}) == 1);  // 3 - 2 sqrt2 > 0
    CHECK(sign(ZSqrt2{-3, 2}) == -1);
    CHECK(sign(ZSqrt2{99, -70}) == 1); // Pell pair: 99 - 70 sqrt2 = 0.00505...
    CHECK(ZSqrt2{99, -70}.real() == doctest::Approx(0.005050633883342925).epsilon(1e-9));
}

TEST_CASE("ZSqrt2: exact comparison beats floating rounding") {
    // 99 - 70 sqrt2 is tiny but positive; its negation is tiny but negative.
    CHECK(less_exact(ZSqrt2{-99, 70}, ZSqrt2{0, 0}));
    CHECK(less_exact(ZSqrt2{0, 0}, ZSqrt2{99, -70}));
    CHECK(!less_exact(ZSqrt2{99, -70}, ZSqrt2{99, -70}));
    // Consecutive Pell approximants straddle: 99-70r < 239-169r+... compare
    // two near-equal combinations: 3-2r (0.1716) vs 99-70r (0.00505).
    CHECK(less_exact(ZSqrt2{99, -70}, ZSqrt2{3, -2}));
}

TEST_CASE("ZSqrt2: addition overflow is detected") {
    const std::int64_t big = std::numeric_limits<std::int64_t>::max();
    CHECK_THROWS_AS((ZSqrt2{big, 0} + ZSqrt2{1, 0}), RangeError);
}

TEST_CASE("ExactAdditiveOnZSqrt2: coefficientwise action and exact additivity") {
    const ExactAdditiveOnZSqrt2 K(1, 0); // picks out the rational coefficient
    CHECK(K(ZSqrt2{1, 0}) == Rational(1));
    CHECK(K(ZSqrt2{0, 1}) == Rational(0));
    CHECK(K(ZSqrt2{99, -70}) == Rational(99));
    CHECK(K.value(ZSqrt2{99, -70}) == 99.0);
    // additivity is exact by construction
    const ZSqrt2 x{5, -3}, y{-2, 7};
    CHECK(K(x + y) == K(x) + K(y));

    const ExactAdditiveOnZSqrt2 K2(Rational(3, 2), Rational(-1, 4));
    CHECK(K2(ZSqrt2{2, 4}) == Rational(3) - Rational(1)); // 3/2*2 - 1/4*4 = 2
    CHECK_THROWS_AS(ExactAdditiveOnZSqrt2(0, 0), DegenerateError);
}

TEST_CASE("make_pathological_additive forwards coefficients") {
    const auto K = make_pathological_additive(1, 0);
    CHECK(K(ZSqrt2{7, 3}) == Rational(7));
}

TEST_CASE("dyadic subgroup: exact binary grid") {
    const DyadicSpec spec{3, 1.0}; // step 1/8 on (0, 1]
    const auto pts = subgroup_points(spec);
    REQUIRE(pts.size() == 8);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        CHECK(pts[i].x == std::ldexp(static_cast<double>(i + 1), -3)); // exactly (i+1)/8
        CHECK(!pts[i].exact.has_value());
    }
    CHECK_THROWS_AS(subgroup_points(DyadicSpec{0, 1.0}), UsageError);
    CHECK_THROWS_AS(subgroup_points(DyadicSpec{53, 1.0}), UsageError);
    CHECK_THROWS_AS(subgroup_points(DyadicSpec{3, 0.05}), DomainError); // no point fits
}

TEST_CASE("zsqrt2 subgroup: full enumeration for a small bound") {
    const ZSqrt2Spec spec{2, 1.0};
    const auto pts = subgroup_points(spec);
    // Every a + b sqrt2 in (0, 1] with |a|,|b| <= 2:
    //   sqrt2-1 (~0.4142), 2-sqrt2 (~0.5858), 2 sqrt2-2 (~0.8284), 1
    REQUIRE(pts.size() == 4);
    CHECK(pts[0].exact->a == -1);
    CHECK(pts[0].exact->b == 1);
    CHECK(pts[1].exact->a == 2);
    CHECK(pts[1].exact->b == -1);
    CHECK(pts[2].exact->a == -2);
    CHECK(pts[2].exact->b == 2);
    CHECK(pts[3].exact->a == 1);
    CHECK(pts[3].exact->b == 0);
    for (std::size_t i = 1; i < pts.size(); ++i) CHECK(pts[i - 1].x < pts[i].x);
    for (const auto& p : pts) {
        CHECK(p.x > 0.0);
        CHECK(p.x <= 1.0);
    }
}

TEST_CASE("zsqrt2 subgroup: the Pell point survives enumeration at N=100") {
    const ZSqrt2Spec spec{100, 1.0};
    const auto pts = subgroup_points(spec);
    bool found = false;
    for (const auto& p : pts) {
        if (p.exact->a == 99 && p.exact->b == -70) found = true;
    }
    CHECK(found);
    // smallest point of the truncation is far below the bound (density)
    CHECK(pts.front().x < 0.01);
}

TEST_CASE("domain_points and pairs: grid, subgroup, mixed") {
    RealGridDomain grid{uniform_grid(1.0, 2.0, 3)};
    CHECK(grid.points.front() == 1.0);
    CHECK(grid.points.back() == 2.0);
    CHECK(domain_points(grid).size() == 3);

    SubgroupDomain sg{DyadicSpec{2, 1.0}};
    CHECK(domain_points(sg).size() == 4);

    MixedDomain mixed{DyadicSpec{2, 1.0}, uniform_grid(1.0, 2.0, 3)};
    const DomainPoints dp = domain_pairs(mixed);
    CHECK(dp.u.size() == 4);
    CHECK(dp.v.size() == 3);

    const DomainPoints dg = domain_pairs(DomainSpec{grid});
    CHECK(dg.u.size() == 3);
    CHECK(dg.v.size() == 3);
}

TEST_CASE("domain summaries name their shape") {
    CHECK(domain_summary(RealGridDomain{uniform_grid(0.05, 5.0, 100)}) ==
          "grid[n=100, 0.05..5] x same");
    const std::string s = domain_summary(SubgroupDomain{DyadicSpec{10, 5.0}});
    CHECK(s.find("dyadic") != std::string::npos);
    const std::string z = domain_summary(SubgroupDomain{ZSqrt2Spec{50, 5.0}});
    CHECK(z.find("zsqrt2") != std::string::npos);
}

TEST_CASE("grid validation rejects malformed inputs") {
    CHECK_THROWS_AS(domain_points(RealGridDomain{{}}), DomainError);
    CHECK_THROWS_AS(domain_points(RealGridDomain{{1.0, 1.0}}), UsageError);   // not increasing
    CHECK_THROWS_AS(domain_points(RealGridDomain{{-1.0, 1.0}}), UsageError);  // not positive
    CHECK_THROWS_AS(uniform_grid(2.0, 1.0, 5), UsageError);
    CHECK_THROWS_AS(uniform_grid(1.0, 2.0, 1), UsageError);
}

TEST_CASE("uniform_grid hits both endpoints exactly") {
    const auto g = uniform_grid(0.05, 5.0, 100);
    CHECK(g.size() == 100);
    CHECK(g.front() == 0.05);
    CHECK(g.back() == 5.0);
    for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);
}

TEST_CASE("zsqrt2 coefficient bound limits") {
    CHECK_THROWS_AS(subgroup_points(ZSqrt2Spec{0, 1.0}), UsageError);
    CHECK_THROWS_AS(subgroup_points(ZSqrt2Spec{std::int64_t{1} << 41, 1.0}), UsageError);
}
