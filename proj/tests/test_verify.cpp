#include <doctest.h>

#include <cmath>
#include <limits>

#include "funceq/errors.hpp"
#include "funceq/json_io.hpp"
#include "funceq/kernels.hpp"
#include "funceq/residuals.hpp"
#include "funceq/verify.hpp"

using namespace funceq;

namespace {
const std::vector<double> kProbe = uniform_grid(0.05, 5.0, 200);
const RealFn kStep = [](double t) { return t <= 2.0 ? 1.0 : 1.5; };
} // namespace

TEST_CASE("dip witness: pinned exponential case") {
    const RealFn phi = [](double t) { return std::exp(-t); };
    const auto w = theorem5_witness(phi, 1.0, 1e-6);
    REQUIRE(w.has_value());
    CHECK(w->v == doctest::Approx(1.5819767068693265).epsilon(1e-14));
    CHECK(w->residual_abs == doctest::Approx(0.12994397898917884).epsilon(1e-12));
    CHECK(w->residual_rel > 1e-3);
}

TEST_CASE("dip witness: functions at or above one yield nothing") {
    CHECK(!theorem5_witness([](double t) { return 1.0 + 2.0 * t; }, 1.0, 1e-6).has_value());
    CHECK(!theorem5_witness([](double) { return 1.0; }, 0.3, 1e-6).has_value());
    CHECK(!theorem5_witness([](double) { return 1.0; }, 7.0, 1e-6).has_value());
}

TEST_CASE("dip witness: guards") {
    CHECK_THROWS_AS(theorem5_witness([](double t) { return -t; }, 1.0, 1e-6), PositivityError);
    CHECK_THROWS_AS(theorem5_witness([](double t) { return std::exp(-t); }, -1.0, 1e-6),
                    UsageError);
}

TEST_CASE("level sets on a grid") {
    const auto all = level_set([](double t) { return 1.0 + t; }, kProbe, LevelPredicate::AboveOne);
    CHECK(all.points.size() == kProbe.size());
    CHECK(all.grid_size == static_cast<long long>(kProbe.size()));

    const auto none = level_set([](double) { return 1.0; }, kProbe, LevelPredicate::AboveOne);
    CHECK(none.points.empty());

    const auto ones = level_set([](double x) { return std::exp(-x); }, kProbe,
                                LevelPredicate::EqualOne, 1e-9);
    CHECK(ones.points.empty());

    CHECK_THROWS_AS(level_set([](double) { return 1.0; }, {}, LevelPredicate::AboveOne), UsageError);
}

TEST_CASE("nucleus membership: zero always, interior points only for additive maps") {
    const RealFn H1 = [](double t) { return eval_hrho(1.0, t); };
    const DomainSpec grid{RealGridDomain{uniform_grid(0.1, 5.0, 50)}};
    CHECK(nucleus_check(H1, 0.0, grid, 1e-9));
    CHECK(!nucleus_check(H1, 1.0, grid, 1e-9));
    CHECK(nucleus_check([](double t) { return 3.0 * t; }, 1.7, grid, 1e-9));
}

TEST_CASE("nucleus membership: exact variant is unconditional for additive maps") {
    const ExactAdditiveOnZSqrt2 K(1, 0);
    const ZSqrt2Spec spec{10, 2.0};
    CHECK(nucleus_check_exact(K, ZSqrt2{1, 0}, spec));
    CHECK(nucleus_check_exact(K, ZSqrt2{-3, 2}, spec));
}

TEST_CASE("range structure: constant one passes everything") {
    const auto r = range_group_check([](double) { return 1.0; }, 1.0, kProbe, 1e-9);
    CHECK(r.status == CheckStatus::Pass);
    CHECK(r.pass);
    CHECK(!r.witness.has_value());
}

TEST_CASE("range structure: no anchor exists -> vacuous pass with note") {
    const auto r = range_group_check([](double t) { return 1.0 + 0.5 * t; }, std::nullopt, kProbe,
                                     1e-9);
    CHECK(r.status == CheckStatus::VacuousPass);
    CHECK(!r.note.empty());
}

TEST_CASE("range structure: a step function is caught with a witness") {
    const auto r = range_group_check(kStep, 1.0, kProbe, 1e-9);
    CHECK(r.status == CheckStatus::Fail);
    CHECK(!r.pass);
    REQUIRE(r.witness.has_value());
}

TEST_CASE("one in range forces constancy: both passing branches") {
    const auto never = one_implies_constant([](double t) { return 1.0 + t; }, kProbe, 1e-9);
    CHECK(never.status == CheckStatus::Pass);
    REQUIRE(never.checks.size() == 1);
    CHECK(never.checks[0].name == "never_attains_one");

    const auto always = one_implies_constant([](double) { return 1.0; }, kProbe, 1e-9);
    CHECK(always.status == CheckStatus::Pass);
    REQUIRE(always.checks.size() == 1);
    CHECK(always.checks[0].name == "identically_one");
}

TEST_CASE("one in range forces constancy: non-solutions are not applicable") {
    const auto r = one_implies_constant(kStep, kProbe, 1e-9);
    CHECK(r.status == CheckStatus::NotApplicable);
    CHECK(!r.note.empty());
}

TEST_CASE("slope constancy: affine passes and reports its slope") {
    const auto r = bm_constancy_check([](double t) { return 1.0 + 2.0 * t; }, kProbe, 1e-9);
    CHECK(r.status == CheckStatus::Pass);
    bool saw_c = false;
    for (const auto& c : r.checks) {
        if (c.name == "c") {
            saw_c = true;
            CHECK(c.value == doctest::Approx(2.0).epsilon(1e-12));
        }
    }
    CHECK(saw_c);
}

TEST_CASE("slope constancy: quadratic breaks the exchange symmetry") {
    const auto r = bm_constancy_check([](double t) { return 1.0 + t * t; }, kProbe, 1e-9);
    CHECK(r.status == CheckStatus::Fail);
    REQUIRE(r.witness.has_value());
}

TEST_CASE("slope constancy: attaining one voids the hypothesis") {
    // f(x) = 1 exactly at some grid point -> not applicable
    const auto r = bm_constancy_check([](double) { return 1.0; }, kProbe, 1e-9);
    CHECK(r.status == CheckStatus::NotApplicable);
}

TEST_CASE("monotonicity: kernels rise, sine falls, constants tie") {
    const RealFn H1 = [](double t) { return eval_hrho(1.0, t); };
    CHECK(monotonicity_check(H1, kProbe).status == CheckStatus::Pass);
    const RealFn cH = [](double t) { return 2.0 * eval_hrho(3.0, t); };
    CHECK(monotonicity_check(cH, kProbe).status == CheckStatus::Pass);

    const auto s = monotonicity_check([](double t) { return std::sin(t); }, kProbe);
    CHECK(s.status == CheckStatus::Fail);
    REQUIRE(s.witness.has_value());
    CHECK(s.witness->x > 1.45);
    CHECK(s.witness->x < 1.65);

    const auto flat = monotonicity_check([](double) { return 5.0; }, kProbe);
    CHECK(flat.status == CheckStatus::Fail);

    CHECK_THROWS_AS(monotonicity_check(H1, {1.0, 2.0}), UsageError);
}

TEST_CASE("dichotomy demonstration: small and large coefficient bounds") {
    const ExactAdditiveOnZSqrt2 K(1, 0);

    const auto small = dichotomy_demo(K, 2, 1.0);
    CHECK(small.status == CheckStatus::Pass);
    for (const auto& c : small.checks) {
        if (c.name == "linearity_spread") CHECK(c.value >= 0.5);
        if (c.name == "additivity_exact") CHECK(c.ok);
    }

    const auto big = dichotomy_demo(K, 4096, 1.0);
    CHECK(big.status == CheckStatus::Pass);
    for (const auto& c : big.checks) {
        if (c.name == "unbounded_growth") {
            CHECK(c.ok);
            CHECK(c.value > 1e3);
        }
    }

    CHECK_THROWS_AS(dichotomy_demo(K, 1, 1.0), UsageError);
}

TEST_CASE("status names") {
    CHECK(status_name(CheckStatus::Pass) == "pass");
    CHECK(status_name(CheckStatus::Fail) == "fail");
    CHECK(status_name(CheckStatus::VacuousPass) == "vacuous_pass");
    CHECK(status_name(CheckStatus::NotApplicable) == "not_applicable");
}

TEST_CASE("reports carry a witness exactly when a sub-check failed") {
    const auto pass = bm_constancy_check([](double t) { return 1.0 + 2.0 * t; }, kProbe, 1e-9);
    CHECK(pass.pass);
    CHECK(!pass.witness.has_value());
    const auto fail = bm_constancy_check([](double t) { return 1.0 + t * t; }, kProbe, 1e-9);
    CHECK(!fail.pass);
    CHECK(fail.witness.has_value());
}

// ---------------------------------------------------------------------------
// JSON serialization

TEST_CASE("json: 17-digit floats survive a parse round trip") {
    json j;
    j["a"] = 0.1 + 0.2; // 0.30000000000000004
    j["b"] = 1.0 / 3.0;
    j["nested"] = json{{"c", 1e-300}, {"list", json::array({2.5, 3.7e22})}};
    const std::string text = dump_json_17(j);
    const json back = json::parse(text);
    CHECK(back["a"].get<double>() == j["a"].get<double>());
    CHECK(back["b"].get<double>() == j["b"].get<double>());
    CHECK(back["nested"]["c"].get<double>() == 1e-300);
    CHECK(back["nested"]["list"][1].get<double>() == 3.7e22);
}

TEST_CASE("json: identical values serialize identically") {
    json a, b;
    a["x"] = 0.007290000000000001;
    b["x"] = 0.007290000000000001;
    CHECK(dump_json_17(a) == dump_json_17(b));
}

TEST_CASE("json: non-finite numbers become null") {
    json j;
    j["inf"] = std::numeric_limits<double>::infinity();
    j["nan"] = std::numeric_limits<double>::quiet_NaN();
    const std::string text = dump_json_17(j, -1);
    CHECK(text == R"({"inf":null,"nan":null})");
}

TEST_CASE("json: residual reports expose the full summary") {
    ResidualReport r;
    r.kind = EquationKind::Gfe;
    r.domain = "grid[n=3, 1..3] x same";
    r.n_pairs = 9;
    r.max_abs = 1.5e-12;
    r.max_rel = 2.5e-13;
    r.rms = 1e-13;
    r.argmax_u = 1.0;
    r.argmax_v = 2.0;
    r.tol = 1e-9;
    r.pass = true;
    const json j = to_json(r);
    CHECK(j["equation"] == "gfe");
    CHECK(j["n_pairs"] == 9);
    CHECK(j["pass"] == true);
    CHECK(j["argmax"]["u"] == 1.0);
    CHECK(!j.contains("n_skipped")); // only reported when nonzero
}

TEST_CASE("json: theorem reports include checks and optional witness") {
    const auto fail = bm_constancy_check([](double t) { return 1.0 + t * t; }, kProbe, 1e-9);
    const json j = to_json(fail);
    CHECK(j["suite"] == "bm_constancy");
    CHECK(j["status"] == "fail");
    CHECK(j["pass"] == false);
    CHECK(j.contains("witness"));
    CHECK(j["checks"].is_array());

    const auto ok = one_implies_constant([](double) { return 1.0; }, kProbe, 1e-9);
    const json k = to_json(ok);
    CHECK(!k.contains("witness"));
    CHECK(k["status"] == "pass");
}
