#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "funceq/errors.hpp"
#include "funceq/sampled.hpp"

using namespace funceq;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
    const std::string path = std::string("/tmp/funceq_test_") + name;
    std::ofstream f(path, std::ios::binary);
    f << content;
    return path;
}

SampledFunction affine_table(double c, double lo, double hi, int n) {
    std::vector<double> xs, vs;
    for (int i = 0; i < n; ++i) {
        const double x = lo + (hi - lo) * i / (n - 1);
        xs.push_back(x);
        vs.push_back(1.0 + c * x);
    }
    return SampledFunction::create(xs, vs);
}

} // namespace

TEST_CASE("SampledFunction: node values reproduce exactly") {
    const auto f = affine_table(0.25, 0.1, 10.0, 40);
    for (std::size_t i = 0; i < f.size(); ++i) {
        CHECK(f.eval(f.xs()[i]) == f.values()[i]);
    }
    CHECK(f.min_x() == 0.1);
    CHECK(f.max_x() == 10.0);
}

TEST_CASE("SampledFunction: linear data interpolates linearly between nodes") {
    const auto f = affine_table(0.25, 0.1, 10.0, 40);
    for (double x : {0.15, 1.0, 3.33, 7.77, 9.95}) {
        CHECK(f.eval(x) == doctest::Approx(1.0 + 0.25 * x).epsilon(1e-13));
    }
}

TEST_CASE("SampledFunction: smooth data is matched to interpolation accuracy") {
    std::vector<double> xs, vs;
    for (int i = 0; i <= 200; ++i) {
        const double x = 0.05 + i * (5.0 - 0.05) / 200;
        xs.push_back(x);
        vs.push_back(std::exp(-0.7 * x));
    }
    const SampledFunction f = SampledFunction::create(xs, vs);
    double worst = 0.0;
    for (int i = 0; i < 500; ++i) {
        const double x = 0.06 + i * (4.9 - 0.06) / 499;
        worst = std::max(worst, std::fabs(f.eval(x) - std::exp(-0.7 * x)));
    }
    CHECK(worst < 1e-6); // monotone cubic on a dense smooth table
}

TEST_CASE("SampledFunction: monotone data yields a monotone interpolant") {
    // A shape-preserving interpolant must not overshoot between nodes.
    std::vector<double> xs = {0.5, 1.0, 1.5, 2.0, 4.0, 4.5, 5.0};
    std::vector<double> vs = {1.0, 1.1, 1.12, 2.0, 2.05, 2.06, 3.0};
    const SampledFunction f = SampledFunction::create(xs, vs);
    double prev = f.eval(0.5);
    for (int i = 1; i <= 450; ++i) {
        const double x = 0.5 + i * 0.01;
        const double v = f.eval(x);
        CHECK(v >= prev - 1e-12);
        prev = v;
    }
}

TEST_CASE("SampledFunction: evaluation outside the table throws with the range") {
    const auto f = affine_table(1.0, 1.0, 2.0, 5);
    CHECK_THROWS_WITH_AS(f.eval(0.5), doctest::Contains("outside tabulated range"), DomainError);
    CHECK_THROWS_AS(f.eval(2.5), DomainError);
}

TEST_CASE("SampledFunction: construction rejects bad samples") {
    CHECK_THROWS_AS(SampledFunction::create({1.0}, {1.0}), InputError);
    CHECK_THROWS_AS(SampledFunction::create({1.0, 1.0}, {1.0, 2.0}), InputError);
    CHECK_THROWS_AS(SampledFunction::create({2.0, 1.0}, {1.0, 2.0}), InputError);
    CHECK_THROWS_AS(SampledFunction::create({-1.0, 1.0}, {1.0, 2.0}), InputError);
    CHECK_THROWS_AS(SampledFunction::create({1.0, 2.0}, {1.0}), InputError);
    const double nan = std::nan("");
    CHECK_THROWS_AS(SampledFunction::create({1.0, 2.0}, {1.0, nan}), InputError);
}

TEST_CASE("read_csv: well-formed file round-trips through write_csv") {
    const auto f = affine_table(0.25, 0.1, 10.0, 17);
    const std::string path = "/tmp/funceq_test_roundtrip.csv";
    write_csv(f, path);
    const SampledFunction g = read_csv(path);
    REQUIRE(g.size() == f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        CHECK(g.xs()[i] == f.xs()[i]); // 17-digit serialization is lossless
        CHECK(g.values()[i] == f.values()[i]);
    }
}

TEST_CASE("read_csv: header must be exactly x,value") {
    const auto path = write_temp("bad_header.csv", "t,value\n1,2\n2,3\n");
    CHECK_THROWS_WITH_AS(read_csv(path), doctest::Contains(":1:"), InputError);
}

TEST_CASE("read_csv: malformed cells are reported with their line number") {
    const auto path = write_temp("bad_cell.csv", "x,value\n1,2\nfoo,3\n");
    CHECK_THROWS_WITH_AS(read_csv(path), doctest::Contains(":3:"), InputError);

    const auto path2 = write_temp("bad_cols.csv", "x,value\n1,2\n2\n");
    CHECK_THROWS_WITH_AS(read_csv(path2), doctest::Contains(":3:"), InputError);

    const auto path3 = write_temp("unsorted.csv", "x,value\n2,2\n1,3\n");
    CHECK_THROWS_AS(read_csv(path3), InputError);
}

TEST_CASE("read_csv: fewer than two data rows is an error") {
    const auto path = write_temp("short.csv", "x,value\n1,2\n");
    CHECK_THROWS_AS(read_csv(path), InputError);
}

TEST_CASE("read_csv: missing file errors cleanly") {
    CHECK_THROWS_AS(read_csv("/tmp/funceq_no_such_file.csv"), InputError);
}

TEST_CASE("read_csv: CRLF line endings are tolerated") {
    const auto path = write_temp("crlf.csv", "x,value\r\n1,2\r\n2,3\r\n");
    const SampledFunction f = read_csv(path);
    CHECK(f.size() == 2);
    CHECK(f.values()[1] == 3.0);
}

TEST_CASE("to_function wraps evaluation including the range guard") {
    const auto f = affine_table(1.0, 1.0, 2.0, 5);
    const RealFn fn = f.to_function();
    CHECK(fn(1.5) == doctest::Approx(2.5).epsilon(1e-13));
    CHECK_THROWS_AS(fn(9.0), DomainError);
}
