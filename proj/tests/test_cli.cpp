#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#ifndef FUNCEQ_CLI_PATH
#error "FUNCEQ_CLI_PATH must point at the command-line binary"
#endif

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

const fs::path& work_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() /
                     ("funceq_cli_test_" + std::to_string(static_cast<long>(::getpid())));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
    static int counter = 0;
    const fs::path out = work_dir() / ("out_" + std::to_string(counter) + ".txt");
    const fs::path err = work_dir() / ("err_" + std::to_string(counter) + ".txt");
    ++counter;
    const std::string cmd = env_prefix + std::string(FUNCEQ_CLI_PATH) + " " + args + " >" +
                            out.string() + " 2>" + err.string();
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

fs::path write_file(const std::string& name, const std::string& content) {
    const fs::path p = work_dir() / name;
    std::ofstream(p) << content;
    return p;
}

template <typename F>
std::string csv_of(F f, double lo, double hi, int n) {
    char buf[96];
    std::string s = "x,value\n";
    for (int i = 0; i < n; ++i) {
        const double x = lo + (hi - lo) * i / (n - 1);
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", x, static_cast<double>(f(x)));
        s += buf;
    }
    return s;
}

const fs::path& phi_samples_csv() {
    static const fs::path p = write_file(
        "phi_samples.csv", csv_of([](double t) { return 1.0 + 0.25 * t; }, 0.1, 10.0, 60));
    return p;
}

const fs::path& bad_phi_csv() {
    static const fs::path p = write_file(
        "bad_phi.csv",
        csv_of([](double t) { return 1.0 - 0.4 * std::exp(-(t - 2.0) * (t - 2.0)); }, 0.0, 12.0,
               121));
    return p;
}

std::string without_wall_time(const std::string& text) {
    std::istringstream in(text);
    std::string line, kept;
    while (std::getline(in, line)) {
        if (line.find("\"wall_time_ms\"") != std::string::npos) continue;
        kept += line;
        kept += '\n';
    }
    return kept;
}

} // namespace

TEST_CASE("cli: exact solution family passes the residual gate") {
    const auto r = run_cli("residual --equation bfe --phi affine:c=2 --grid 0.01:5:200 --tol 1e-9");
    CHECK(r.exit_code == 0);
    CHECK(r.err.empty());
    const json j = json::parse(r.out);
    CHECK(j["schema_version"] == "1");
    CHECK(j.begin().key() == "schema_version"); // first key, fixed order
    CHECK(j["command"]["equation"] == "bfe");
    CHECK(j["results"]["pass"] == true);
    CHECK(j["results"]["max_rel_residual"].get<double>() <= 1e-10);
    CHECK(j["results"]["n_pairs"] == 200 * 200);
    CHECK(j.contains("wall_time_ms"));
    const auto last = std::prev(j.end());
    CHECK(last.key() == "wall_time_ms");
}

TEST_CASE("cli: classify recovers the affine family from a tabulation") {
    const auto r = run_cli("classify --input " + phi_samples_csv().string() +
                           " --equation bfe --tol 1e-6");
    CHECK(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["results"]["family"] == "affine");
    CHECK(j["results"]["parameters"]["c"].get<double>() ==
          doctest::Approx(0.25).epsilon(1e-6));
}

TEST_CASE("cli: dip witnesses force a nonzero exit") {
    const auto r = run_cli("verify --suite theorem5 --phi table:" + bad_phi_csv().string());
    CHECK(r.exit_code == 1);
    const json j = json::parse(r.out);
    CHECK(j["results"]["pass"] == false);
    REQUIRE(!j["results"]["witnesses"].empty());
    const json& w = j["results"]["witnesses"][0];
    CHECK(w.contains("u"));
    CHECK(w.contains("v"));
    CHECK(w["residual_rel"].get<double>() > 1e-6);
}

TEST_CASE("cli: reruns are byte-identical up to the timing line") {
    const std::string cmd =
        "residual --equation gfe --K hrho:c=2,rho=0.7 --g exp:rho=0.7 --grid 0.05:5:120";
    const auto a = run_cli(cmd);
    const auto b = run_cli(cmd);
    CHECK(a.exit_code == 0);
    CHECK(b.exit_code == 0);
    CHECK(!a.out.empty());
    CHECK(without_wall_time(a.out) == without_wall_time(b.out));
}

TEST_CASE("cli: logging goes to stderr and leaves stdout untouched") {
    const std::string cmd = "residual --equation cee --g exp:rho=1.3 --grid 0.1:3:40";
    const auto quiet = run_cli(cmd);
    const auto loud = run_cli(cmd, "FUNCEQ_LOG=info ");
    CHECK(quiet.exit_code == 0);
    CHECK(loud.exit_code == 0);
    CHECK(quiet.err.empty());
    CHECK(!loud.err.empty());
    CHECK(without_wall_time(quiet.out) == without_wall_time(loud.out));
}

TEST_CASE("cli: --out writes the report to a file instead of stdout") {
    const fs::path dest = work_dir() / "report.json";
    const auto r = run_cli("residual --equation cfe --K linear:c=2 --grid 0.1:3:40 --out " +
                           dest.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out.empty());
    const json j = json::parse(slurp(dest));
    CHECK(j["schema_version"] == "1");
    CHECK(j["results"]["pass"] == true);
}

TEST_CASE("cli: a failing residual run exits 1 but still reports") {
    const auto r = run_cli("residual --equation cfe --K hrho:c=1,rho=1 --grid 0.1:3:40");
    CHECK(r.exit_code == 1);
    const json j = json::parse(r.out);
    CHECK(j["results"]["pass"] == false);
    CHECK(j["results"]["max_rel_residual"].get<double>() > 1e-9);
}

TEST_CASE("cli: usage errors exit 2 with a message and no report") {
    const auto cases = {
        std::string("residual --equation zzz --phi affine:c=2 --grid 0.1:1:10"),
        std::string("residual --equation bfe --phi affine:c=2"),          // no domain
        std::string("residual --equation bfe --phi affine:c=2 --grid 5:1:100"),
        std::string("residual --equation cfe --K linear:c=1 --g exp:rho=1 --grid 0.1:1:10"),
        std::string("residual --equation bfe --phi affine:c=2 --grid 0.1:1:10 --bogus 3"),
        std::string("verify --suite bogus --f const:1"),
        std::string("fit --what nothing"),
        std::string("beck --phi affine:c=1 --u 0 --count 4"),
        std::string("classify --input /nonexistent.csv --equation bfe"),
        std::string(""), // no subcommand at all
    };
    for (const auto& c : cases) {
        CAPTURE(c);
        const auto r = run_cli(c);
        CHECK(r.exit_code == 2);
        CHECK(!r.err.empty());
        CHECK(r.out.empty());
    }
}

TEST_CASE("cli: malformed CSV rows are reported with their line number") {
    const fs::path bad = write_file("broken.csv", "x,value\n1,1\n2,oops\n");
    const auto r = run_cli("classify --input " + bad.string() + " --equation bfe");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find(":3:") != std::string::npos);
}

TEST_CASE("cli: classify on a non-solution exits 1 with a null family") {
    const fs::path quad =
        write_file("quad.csv", csv_of([](double t) { return 1.0 + t * t; }, 0.1, 4.0, 40));
    const auto r = run_cli("classify --input " + quad.string() + " --equation bfe");
    CHECK(r.exit_code == 1);
    const json j = json::parse(r.out);
    CHECK(j["results"]["family"].is_null());
    for (const auto& t : j["results"]["trace"]) CHECK(t["accepted"] == false);
}

TEST_CASE("cli: the step-scaling iteration reports terms and stop reason") {
    const auto r = run_cli("beck --phi affine:c=1 --u 1 --count 4");
    CHECK(r.exit_code == 0);
    const json j = json::parse(r.out);
    const json& seq = j["results"]["sequence"];
    CHECK(seq["phi_u"] == 2.0);
    CHECK(seq["terms"] == json::array({0.0, 1.0, 3.0, 7.0, 15.0}));
    CHECK(seq["stopped_because"] == "reached_count");

    const auto capped = run_cli("beck --phi affine:c=1 --u 1 --count 10 --t-cap 100");
    CHECK(capped.exit_code == 0);
    const json k = json::parse(capped.out);
    CHECK(k["results"]["sequence"]["terms"].back() == 127.0);
    CHECK(k["results"]["sequence"]["stopped_because"] == "exceeded_cap");
}

TEST_CASE("cli: jump index and gap bound ride along with the iteration") {
    const auto r = run_cli("beck --phi affine:c=1 --u 0.01 --count 5 --t 5 --T 5");
    CHECK(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["results"]["jump"]["m"] == 180);
    CHECK(j["results"]["gap"]["ok"] == true);
}

TEST_CASE("cli: exact subgroup arithmetic reports a residual of exactly zero") {
    const auto r = run_cli(
        "residual --equation cfe --K additive:alpha=1,beta=0 --subgroup zsqrt2:N=40,X=2");
    CHECK(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["results"]["max_abs_residual"].get<double>() == 0.0);
    CHECK(j["results"]["max_rel_residual"].get<double>() == 0.0);

    const auto misuse = run_cli(
        "residual --equation gfe --K additive:alpha=1,beta=0 --g exp:rho=1 --subgroup zsqrt2:N=10,X=2");
    CHECK(misuse.exit_code == 2);

    const auto mik = run_cli(
        "residual --equation mik --f additive:alpha=1,beta=0 --subgroup zsqrt2:N=20,X=2");
    CHECK(mik.exit_code == 0);
}

TEST_CASE("cli: the alias --f selects the single-function role") {
    const auto r = run_cli("residual --equation mik --f linear:c=3 --grid 0.5:2:10");
    CHECK(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["results"]["pass"] == true);
}

TEST_CASE("cli: oversized grids are thinned under the pair budget") {
    const auto r = run_cli(
        "residual --equation bfe --phi affine:c=2 --grid 0.01:5:4000 --max-pairs 10000");
    CHECK(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["command"]["thinned"] == true);
    CHECK(j["results"]["n_pairs"].get<long long>() <= 10000);

    const auto again = run_cli(
        "residual --equation bfe --phi affine:c=2 --grid 0.01:5:4000 --max-pairs 10000");
    CHECK(without_wall_time(again.out) == without_wall_time(r.out));
}

TEST_CASE("cli: rate extraction from a tabulated exponential") {
    const fs::path data =
        write_file("expdata.csv", csv_of([](double t) { return std::exp(-0.7 * t); }, 0.1, 5.0, 50));
    const auto r = run_cli("fit --what exp_rho --input " + data.string());
    CHECK(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["results"]["rho"].get<double>() == doctest::Approx(0.7).epsilon(1e-9));
}

TEST_CASE("cli: ratio extraction from a kernel/exponential pair") {
    const auto r = run_cli("fit --what kappa --K hrho:c=1.5,rho=2 --g exp:rho=2 --grid 0.1:4:60");
    CHECK(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["results"]["kappa"].get<double>() == doctest::Approx(-0.75).epsilon(1e-12));
    CHECK(j["results"]["points_used"] == 60);
}

TEST_CASE("cli: monotonicity suite verdicts") {
    CHECK(run_cli("verify --suite monotone --F hrho:c=1,rho=1").exit_code == 0);
    const auto flat = run_cli("verify --suite monotone --F const:5");
    CHECK(flat.exit_code == 1);
    const json j = json::parse(flat.out);
    CHECK(j["results"]["status"] == "fail");
    CHECK(j["results"].contains("witness"));
}

TEST_CASE("cli: nucleus membership, floating and exact") {
    const std::string base = "verify --suite nucleus --K hrho:c=1,rho=1 --grid 0.1:5:50";
    CHECK(run_cli(base + " --x 0").exit_code == 0);
    const auto off = run_cli(base + " --x 1");
    CHECK(off.exit_code == 1);
    CHECK(json::parse(off.out)["results"]["in_nucleus"] == false);

    const auto exact = run_cli("verify --suite nucleus --K additive:alpha=1,beta=0 --x 1,0");
    CHECK(exact.exit_code == 0);
    const json j = json::parse(exact.out);
    CHECK(j["results"]["exact"] == true);
    CHECK(j["results"]["in_nucleus"] == true);
}

TEST_CASE("cli: level sets always exit zero and list small sets") {
    const auto all = run_cli("verify --suite level_set --f affine:c=1 --grid 0.1:2:20");
    CHECK(all.exit_code == 0);
    const json j = json::parse(all.out);
    CHECK(j["results"]["count"] == 20);
    CHECK(j["results"]["points"].size() == 20);

    const auto none = run_cli("verify --suite level_set --f const:1 --grid 0.1:2:20");
    CHECK(none.exit_code == 0);
    CHECK(json::parse(none.out)["results"]["count"] == 0);
}

TEST_CASE("cli: subgroup domains work for residual checks") {
    const auto r = run_cli(
        "residual --equation gfe --K hrho:c=2,rho=0.7 --g exp:rho=0.7 --subgroup dyadic:L=6,X=2 "
        "--grid 0.1:3:25");
    CHECK(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["results"]["pass"] == true);
    CHECK(j["results"]["domain"].get<std::string>().find("dyadic") != std::string::npos);
}

TEST_CASE("cli: help exits zero and names the subcommands") {
    const auto r = run_cli("--help");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("residual") != std::string::npos);
    CHECK(r.out.find("verify") != std::string::npos);
}

TEST_CASE("cli: dichotomy suite runs end to end") {
    const auto r = run_cli("verify --suite dichotomy --N 16");
    CHECK(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["results"]["status"] == "pass");
}
