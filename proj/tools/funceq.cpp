// funceq — command-line front end for the functional-equation toolkit.
//
// Subcommands: residual, classify, beck, fit, verify. Every run prints one
// JSON report (schema_version "1") to stdout or --out; diagnostics go to
// stderr only, gated by the FUNCEQ_LOG environment variable.
//
// Exit codes: 0 = ran and passed, 1 = ran and failed (the report says which
// check), 2 = usage or input error (message on stderr, no report).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "funceq/beck.hpp"
#include "funceq/errors.hpp"
#include "funceq/extract.hpp"
#include "funceq/family.hpp"
#include "funceq/json_io.hpp"
#include "funceq/literals.hpp"
#include "funceq/residuals.hpp"
#include "funceq/sampled.hpp"
#include "funceq/verify.hpp"

namespace {

using funceq::json;

// ---------------------------------------------------------------------------
// Logging (stderr only; never touches the JSON on stdout)

enum class LogLevel { Quiet = 0, Error = 1, Info = 2, Debug = 3 };

LogLevel g_log = LogLevel::Quiet;

void init_log() {
    const char* env = std::getenv("FUNCEQ_LOG");
    if (env == nullptr) return;
    const std::string v = env;
    if (v == "error") g_log = LogLevel::Error;
    else if (v == "info") g_log = LogLevel::Info;
    else if (v == "debug") g_log = LogLevel::Debug;
    else {
        std::cerr << "funceq: ignoring unknown FUNCEQ_LOG value '" << v << "'\n";
        g_log = LogLevel::Error;
    }
}

void log_at(LogLevel lv, const char* tag, const std::string& msg) {
    if (g_log >= lv) std::cerr << "funceq: [" << tag << "] " << msg << "\n";
}
void log_info(const std::string& msg) { log_at(LogLevel::Info, "info", msg); }
void log_debug(const std::string& msg) { log_at(LogLevel::Debug, "debug", msg); }

// ---------------------------------------------------------------------------
// Option parsing helpers

double parse_double_opt(const std::string& text, const std::string& what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(text, &pos);
        if (pos != text.size() || !std::isfinite(v))
            throw funceq::UsageError("bad number for " + what + ": '" + text + "'");
        return v;
    } catch (const funceq::UsageError&) {
        throw;
    } catch (const std::exception&) {
        throw funceq::UsageError("bad number for " + what + ": '" + text + "'");
    }
}

long long parse_int_opt(const std::string& text, const std::string& what) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(text, &pos);
        if (pos != text.size())
            throw funceq::UsageError("bad integer for " + what + ": '" + text + "'");
        return v;
    } catch (const funceq::UsageError&) {
        throw;
    } catch (const std::exception&) {
        throw funceq::UsageError("bad integer for " + what + ": '" + text + "'");
    }
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

/// "min:max:count" -> inclusive uniform grid.
std::vector<double> parse_grid(const std::string& text) {
    const auto parts = split(text, ':');
    if (parts.size() != 3)
        throw funceq::UsageError("grid must look like min:max:count, got '" + text + "'");
    const double lo = parse_double_opt(parts[0], "grid min");
    const double hi = parse_double_opt(parts[1], "grid max");
    const long long n = parse_int_opt(parts[2], "grid count");
    if (n < 2) throw funceq::UsageError("grid count must be >= 2, got " + parts[2]);
    if (n > 2'000'000) throw funceq::UsageError("grid count too large: " + parts[2]);
    return funceq::uniform_grid(lo, hi, static_cast<std::size_t>(n));
}

/// "dyadic:L=10,X=5" or "zsqrt2:N=50,X=5".
funceq::DenseSubgroupSpec parse_subgroup(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw funceq::UsageError("subgroup must look like dyadic:L=..,X=.. or zsqrt2:N=..,X=..");
    const std::string kind = text.substr(0, colon);
    std::map<std::string, std::string> kv;
    for (const auto& item : split(text.substr(colon + 1), ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            throw funceq::UsageError("expected key=value in subgroup '" + text + "'");
        kv[item.substr(0, eq)] = item.substr(eq + 1);
    }
    const auto need = [&](const char* key) {
        const auto it = kv.find(key);
        if (it == kv.end())
            throw funceq::UsageError("subgroup '" + text + "' is missing key '" + std::string(key) + "'");
        return it->second;
    };
    if (kind == "dyadic") {
        funceq::DyadicSpec s;
        s.level = static_cast<int>(parse_int_opt(need("L"), "L"));
        s.bound = parse_double_opt(need("X"), "X");
        return s;
    }
    if (kind == "zsqrt2") {
        funceq::ZSqrt2Spec s;
        s.coeff_bound = parse_int_opt(need("N"), "N");
        s.bound = parse_double_opt(need("X"), "X");
        return s;
    }
    throw funceq::UsageError("unknown subgroup kind '" + kind + "'");
}

/// Combine --grid / --subgroup into a DomainSpec.
funceq::DomainSpec build_domain(const std::string& grid_str, const std::string& subgroup_str) {
    if (grid_str.empty() && subgroup_str.empty())
        throw funceq::UsageError("supply --grid min:max:count and/or --subgroup kind:...");
    if (!subgroup_str.empty() && !grid_str.empty()) {
        funceq::MixedDomain m;
        m.u_domain = parse_subgroup(subgroup_str);
        m.v_grid = parse_grid(grid_str);
        return m;
    }
    if (!subgroup_str.empty()) return funceq::SubgroupDomain{parse_subgroup(subgroup_str)};
    return funceq::RealGridDomain{parse_grid(grid_str)};
}

funceq::EquationKind parse_equation(const std::string& name) {
    using EK = funceq::EquationKind;
    if (name == "cfe") return EK::CfeAdditive;
    if (name == "cee") return EK::CeeMultiplicative;
    if (name == "gfe") return EK::Gfe;
    if (name == "bfe") return EK::Bfe;
    if (name == "gbe") return EK::Gbe;
    if (name == "gbep") return EK::Gbep;
    if (name == "mik") return EK::Mik;
    throw funceq::UsageError("unknown equation '" + name + "' (use cfe|cee|gfe|bfe|gbe|gbep|mik)");
}

// ---------------------------------------------------------------------------
// Deterministic thinning of oversized grids (seeded subsampling)

std::vector<double> sample_points(const std::vector<double>& pts, std::size_t target,
                                  std::mt19937_64& rng) {
    if (pts.size() <= target) return pts;
    std::set<std::size_t> keep;
    std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);
    keep.insert(0);
    keep.insert(pts.size() - 1);
    while (keep.size() < target) keep.insert(pick(rng));
    std::vector<double> out;
    out.reserve(keep.size());
    for (std::size_t i : keep) out.push_back(pts[i]);
    return out;
}

/// If the all-pairs count exceeds max_pairs, reduce each axis to about
/// sqrt(max_pairs) points, sampled with the run's seed. Reduced domains
/// become explicit point-list domains.
funceq::DomainSpec thin_domain(const funceq::DomainSpec& domain, long long max_pairs,
                               std::uint64_t seed, bool* thinned) {
    *thinned = false;
    if (max_pairs <= 0) return domain;
    const auto target = static_cast<std::size_t>(std::sqrt(static_cast<double>(max_pairs)));
    std::mt19937_64 rng(seed);
    if (std::holds_alternative<funceq::MixedDomain>(domain)) {
        const auto& m = std::get<funceq::MixedDomain>(domain);
        const auto u = funceq::subgroup_reals(m.u_domain);
        const auto u_count = static_cast<long long>(u.size());
        if (u_count * static_cast<long long>(m.v_grid.size()) <= max_pairs) return domain;
        if (u_count > max_pairs)
            throw funceq::UsageError("subgroup alone exceeds --max-pairs; lower its level/bound");
        // The subgroup side stays as specified; only the grid side is thinned.
        *thinned = true;
        funceq::MixedDomain r = m;
        const auto v_target = static_cast<std::size_t>(std::max<long long>(2, max_pairs / u_count));
        r.v_grid = sample_points(m.v_grid, v_target, rng);
        return r;
    }
    const std::vector<double> pts = funceq::domain_points(domain);
    if (static_cast<long long>(pts.size()) * static_cast<long long>(pts.size()) <= max_pairs)
        return domain;
    *thinned = true;
    return funceq::RealGridDomain{sample_points(pts, std::max<std::size_t>(2, target), rng)};
}

// ---------------------------------------------------------------------------
// Report envelope

struct Emit {
    std::string out_path;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    int write(json command, json results, int exit_code) const {
        json report;
        report["schema_version"] = "1";
        report["command"] = std::move(command);
        report["results"] = std::move(results);
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - start)
                            .count();
        report["wall_time_ms"] = static_cast<long long>(ms);
        const std::string text = funceq::dump_json_17(report) + "\n";
        if (out_path.empty()) {
            std::cout << text;
        } else {
            std::ofstream f(out_path, std::ios::binary);
            if (!f) throw funceq::InputError("cannot open output path '" + out_path + "'");
            f << text;
        }
        return exit_code;
    }
};

// ---------------------------------------------------------------------------
// Shared option bundles

struct CommonOpts {
    std::string grid_str;
    std::string subgroup_str;
    double tol = 0.0; // 0 = pick default by input kind
    std::uint64_t seed = 0;
    long long max_pairs = 4'000'000;
    std::string out_path;
};

void add_domain_opts(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--grid", o.grid_str, "uniform grid min:max:count");
    cmd->add_option("--subgroup", o.subgroup_str, "dense subgroup dyadic:L=..,X=.. | zsqrt2:N=..,X=..");
}

void add_run_opts(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--tol", o.tol, "pass tolerance (default 1e-9 closed forms, 1e-6 tables)");
    cmd->add_option("--seed", o.seed, "seed for any subsampling (default 0)");
    cmd->add_option("--max-pairs", o.max_pairs, "pair budget before seeded thinning (default 4000000)");
    cmd->add_option("--out", o.out_path, "write the JSON report here instead of stdout");
}

double pick_tol(const CommonOpts& o, bool any_table) {
    if (o.tol > 0.0) return o.tol;
    return any_table ? 1e-6 : 1e-9;
}

json domain_echo(const CommonOpts& o) {
    json j = json::object();
    if (!o.grid_str.empty()) j["grid"] = o.grid_str;
    if (!o.subgroup_str.empty()) j["subgroup"] = o.subgroup_str;
    return j;
}

// ---------------------------------------------------------------------------
// residual

int run_residual(const std::string& equation, const std::map<std::string, std::string>& fn_texts,
                 const CommonOpts& opts, const Emit& emit) {
    const funceq::EquationKind kind = parse_equation(equation);

    std::map<std::string, funceq::ParsedFunction> fns;
    bool any_table = false;
    for (const auto& [role, text] : fn_texts) {
        if (text.empty()) continue;
        fns.emplace(role, funceq::parse_function_literal(text));
        if (fns.at(role).table) any_table = true;
    }
    const double tol = pick_tol(opts, any_table);

    json command;
    command["command"] = "residual";
    command["equation"] = equation;
    for (const auto& [role, f] : fns) command[role] = f.text;
    command["domain"] = domain_echo(opts);
    command["tol"] = tol;
    command["seed"] = opts.seed;
    command["max_pairs"] = opts.max_pairs;

    // Exact path: an additive literal on the exact subgroup.
    const auto exact_role = [&]() -> const funceq::ParsedFunction* {
        using EK = funceq::EquationKind;
        // --f is an alias of --phi, so Mik's function arrives under the "phi" key.
        const char* role = kind == EK::CfeAdditive ? "K" : kind == EK::Mik ? "phi" : nullptr;
        if (role == nullptr) return nullptr;
        const auto it = fns.find(role);
        return it != fns.end() && it->second.additive ? &it->second : nullptr;
    }();
    for (const auto& [role, f] : fns) {
        if (f.additive && &f != exact_role)
            throw funceq::UsageError("additive literals evaluate exactly; use them as the additive "
                                     "role of cfe or mik with --subgroup zsqrt2:...");
    }

    funceq::ResidualReport report;
    if (exact_role != nullptr) {
        if (opts.grid_str.empty() && !opts.subgroup_str.empty()) {
            const auto sg = parse_subgroup(opts.subgroup_str);
            if (std::holds_alternative<funceq::ZSqrt2Spec>(sg)) {
                log_info("running exact rational-arithmetic residual check");
                report = funceq::equation_residual_exact(kind, *exact_role->additive,
                                                         std::get<funceq::ZSqrt2Spec>(sg), tol,
                                                         opts.max_pairs);
                return emit.write(std::move(command), funceq::to_json(report),
                                  report.pass ? 0 : 1);
            }
        }
        throw funceq::UsageError("additive literals need --subgroup zsqrt2:N=..,X=.. (exact mode)");
    }

    const auto need = [&](const char* key, const char* shown) -> funceq::RealFn {
        const auto it = fns.find(key);
        if (it == fns.end())
            throw funceq::UsageError(std::string("equation ") + equation + " needs --" + shown);
        return it->second.fn;
    };
    funceq::FunctionSet set;
    using EK = funceq::EquationKind;
    switch (kind) {
    case EK::CfeAdditive: set = funceq::FunctionSet::for_cfe(need("K", "K")); break;
    case EK::CeeMultiplicative: set = funceq::FunctionSet::for_cee(need("g", "g")); break;
    case EK::Mik: set = funceq::FunctionSet::for_mik(need("phi", "f")); break;
    case EK::Bfe: set = funceq::FunctionSet::for_bfe(need("phi", "phi")); break;
    case EK::Gfe: set = funceq::FunctionSet::for_gfe(need("K", "K"), need("g", "g")); break;
    case EK::Gbe:
        set = funceq::FunctionSet::for_gbe(need("K", "K"), need("k", "k"), need("g", "g"));
        break;
    case EK::Gbep:
        set = funceq::FunctionSet::for_gbep(need("K", "K"), need("k", "k"), need("g", "g"),
                                            need("h", "h"));
        break;
    }
    for (const auto& [role, f] : fns) {
        const bool used = (role == "K" && set.K) || (role == "g" && set.g) ||
                          (role == "k" && set.k) || (role == "h" && set.h) ||
                          (role == "phi" && set.f);
        if (!used)
            throw funceq::UsageError("--" + role + " is not a role of equation " + equation);
    }

    bool thinned = false;
    const funceq::DomainSpec domain =
        thin_domain(build_domain(opts.grid_str, opts.subgroup_str), opts.max_pairs, opts.seed,
                    &thinned);
    if (thinned) {
        command["thinned"] = true;
        log_info("pair budget exceeded; domain thinned with seed " + std::to_string(opts.seed));
    }
    log_info("evaluating " + std::string(equation) + " residuals");
    report = funceq::equation_residual(kind, set, domain, tol);
    log_debug("max_abs=" + std::to_string(report.max_abs) +
              " max_rel=" + std::to_string(report.max_rel));
    return emit.write(std::move(command), funceq::to_json(report), report.pass ? 0 : 1);
}

// ---------------------------------------------------------------------------
// classify

int run_classify(const std::string& input, const std::string& equation, const CommonOpts& opts,
                 const Emit& emit) {
    const funceq::EquationKind kind = parse_equation(equation);
    const funceq::SampledFunction table = funceq::read_csv(input);
    const double tol = opts.tol > 0.0 ? opts.tol : 1e-6;

    json command;
    command["command"] = "classify";
    command["input"] = input;
    command["equation"] = equation;
    command["tol"] = tol;
    command["seed"] = opts.seed;

    const funceq::ClassificationResult result = funceq::classify(table, kind, tol);
    log_info(result.family ? "matched family " + funceq::family_name(*result.family)
                           : "no family matched");
    return emit.write(std::move(command), funceq::to_json(result),
                      result.family.has_value() ? 0 : 1);
}

// ---------------------------------------------------------------------------
// beck

int run_beck(const std::string& phi_text, double u, long long count, double t_cap, double t_query,
             bool has_t_query, double gap_T, bool has_gap, const CommonOpts& opts,
             const Emit& emit) {
    const funceq::ParsedFunction phi = funceq::parse_function_literal(phi_text);
    if (!phi.fn) throw funceq::UsageError("--phi must be an evaluable literal");

    json command;
    command["command"] = "beck";
    command["phi"] = phi_text;
    command["u"] = u;
    command["count"] = count;
    if (std::isfinite(t_cap)) command["t_cap"] = t_cap;
    if (has_t_query) command["t"] = t_query;
    if (has_gap) command["T"] = gap_T;
    command["seed"] = opts.seed;

    json results;
    const funceq::BeckSequence seq =
        funceq::beck_iterate(phi.fn, u, static_cast<int>(count), t_cap);
    results["sequence"] = funceq::to_json(seq);

    int exit_code = 0;
    if (has_t_query) {
        const funceq::JumpIndex j = funceq::jump_index(phi.fn, u, t_query);
        results["jump"] = funceq::to_json(j);
    }
    if (has_gap) {
        const funceq::GapBound g = funceq::delta_gap_bound(phi.fn, u, gap_T);
        results["gap"] = funceq::to_json(g);
        if (!g.ok) exit_code = 1;
    }
    return emit.write(std::move(command), std::move(results), exit_code);
}

// ---------------------------------------------------------------------------
// fit

int run_fit(const std::string& what, const std::string& input, const std::string& K_text,
            const std::string& g_text, double one_tol, const CommonOpts& opts, const Emit& emit) {
    json command;
    command["command"] = "fit";
    command["what"] = what;
    command["seed"] = opts.seed;

    json results;
    if (what == "exp_rho") {
        if (input.empty()) throw funceq::UsageError("fit --what exp_rho needs --input CSV");
        command["input"] = input;
        const funceq::SampledFunction table = funceq::read_csv(input);
        const funceq::ExpFit fit = funceq::fit_exponential_rho(table.to_function(), table.xs());
        results["rho"] = fit.rho;
        results["rms"] = fit.rms;
        return emit.write(std::move(command), std::move(results), 0);
    }
    if (what == "slope") {
        if (input.empty()) throw funceq::UsageError("fit --what slope needs --input CSV");
        command["input"] = input;
        const funceq::SampledFunction table = funceq::read_csv(input);
        std::vector<double> useq(table.xs().rbegin(), table.xs().rend());
        const funceq::SlopeAtZero s = funceq::slope_at_zero(table.to_function(), useq);
        results["rho"] = s.rho;
        results["quotients"] = s.quotients;
        return emit.write(std::move(command), std::move(results), 0);
    }
    if (what == "kappa") {
        if (K_text.empty() || g_text.empty())
            throw funceq::UsageError("fit --what kappa needs --K and --g literals");
        command["K"] = K_text;
        command["g"] = g_text;
        command["domain"] = domain_echo(opts);
        const funceq::ParsedFunction K = funceq::parse_function_literal(K_text);
        const funceq::ParsedFunction g = funceq::parse_function_literal(g_text);
        if (!K.fn || !g.fn) throw funceq::UsageError("kappa extraction needs evaluable literals");
        const funceq::DomainSpec domain = build_domain(opts.grid_str, opts.subgroup_str);
        const funceq::KappaEstimate kappa =
            funceq::extract_kappa(K.fn, g.fn, domain, one_tol);
        results["kappa"] = kappa.kappa;
        results["spread"] = kappa.spread;
        results["points_used"] = kappa.points_used;
        return emit.write(std::move(command), std::move(results), 0);
    }
    throw funceq::UsageError("unknown fit target '" + what + "' (use exp_rho|slope|kappa)");
}

// ---------------------------------------------------------------------------
// verify

int theorem_exit(const funceq::TheoremReport& r) {
    switch (r.status) {
    case funceq::CheckStatus::Pass:
    case funceq::CheckStatus::VacuousPass: return 0;
    case funceq::CheckStatus::Fail:
    case funceq::CheckStatus::NotApplicable: return 1;
    }
    return 1;
}

int run_verify(const std::string& suite, std::map<std::string, std::string> text_opts,
               const CommonOpts& opts, const Emit& emit) {
    json command;
    command["command"] = "verify";
    command["suite"] = suite;
    for (const auto& [k, v] : text_opts)
        if (!v.empty()) command[k] = v;
    command["domain"] = domain_echo(opts);
    command["seed"] = opts.seed;

    const auto text = [&](const char* key) { return text_opts[key]; };
    const auto need_fn = [&](const char* key) {
        const std::string t = text(key);
        if (t.empty())
            throw funceq::UsageError(std::string("verify --suite ") + suite + " needs --" + key);
        funceq::ParsedFunction p = funceq::parse_function_literal(t);
        if (!p.fn)
            throw funceq::UsageError(std::string("--") + key + " must be an evaluable literal");
        return p;
    };
    const auto grid_or = [&](double lo, double hi, std::size_t n) {
        if (!opts.grid_str.empty()) return parse_grid(opts.grid_str);
        return funceq::uniform_grid(lo, hi, n);
    };

    if (suite == "theorem5") {
        const funceq::ParsedFunction phi = need_fn("phi");
        const double tol = opts.tol > 0.0 ? opts.tol : 1e-6;
        command["tol"] = tol;
        std::vector<double> us;
        if (!opts.grid_str.empty()) {
            us = parse_grid(opts.grid_str);
        } else if (phi.table) {
            const double lo = std::max(phi.table->min_x(), 1e-12);
            us = funceq::uniform_grid(lo == 0.0 ? 1e-6 : lo, phi.table->max_x(), 200);
            if (us.front() == 0.0) us.erase(us.begin());
        } else {
            us = funceq::uniform_grid(0.05, 5.0, 200);
        }
        long long tested = 0, skipped = 0;
        json witnesses = json::array();
        for (double u : us) {
            if (!(u > 0.0)) continue;
            try {
                const auto w = funceq::theorem5_witness(phi.fn, u, tol);
                ++tested;
                if (w) {
                    if (witnesses.size() < 10)
                        witnesses.push_back(json{{"u", u},
                                                 {"v", w->v},
                                                 {"residual_abs", w->residual_abs},
                                                 {"residual_rel", w->residual_rel}});
                    else
                        witnesses.back()["and_more"] = true;
                }
            } catch (const funceq::DomainError&) {
                ++skipped; // witness point fell outside the tabulated range
            }
        }
        json results;
        results["n_tested"] = tested;
        results["n_skipped"] = skipped;
        results["witnesses"] = witnesses;
        results["pass"] = witnesses.empty();
        log_info("theorem5 sweep: " + std::to_string(tested) + " tested, " +
                 std::to_string(skipped) + " skipped");
        return emit.write(std::move(command), std::move(results), witnesses.empty() ? 0 : 1);
    }

    if (suite == "range_group") {
        const funceq::ParsedFunction f = need_fn("f");
        const double tol = opts.tol > 0.0 ? opts.tol : 1e-9;
        command["tol"] = tol;
        std::optional<double> a;
        if (!text("a").empty()) a = parse_double_opt(text("a"), "a");
        const auto grid = grid_or(0.05, 5.0, 200);
        const auto r = funceq::range_group_check(f.fn, a, grid, tol);
        return emit.write(std::move(command), funceq::to_json(r), theorem_exit(r));
    }

    if (suite == "one_constant") {
        const funceq::ParsedFunction f = need_fn("f");
        const double tol = opts.tol > 0.0 ? opts.tol : 1e-9;
        command["tol"] = tol;
        const auto r = funceq::one_implies_constant(f.fn, grid_or(0.05, 5.0, 200), tol);
        return emit.write(std::move(command), funceq::to_json(r), theorem_exit(r));
    }

    if (suite == "bm") {
        const funceq::ParsedFunction f = need_fn("f");
        const double tol = opts.tol > 0.0 ? opts.tol : 1e-9;
        command["tol"] = tol;
        const auto r = funceq::bm_constancy_check(f.fn, grid_or(0.05, 5.0, 200), tol);
        return emit.write(std::move(command), funceq::to_json(r), theorem_exit(r));
    }

    if (suite == "monotone") {
        const funceq::ParsedFunction F = need_fn("F");
        std::vector<double> grid;
        if (!opts.grid_str.empty())
            grid = parse_grid(opts.grid_str);
        else if (F.table)
            grid = F.table->xs();
        else
            grid = funceq::uniform_grid(0.05, 5.0, 200);
        const auto r = funceq::monotonicity_check(F.fn, grid);
        return emit.write(std::move(command), funceq::to_json(r), theorem_exit(r));
    }

    if (suite == "dichotomy") {
        const std::string alpha = text("alpha").empty() ? "1" : text("alpha");
        const std::string beta = text("beta").empty() ? "0" : text("beta");
        const long long N = text("N").empty() ? 1024 : parse_int_opt(text("N"), "N");
        const double X = text("X").empty() ? 1.0 : parse_double_opt(text("X"), "X");
        const double threshold =
            text("threshold").empty() ? 1e3 : parse_double_opt(text("threshold"), "threshold");
        command["alpha"] = alpha;
        command["beta"] = beta;
        command["N"] = N;
        command["X"] = X;
        const funceq::ParsedFunction K =
            funceq::parse_function_literal("additive:alpha=" + alpha + ",beta=" + beta);
        const auto r = funceq::dichotomy_demo(*K.additive, N, X, threshold);
        return emit.write(std::move(command), funceq::to_json(r), theorem_exit(r));
    }

    if (suite == "nucleus") {
        const double tol = opts.tol > 0.0 ? opts.tol : 1e-9;
        command["tol"] = tol;
        const std::string x_text = text("x");
        if (x_text.empty()) throw funceq::UsageError("verify --suite nucleus needs --x");
        const std::string K_text = text("K");
        if (K_text.empty()) throw funceq::UsageError("verify --suite nucleus needs --K");
        const funceq::ParsedFunction K = funceq::parse_function_literal(K_text);
        json results;
        bool in_nucleus = false;
        if (K.additive) {
            const auto sg = parse_subgroup(opts.subgroup_str.empty() ? "zsqrt2:N=20,X=5"
                                                                     : opts.subgroup_str);
            if (!std::holds_alternative<funceq::ZSqrt2Spec>(sg))
                throw funceq::UsageError("exact nucleus check needs --subgroup zsqrt2:...");
            const auto parts = split(x_text, ',');
            if (parts.size() != 2)
                throw funceq::UsageError("exact nucleus --x must be 'a,b' (integers)");
            const funceq::ZSqrt2 x{parse_int_opt(parts[0], "x.a"), parse_int_opt(parts[1], "x.b")};
            in_nucleus =
                funceq::nucleus_check_exact(*K.additive, x, std::get<funceq::ZSqrt2Spec>(sg));
            results["exact"] = true;
        } else {
            const double x = parse_double_opt(x_text, "x");
            const funceq::DomainSpec domain = build_domain(opts.grid_str, opts.subgroup_str);
            in_nucleus = funceq::nucleus_check(K.fn, x, domain, tol);
            results["exact"] = false;
        }
        results["in_nucleus"] = in_nucleus;
        return emit.write(std::move(command), std::move(results), in_nucleus ? 0 : 1);
    }

    if (suite == "level_set") {
        const funceq::ParsedFunction f = need_fn("f");
        const double tol = opts.tol > 0.0 ? opts.tol : 1e-9;
        command["tol"] = tol;
        const std::string pred_text = text("predicate").empty() ? "above_one" : text("predicate");
        command["predicate"] = pred_text;
        funceq::LevelPredicate pred;
        if (pred_text == "above_one") pred = funceq::LevelPredicate::AboveOne;
        else if (pred_text == "equal_one") pred = funceq::LevelPredicate::EqualOne;
        else throw funceq::UsageError("predicate must be above_one or equal_one");
        const auto ls = funceq::level_set(f.fn, grid_or(0.05, 5.0, 200), pred, tol);
        json results;
        results["count"] = static_cast<long long>(ls.points.size());
        results["grid_size"] = ls.grid_size;
        if (ls.points.size() <= 64) results["points"] = ls.points;
        return emit.write(std::move(command), std::move(results), 0);
    }

    if (suite == "hs") {
        const funceq::ParsedFunction F = need_fn("F");
        const double tol = opts.tol > 0.0 ? opts.tol : 1e-6;
        command["tol"] = tol;
        std::vector<double> windows;
        const std::string wtext =
            text("windows").empty() ? "1e-1,1e-2,1e-3,1e-4,1e-5,1e-6" : text("windows");
        command["windows"] = wtext;
        for (const auto& w : split(wtext, ',')) windows.push_back(parse_double_opt(w, "window"));
        const auto r = funceq::hs_check(F.fn, windows, tol);
        return emit.write(std::move(command), funceq::to_json(r), r.pass ? 0 : 1);
    }

    if (suite == "gfi") {
        const funceq::ParsedFunction F = need_fn("F");
        const double rho = text("rho").empty() ? 0.0 : parse_double_opt(text("rho"), "rho");
        const double tol = opts.tol > 0.0 ? opts.tol : 1e-12;
        command["rho"] = rho;
        command["tol"] = tol;
        const funceq::DomainSpec domain = build_domain(opts.grid_str, opts.subgroup_str);
        const auto r = funceq::gfi_check(F.fn, rho, domain, tol);
        return emit.write(std::move(command), funceq::to_json(r), r.n_violations == 0 ? 0 : 1);
    }

    throw funceq::UsageError("unknown suite '" + suite +
                             "' (theorem5|range_group|one_constant|bm|monotone|dichotomy|nucleus|"
                             "level_set|hs|gfi)");
}

} // namespace

int main(int argc, char** argv) {
    init_log();

    CLI::App app{"numerical checks for additive, multiplicative and composition-type "
                 "functional equations"};
    app.set_help_flag("--help", "print this help and exit"); // frees -h/--h for the GBE-P role
    app.require_subcommand(1);

    // residual
    auto* residual = app.add_subcommand("residual", "aggregate equation residual over a domain");
    std::string r_equation;
    std::map<std::string, std::string> r_fns = {{"K", ""}, {"g", ""}, {"k", ""}, {"h", ""}, {"phi", ""}};
    CommonOpts r_opts;
    residual->add_option("--equation", r_equation, "cfe|cee|gfe|bfe|gbe|gbep|mik")->required();
    residual->add_option("--K", r_fns["K"], "K role function literal");
    residual->add_option("--g", r_fns["g"], "g role function literal");
    residual->add_option("--k", r_fns["k"], "k role function literal");
    residual->add_option("--h", r_fns["h"], "h role function literal");
    residual->add_option("--phi,--f", r_fns["phi"], "phi/f role function literal");
    add_domain_opts(residual, r_opts);
    add_run_opts(residual, r_opts);

    // classify
    auto* classify = app.add_subcommand("classify", "match tabulated data to a solution family");
    std::string c_input, c_equation;
    CommonOpts c_opts;
    classify->add_option("--input", c_input, "CSV file (header x,value)")->required();
    classify->add_option("--equation", c_equation, "cfe|cee|gfe|bfe|mik")->required();
    add_run_opts(classify, c_opts);

    // beck
    auto* beck = app.add_subcommand("beck", "iterate t_{m+1} = t_m + u*phi(t_m) and related checks");
    std::string b_phi;
    double b_u = 0.0;
    long long b_count = 10;
    double b_t_cap = std::numeric_limits<double>::infinity();
    double b_t_query = 0.0, b_gap_T = 0.0;
    CommonOpts b_opts;
    beck->add_option("--phi", b_phi, "phi function literal")->required();
    beck->add_option("--u", b_u, "step scale u > 0")->required();
    beck->add_option("--count", b_count, "number of steps (default 10)");
    beck->add_option("--t-cap", b_t_cap, "stop once a term would exceed this cap");
    auto* b_t_opt = beck->add_option("--t", b_t_query, "also report the jump index at this t");
    auto* b_T_opt = beck->add_option("--T", b_gap_T, "also check the gap bound at this horizon");
    add_run_opts(beck, b_opts);

    // fit
    auto* fit = app.add_subcommand("fit", "parameter extraction from tabulated data or literals");
    std::string f_what, f_input, f_K, f_g;
    double f_one_tol = 1e-9;
    CommonOpts f_opts;
    fit->add_option("--what", f_what, "exp_rho|slope|kappa")->required();
    fit->add_option("--input", f_input, "CSV file for exp_rho/slope");
    fit->add_option("--K", f_K, "K literal (kappa)");
    fit->add_option("--g", f_g, "g literal (kappa)");
    fit->add_option("--one-tol", f_one_tol, "exclusion band around g=1 (kappa, default 1e-9)");
    add_domain_opts(fit, f_opts);
    add_run_opts(fit, f_opts);

    // verify
    auto* verify = app.add_subcommand("verify", "theorem-style property suites");
    std::string v_suite;
    std::map<std::string, std::string> v_texts = {
        {"phi", ""}, {"f", ""}, {"F", ""}, {"K", ""},    {"a", ""},         {"x", ""},
        {"alpha", ""}, {"beta", ""}, {"N", ""}, {"X", ""}, {"threshold", ""}, {"predicate", ""},
        {"windows", ""}, {"rho", ""}};
    CommonOpts v_opts;
    verify->add_option("--suite", v_suite,
                       "theorem5|range_group|one_constant|bm|monotone|dichotomy|nucleus|level_set|hs|gfi")
        ->required();
    verify->add_option("--phi", v_texts["phi"], "phi literal (theorem5)");
    verify->add_option("--f", v_texts["f"], "f literal (range_group, one_constant, bm, level_set)");
    verify->add_option("--F", v_texts["F"], "F literal (monotone, hs, gfi)");
    verify->add_option("--K", v_texts["K"], "K literal (nucleus)");
    verify->add_option("--a", v_texts["a"], "anchor with f(a)=1 (range_group)");
    verify->add_option("--x", v_texts["x"], "point to test (nucleus); 'a,b' in exact mode");
    verify->add_option("--alpha", v_texts["alpha"], "rational alpha (dichotomy, default 1)");
    verify->add_option("--beta", v_texts["beta"], "rational beta (dichotomy, default 0)");
    verify->add_option("--N", v_texts["N"], "coefficient bound (dichotomy, default 1024)");
    verify->add_option("--X", v_texts["X"], "interval bound (dichotomy, default 1)");
    verify->add_option("--threshold", v_texts["threshold"], "growth threshold (dichotomy, default 1e3)");
    verify->add_option("--predicate", v_texts["predicate"], "above_one|equal_one (level_set)");
    verify->add_option("--windows", v_texts["windows"], "comma list of shrinking windows (hs)");
    verify->add_option("--rho", v_texts["rho"], "rho for the inequality (gfi)");
    add_domain_opts(verify, v_opts);
    add_run_opts(verify, v_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "funceq: " << e.what() << "\n";
        return 2;
    }

    try {
        if (residual->parsed()) {
            Emit emit{r_opts.out_path};
            return run_residual(r_equation, r_fns, r_opts, emit);
        }
        if (classify->parsed()) {
            Emit emit{c_opts.out_path};
            return run_classify(c_input, c_equation, c_opts, emit);
        }
        if (beck->parsed()) {
            Emit emit{b_opts.out_path};
            return run_beck(b_phi, b_u, b_count, b_t_cap, b_t_query, b_t_opt->count() > 0,
                            b_gap_T, b_T_opt->count() > 0, b_opts, emit);
        }
        if (fit->parsed()) {
            Emit emit{f_opts.out_path};
            return run_fit(f_what, f_input, f_K, f_g, f_one_tol, f_opts, emit);
        }
        if (verify->parsed()) {
            Emit emit{v_opts.out_path};
            return run_verify(v_suite, v_texts, v_opts, emit);
        }
        std::cerr << "funceq: no subcommand\n";
        return 2;
    } catch (const funceq::Error& e) {
        std::cerr << "funceq: error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "funceq: internal error: " << e.what() << "\n";
        return 2;
    }
}
