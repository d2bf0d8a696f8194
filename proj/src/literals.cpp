#include "funceq/literals.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <sstream>
#include <vector>

#include "funceq/errors.hpp"

namespace funceq {

namespace {

double parse_double(const std::string& text, const std::string& what) {
    double v = 0.0;
    const char* b = text.data();
    const char* e = b + text.size();
    auto [p, ec] = std::from_chars(b, e, v);
    if (ec != std::errc{} || p != e || !std::isfinite(v))
        throw UsageError("bad numeric value for " + what + ": '" + text + "'");
    return v;
}

Rational parse_rational(const std::string& text, const std::string& what) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(text);
        const std::string num = text.substr(0, slash);
        const std::string den = text.substr(slash + 1);
        Rational d{den};
        if (d == 0) throw UsageError("zero denominator in " + what + ": '" + text + "'");
        return Rational(num) / d;
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception&) {
        throw UsageError("bad rational value for " + what + ": '" + text + "'");
    }
}

/// Split "k1=v1,k2=v2" into a map; every key must be consumed by the caller.
std::map<std::string, std::string> parse_kv(const std::string& body, const std::string& literal) {
    std::map<std::string, std::string> kv;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            throw UsageError("expected key=value in function literal '" + literal + "'");
        if (!kv.emplace(item.substr(0, eq), item.substr(eq + 1)).second)
            throw UsageError("duplicate key '" + item.substr(0, eq) + "' in '" + literal + "'");
    }
    return kv;
}

std::string take(std::map<std::string, std::string>& kv, const std::string& key,
                 const std::string& literal) {
    const auto it = kv.find(key);
    if (it == kv.end())
        throw UsageError("function literal '" + literal + "' is missing key '" + key + "'");
    std::string v = it->second;
    kv.erase(it);
    return v;
}

void expect_empty(const std::map<std::string, std::string>& kv, const std::string& literal) {
    if (!kv.empty())
        throw UsageError("unknown key '" + kv.begin()->first + "' in function literal '" + literal + "'");
}

} // namespace

ParsedFunction parse_function_literal(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos || colon == 0)
        throw UsageError("function literal must look like 'kind:...', got '" + text + "'");
    const std::string kind = text.substr(0, colon);
    const std::string body = text.substr(colon + 1);

    ParsedFunction out;
    out.text = text;

    if (kind == "const") {
        const double v = parse_double(body, "const");
        out.fn = [v](double) { return v; };
        if (v == 1.0) out.family = ConstantOne{};
        return out;
    }
    if (kind == "linear") {
        auto kv = parse_kv(body, text);
        const double c = parse_double(take(kv, "c", text), "c");
        expect_empty(kv, text);
        out.fn = [c](double t) { return c * t; };
        out.family = Linear{c};
        return out;
    }
    if (kind == "affine") {
        auto kv = parse_kv(body, text);
        const double c = parse_double(take(kv, "c", text), "c");
        expect_empty(kv, text);
        out.fn = [c](double t) { return 1.0 + c * t; };
        out.family = Affine{c};
        return out;
    }
    if (kind == "exp") {
        auto kv = parse_kv(body, text);
        const double rho = parse_double(take(kv, "rho", text), "rho");
        expect_empty(kv, text);
        out.fn = [rho](double t) { return std::exp(-rho * t); };
        out.family = Exponential{rho};
        return out;
    }
    if (kind == "hrho") {
        auto kv = parse_kv(body, text);
        const double c = parse_double(take(kv, "c", text), "c");
        const double rho = parse_double(take(kv, "rho", text), "rho");
        expect_empty(kv, text);
        RhoKernelScaled fam{c, rho};
        out.fn = to_function(SolutionFamily{fam});
        out.family = fam;
        return out;
    }
    if (kind == "table") {
        if (body.empty()) throw UsageError("table literal needs a path: 'table:PATH'");
        auto tab = std::make_shared<SampledFunction>(read_csv(body));
        out.table = tab;
        out.fn = tab->to_function();
        return out;
    }
    if (kind == "additive") {
        auto kv = parse_kv(body, text);
        const Rational alpha = parse_rational(take(kv, "alpha", text), "alpha");
        const Rational beta = parse_rational(take(kv, "beta", text), "beta");
        expect_empty(kv, text);
        out.additive = std::make_shared<ExactAdditiveOnZSqrt2>(alpha, beta);
        return out;
    }
    throw UsageError("unknown function kind '" + kind + "' in '" + text + "'");
}

} // namespace funceq
