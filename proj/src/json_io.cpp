#include "funceq/json_io.hpp"

#include <charconv>
#include <cmath>
#include <cstring>

#include "funceq/family.hpp"

namespace funceq {

json to_json(const ResidualReport& r) {
    json j;
    j["equation"] = equation_name(r.kind);
    j["domain"] = r.domain;
    j["n_pairs"] = r.n_pairs;
    if (r.n_skipped > 0) j["n_skipped"] = r.n_skipped;
    j["max_abs_residual"] = r.max_abs;
    j["max_rel_residual"] = r.max_rel;
    j["rms_residual"] = r.rms;
    j["argmax"] = json{{"u", r.argmax_u}, {"v", r.argmax_v}};
    j["tol"] = r.tol;
    j["pass"] = r.pass;
    return j;
}

json to_json(const InequalityReport& r) {
    json j;
    j["domain"] = r.domain;
    j["n_pairs"] = r.n_pairs;
    j["n_violations"] = r.n_violations;
    j["worst_violation"] = r.worst_violation;
    j["worst"] = json{{"u", r.worst_u}, {"v", r.worst_v}};
    j["tol"] = r.tol;
    j["pass"] = r.n_violations == 0;
    return j;
}

json to_json(const HsReport& r) {
    json j;
    j["windows"] = r.windows;
    j["window_sups"] = r.window_sups;
    j["estimate"] = r.estimate;
    j["tol"] = r.tol;
    j["pass"] = r.pass;
    return j;
}

json to_json(const BeckSequence& s) {
    json j;
    j["u"] = s.u;
    j["phi_u"] = s.phi_u;
    j["terms"] = s.terms;
    j["stopped_because"] = s.stop == BeckStop::ReachedCount ? "reached_count" : "exceeded_cap";
    return j;
}

json to_json(const JumpIndex& v) {
    json j;
    j["m"] = v.m;
    j["t_m"] = v.t_m;
    j["t_next"] = v.t_next;
    return j;
}

json to_json(const GapBound& g) {
    json j;
    j["m"] = g.m;
    j["delta"] = g.delta;
    j["bound"] = g.bound;
    j["ok"] = g.ok;
    return j;
}

json to_json(const ClassificationResult& c) {
    json j;
    if (c.family.has_value()) {
        j["family"] = family_name(*c.family);
        j["parameters"] = json::object();
        for (const auto& [k, v] : family_parameters(*c.family)) j["parameters"][k] = v;
        j["fit_rms"] = c.fit_rms;
        j["equation_residual_after_fit"] = c.equation_residual_after_fit;
    } else {
        j["family"] = nullptr;
    }
    json trace = json::array();
    for (const auto& t : c.trace) {
        trace.push_back(json{{"family", t.family},
                             {"fit_rms", t.fit_rms},
                             {"equation_residual", t.equation_residual},
                             {"accepted", t.accepted}});
    }
    j["trace"] = trace;
    return j;
}

json to_json(const TheoremReport& t) {
    json j;
    j["suite"] = t.suite;
    j["status"] = status_name(t.status);
    j["pass"] = t.pass;
    json checks = json::array();
    for (const auto& c : t.checks)
        checks.push_back(json{{"name", c.name}, {"ok", c.ok}, {"value", c.value}});
    j["checks"] = checks;
    if (t.witness.has_value())
        j["witness"] = json{{"x", t.witness->x}, {"y", t.witness->y}, {"what", t.witness->what}};
    if (!t.note.empty()) j["note"] = t.note;
    return j;
}

namespace {

void dump_number(std::string& out, double v) {
    if (!std::isfinite(v)) {
        out += "null";
        return;
    }
    char buf[40];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    out.append(buf, p);
}

void dump_value(std::string& out, const json& j, int indent, int depth) {
    const auto pad = [&](int d) {
        if (indent >= 0) {
            out += '\n';
            out.append(static_cast<std::size_t>(indent) * d, ' ');
        }
    };
    switch (j.type()) {
    case json::value_t::object: {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += '{';
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) out += ',';
            first = false;
            pad(depth + 1);
            out += json(it.key()).dump();
            out += indent >= 0 ? ": " : ":";
            dump_value(out, it.value(), indent, depth + 1);
        }
        pad(depth);
        out += '}';
        return;
    }
    case json::value_t::array: {
        if (j.empty()) {
            out += "[]";
            return;
        }
        out += '[';
        bool first = true;
        for (const auto& el : j) {
            if (!first) out += ',';
            first = false;
            pad(depth + 1);
            dump_value(out, el, indent, depth + 1);
        }
        pad(depth);
        out += ']';
        return;
    }
    case json::value_t::number_float:
        dump_number(out, j.get<double>());
        return;
    default:
        out += j.dump(); // strings (escaped), integers, booleans, null
        return;
    }
}

} // namespace

std::string dump_json_17(const json& j, int indent) {
    std::string out;
    dump_value(out, j, indent, 0);
    return out;
}

} // namespace funceq
