#include "funceq/sampled.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace funceq {

namespace {

std::string fmt17(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// Monotone (Fritsch-Carlson) Hermite slopes for shape-preserving cubics.
std::vector<double> pchip_slopes(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    std::vector<double> h(n - 1), delta(n - 1), d(n);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = x[i + 1] - x[i];
        delta[i] = (y[i + 1] - y[i]) / h[i];
    }
    if (n == 2) {
        d[0] = d[1] = delta[0];
        return d;
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (delta[i - 1] == 0.0 || delta[i] == 0.0 || (delta[i - 1] > 0) != (delta[i] > 0)) {
            d[i] = 0.0;
        } else {
            const double w1 = 2.0 * h[i] + h[i - 1];
            const double w2 = h[i] + 2.0 * h[i - 1];
            d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
    }
    // One-sided three-point endpoint formula with monotonicity clamping.
    auto endpoint = [](double h0, double h1, double d0, double d1) {
        double s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if (s * d0 <= 0.0)
            s = 0.0;
        else if (d0 * d1 <= 0.0 && std::fabs(s) > 3.0 * std::fabs(d0))
            s = 3.0 * d0;
        return s;
    };
    d[0] = endpoint(h[0], h[1], delta[0], delta[1]);
    d[n - 1] = endpoint(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
    return d;
}

} // namespace

SampledFunction SampledFunction::create(std::vector<double> xs, std::vector<double> values) {
    if (xs.size() != values.size())
        throw InputError("SampledFunction: xs and values differ in length");
    if (xs.size() < 2)
        throw InputError("SampledFunction: need at least 2 samples");
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!std::isfinite(xs[i]) || !std::isfinite(values[i]))
            throw InputError("SampledFunction: non-finite sample at index " + std::to_string(i));
        if (xs[i] < 0.0)
            throw InputError("SampledFunction: negative x at index " + std::to_string(i));
        if (i > 0 && !(xs[i] > xs[i - 1]))
            throw InputError("SampledFunction: xs not strictly increasing at index " +
                             std::to_string(i));
    }
    SampledFunction f;
    f.slopes_ = pchip_slopes(xs, values);
    f.xs_ = std::move(xs);
    f.values_ = std::move(values);
    return f;
}

double SampledFunction::eval(double x) const {
    if (!std::isfinite(x))
        throw DomainError("SampledFunction: non-finite evaluation point");
    if (x < xs_.front() || x > xs_.back())
        throw DomainError("SampledFunction: x=" + fmt17(x) + " outside tabulated range [" +
                          fmt17(xs_.front()) + ", " + fmt17(xs_.back()) + "]");
    // Locate the bracketing interval [xs_[i], xs_[i+1]].
    const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    std::size_t i = static_cast<std::size_t>(it - xs_.begin());
    if (i > 0)
        --i;
    if (i + 1 >= xs_.size())
        i = xs_.size() - 2;
    if (x == xs_[i])
        return values_[i];
    if (x == xs_[i + 1])
        return values_[i + 1];

    const double h = xs_[i + 1] - xs_[i];
    const double s = (x - xs_[i]) / h;
    const double h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
    const double h10 = s * (1.0 - s) * (1.0 - s);
    const double h01 = s * s * (3.0 - 2.0 * s);
    const double h11 = s * s * (s - 1.0);
    return h00 * values_[i] + h10 * h * slopes_[i] + h01 * values_[i + 1] + h11 * h * slopes_[i + 1];
}

RealFn SampledFunction::to_function() const {
    auto shared = std::make_shared<SampledFunction>(*this);
    return [shared](double x) { return shared->eval(x); };
}

namespace {

double parse_cell(const std::string& cell, const std::string& path, std::size_t line,
                  const char* which) {
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    while (begin < end && (*begin == ' ' || *begin == '\t'))
        ++begin;
    while (end > begin && (end[-1] == ' ' || end[-1] == '\t'))
        --end;
    double out = 0.0;
    const auto res = std::from_chars(begin, end, out, std::chars_format::general);
    if (res.ec != std::errc{} || res.ptr != end || begin == end)
        throw InputError(path + ":" + std::to_string(line) + ": non-numeric " + which + " cell '" +
                         cell + "'");
    if (!std::isfinite(out))
        throw InputError(path + ":" + std::to_string(line) + ": non-finite " + which + " value");
    return out;
}

} // namespace

SampledFunction read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw InputError(path + ": cannot open file");

    std::string line;
    std::size_t lineno = 0;
    std::vector<double> xs, values;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        if (!saw_header) {
            if (line != "x,value")
                throw InputError(path + ":" + std::to_string(lineno) +
                                 ": expected header 'x,value', got '" + line + "'");
            saw_header = true;
            continue;
        }
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos)
            throw InputError(path + ":" + std::to_string(lineno) + ": expected two comma-separated cells");
        const double x = parse_cell(line.substr(0, comma), path, lineno, "x");
        const double v = parse_cell(line.substr(comma + 1), path, lineno, "value");
        if (x < 0.0)
            throw InputError(path + ":" + std::to_string(lineno) + ": negative x value");
        if (!xs.empty() && !(x > xs.back()))
            throw InputError(path + ":" + std::to_string(lineno) + ": x values not strictly increasing");
        xs.push_back(x);
        values.push_back(v);
    }
    if (!saw_header)
        throw InputError(path + ":1: empty file (expected header 'x,value')");
    if (xs.size() < 2)
        throw InputError(path + ": need at least 2 data rows");
    return SampledFunction::create(std::move(xs), std::move(values));
}

void write_csv(const SampledFunction& f, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw InputError(path + ": cannot open file for writing");
    out << "x,value\n";
    for (std::size_t i = 0; i < f.size(); ++i)
        out << fmt17(f.xs()[i]) << "," << fmt17(f.values()[i]) << "\n";
    if (!out)
        throw InputError(path + ": write failed");
}

} // namespace funceq
