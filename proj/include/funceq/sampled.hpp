#pragma once

#include <memory>
#include <string>
#include <vector>

#include "funceq/errors.hpp"
#include "funceq/real_fn.hpp"

namespace funceq {

/// A function known only through samples (xs[i], values[i]) with strictly
/// increasing xs >= 0. Evaluation between nodes uses shape-preserving
/// monotone cubic interpolation; evaluation outside [min_x, max_x] is a
/// DomainError naming the offending point. No extrapolation, ever.
class SampledFunction {
public:
    /// Validates: >= 2 samples, equal lengths, finite values, xs >= 0 strictly
    /// increasing. Throws UsageError / InputError accordingly.
    static SampledFunction create(std::vector<double> xs, std::vector<double> values);

    const std::vector<double>& xs() const { return xs_; }
    const std::vector<double>& values() const { return values_; }
    std::size_t size() const { return xs_.size(); }
    double min_x() const { return xs_.front(); }
    double max_x() const { return xs_.back(); }

    double eval(double x) const;

    /// Wrap as RealFn; the table is shared, not copied per call.
    RealFn to_function() const;

private:
    SampledFunction() = default;

    std::vector<double> xs_;
    std::vector<double> values_;
    std::vector<double> slopes_; // interpolant derivative at each node
};

/// Read a two-column CSV with header "x,value". Malformed content raises
/// InputError carrying the 1-based line number.
SampledFunction read_csv(const std::string& path);

/// Write the table in the same format (used by tests and tools).
void write_csv(const SampledFunction& f, const std::string& path);

} // namespace funceq
