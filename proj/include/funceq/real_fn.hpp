#pragma once

#include <functional>

namespace funceq {

/// A real-valued function of one real variable. The library treats these as
/// total on the domains it feeds them; wrappers (tables) may throw
/// DomainError for points they cannot serve.
using RealFn = std::function<double(double)>;

} // namespace funceq
