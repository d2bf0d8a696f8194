#include "funceq/kernels.hpp"

namespace funceq {

double eval_hrho(double rho, double t) {
    if (!std::isfinite(rho) || !std::isfinite(t))
        throw InputError("eval_hrho: non-finite argument");
    if (rho == 0.0)
        return t;

    const double x = rho * t;
    if (std::fabs(x) >= kHrhoSeriesSwitch) {
        // expm1 keeps the small-|x| end of this branch accurate to ~1 ulp,
        // so both branches agree tightly at the switch point.
        return -std::expm1(-x) / rho;
    }

    // H_rho(t) = t * sum_{k>=0} (-x)^k / (k+1)!; with |x| < 1e-4 a handful of
    // terms reaches machine precision.
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k <= 12; ++k) {
        term *= -x / static_cast<double>(k + 1);
        const double next = sum + term;
        if (next == sum)
            break;
        sum = next;
    }
    return t * sum;
}

} // namespace funceq
