#include "funceq/zsqrt2.hpp"

#include <cmath>

namespace funceq {

double ZSqrt2::real() const {
    return static_cast<double>(a) + static_cast<double>(b) * std::sqrt(2.0);
}

ZSqrt2 ZSqrt2::operator+(const ZSqrt2& o) const {
    ZSqrt2 r;
    if (__builtin_add_overflow(a, o.a, &r.a) || __builtin_add_overflow(b, o.b, &r.b))
        throw RangeError("ZSqrt2: coefficient overflow in addition");
    return r;
}

ZSqrt2 ZSqrt2::operator-() const {
    if (a == INT64_MIN || b == INT64_MIN)
        throw RangeError("ZSqrt2: coefficient overflow in negation");
    return {-a, -b};
}

std::string ZSqrt2::str() const {
    return std::to_string(a) + (b < 0 ? "" : "+") + std::to_string(b) + "*sqrt2";
}

int sign(const ZSqrt2& x) {
    if (x.a == 0 && x.b == 0)
        return 0;
    if (x.a >= 0 && x.b >= 0)
        return 1;
    if (x.a <= 0 && x.b <= 0)
        return -1;
    // Mixed signs: compare a^2 against 2 b^2 in 128-bit arithmetic; both fit
    // for any int64 coordinates. a + b*sqrt2 > 0 with a > 0 > b iff a^2 > 2 b^2.
    const __int128 a2 = static_cast<__int128>(x.a) * x.a;
    const __int128 b2 = static_cast<__int128>(x.b) * x.b * 2;
    if (x.a > 0) // b < 0
        return a2 > b2 ? 1 : (a2 < b2 ? -1 : 0);
    // a < 0 < b
    return b2 > a2 ? 1 : (b2 < a2 ? -1 : 0);
}

bool less_exact(const ZSqrt2& x, const ZSqrt2& y) {
    // x < y  iff  y - x > 0; form the difference without overflow traps by
    // comparing through the sign of (y.a - x.a) + (y.b - x.b) sqrt2 in 128-bit.
    const __int128 da = static_cast<__int128>(y.a) - x.a;
    const __int128 db = static_cast<__int128>(y.b) - x.b;
    if (da == 0 && db == 0)
        return false;
    if (da >= 0 && db >= 0)
        return true;
    if (da <= 0 && db <= 0)
        return false;
    // Mixed signs; |da|,|db| < 2^64 so squares fit in unsigned 128-bit.
    const unsigned __int128 ua = da < 0 ? static_cast<unsigned __int128>(-da)
                                        : static_cast<unsigned __int128>(da);
    const unsigned __int128 ub = db < 0 ? static_cast<unsigned __int128>(-db)
                                        : static_cast<unsigned __int128>(db);
    // Compare ua^2 against 2 ub^2 without overflowing: both operands are
    // < 2^128 only if |da|,|db| < 2^63.5; coefficients this large never arise
    // (enumeration bounds are ~1e6), but guard by widening through long double
    // only when the exact compare could overflow.
    if (ua < (static_cast<unsigned __int128>(1) << 63) &&
        ub < (static_cast<unsigned __int128>(1) << 63)) {
        const unsigned __int128 a2 = ua * ua;
        const unsigned __int128 b2 = ub * ub;
        const bool positive = (da > 0) ? (a2 > 2 * b2) : (2 * b2 > a2);
        if (a2 == 2 * b2)
            return false; // equal embeddings cannot happen for distinct elements
        return positive;
    }
    throw RangeError("less_exact: coefficients too large for exact comparison");
}

ExactAdditiveOnZSqrt2::ExactAdditiveOnZSqrt2(Rational alpha, Rational beta)
    : alpha_(std::move(alpha)), beta_(std::move(beta)) {
    if (alpha_ == 0 && beta_ == 0)
        throw DegenerateError("ExactAdditiveOnZSqrt2: alpha and beta are both zero");
}

Rational ExactAdditiveOnZSqrt2::operator()(const ZSqrt2& x) const {
    return alpha_ * x.a + beta_ * x.b;
}

double ExactAdditiveOnZSqrt2::value(const ZSqrt2& x) const {
    return static_cast<double>((*this)(x));
}

ExactAdditiveOnZSqrt2 make_pathological_additive(const Rational& alpha, const Rational& beta) {
    return {alpha, beta};
}

} // namespace funceq
