#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "funceq/errors.hpp"

namespace funceq {

/// Exact rational scalar used wherever floating-point roundoff would blur an
/// identity that must hold exactly.
using Rational = boost::multiprecision::cpp_rational;

/// An element a + b*sqrt(2) of the ring Z[sqrt 2], held as its integer
/// coordinate pair. Arithmetic and order are exact.
struct ZSqrt2 {
    std::int64_t a = 0;
    std::int64_t b = 0;

    /// Real embedding (rounded to double).
    double real() const;

    ZSqrt2 operator+(const ZSqrt2& o) const;
    ZSqrt2 operator-() const;
    bool operator==(const ZSqrt2&) const = default;

    std::string str() const; // "a+b*sqrt2" rendering for messages
};

/// Exact sign of the real embedding: -1, 0, or +1.
int sign(const ZSqrt2& x);

/// Exact order by real embedding.
bool less_exact(const ZSqrt2& x, const ZSqrt2& y);

/// The coefficient-wise additive map K(a + b*sqrt2) = alpha*a + beta*b with
/// exact rational weights. Additive on the whole ring by construction, yet
/// (for beta != alpha*sqrt2, automatic here) not the restriction of any linear
/// map: its ratios K(x)/x are unbounded near zero.
class ExactAdditiveOnZSqrt2 {
public:
    /// Throws DegenerateError when both weights are zero.
    ExactAdditiveOnZSqrt2(Rational alpha, Rational beta);

    const Rational& alpha() const { return alpha_; }
    const Rational& beta() const { return beta_; }

    /// Exact value alpha*a + beta*b.
    Rational operator()(const ZSqrt2& x) const;

    /// Value rounded to double.
    double value(const ZSqrt2& x) const;

private:
    Rational alpha_;
    Rational beta_;
};

/// Factory matching the library's naming for the unbounded-additive example.
ExactAdditiveOnZSqrt2 make_pathological_additive(const Rational& alpha, const Rational& beta);

} // namespace funceq
