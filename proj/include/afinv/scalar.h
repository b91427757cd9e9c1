/** \file scalar.h
    Arbitrary-precision scalar types used throughout the library:
    an exact rational (GMP) and a floating-point real whose precision
    is set globally in decimal digits (MPFR).
*/
#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <string>
#include <vector>

namespace num {

using Real = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<0>, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<
    boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<
    boost::multiprecision::gmp_int, boost::multiprecision::et_off>;

using Vec = std::vector<Real>;

/// Sets the working precision D in decimal digits (default 50).  A small
/// guard is added internally so that O(degree)-long accumulations stay
/// below 10^(1-D) relative error.  Call before constructing any Real.
void set_working_digits(unsigned digits);

/// The current working precision D in decimal digits.
unsigned working_digits();

/// Temporarily raises the precision of newly constructed Reals; restores
/// the previous setting on destruction.  Never lowers the precision.
class PrecisionGuard {
public:
    explicit PrecisionGuard(unsigned digits);
    ~PrecisionGuard();
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;

private:
    unsigned saved_;
};

Real real_pi();

/// 10^k at working precision.
Real pow10(long k);

Real to_real(const Rational& q);

/// Parses "7", "-3/4", "0.25" or "1.5e-3" into an exact rational.
Rational rational_from_string(const std::string& text);

/// Real from decimal text; accepts the rational forms above as well.
Real real_from_string(const std::string& text);

Real dot(const Vec& a, const Vec& b);
Real norm(const Vec& v);

}  // namespace num
