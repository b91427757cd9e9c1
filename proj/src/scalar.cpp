#include "afinv/scalar.h"

#include <cctype>
#include <stdexcept>

namespace num {

namespace {
constexpr unsigned kGuardDigits = 12;
unsigned g_digits = 0;
}  // namespace

void set_working_digits(unsigned digits) {
    if (digits < 10 || digits > 2000)
        throw std::invalid_argument("working digits must lie in [10, 2000]");
    g_digits = digits;
    Real::default_precision(digits + kGuardDigits);
}

unsigned working_digits() {
    if (g_digits == 0)
        set_working_digits(50);
    return g_digits;
}

PrecisionGuard::PrecisionGuard(unsigned digits) : saved_(Real::default_precision()) {
    working_digits();  // make sure defaults are initialized
    saved_ = Real::default_precision();
    if (digits + kGuardDigits > saved_)
        Real::default_precision(digits + kGuardDigits);
}

PrecisionGuard::~PrecisionGuard() {
    Real::default_precision(saved_);
}

Real real_pi() {
    working_digits();
    return 4 * atan(Real(1));
}

Real pow10(long k) {
    working_digits();
    return pow(Real(10), static_cast<int>(k));
}

Real to_real(const Rational& q) {
    working_digits();
    return Real(numerator(q)) / Real(denominator(q));
}

Rational rational_from_string(const std::string& text) {
    if (text.empty())
        throw std::invalid_argument("empty number literal");
    if (text.find('/') != std::string::npos) {
        // GMP parses "p/q" directly; it throws on malformed input.
        Rational q(text);
        return q;
    }
    // decimal with optional exponent: [sign]digits[.digits][e[sign]digits]
    std::size_t pos = 0;
    bool negative = false;
    if (text[pos] == '+' || text[pos] == '-') {
        negative = text[pos] == '-';
        ++pos;
    }
    Integer n = 0;
    long scale = 0;  // power of ten to divide by
    bool seen_dot = false, seen_digit = false;
    for (; pos < text.size(); ++pos) {
        char c = text[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            n = n * 10 + (c - '0');
            seen_digit = true;
            if (seen_dot)
                ++scale;
        } else if (c == '.' && !seen_dot) {
            seen_dot = true;
        } else if ((c == 'e' || c == 'E') && seen_digit) {
            break;
        } else {
            throw std::invalid_argument("malformed number literal: " + text);
        }
    }
    long exponent = 0;
    if (pos < text.size()) {  // exponent part
        ++pos;
        if (pos >= text.size())
            throw std::invalid_argument("malformed number literal: " + text);
        exponent = std::stol(text.substr(pos));
    }
    if (!seen_digit)
        throw std::invalid_argument("malformed number literal: " + text);
    if (negative)
        n = -n;
    long net = exponent - scale;
    Integer den = 1, mul = 1;
    Integer ten = 10;
    if (net >= 0)
        mul = pow(ten, static_cast<unsigned>(net));
    else
        den = pow(ten, static_cast<unsigned>(-net));
    return Rational(n * mul, den);
}

Real real_from_string(const std::string& text) {
    return to_real(rational_from_string(text));
}

Real dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("dot: dimension mismatch");
    Real s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

Real norm(const Vec& v) {
    Real s = 0;
    for (const Real& x : v)
        s += x * x;
    return sqrt(s);
}

}  // namespace num
