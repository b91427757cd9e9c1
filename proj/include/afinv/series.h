/** \file series.h
    Dense univariate polynomials, truncated power series with reversion
    and composition, and bisection root isolation for monotone functions.
*/
#pragma once

#include "afinv/scalar.h"

#include <functional>
#include <stdexcept>
#include <vector>

namespace num {

/// Dense polynomial, coefficients lowest degree first.  The zero
/// polynomial has an empty coefficient list and degree -1.
template <typename T>
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Polynomial constant(const T& v) { return Polynomial(std::vector<T>{v}); }

    /// prod_k (x - roots[k])
    static Polynomial from_roots(const std::vector<T>& roots) {
        std::vector<T> c{T(1)};
        for (const T& r : roots) {
            c.push_back(T(0));
            for (std::size_t i = c.size() - 1; i > 0; --i)
                c[i] = c[i - 1] - r * c[i];
            c[0] = -r * c[0];
        }
        return Polynomial(std::move(c));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<T>& coeffs() const { return c_; }
    T coeff(int i) const { return i >= 0 && i <= degree() ? c_[i] : T(0); }

    T eval(const T& x) const {
        T acc(0);
        for (std::size_t i = c_.size(); i-- > 0;)
            acc = acc * x + c_[i];
        return acc;
    }

    Polynomial derivative() const {
        if (c_.size() <= 1)
            return Polynomial();
        std::vector<T> d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i)
            d[i - 1] = c_[i] * T(static_cast<long>(i));
        return Polynomial(std::move(d));
    }

    /// Coefficients of p(center + xi) in xi, padded with zeros to `order`.
    /// Exact Taylor shift by repeated synthetic division.
    std::vector<T> taylor_at(const T& center, int order) const {
        std::vector<T> work = c_;
        int n = degree();
        for (int j = 0; j <= n; ++j)
            for (int i = n - 1; i >= j; --i)
                work[i] += center * work[i + 1];
        work.resize(order + 1, T(0));
        return work;
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        std::vector<T> c(std::max(a.c_.size(), b.c_.size()), T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
        return Polynomial(std::move(c));
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        std::vector<T> c(std::max(a.c_.size(), b.c_.size()), T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
        return Polynomial(std::move(c));
    }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero())
            return Polynomial();
        std::vector<T> c(a.c_.size() + b.c_.size() - 1, T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                c[i + j] += a.c_[i] * b.c_[j];
        return Polynomial(std::move(c));
    }
    friend Polynomial operator*(const T& s, const Polynomial& p) {
        std::vector<T> c = p.c_;
        for (T& v : c) v *= s;
        return Polynomial(std::move(c));
    }

private:
    std::vector<T> c_;
    void trim() {
        while (!c_.empty() && c_.back() == 0)
            c_.pop_back();
    }
};

using RealPoly = Polynomial<Real>;

/// One-variable power series truncated at a fixed order, expanded about
/// `center`: f(center + xi) = sum_i coeff[i] xi^i + O(xi^{order+1}).
struct TruncatedSeries {
    Real center{0};
    std::vector<Real> coeff;  // c_0 .. c_M

    TruncatedSeries() = default;
    TruncatedSeries(Real c, std::vector<Real> cs) : center(std::move(c)), coeff(std::move(cs)) {
        if (coeff.empty())
            throw std::invalid_argument("series needs at least the constant term");
    }
    int order() const { return static_cast<int>(coeff.size()) - 1; }
    Real eval(const Real& xi) const {
        Real acc = 0;
        for (std::size_t i = coeff.size(); i-- > 0;)
            acc = acc * xi + coeff[i];
        return acc;
    }
};

/// Product of coefficient lists truncated at `order` (inclusive).
std::vector<Real> mul_trunc(const std::vector<Real>& a, const std::vector<Real>& b, int order);

/// Composition (outer o inner) truncated at min(orders); inner must
/// have an exactly zero constant term.
TruncatedSeries series_compose(const TruncatedSeries& outer, const TruncatedSeries& inner);

/// Compositional inverse d of s: d(s(xi)) = xi + O(xi^{M+1}).
/// Requires coeff[0] = 0 and coeff[1] != 0.  The result is centered at 0
/// (a series in the value w of s).
TruncatedSeries series_reverse(const TruncatedSeries& s);

/// Reciprocal series 1/s truncated at the order of s; needs coeff[0] != 0.
std::vector<Real> series_reciprocal(const std::vector<Real>& s);

/// Bisection for a strictly monotone g with a sign change on [lo, hi].
/// The root is located to |interval| <= 10^-digits * max(1, |lo|, |hi|).
Real isolate_monotone_root(const std::function<Real(const Real&)>& g,
                           Real lo, Real hi, unsigned digits);

}  // namespace num
