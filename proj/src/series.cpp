#include "afinv/series.h"

#include <sstream>

namespace num {

std::vector<Real> mul_trunc(const std::vector<Real>& a, const std::vector<Real>& b, int order) {
    std::vector<Real> c(order + 1, Real(0));
    for (std::size_t i = 0; i < a.size() && static_cast<int>(i) <= order; ++i) {
        if (a[i] == 0)
            continue;
        std::size_t jmax = std::min(b.size(), static_cast<std::size_t>(order + 1 - i));
        for (std::size_t j = 0; j < jmax; ++j)
            c[i + j] += a[i] * b[j];
    }
    return c;
}

TruncatedSeries series_compose(const TruncatedSeries& outer, const TruncatedSeries& inner) {
    if (inner.coeff[0] != 0)
        throw std::invalid_argument("series_compose: inner constant term must be zero");
    int order = std::min(outer.order(), inner.order());
    std::vector<Real> acc(order + 1, Real(0));
    acc[0] = outer.coeff[std::min(outer.order(), order)];
    for (int k = std::min(outer.order(), order) - 1; k >= 0; --k) {
        acc = mul_trunc(acc, inner.coeff, order);
        acc[0] += outer.coeff[k];
    }
    TruncatedSeries out;
    out.center = inner.center;
    out.coeff = std::move(acc);
    return out;
}

TruncatedSeries series_reverse(const TruncatedSeries& s) {
    if (s.coeff[0] != 0)
        throw std::invalid_argument("series_reverse: constant term must be zero");
    int M = s.order();
    if (M < 1 || s.coeff[1] == 0)
        throw std::domain_error("series_reverse: zero linear coefficient (degenerate)");

    // powers of s truncated at M; spow[i] = s^i
    std::vector<std::vector<Real>> spow(M + 1);
    spow[1] = s.coeff;
    for (int i = 2; i <= M; ++i)
        spow[i] = mul_trunc(spow[i - 1], s.coeff, M);

    // triangular solve: [xi^k] sum_i d_i s^i = delta_{k,1}
    std::vector<Real> d(M + 1, Real(0));
    const Real& c1 = s.coeff[1];
    Real c1k = c1;  // c1^k
    d[1] = 1 / c1;
    for (int k = 2; k <= M; ++k) {
        c1k *= c1;
        Real sum = 0;
        for (int i = 1; i < k; ++i)
            sum += d[i] * spow[i][k];
        d[k] = -sum / c1k;
    }
    TruncatedSeries out;
    out.center = Real(0);
    out.coeff = std::move(d);
    return out;
}

std::vector<Real> series_reciprocal(const std::vector<Real>& s) {
    if (s.empty() || s[0] == 0)
        throw std::domain_error("series_reciprocal: zero constant term");
    std::vector<Real> r(s.size());
    r[0] = 1 / s[0];
    for (std::size_t k = 1; k < s.size(); ++k) {
        Real sum = 0;
        for (std::size_t j = 1; j <= k; ++j)
            sum += (j < s.size() ? s[j] : Real(0)) * r[k - j];
        r[k] = -sum / s[0];
    }
    return r;
}

Real isolate_monotone_root(const std::function<Real(const Real&)>& g,
                           Real lo, Real hi, unsigned digits) {
    if (!(lo < hi))
        throw std::invalid_argument("isolate_monotone_root: empty bracket");
    Real flo = g(lo), fhi = g(hi);
    if (flo == 0)
        return lo;
    if (fhi == 0)
        return hi;
    if ((flo < 0) == (fhi < 0)) {
        std::ostringstream msg;
        msg << "isolate_monotone_root: no sign change on bracket [" << lo << ", " << hi
            << "]; g(lo)=" << flo << ", g(hi)=" << fhi;
        throw std::runtime_error(msg.str());
    }
    Real scale = std::max(Real(1), std::max(abs(lo), abs(hi)));
    Real tol = pow10(-static_cast<long>(digits)) * scale;
    bool lo_negative = flo < 0;
    while (hi - lo > tol) {
        Real mid = (lo + hi) / 2;
        if (mid <= lo || mid >= hi)
            break;  // hit the precision floor
        Real fm = g(mid);
        if (fm == 0)
            return mid;
        if ((fm < 0) == lo_negative)
            lo = mid;
        else
            hi = mid;
    }
    return (lo + hi) / 2;
}

}  // namespace num
