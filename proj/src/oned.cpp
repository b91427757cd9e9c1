#include "afinv/oned.h"

#include <limits>
#include <sstream>
#include <stdexcept>

namespace oned {

using num::pow10;
using num::Real;
using num::TruncatedSeries;

System::System(std::vector<Real> poles_in, std::vector<Real> weights_in)
    : poles(std::move(poles_in)), weights(std::move(weights_in)) {
    if (poles.size() != weights.size())
        throw std::invalid_argument("pole and weight counts differ");
    for (std::size_t j = 0; j + 1 < poles.size(); ++j)
        if (!(poles[j] < poles[j + 1]))
            throw std::invalid_argument("poles must be strictly increasing");
    for (std::size_t j = 0; j < weights.size(); ++j)
        if (!(weights[j] > 0))
            throw std::invalid_argument("weights must be strictly positive");
}

Real f_value(const System& sys, const Real& x) {
    Real s = x;
    for (std::size_t j = 0; j < sys.poles.size(); ++j) {
        Real d = x - sys.poles[j];
        if (d == 0)
            throw std::domain_error("f evaluated at a pole");
        s -= sys.weights[j] / d;
    }
    return s;
}

Real f_prime(const System& sys, const Real& x) {
    Real s = 1;
    for (std::size_t j = 0; j < sys.poles.size(); ++j) {
        Real d = x - sys.poles[j];
        if (d == 0)
            throw std::domain_error("f' evaluated at a pole");
        s += sys.weights[j] / (d * d);
    }
    return s;
}

RationalForm build_f(const System& sys) {
    num::RealPoly p = num::RealPoly::from_roots(sys.poles);
    num::RealPoly q = num::RealPoly(std::vector<Real>{Real(0), Real(1)}) * p;
    for (std::size_t j = 0; j < sys.poles.size(); ++j) {
        std::vector<Real> others;
        for (std::size_t i = 0; i < sys.poles.size(); ++i)
            if (i != j)
                others.push_back(sys.poles[i]);
        q = q - sys.weights[j] * num::RealPoly::from_roots(others);
    }
    return RationalForm{q, p};
}

namespace {

// Walks geometrically from `from` toward `pole` until f has the expected
// sign (f blows up at the pole); returns the probe point.
Real approach_pole(const System& sys, const Real& pole, const Real& from, bool want_negative) {
    Real offset = (from - pole) / 2;
    for (int i = 0; i < 16 * static_cast<int>(num::working_digits()); ++i) {
        Real x = pole + offset;
        Real v = f_value(sys, x);
        if ((v < 0) == want_negative)
            return x;
        offset /= 2;
    }
    throw std::runtime_error("internal error: no sign change approaching a pole");
}

// Doubles the offset away from `pole` on an unbounded band until f has the
// expected sign; f(x) -> +-inf as x -> +-inf because of the leading x term.
Real grow_outward(const System& sys, const Real& pole, bool rightward, bool want_negative) {
    Real offset = 1;
    for (int i = 0; i <= 64; ++i) {
        Real x = rightward ? pole + offset : pole - offset;
        Real v = f_value(sys, x);
        if ((v < 0) == want_negative)
            return x;
        offset *= 2;
    }
    std::ostringstream msg;
    msg << "no sign change after 64 doublings from pole " << pole;
    throw std::runtime_error(msg.str());
}

}  // namespace

std::vector<CriticalPoint> critical_points(const System& sys) {
    const int N = sys.pole_count();
    const Real inf = std::numeric_limits<Real>::infinity();
    const unsigned digits = num::working_digits() + 5;
    std::vector<CriticalPoint> cps;
    cps.reserve(N + 1);
    auto f = [&sys](const Real& x) { return f_value(sys, x); };

    if (N == 0) {
        cps.push_back({0, Real(0), -inf, inf, Real(1)});
        return cps;
    }
    for (int k = 0; k <= N; ++k) {
        Real lo, hi;
        if (k == 0) {
            hi = approach_pole(sys, sys.poles[0], sys.poles[0] - 1, false);
            lo = grow_outward(sys, sys.poles[0], false, true);
        } else if (k == N) {
            lo = approach_pole(sys, sys.poles[N - 1], sys.poles[N - 1] + 1, true);
            hi = grow_outward(sys, sys.poles[N - 1], true, false);
        } else {
            Real mid = (sys.poles[k - 1] + sys.poles[k]) / 2;
            lo = approach_pole(sys, sys.poles[k - 1], mid, true);
            hi = approach_pole(sys, sys.poles[k], mid, false);
        }
        Real b = num::isolate_monotone_root(f, lo, hi, digits);
        CriticalPoint cp;
        cp.index = k;
        cp.location = b;
        cp.band_lo = k == 0 ? -inf : sys.poles[k - 1];
        cp.band_hi = k == N ? inf : sys.poles[k];
        cp.slope = f_prime(sys, b);
        cps.push_back(cp);
    }
    return cps;
}

TruncatedSeries taylor_of_f(const System& sys, const Real& center, int order) {
    RationalForm rf = build_f(sys);
    std::vector<Real> qs = rf.q.taylor_at(center, order);
    std::vector<Real> ps = rf.p.taylor_at(center, order);
    if (ps[0] == 0)
        throw std::domain_error("Taylor center is a pole");
    // power-series division q/p
    std::vector<Real> t(order + 1);
    for (int k = 0; k <= order; ++k) {
        Real acc = qs[k];
        for (int j = 1; j <= k; ++j)
            acc -= ps[j] * t[k - j];
        t[k] = acc / ps[0];
    }
    TruncatedSeries out;
    out.center = center;
    out.coeff = std::move(t);
    return out;
}

namespace {

void check_k_order(const std::vector<CriticalPoint>& cps, int k, int order) {
    if (k < 0 || k >= static_cast<int>(cps.size()))
        throw std::invalid_argument("critical point index out of range");
    if (order < 1)
        throw std::invalid_argument("series order must be >= 1");
}

LagrangeCoefficients by_reversion(const System& sys, const CriticalPoint& cp, int order) {
    TruncatedSeries ts = taylor_of_f(sys, cp.location, order);
    // b_k is a zero of f to working precision; clear the residual constant
    if (abs(ts.coeff[0]) > pow10(5 - static_cast<long>(num::working_digits())) *
                               std::max(Real(1), abs(cp.location)))
        throw std::domain_error("center is not a zero of f at working precision");
    ts.coeff[0] = 0;
    TruncatedSeries inv = num::series_reverse(ts);
    LagrangeCoefficients out{cp.index, cp.location, {}};
    out.g.resize(order);
    Real fact = 1;
    for (int i = 1; i <= order; ++i) {
        fact *= i;
        out.g[i - 1] = inv.coeff[i] * fact;
    }
    return out;
}

// g_i = (i-1)! [xi^{i-1}] (xi / f(b_k + xi))^i, read off the reciprocal of
// the reduced Taylor series f(b_k + xi)/xi; no symbolic differentiation.
LagrangeCoefficients by_derivative_formula(const System& sys, const CriticalPoint& cp, int order) {
    TruncatedSeries ts = taylor_of_f(sys, cp.location, order);
    std::vector<Real> base(order);  // f(b_k+xi)/xi, coefficients t_1..t_M
    for (int i = 0; i < order; ++i)
        base[i] = ts.coeff[i + 1];
    std::vector<Real> recip = num::series_reciprocal(base);  // to order M-1
    LagrangeCoefficients out{cp.index, cp.location, {}};
    out.g.resize(order);
    std::vector<Real> power = recip;
    Real fact = 1;  // (i-1)!
    out.g[0] = recip[0];
    for (int i = 2; i <= order; ++i) {
        power = num::mul_trunc(power, recip, order - 1);
        fact *= i - 1;
        out.g[i - 1] = power[i - 1] * fact;
    }
    return out;
}

// Purely numerical third route: solve f(x) = w on a grid of small w by
// Newton tracking, interpolate, and read the derivatives at w = 0.
LagrangeCoefficients by_root_tracking(const System& sys, const CriticalPoint& cp, int order) {
    Real scale = 1;
    bool finite_lo = !isinf(cp.band_lo), finite_hi = !isinf(cp.band_hi);
    if (finite_lo && finite_hi)
        scale = std::min(cp.location - cp.band_lo, cp.band_hi - cp.location);
    else if (finite_lo)
        scale = cp.location - cp.band_lo;
    else if (finite_hi)
        scale = cp.band_hi - cp.location;
    Real h = Real("1e-3") * scale;

    const int n = 2 * order + 1;
    std::vector<Real> ws(n), xs(n);
    ws[order] = 0;
    xs[order] = cp.location;
    Real prev = cp.location;
    for (int j = 1; j <= order; ++j) {  // outward, reusing the last root as seed
        ws[order + j] = j * h;
        xs[order + j] = prev = newton_track(sys, cp, ws[order + j], prev);
    }
    prev = cp.location;
    for (int j = 1; j <= order; ++j) {
        ws[order - j] = -j * h;
        xs[order - j] = prev = newton_track(sys, cp, ws[order - j], prev);
    }

    // divided differences, then Newton form -> monomial coefficients
    std::vector<Real> dd = xs;
    for (int level = 1; level < n; ++level)
        for (int i = n - 1; i >= level; --i)
            dd[i] = (dd[i] - dd[i - 1]) / (ws[i] - ws[i - level]);
    std::vector<Real> poly{dd[n - 1]};
    for (int i = n - 2; i >= 0; --i) {
        poly.insert(poly.begin(), Real(0));
        for (std::size_t j = 0; j + 1 < poly.size(); ++j)
            poly[j] -= ws[i] * poly[j + 1];
        poly[0] += dd[i];
    }

    LagrangeCoefficients out{cp.index, cp.location, {}};
    out.g.resize(order);
    Real fact = 1;
    for (int i = 1; i <= order; ++i) {
        fact *= i;
        out.g[i - 1] = poly[i] * fact;
    }
    return out;
}

}  // namespace

LagrangeCoefficients lagrange_coefficients(const System& sys,
                                           const std::vector<CriticalPoint>& cps,
                                           int k, int order, LagrangeMethod method) {
    check_k_order(cps, k, order);
    switch (method) {
        case LagrangeMethod::reversion:
            return by_reversion(sys, cps[k], order);
        case LagrangeMethod::derivative_formula:
            return by_derivative_formula(sys, cps[k], order);
        case LagrangeMethod::root_tracking:
            return by_root_tracking(sys, cps[k], order);
    }
    throw std::logic_error("unknown method");
}

std::pair<Real, Real> closed_form_g1_g2(const System& sys,
                                        const std::vector<CriticalPoint>& cps, int k) {
    check_k_order(cps, k, 1);
    const Real& b = cps[k].location;
    Real num_prod = 1, den_prod = 1;
    Real sum_a = 0, sum_b = 0;
    for (const Real& a : sys.poles) {
        num_prod *= b - a;
        sum_a += 1 / (b - a);
    }
    for (const CriticalPoint& cp : cps) {
        if (cp.index == k)
            continue;
        den_prod *= b - cp.location;
        sum_b += 1 / (b - cp.location);
    }
    Real g1 = num_prod / den_prod;
    Real g2 = 2 * g1 * g1 * (sum_a - sum_b);
    return {g1, g2};
}

InverseValue inverse_eval(const System& sys, const LagrangeCoefficients& coeffs, const Real& w) {
    Real x = coeffs.center;
    Real term = 1;  // w^i / i!
    for (int i = 1; i <= coeffs.order(); ++i) {
        term *= w / i;
        x += coeffs.g[i - 1] * term;
    }
    return {x, abs(f_value(sys, x) - w)};
}

Real newton_track(const System& sys, const CriticalPoint& cp, const Real& w) {
    return newton_track(sys, cp, w, cp.location);
}

Real newton_track(const System& sys, const CriticalPoint& cp, const Real& w, const Real& start) {
    Real x = start;
    Real tol = pow10(3 - static_cast<long>(num::working_digits())) * std::max(Real(1), abs(w));
    for (int iter = 0; iter < 200; ++iter) {
        Real r = f_value(sys, x) - w;
        if (abs(r) <= tol)
            return x;
        Real step = r / f_prime(sys, x);
        Real xn = x - step;
        // stay strictly inside the band
        if (!(xn > cp.band_lo))
            xn = (x + cp.band_lo) / 2;
        if (!(xn < cp.band_hi))
            xn = (x + cp.band_hi) / 2;
        x = xn;
    }
    std::ostringstream msg;
    msg << "Newton tracking failed to converge for w = " << w << " in band " << cp.index;
    throw std::runtime_error(msg.str());
}

ActionSeries action_series(const System& sys, const std::vector<CriticalPoint>& cps,
                           int k, int p_max) {
    check_k_order(cps, k, p_max);
    LagrangeCoefficients lc =
        lagrange_coefficients(sys, cps, k, 2 * p_max - 1, LagrangeMethod::reversion);
    ActionSeries out{k, {}};
    out.coeff.resize(p_max);
    Real two_pi = 2 * num::real_pi();
    for (int p = 1; p <= p_max; ++p) {
        // 2p / (2^p (p!)^2), kept exact until the final multiply
        num::Integer fact = 1;
        for (int i = 2; i <= p; ++i)
            fact *= i;
        num::Rational r(num::Integer(2 * p), pow(num::Integer(2), p) * fact * fact);
        out.coeff[p - 1] = two_pi * num::to_real(r) * lc.g[2 * p - 2];
    }
    return out;
}

Real action_quadrature(const System& sys, const std::vector<CriticalPoint>& cps,
                       int k, const Real& c, const Real& rel_tol) {
    check_k_order(cps, k, 1);
    if (!(c > 0))
        throw std::invalid_argument("energy c must be positive");
    const CriticalPoint& cp = cps[k];
    Real s = sqrt(2 * c);
    Real pi = num::real_pi();

    // trapezoid with doubling; refinement adds the midpoint samples only
    auto sample = [&](const Real& theta) {
        Real w = s * cos(theta);
        return newton_track(sys, cp, w) * s * cos(theta);  // x(w) * dy/dtheta
    };
    int n = 64;
    Real sum = 0;
    for (int j = 0; j < n; ++j)
        sum += sample(2 * pi * j / n);
    Real value = sum * 2 * pi / n;
    for (int round = 0; round < 11; ++round) {
        Real mid = 0;
        for (int j = 0; j < n; ++j)
            mid += sample(2 * pi * (2 * j + 1) / (2 * n));
        n *= 2;
        sum += mid;
        Real next = sum * 2 * pi / n;
        if (abs(next - value) <= rel_tol * abs(next))
            return next;
        value = next;
    }
    throw std::runtime_error("action quadrature did not reach the requested tolerance");
}

IsochronicityReport isochronicity_report(const System& sys,
                                         const std::vector<CriticalPoint>& cps,
                                         int k, int p_max, const Real& tol) {
    ActionSeries as = action_series(sys, cps, k, p_max);
    IsochronicityReport rep{k, as.coeff, true, Real(0)};
    for (int p = 2; p <= p_max; ++p) {
        Real mag = abs(as.coeff[p - 1]);
        if (mag > rep.worst)
            rep.worst = mag;
        if (mag >= tol)
            rep.isochronous = false;
    }
    return rep;
}

}  // namespace oned
