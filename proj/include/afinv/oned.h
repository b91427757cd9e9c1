/** \file oned.h
    One-dimensional engine: the rational map f(x) = x - sum_j lambda_j/(x - a_j),
    its critical points (one per band between consecutive poles), the local
    inverse series by Lagrange inversion, and the action of the associated
    Hamiltonian H = y^2/2 + f(x)^2/2 as a series in the energy.
*/
#pragma once

#include "afinv/series.h"

#include <utility>
#include <vector>

namespace oned {

using num::Real;

/// Poles a_1 < ... < a_N with weights lambda_j > 0.  N = 0 (no poles,
/// f(x) = x) is allowed.
struct System {
    std::vector<Real> poles;
    std::vector<Real> weights;

    System(std::vector<Real> poles_in, std::vector<Real> weights_in);
    int pole_count() const { return static_cast<int>(poles.size()); }
};

/// f(x); throws std::domain_error at a pole.
Real f_value(const System& sys, const Real& x);
/// f'(x) = 1 + sum lambda_j/(x - a_j)^2 >= 1.
Real f_prime(const System& sys, const Real& x);

/// f written as q/p with p = prod (x - a_j) and q = x p - sum_j lambda_j prod_{i != j} (x - a_i).
struct RationalForm {
    num::RealPoly q, p;
};
RationalForm build_f(const System& sys);

struct CriticalPoint {
    int index;        // k in 0..N
    Real location;    // b_k, the zero of f inside the band
    Real band_lo;     // a_k (or -inf for k = 0)
    Real band_hi;     // a_{k+1} (or +inf for k = N)
    Real slope;       // f'(b_k) > 0
};

/// All N+1 zeros of f, one per band, sorted.  f is strictly increasing on
/// each band and spans -inf..+inf there, so bisection always succeeds.
std::vector<CriticalPoint> critical_points(const System& sys);

enum class LagrangeMethod { reversion, derivative_formula, root_tracking };

/// g_i(b_k) of the local inverse x_k(w) = b_k + sum_i g_i(b_k) w^i / i!.
struct LagrangeCoefficients {
    int index;
    Real center;          // b_k
    std::vector<Real> g;  // g[i-1] = g_i, i = 1..order
    int order() const { return static_cast<int>(g.size()); }
};

/// Taylor coefficients of f about `center` up to `order`, computed by the
/// exact shift of q and p followed by power-series division.
num::TruncatedSeries taylor_of_f(const System& sys, const Real& center, int order);

LagrangeCoefficients lagrange_coefficients(const System& sys,
                                           const std::vector<CriticalPoint>& cps,
                                           int k, int order, LagrangeMethod method);

/// Closed forms for the first two coefficients:
///   g_1 = prod_j (b_k - a_j) / prod_{l != k} (b_k - b_l)
///   g_2 = 2 g_1^2 (sum_j 1/(b_k - a_j) - sum_{l != k} 1/(b_k - b_l))
std::pair<Real, Real> closed_form_g1_g2(const System& sys,
                                        const std::vector<CriticalPoint>& cps, int k);

struct InverseValue {
    Real x;       // partial sum of the inverse series at w
    Real defect;  // |f(x) - w|, recomputed from scratch
};
InverseValue inverse_eval(const System& sys, const LagrangeCoefficients& coeffs, const Real& w);

/// Solves f(x) = w inside the band of cp by Newton started at b_k (or at
/// `start` when supplied).  f' >= 1 keeps the iteration well conditioned.
Real newton_track(const System& sys, const CriticalPoint& cp, const Real& w);
Real newton_track(const System& sys, const CriticalPoint& cp, const Real& w, const Real& start);

/// Action series A(c) = sum_p A_p c^p in the energy c, with
/// A_p = 2 pi * 2p / (2^p (p!)^2) * g_{2p-1}(b_k).  The harmonic limit
/// (no poles) gives A(c) = 2 pi c, which fixes the convention.
struct ActionSeries {
    int index;
    std::vector<Real> coeff;  // coeff[p-1] = A_p
};
ActionSeries action_series(const System& sys, const std::vector<CriticalPoint>& cps,
                           int k, int p_max);

/// Independent quadrature of the loop integral of x dy over the energy-c
/// orbit, parameterized by y = sqrt(2c) sin(theta), w = sqrt(2c) cos(theta),
/// with x obtained by Newton tracking (no series involved).  Trapezoid rule
/// with doubling until the relative change is below rel_tol.
Real action_quadrature(const System& sys, const std::vector<CriticalPoint>& cps,
                       int k, const Real& c, const Real& rel_tol);

struct IsochronicityReport {
    int index;
    std::vector<Real> coeff;  // A_1..A_P
    bool isochronous;         // all |A_p| < tol for p >= 2
    Real worst;               // max |A_p| over p >= 2
};
IsochronicityReport isochronicity_report(const System& sys,
                                         const std::vector<CriticalPoint>& cps,
                                         int k, int p_max, const Real& tol);

}  // namespace oned
