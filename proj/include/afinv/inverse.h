/** \file inverse.h
    Assembly of the truncated inverse G_t(z) = z + t grad Q_t(z) from the
    tree layers, a damped-Newton oracle for the exact inverse on a chamber,
    residual-order measurement in t, and the Burgers-equation check for
    U_t = grad Q_t.
*/
#pragma once

#include "afinv/trees.h"

namespace invmap {

using num::Real;
using num::Vec;

struct InverseSeriesResult {
    Vec input;
    Real t;
    int order;   // highest layer M included in Q_t
    Vec output;  // z + sum_{m=0}^{M} t^{m+1} grad Q^[m](z)
    Real residual;  // |F_t(output) - input|, recomputed at return time
    std::vector<Vec> layer_contributions;  // t^{m+1} grad Q^[m](z), m = 0..M
};

/// Truncated series inverse at z; layer 0 gradient is grad P.
InverseSeriesResult g_t_eval(const hyper::Arrangement& arr, const Vec& z,
                             const Real& t, int order);

/// U_t(z) = sum_{m=0}^{M} t^m grad Q^[m](z), the truncated gradient field.
Vec grad_q(const hyper::Arrangement& arr, const Vec& z, const Real& t, int order);

/// Solves F_t(z) = w by damped Newton from `seed`, halving the step until
/// the iterate keeps the seed's chamber signature and the residual drops.
/// The Jacobian is exact: J = I - t Hess P.  Converges to
/// |F_t(z) - w| <= 10^(10-D).
Vec newton_inverse(const hyper::Arrangement& arr, const Vec& w, const Real& t, const Vec& seed);

struct SlopeFit {
    Real slope;
    Real intercept;
    std::vector<std::pair<Real, Real>> points;  // (log t, log residual)
};

/// Least-squares slope of log |F_t(G_t(z)) - z| against log t over the grid;
/// truncating Q at layer M leaves a t^{M+2} defect, so the slope is M+2.
SlopeFit residual_order(const hyper::Arrangement& arr, const Vec& z, int order,
                        const std::vector<Real>& t_grid);

/// |dU/dt - J(U) U| for the truncated U_t = grad Q_t: d/dt by central
/// difference with step dt, J(U) exact per layer.  O(t^M) + O(dt^2).
Real burgers_residual(const hyper::Arrangement& arr, const Vec& z, const Real& t,
                      int order, const Real& dt);

/// Gaussian elimination with partial pivoting (small dense systems).
Vec solve_linear(std::vector<Vec> a, Vec b);

}  // namespace invmap
