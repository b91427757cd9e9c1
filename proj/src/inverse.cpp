#include "afinv/inverse.h"

#include <sstream>
#include <stdexcept>

namespace invmap {

Vec grad_q(const hyper::Arrangement& arr, const Vec& z, const Real& t, int order) {
    Vec u = hyper::grad_potential(arr, z);
    Real tm = 1;
    for (int m = 1; m <= order; ++m) {
        tm *= t;
        Vec g = trees::evaluate_layer_gradient(trees::q_layer(m), arr, z);
        for (int i = 0; i < arr.dim(); ++i)
            u[i] += tm * g[i];
    }
    return u;
}

InverseSeriesResult g_t_eval(const hyper::Arrangement& arr, const Vec& z,
                             const Real& t, int order) {
    if (order < 0)
        throw std::invalid_argument("order must be >= 0");
    InverseSeriesResult res;
    res.input = z;
    res.t = t;
    res.order = order;
    res.output = z;
    res.layer_contributions.reserve(order + 1);
    Real tp = t;  // t^{m+1}
    for (int m = 0; m <= order; ++m) {
        Vec g = m == 0 ? hyper::grad_potential(arr, z)
                       : trees::evaluate_layer_gradient(trees::q_layer(m), arr, z);
        for (int i = 0; i < arr.dim(); ++i)
            g[i] *= tp;
        for (int i = 0; i < arr.dim(); ++i)
            res.output[i] += g[i];
        res.layer_contributions.push_back(std::move(g));
        tp *= t;
    }
    if (t == 0) {
        res.residual = 0;
        return res;
    }
    Vec back = hyper::forward_map(arr, res.output, t);
    for (int i = 0; i < arr.dim(); ++i)
        back[i] -= z[i];
    res.residual = num::norm(back);
    return res;
}

Vec solve_linear(std::vector<Vec> a, Vec b) {
    const int n = static_cast<int>(b.size());
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r)
            if (abs(a[r][col]) > abs(a[pivot][col]))
                pivot = r;
        if (a[pivot][col] == 0)
            throw std::runtime_error("singular linear system");
        std::swap(a[pivot], a[col]);
        std::swap(b[pivot], b[col]);
        for (int r = col + 1; r < n; ++r) {
            Real factor = a[r][col] / a[col][col];
            if (factor == 0)
                continue;
            for (int c = col; c < n; ++c)
                a[r][c] -= factor * a[col][c];
            b[r] -= factor * b[col];
        }
    }
    Vec x(n);
    for (int r = n - 1; r >= 0; --r) {
        Real acc = b[r];
        for (int c = r + 1; c < n; ++c)
            acc -= a[r][c] * x[c];
        x[r] = acc / a[r][r];
    }
    return x;
}

Vec newton_inverse(const hyper::Arrangement& arr, const Vec& w, const Real& t, const Vec& seed) {
    const int n = arr.dim();
    std::vector<int> sig = hyper::chamber_signature(arr, seed);
    Real tol = num::pow10(10 - static_cast<long>(num::working_digits())) *
               std::max(Real(1), num::norm(w));
    Vec z = seed;
    Vec r(n);
    auto residual_at = [&](const Vec& p) {
        Vec fw = hyper::forward_map(arr, p, t);
        for (int i = 0; i < n; ++i)
            fw[i] = w[i] - fw[i];
        return fw;
    };
    r = residual_at(z);
    Real rnorm = num::norm(r);
    for (int iter = 0; iter < 200; ++iter) {
        if (rnorm <= tol)
            return z;
        // J = I - t Hess P
        std::vector<Vec> jac = hyper::potential_hessian(arr, z);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                jac[i][j] = -t * jac[i][j];
                if (i == j)
                    jac[i][j] += 1;
            }
        Vec delta = solve_linear(std::move(jac), r);
        Real step = 1;
        bool accepted = false;
        for (int halving = 0; halving <= 40; ++halving) {
            Vec zn(n);
            for (int i = 0; i < n; ++i)
                zn[i] = z[i] + step * delta[i];
            try {
                if (hyper::chamber_signature(arr, zn) == sig) {
                    Vec rn = residual_at(zn);
                    Real rn_norm = num::norm(rn);
                    if (rn_norm < rnorm) {
                        z = std::move(zn);
                        r = std::move(rn);
                        rnorm = rn_norm;
                        accepted = true;
                        break;
                    }
                }
            } catch (const std::domain_error&) {
                // stepped onto a wall; halve and retry
            }
            step /= 2;
        }
        if (!accepted)
            throw std::runtime_error("newton_inverse: line search failed to make progress");
    }
    throw std::runtime_error("newton_inverse: no convergence within 200 iterations");
}

SlopeFit residual_order(const hyper::Arrangement& arr, const Vec& z, int order,
                        const std::vector<Real>& t_grid) {
    if (t_grid.size() < 2)
        throw std::invalid_argument("need at least two t values for a slope");
    SlopeFit fit;
    Real floor = num::pow10(5 - static_cast<long>(num::working_digits()));
    for (const Real& t : t_grid) {
        Real r = g_t_eval(arr, z, t, order).residual;
        if (r < floor) {
            std::ostringstream msg;
            msg << "residual " << r << " at t = " << t
                << " is below the working-precision floor; raise the digit count";
            throw std::runtime_error(msg.str());
        }
        fit.points.emplace_back(log(t), log(r));
    }
    // least squares y = slope x + intercept
    Real sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [x, y] : fit.points) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    Real count = static_cast<int>(fit.points.size());
    fit.slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
    fit.intercept = (sy - fit.slope * sx) / count;
    return fit;
}

Real burgers_residual(const hyper::Arrangement& arr, const Vec& z, const Real& t,
                      int order, const Real& dt) {
    if (!(dt > 0))
        throw std::invalid_argument("dt must be positive");
    const int n = arr.dim();
    Vec u = grad_q(arr, z, t, order);
    Vec up = grad_q(arr, z, t + dt, order);
    Vec um = grad_q(arr, z, t - dt, order);

    // J(U) = sum_m t^m Hess Q^[m]
    std::vector<Vec> jac = hyper::potential_hessian(arr, z);
    Real tm = 1;
    for (int m = 1; m <= order; ++m) {
        tm *= t;
        std::vector<Vec> h = trees::evaluate_layer_hessian(trees::q_layer(m), arr, z);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                jac[i][j] += tm * h[i][j];
    }
    Vec resid(n);
    for (int i = 0; i < n; ++i) {
        Real dudt = (up[i] - um[i]) / (2 * dt);
        Real ju = 0;
        for (int j = 0; j < n; ++j)
            ju += jac[i][j] * u[j];
        resid[i] = dudt - ju;
    }
    return num::norm(resid);
}

}  // namespace invmap
