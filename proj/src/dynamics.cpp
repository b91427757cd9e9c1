#include "afinv/dynamics.h"

#include <limits>
#include <stdexcept>

namespace dyn {

Real hamiltonian(const oned::System& sys, const Real& x, const Real& y) {
    Real w = oned::f_value(sys, x);
    return (y * y + w * w) / 2;
}

namespace {

std::pair<Real, Real> band_of(const oned::System& sys, const Real& x) {
    const Real inf = std::numeric_limits<Real>::infinity();
    Real lo = -inf, hi = inf;
    for (const Real& a : sys.poles) {
        if (a < x)
            lo = a;
        else if (a > x) {
            hi = a;
            break;
        } else
            throw std::domain_error("orbit starts on a pole");
    }
    return {lo, hi};
}

}  // namespace

Trajectory integrate_orbit(const oned::System& sys, const Real& x0, const Real& y0,
                           const Real& dt, long steps) {
    if (!(dt > 0))
        throw std::invalid_argument("dt must be positive");
    auto [lo, hi] = band_of(sys, x0);
    auto force = [&sys](const Real& x) { return -f_value(sys, x) * f_prime(sys, x); };

    Trajectory traj;
    traj.states.reserve(steps + 1);
    Real x = x0, y = y0;
    traj.states.push_back({x, y, Real(0)});
    Real half = dt / 2;
    for (long i = 1; i <= steps; ++i) {
        Real yh = y + half * force(x);
        Real xn = x + dt * yh;
        if (!(xn > lo) || !(xn < hi)) {
            traj.aborted = true;
            return traj;
        }
        x = xn;
        y = yh + half * force(x);
        traj.states.push_back({x, y, dt * i});
    }
    return traj;
}

Real measure_period(const Trajectory& traj) {
    std::vector<Real> crossings;
    for (std::size_t i = 1; i < traj.states.size(); ++i) {
        const OrbitState& a = traj.states[i - 1];
        const OrbitState& b = traj.states[i];
        if (a.y < 0 && b.y >= 0) {
            Real frac = -a.y / (b.y - a.y);
            crossings.push_back(a.t + frac * (b.t - a.t));
        }
    }
    if (crossings.size() < 3)
        throw std::runtime_error("fewer than two full cycles in the trajectory");
    return (crossings.back() - crossings.front()) / static_cast<int>(crossings.size() - 1);
}

Real energy_drift(const oned::System& sys, const Trajectory& traj) {
    if (traj.states.empty())
        throw std::invalid_argument("empty trajectory");
    Real h0 = hamiltonian(sys, traj.states[0].x, traj.states[0].y);
    Real worst = 0;
    for (const OrbitState& s : traj.states) {
        Real d = abs(hamiltonian(sys, s.x, s.y) - h0);
        if (d > worst)
            worst = d;
    }
    return h0 == 0 ? worst : Real(worst / abs(h0));
}

}  // namespace dyn
