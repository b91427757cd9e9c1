/** \file dynamics.h
    Direct integration of the 1-D Hamiltonian H = y^2/2 + f(x)^2/2 with a
    symplectic leapfrog, plus period measurement from zero crossings.
    Used to validate the action series dynamically.
*/
#pragma once

#include "afinv/oned.h"

namespace dyn {

using num::Real;

struct OrbitState {
    Real x, y, t;
};

Real hamiltonian(const oned::System& sys, const Real& x, const Real& y);

struct Trajectory {
    std::vector<OrbitState> states;
    bool aborted = false;  // band exit (pole approach); states hold the valid prefix
};

/// Kick-drift-kick leapfrog with force -f(x) f'(x).  The orbit is confined
/// to the band containing x0; a step that would cross a pole aborts the run
/// with the last valid state kept.
Trajectory integrate_orbit(const oned::System& sys, const Real& x0, const Real& y0,
                           const Real& dt, long steps);

/// Period from successive upward zero crossings of y, linearly interpolated
/// and averaged.  Throws if fewer than two full cycles are present.
Real measure_period(const Trajectory& traj);

/// max_t |H(t) - H(0)| / |H(0)| (absolute when H(0) = 0).
Real energy_drift(const oned::System& sys, const Trajectory& traj);

}  // namespace dyn
