/** \file arrangement.h
    Real hyperplane arrangements and the associated geometric data: linear
    forms f_h, the logarithmic potential P = sum_h lambda_h log|f_h|, its
    gradient and Hessian, the deformed map F_t(z) = z - t grad P, the
    n-dimensional Hamiltonian, and chamber signatures.
*/
#pragma once

#include "afinv/scalar.h"

namespace hyper {

using num::Real;
using num::Vec;

struct Hyperplane {
    Real offset;   // u_0
    Vec normal;    // u, not all zero
    Real weight;   // lambda > 0
};

class Arrangement {
public:
    Arrangement(int dim, std::vector<Hyperplane> planes);
    int dim() const { return dim_; }
    int size() const { return static_cast<int>(planes_.size()); }
    const std::vector<Hyperplane>& planes() const { return planes_; }
    const Hyperplane& plane(int h) const { return planes_[h]; }

private:
    int dim_;
    std::vector<Hyperplane> planes_;
};

/// f_h(z) = u_0 + <u, z>.
Real linear_form(const Hyperplane& h, const Vec& z);

/// P(z) = sum_h lambda_h log|f_h(z)|; real-valued on every chamber.
/// Throws std::domain_error if z lies on some hyperplane.
Real potential(const Arrangement& arr, const Vec& z);

/// grad P, component i = sum_h lambda_h u_{h,i} / f_h(z); independent of the
/// |.| branch choice in P.
Vec grad_potential(const Arrangement& arr, const Vec& z);

/// Hessian of P: -sum_h lambda_h u_h u_h^T / f_h(z)^2.
std::vector<Vec> potential_hessian(const Arrangement& arr, const Vec& z);

/// F_t(z) = z - t grad P(z); t = 1 is the undeformed map.
Vec forward_map(const Arrangement& arr, const Vec& z, const Real& t);

/// H(x, y) = |y|^2/2 + |F_1(x)|^2/2.
Real hamiltonian(const Arrangement& arr, const Vec& x, const Vec& y);

/// Sign vector (+1/-1 per hyperplane) of the chamber containing z; throws
/// when some |f_h(z)| <= tol (too close to a wall to classify).
std::vector<int> chamber_signature(const Arrangement& arr, const Vec& z, const Real& tol);
std::vector<int> chamber_signature(const Arrangement& arr, const Vec& z);  // tol = 10^-20

std::string signature_string(const std::vector<int>& sig);

}  // namespace hyper
