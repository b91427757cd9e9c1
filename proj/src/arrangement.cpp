#include "afinv/arrangement.h"

#include <stdexcept>

namespace hyper {

Arrangement::Arrangement(int dim, std::vector<Hyperplane> planes)
    : dim_(dim), planes_(std::move(planes)) {
    if (dim_ < 1)
        throw std::invalid_argument("dimension must be >= 1");
    if (planes_.empty())
        throw std::invalid_argument("arrangement needs at least one hyperplane");
    for (const Hyperplane& h : planes_) {
        if (static_cast<int>(h.normal.size()) != dim_)
            throw std::invalid_argument("normal length does not match the dimension");
        bool nonzero = false;
        for (const Real& u : h.normal)
            if (u != 0)
                nonzero = true;
        if (!nonzero)
            throw std::invalid_argument("zero normal vector");
        if (!(h.weight > 0))
            throw std::invalid_argument("weights must be strictly positive");
    }
}

Real linear_form(const Hyperplane& h, const Vec& z) {
    return h.offset + num::dot(h.normal, z);
}

namespace {
Real form_checked(const Hyperplane& h, const Vec& z) {
    Real f = linear_form(h, z);
    if (f == 0)
        throw std::domain_error("point lies on a hyperplane");
    return f;
}
}  // namespace

Real potential(const Arrangement& arr, const Vec& z) {
    Real s = 0;
    for (const Hyperplane& h : arr.planes())
        s += h.weight * log(abs(form_checked(h, z)));
    return s;
}

Vec grad_potential(const Arrangement& arr, const Vec& z) {
    Vec g(arr.dim(), Real(0));
    for (const Hyperplane& h : arr.planes()) {
        Real f = form_checked(h, z);
        Real w = h.weight / f;
        for (int i = 0; i < arr.dim(); ++i)
            g[i] += w * h.normal[i];
    }
    return g;
}

std::vector<Vec> potential_hessian(const Arrangement& arr, const Vec& z) {
    std::vector<Vec> hess(arr.dim(), Vec(arr.dim(), Real(0)));
    for (const Hyperplane& h : arr.planes()) {
        Real f = form_checked(h, z);
        Real w = h.weight / (f * f);
        for (int i = 0; i < arr.dim(); ++i)
            for (int j = 0; j < arr.dim(); ++j)
                hess[i][j] -= w * h.normal[i] * h.normal[j];
    }
    return hess;
}

Vec forward_map(const Arrangement& arr, const Vec& z, const Real& t) {
    Vec g = grad_potential(arr, z);
    Vec w(arr.dim());
    for (int i = 0; i < arr.dim(); ++i)
        w[i] = z[i] - t * g[i];
    return w;
}

Real hamiltonian(const Arrangement& arr, const Vec& x, const Vec& y) {
    Vec w = forward_map(arr, x, Real(1));
    Real s = 0;
    for (const Real& v : y)
        s += v * v;
    for (const Real& v : w)
        s += v * v;
    return s / 2;
}

std::vector<int> chamber_signature(const Arrangement& arr, const Vec& z, const Real& tol) {
    std::vector<int> sig;
    sig.reserve(arr.size());
    for (const Hyperplane& h : arr.planes()) {
        Real f = linear_form(h, z);
        if (abs(f) <= tol)
            throw std::domain_error("point too close to a wall for a chamber signature");
        sig.push_back(f > 0 ? 1 : -1);
    }
    return sig;
}

std::vector<int> chamber_signature(const Arrangement& arr, const Vec& z) {
    return chamber_signature(arr, z, num::pow10(-20));
}

std::string signature_string(const std::vector<int>& sig) {
    std::string s = "(";
    for (std::size_t i = 0; i < sig.size(); ++i) {
        s += sig[i] > 0 ? '+' : '-';
        if (i + 1 < sig.size())
            s += ',';
    }
    return s + ")";
}

}  // namespace hyper
