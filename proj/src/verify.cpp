#include "afinv/verify.h"

#include "afinv/dynamics.h"
#include "afinv/inverse.h"
#include "afinv/trees.h"

#include <algorithm>
#include <chrono>
#include <limits>
#include <random>
#include <sstream>

namespace verify {

using num::Rational;
using num::Real;
using num::Vec;

namespace {

std::string fmt(const Real& x, unsigned digits = 17) {
    return x.str(digits);
}

Rational catalan(int m) {
    Rational c = 1;
    for (int k = 0; k < m; ++k)
        c = c * 2 * (2 * k + 1) / (k + 2);
    return c;
}

Real lsq_slope(const std::vector<std::pair<Real, Real>>& pts) {
    Real sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    Real n = static_cast<int>(pts.size());
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// 2-D, three hyperplanes in general position; the test chamber is
// { z1 > 0, z2 > 0, z1 + z2 > 1 }, sampled well away from the walls.
hyper::Arrangement test_arrangement() {
    std::vector<hyper::Hyperplane> planes;
    planes.push_back({Real(0), {Real(1), Real(0)}, Real(1)});
    planes.push_back({Real(0), {Real(0), Real(1)}, Real(3) / 2});
    planes.push_back({Real(-1), {Real(1), Real(1)}, Real(2)});
    return hyper::Arrangement(2, std::move(planes));
}

hyper::Arrangement single_hyperplane(const Real& lambda) {
    std::vector<hyper::Hyperplane> planes;
    planes.push_back({Real(0), {Real(1)}, lambda});
    return hyper::Arrangement(1, std::move(planes));
}

hyper::Arrangement orthogonal_pair(const Real& l1, const Real& l2) {
    std::vector<hyper::Hyperplane> planes;
    planes.push_back({Real(0), {Real(1), Real(0)}, l1});
    planes.push_back({Real(0), {Real(0), Real(1)}, l2});
    return hyper::Arrangement(2, std::move(planes));
}

std::vector<Vec> chamber_points(std::uint64_t seed, int count) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, 63);
    std::vector<Vec> pts;
    pts.reserve(count);
    while (static_cast<int>(pts.size()) < count) {
        // rational points in [1, 2[^2: wall distance >= 1 in this chamber
        Rational z1(64 + pick(rng), 64), z2(64 + pick(rng), 64);
        pts.push_back({num::to_real(z1), num::to_real(z2)});
    }
    return pts;
}

// Direct double/triple sums used as oracles for the first two layers.
Real q1_direct(const hyper::Arrangement& arr, const Vec& z) {
    Real s = 0;
    for (const hyper::Hyperplane& h : arr.planes())
        for (const hyper::Hyperplane& k : arr.planes())
            s += h.weight * k.weight * num::dot(h.normal, k.normal) /
                 (hyper::linear_form(h, z) * hyper::linear_form(k, z));
    return s / 2;
}

Real q2_direct(const hyper::Arrangement& arr, const Vec& z) {
    Real s = 0;
    for (const hyper::Hyperplane& h : arr.planes()) {
        Real fh = hyper::linear_form(h, z);
        for (const hyper::Hyperplane& k : arr.planes()) {
            Real fk = hyper::linear_form(k, z);
            for (const hyper::Hyperplane& l : arr.planes()) {
                Real fl = hyper::linear_form(l, z);
                s += h.weight * k.weight * l.weight * num::dot(h.normal, k.normal) *
                     num::dot(h.normal, l.normal) / (fh * fh * fk * fl);
            }
        }
    }
    return -s / 2;
}

// Same numerator over f_h^2 f_k^2 with f_l dropped: must NOT agree with the
// layer; keeping it here guards the denominator structure of q2_direct.
Real q2_wrong_denominator(const hyper::Arrangement& arr, const Vec& z) {
    Real s = 0;
    for (const hyper::Hyperplane& h : arr.planes()) {
        Real fh = hyper::linear_form(h, z);
        for (const hyper::Hyperplane& k : arr.planes()) {
            Real fk = hyper::linear_form(k, z);
            for (const hyper::Hyperplane& l : arr.planes()) {
                s += h.weight * k.weight * l.weight * num::dot(h.normal, k.normal) *
                     num::dot(h.normal, l.normal) / (fh * fh * fk * fk);
            }
        }
    }
    return -s / 2;
}

struct Expected {
    std::vector<trees::Edge> edges;
    Rational coeff;
};

// The published layer tables for m = 1..5, written as explicit edge lists.
std::vector<std::vector<Expected>> expected_tables() {
    using E = std::vector<trees::Edge>;
    std::vector<std::vector<Expected>> tables(6);
    tables[1] = {{E{{0, 1}}, Rational(1, 2)}};
    tables[2] = {{E{{0, 1}, {1, 2}}, Rational(-1, 2)}};
    tables[3] = {
        {E{{0, 1}, {0, 2}, {0, 3}}, Rational(1, 3)},            // star K_{1,3}
        {E{{0, 1}, {1, 2}, {2, 3}}, Rational(1, 2)},            // path P_4
    };
    tables[4] = {
        {E{{0, 1}, {1, 2}, {2, 3}, {3, 4}}, Rational(-1, 2)},   // P_5
        {E{{0, 1}, {1, 2}, {2, 3}, {1, 4}}, Rational(-1)},      // P_4 + leaf at 2nd vertex
        {E{{0, 1}, {0, 2}, {0, 3}, {0, 4}}, Rational(-1, 4)},   // K_{1,4}
    };
    tables[5] = {
        {E{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}}, Rational(1, 2)},  // P_6
        {E{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {1, 5}}, Rational(1)},     // P_5 + leaf at 2nd
        {E{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {2, 5}}, Rational(1)},     // P_5 + leaf at middle
        {E{{0, 1}, {1, 2}, {2, 3}, {1, 4}, {2, 5}}, Rational(1, 2)},  // leaves on both inner
        {E{{0, 1}, {0, 2}, {0, 3}, {0, 4}, {4, 5}}, Rational(1)},     // star with one 2-leg
        {E{{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}}, Rational(1, 5)},  // K_{1,5}
    };
    return tables;
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

// ---------------------------------------------------------------- criteria

Check tree_table_reproduction() {
    Timer timer;
    Check check{"tree-table m=1..5", false, "", 0};
    std::ostringstream detail;
    bool ok = true;
    auto tables = expected_tables();
    for (int m = 1; m <= 5; ++m) {
        const trees::QLayer& layer = trees::q_layer(m);
        if (layer.terms.size() != tables[m].size()) {
            ok = false;
            detail << "m=" << m << ": " << layer.terms.size() << " shapes, expected "
                   << tables[m].size() << "; ";
            continue;
        }
        for (const Expected& e : tables[m]) {
            std::string code = trees::canonical_code(m + 1, e.edges);
            auto it = layer.terms.find(code);
            if (it == layer.terms.end() || it->second.coeff != e.coeff) {
                ok = false;
                detail << "m=" << m << " shape " << code << " mismatch; ";
            }
        }
    }
    check.elapsed_s = timer.seconds();
    ok = ok && check.elapsed_s < 1.0;
    detail << "shape counts 1,1,2,3,6";
    check.pass = ok;
    check.detail = detail.str();
    return check;
}

Check catalan_collapse() {
    Timer timer;
    Check check{"catalan collapse m=1..8", false, "", 0};
    bool ok = true;
    std::ostringstream detail;
    for (int m = 1; m <= 8; ++m) {
        Rational sum = trees::coefficient_sum(trees::q_layer(m));
        Rational want = (m % 2 ? catalan(m) : -catalan(m)) / (2 * m);
        if (sum != want) {
            ok = false;
            detail << "m=" << m << " sum " << sum << " != " << want << "; ";
        }
    }
    // independent numeric side: grad Q_t(1) for a single hyperplane has the
    // closed form (sqrt(1+4t)-1)/(2t); the truncated tree series must agree
    // to the t^9 tail size at t = 1e-4.
    hyper::Arrangement arr = single_hyperplane(Real(1));
    Vec z{Real(1)};
    Real t = num::pow10(-4);
    Real series = hyper::grad_potential(arr, z)[0];
    Real tm = 1;
    for (int m = 1; m <= 8; ++m) {
        tm *= t;
        series += tm * trees::evaluate_layer_gradient(trees::q_layer(m), arr, z)[0];
    }
    Real closed = (sqrt(1 + 4 * t) - 1) / (2 * t);
    Real dev = abs(series - closed);
    if (!(dev <= num::pow10(-30))) {
        ok = false;
        detail << "numeric dev " << fmt(dev) << " > 1e-30; ";
    }
    check.elapsed_s = timer.seconds();
    ok = ok && check.elapsed_s < 10.0;
    detail << "closed-form dev " << fmt(dev);
    check.pass = ok;
    check.detail = detail.str();
    return check;
}

Check q1_q2_formulas(std::uint64_t seed) {
    Timer timer;
    Check check{"Q1/Q2 direct formulas", false, "", 0};
    hyper::Arrangement arr = test_arrangement();
    std::vector<Vec> pts = chamber_points(seed, 10);
    Real tol = num::pow10(-30);
    Real worst1 = 0, worst2 = 0, min_wrong = std::numeric_limits<Real>::infinity();
    for (const Vec& z : pts) {
        Real v1 = trees::evaluate_layer(trees::q_layer(1), arr, z);
        Real v2 = trees::evaluate_layer(trees::q_layer(2), arr, z);
        Real d1 = abs(v1 - q1_direct(arr, z)) / abs(v1);
        Real d2 = abs(v2 - q2_direct(arr, z)) / abs(v2);
        Real dw = abs(v2 - q2_wrong_denominator(arr, z)) / abs(v2);
        worst1 = std::max(worst1, d1);
        worst2 = std::max(worst2, d2);
        min_wrong = std::min(min_wrong, dw);
    }
    check.elapsed_s = timer.seconds();
    check.pass = worst1 <= tol && worst2 <= tol && min_wrong > num::pow10(-6);
    std::ostringstream detail;
    detail << "rel dev Q1 " << fmt(worst1) << ", Q2 " << fmt(worst2)
           << "; mis-grouped denominator rejected (min rel dev " << fmt(min_wrong) << ")";
    check.detail = detail.str();
    return check;
}

std::vector<Real> default_t_grid() {
    std::vector<Real> grid;
    for (int k = 4; k <= 10; ++k)
        grid.push_back(pow(Real(2), -k));
    return grid;
}

Check composition_order() {
    Timer timer;
    Check check{"composition residual order", false, "", 0};
    hyper::Arrangement arr = test_arrangement();
    Vec z{Real(5) / 4, Real(3) / 2};
    std::vector<Real> grid = default_t_grid();
    bool ok = true;
    std::ostringstream detail;
    for (int order : {0, 1, 3, 5}) {
        invmap::SlopeFit fit = invmap::residual_order(arr, z, order, grid);
        Real want = order + 2;
        detail << "M=" << order << " slope " << fmt(fit.slope, 6) << "; ";
        if (!(abs(fit.slope - want) <= Real(1) / 5))
            ok = false;
    }
    check.elapsed_s = timer.seconds();
    ok = ok && check.elapsed_s < 60.0;
    check.pass = ok;
    check.detail = detail.str();
    return check;
}

Check oracle_agreement() {
    Timer timer;
    Check check{"series vs Newton oracle", false, "", 0};
    hyper::Arrangement arr = test_arrangement();
    Vec z{Real(5) / 4, Real(3) / 2};
    std::vector<Real> grid = default_t_grid();
    bool ok = true;
    Real worst_newton = 0;
    std::ostringstream detail;
    for (int order : {0, 1, 3, 5}) {
        std::vector<std::pair<Real, Real>> pts;
        for (const Real& t : grid) {
            invmap::InverseSeriesResult series = invmap::g_t_eval(arr, z, t, order);
            Vec exact = invmap::newton_inverse(arr, z, t, z);
            Vec back = hyper::forward_map(arr, exact, t);
            for (int i = 0; i < arr.dim(); ++i)
                back[i] -= z[i];
            worst_newton = std::max(worst_newton, num::norm(back));
            Vec diff = series.output;
            for (int i = 0; i < arr.dim(); ++i)
                diff[i] -= exact[i];
            pts.emplace_back(log(t), log(num::norm(diff)));
        }
        Real slope = lsq_slope(pts);
        detail << "M=" << order << " slope " << fmt(slope, 6) << "; ";
        if (!(abs(slope - (order + 2)) <= Real(1) / 5))
            ok = false;
    }
    if (!(worst_newton <= num::pow10(-40)))
        ok = false;
    detail << "max Newton residual " << fmt(worst_newton);
    check.elapsed_s = timer.seconds();
    check.pass = ok;
    check.detail = detail.str();
    return check;
}

Check lagrange_triple_agreement() {
    Timer timer;
    Check check{"Lagrange triple agreement", false, "", 0};
    bool ok = true;
    std::ostringstream detail;
    Real tol_exact = num::pow10(-40), tol_track = num::pow10(-8);
    for (int which = 0; which < 2; ++which) {
        oned::System sys({Real(which)}, {Real(1)});
        auto cps = oned::critical_points(sys);
        const int k = 1, M = 10;
        auto rev = oned::lagrange_coefficients(sys, cps, k, M, oned::LagrangeMethod::reversion);
        auto der =
            oned::lagrange_coefficients(sys, cps, k, M, oned::LagrangeMethod::derivative_formula);
        auto trk =
            oned::lagrange_coefficients(sys, cps, k, M, oned::LagrangeMethod::root_tracking);
        Real dev_exact = 0, dev_track = 0;
        for (int i = 0; i < M; ++i) {
            Real scale = std::max(Real(1), abs(rev.g[i]));
            dev_exact = std::max(dev_exact, Real(abs(rev.g[i] - der.g[i]) / scale));
            dev_track = std::max(dev_track, Real(abs(rev.g[i] - trk.g[i]) / scale));
        }
        auto [g1, g2] = oned::closed_form_g1_g2(sys, cps, k);
        Real dev_closed = std::max(abs(g1 - rev.g[0]), abs(g2 - rev.g[1]));
        detail << "a=" << which << ": |rev-der| " << fmt(dev_exact) << ", |rev-trk| "
               << fmt(dev_track) << ", closed " << fmt(dev_closed) << "; ";
        if (!(dev_exact <= tol_exact && dev_track <= tol_track && dev_closed <= tol_exact))
            ok = false;
    }
    check.elapsed_s = timer.seconds();
    check.pass = ok;
    check.detail = detail.str();
    return check;
}

Check isochronicity_dichotomy() {
    Timer timer;
    Check check{"isochronicity dichotomy", false, "", 0};
    bool ok = true;
    std::ostringstream detail;
    Real pi = num::real_pi();
    {
        oned::System sys({Real(0)}, {Real(1)});
        auto cps = oned::critical_points(sys);
        auto rep = oned::isochronicity_report(sys, cps, 1, 6, num::pow10(-30));
        Real a1_dev = abs(rep.coeff[0] - pi);
        detail << "a=0: |A1-pi| " << fmt(a1_dev) << ", max|A_p| " << fmt(rep.worst) << "; ";
        if (!rep.isochronous || !(a1_dev <= num::pow10(-30)))
            ok = false;
    }
    {
        oned::System sys({Real(1)}, {Real(1)});
        auto cps = oned::critical_points(sys);
        auto rep = oned::isochronicity_report(sys, cps, 1, 6, num::pow10(-30));
        Real want = 3 * pi / (25 * sqrt(Real(5)));
        Real a2_dev = abs(rep.coeff[1] - want);
        detail << "a=1: |A2 - 3pi/(25 sqrt5)| " << fmt(a2_dev) << ", non-isochronous witness A2 "
               << fmt(rep.coeff[1], 10);
        if (rep.isochronous || !(a2_dev <= num::pow10(-12)))
            ok = false;
    }
    check.elapsed_s = timer.seconds();
    check.pass = ok;
    check.detail = detail.str();
    return check;
}

Check quadrature_convention() {
    Timer timer;
    Check check{"action quadrature convention", false, "", 0};
    oned::System sys({Real(1)}, {Real(1)});
    auto cps = oned::critical_points(sys);
    const int k = 1, p_max = 2;
    oned::ActionSeries as = oned::action_series(sys, cps, k, p_max);
    auto partial = [&](const Real& c) {
        Real acc = 0, cp = 1;
        for (int p = 1; p <= p_max; ++p) {
            cp *= c;
            acc += as.coeff[p - 1] * cp;
        }
        return acc;
    };
    Real c1 = num::pow10(-3), c2 = num::pow10(-2);
    Real tol = num::pow10(-25);
    Real e1 = abs(oned::action_quadrature(sys, cps, k, c1, tol) - partial(c1));
    Real e2 = abs(oned::action_quadrature(sys, cps, k, c2, tol) - partial(c2));
    Real exponent = log(e2 / e1) / log(c2 / c1);
    check.elapsed_s = timer.seconds();
    check.pass = abs(exponent - (p_max + 1)) <= Real(3) / 10;
    std::ostringstream detail;
    detail << "errors " << fmt(e1, 8) << " @1e-3, " << fmt(e2, 8) << " @1e-2, exponent "
           << fmt(exponent, 6) << " (expect " << p_max + 1 << ")";
    check.detail = detail.str();
    return check;
}

Check dynamics_check() {
    Timer timer;
    Check check{"leapfrog dynamics", false, "", 0};
    bool ok = true;
    std::ostringstream detail;
    Real pi = num::real_pi();
    Real dt = num::pow10(-3);
    const long steps = 100000;
    {
        oned::System sys({Real(0)}, {Real(1)});
        for (const char* x0 : {"1.2", "2.0"}) {
            dyn::Trajectory traj = dyn::integrate_orbit(sys, Real(x0), Real(0), dt, steps);
            Real drift = dyn::energy_drift(sys, traj);
            Real period = dyn::measure_period(traj);
            Real rel = abs(period - pi) / pi;
            detail << "x0=" << x0 << ": drift " << fmt(drift, 6) << ", period dev "
                   << fmt(rel, 6) << "; ";
            if (!(drift < num::pow10(-5)) || !(rel < Real(1) / 100))
                ok = false;
        }
    }
    {
        oned::System sys({}, {});
        dyn::Trajectory traj = dyn::integrate_orbit(sys, Real(1), Real(0), dt, steps);
        Real period = dyn::measure_period(traj);
        Real rel = abs(period - 2 * pi) / (2 * pi);
        detail << "harmonic period dev " << fmt(rel, 6);
        if (!(rel < Real(1) / 200))
            ok = false;
    }
    check.elapsed_s = timer.seconds();
    check.pass = ok;
    check.detail = detail.str();
    return check;
}

Check decoupling() {
    Timer timer;
    Check check{"orthogonal decoupling", false, "", 0};
    Real l1 = 1, l2 = Real(3) / 2;
    hyper::Arrangement pair = orthogonal_pair(l1, l2);
    hyper::Arrangement one1 = single_hyperplane(l1);
    hyper::Arrangement one2 = single_hyperplane(l2);
    Vec z{Real(2), Real(5) / 4};
    Real t = Real(1) / 8;
    const int order = 6;
    invmap::InverseSeriesResult joint = invmap::g_t_eval(pair, z, t, order);
    invmap::InverseSeriesResult lone1 = invmap::g_t_eval(one1, {z[0]}, t, order);
    invmap::InverseSeriesResult lone2 = invmap::g_t_eval(one2, {z[1]}, t, order);
    Real dev_num = std::max(abs(joint.output[0] - lone1.output[0]),
                            abs(joint.output[1] - lone2.output[0]));
    // coefficient level: layer m contributes t^{m+1} lambda^{m+1} (-1)^m C_m z^{-(2m+1)}
    Real dev_coeff = 0;
    Real tp = 1;
    for (int m = 0; m <= order; ++m) {
        tp *= t;
        Rational cm = m % 2 ? -catalan(m) : catalan(m);
        for (int axis = 0; axis < 2; ++axis) {
            Real lam = axis == 0 ? l1 : l2;
            Real want = tp * pow(lam, m + 1) * num::to_real(cm) * pow(z[axis], -(2 * m + 1));
            Real got = joint.layer_contributions[m][axis];
            dev_coeff = std::max(dev_coeff, Real(abs(got - want) / std::max(Real(1), abs(want))));
        }
    }
    check.elapsed_s = timer.seconds();
    check.pass = dev_num <= num::pow10(-30) && dev_coeff <= num::pow10(-40);
    std::ostringstream detail;
    detail << "coordinatewise dev " << fmt(dev_num) << ", rational-coefficient dev "
           << fmt(dev_coeff);
    check.detail = detail.str();
    return check;
}

}  // namespace

std::vector<Check> run_suite(const std::string& suite, std::uint64_t seed) {
    num::working_digits();  // default precision if unset
    std::vector<Check> checks;
    bool all = suite == "all";
    if (all || suite == "trees") {
        checks.push_back(tree_table_reproduction());
        checks.push_back(catalan_collapse());
        checks.push_back(q1_q2_formulas(seed));
    }
    if (all || suite == "invert") {
        checks.push_back(composition_order());
        checks.push_back(oracle_agreement());
        checks.push_back(decoupling());
    }
    if (all || suite == "oned") {
        checks.push_back(lagrange_triple_agreement());
        checks.push_back(isochronicity_dichotomy());
        checks.push_back(quadrature_convention());
    }
    if (all || suite == "dynamics") {
        checks.push_back(dynamics_check());
    }
    if (checks.empty())
        throw std::invalid_argument("unknown suite: " + suite +
                                    " (expected all|oned|trees|invert|dynamics)");
    return checks;
}

bool all_passed(const std::vector<Check>& checks) {
    for (const Check& c : checks)
        if (!c.pass)
            return false;
    return true;
}

}  // namespace verify
