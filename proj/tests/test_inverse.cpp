#include "afinv/inverse.h"

#include "doctest.h"
#include "test_util.h"

#include <random>

using num::Real;
using num::Vec;
using testutil::close_abs;
using testutil::close_scaled;
using testutil::tol_digits;

namespace {

hyper::Arrangement single_plane(const Real& lambda) {
    std::vector<hyper::Hyperplane> planes;
    planes.push_back({Real(0), {Real(1)}, lambda});
    return hyper::Arrangement(1, std::move(planes));
}

hyper::Arrangement three_planes() {
    std::vector<hyper::Hyperplane> planes;
    planes.push_back({Real(0), {Real(1), Real(0)}, Real(1)});
    planes.push_back({Real(0), {Real(0), Real(1)}, Real(3) / 2});
    planes.push_back({Real(-1), {Real(1), Real(1)}, Real(2)});
    return hyper::Arrangement(2, std::move(planes));
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

}  // namespace

TEST_CASE("linear solver") {
    std::vector<Vec> a{{Real(2), Real(1)}, {Real(1), Real(3)}};
    Vec x = invmap::solve_linear(a, {Real(5), Real(10)});
    CHECK(close_abs(x[0], Real(1), tol_digits(5)));
    CHECK(close_abs(x[1], Real(3), tol_digits(5)));
    std::vector<Vec> sing{{Real(1), Real(2)}, {Real(2), Real(4)}};
    CHECK_THROWS_AS(invmap::solve_linear(sing, {Real(1), Real(1)}), std::runtime_error);
}

TEST_CASE("series inverse: identity at t = 0 and the closed 1-D form") {
    hyper::Arrangement arr = single_plane(Real(1));
    Vec z{Real(2)};
    auto at0 = invmap::g_t_eval(arr, z, Real(0), 3);
    CHECK(at0.output[0] == Real(2));
    CHECK(at0.residual == Real(0));

    // z' - t/z' = 2 at t = 0.1 has the closed solution (2 + sqrt(4.4))/2
    Real t("0.1");
    auto res = invmap::g_t_eval(arr, z, t, 5);
    Real closed = (2 + sqrt(4 + 4 * t)) / 2;
    CHECK(close_abs(res.output[0], closed, num::pow10(-7)));
    CHECK(res.residual < num::pow10(-6));
    CHECK(res.layer_contributions.size() == 6);
}

TEST_CASE("orthogonal normals decouple coordinatewise") {
    std::vector<hyper::Hyperplane> planes;
    planes.push_back({Real(0), {Real(1), Real(0)}, Real(1)});
    planes.push_back({Real(0), {Real(0), Real(1)}, Real(2)});
    hyper::Arrangement pair(2, planes);
    hyper::Arrangement first = single_plane(Real(1));
    hyper::Arrangement second = single_plane(Real(2));
    Vec z{Real(3), Real("1.5")};
    Real t("0.125");
    auto joint = invmap::g_t_eval(pair, z, t, 5);
    auto lone1 = invmap::g_t_eval(first, {z[0]}, t, 5);
    auto lone2 = invmap::g_t_eval(second, {z[1]}, t, 5);
    CHECK(close_abs(joint.output[0], lone1.output[0], tol_digits(5)));
    CHECK(close_abs(joint.output[1], lone2.output[0], tol_digits(5)));
}

TEST_CASE("t is a weight rescaling: layer m scales by t^(m+1)") {
    hyper::Arrangement base = three_planes();
    Real t("0.25");
    std::vector<hyper::Hyperplane> scaled = base.planes();
    for (auto& h : scaled)
        h.weight *= t;
    hyper::Arrangement rescaled(2, scaled);
    Vec z{Real(2), Real("1.75")};
    auto with_t = invmap::g_t_eval(base, z, t, 4);
    auto with_lambda = invmap::g_t_eval(rescaled, z, Real(1), 4);
    for (int m = 0; m <= 4; ++m)
        for (int i = 0; i < 2; ++i)
            CHECK(close_abs(with_t.layer_contributions[m][i],
                            with_lambda.layer_contributions[m][i], tol_digits(5)));
}

TEST_CASE("newton oracle") {
    hyper::Arrangement arr = single_plane(Real(1));
    // t = 0: the map is the identity
    Vec w0 = invmap::newton_inverse(arr, {Real("0.7")}, Real(0), {Real("0.9")});
    CHECK(close_abs(w0[0], Real("0.7"), tol_digits(8)));
    // 1 - 1/1 = 0, so z = 1 inverts w = 0 at t = 1
    Vec z1 = invmap::newton_inverse(arr, {Real(0)}, Real(1), {Real(1)});
    CHECK(close_abs(z1[0], Real(1), tol_digits(8)));

    hyper::Arrangement a3 = three_planes();
    Vec seed{Real("1.25"), Real("1.5")};
    auto sig = hyper::chamber_signature(a3, seed);
    std::mt19937_64 rng(5150);
    std::uniform_int_distribution<int> draw(-16, 16);
    for (int trial = 0; trial < 4; ++trial) {
        Vec w{seed[0] + Real(draw(rng)) / 64, seed[1] + Real(draw(rng)) / 64};
        Vec z = invmap::newton_inverse(a3, w, Real(1), seed);
        // chamber preservation is a hard contract
        CHECK(hyper::chamber_signature(a3, z) == sig);
        Vec back = hyper::forward_map(a3, z, Real(1));
        for (int i = 0; i < 2; ++i)
            back[i] -= w[i];
        CHECK(num::norm(back) <= num::pow10(-40));
    }
}

TEST_CASE("residual order of the truncated composition") {
    hyper::Arrangement a3 = three_planes();
    Vec z{Real("1.25"), Real("1.5")};
    std::vector<Real> grid;
    for (int k = 4; k <= 10; ++k)
        grid.push_back(pow(Real(2), -k));
    auto fit = invmap::residual_order(a3, z, 0, grid);
    CHECK(abs(fit.slope - 2) < Real(2) / 10);
    auto fit1 = invmap::residual_order(a3, z, 1, grid);
    CHECK(abs(fit1.slope - 3) < Real(2) / 10);
}

TEST_CASE("single-hyperplane residual order with exact layers") {
    hyper::Arrangement arr = single_plane(Real(1));
    Vec z{Real(2)};
    std::vector<Real> grid;
    for (int k = 4; k <= 10; ++k)
        grid.push_back(pow(Real(2), -k));
    auto fit = invmap::residual_order(arr, z, 3, grid);
    CHECK(abs(fit.slope - 5) < Real(1) / 10);
}

TEST_CASE("residual underflow reports an error") {
    hyper::Arrangement arr = single_plane(Real(1));
    Vec z{Real(2)};
    std::vector<Real> grid{num::pow10(-8), num::pow10(-9)};
    CHECK_THROWS_AS(invmap::residual_order(arr, z, 5, grid), std::runtime_error);
}

TEST_CASE("series approaches the Newton oracle at order t^(M+2)") {
    hyper::Arrangement a3 = three_planes();
    Vec z{Real("1.25"), Real("1.5")};
    const int order = 2;
    std::vector<std::pair<Real, Real>> pts;
    for (int k = 4; k <= 9; ++k) {
        Real t = pow(Real(2), -k);
        auto series = invmap::g_t_eval(a3, z, t, order);
        Vec exact = invmap::newton_inverse(a3, z, t, z);
        Vec diff = series.output;
        for (int i = 0; i < 2; ++i)
            diff[i] -= exact[i];
        pts.emplace_back(log(t), log(num::norm(diff)));
    }
    CHECK(abs(lsq_slope(pts) - (order + 2)) < Real(2) / 10);
}

TEST_CASE("inverse-pair identities hold to order t^(M+1)") {
    // grad Q_t(F_t(z)) = grad P(z) and grad P(G_t(z)) = grad Q_t(z)
    hyper::Arrangement a3 = three_planes();
    Vec z{Real("1.25"), Real("1.5")};
    const int order = 2;
    std::vector<std::pair<Real, Real>> fwd, bwd;
    for (int k = 4; k <= 9; ++k) {
        Real t = pow(Real(2), -k);
        Vec gp = hyper::grad_potential(a3, z);
        Vec lhs1 = invmap::grad_q(a3, hyper::forward_map(a3, z, t), t, order);
        for (int i = 0; i < 2; ++i)
            lhs1[i] -= gp[i];
        fwd.emplace_back(log(t), log(num::norm(lhs1)));

        Vec g = invmap::g_t_eval(a3, z, t, order).output;
        Vec lhs2 = hyper::grad_potential(a3, g);
        Vec u = invmap::grad_q(a3, z, t, order);
        for (int i = 0; i < 2; ++i)
            lhs2[i] -= u[i];
        bwd.emplace_back(log(t), log(num::norm(lhs2)));
    }
    CHECK(abs(lsq_slope(fwd) - (order + 1)) < Real(2) / 10);
    CHECK(abs(lsq_slope(bwd) - (order + 1)) < Real(2) / 10);
}

TEST_CASE("burgers residual") {
    hyper::Arrangement arr = single_plane(Real(1));
    Vec z{Real(2)};
    // high order, tiny t: the identity holds to quadrature precision
    Real r = invmap::burgers_residual(arr, z, num::pow10(-3), 8, num::pow10(-6));
    CHECK(r < num::pow10(-10));

    // the t -> 0 derivative of U recovers grad Q^[1]
    Real dt = num::pow10(-8);
    Vec up = invmap::grad_q(arr, z, dt, 3);
    Vec um = invmap::grad_q(arr, z, -dt, 3);
    Real dudt0 = (up[0] - um[0]) / (2 * dt);
    Real want = trees::evaluate_layer_gradient(trees::q_layer(1), arr, z)[0];
    CHECK(close_abs(dudt0, want, num::pow10(-12)));

    // truncation at layer M leaves an O(t^M) defect
    std::vector<std::pair<Real, Real>> pts;
    for (int k = 4; k <= 8; ++k) {
        Real t = pow(Real(2), -k);
        pts.emplace_back(log(t),
                         log(invmap::burgers_residual(arr, z, t, 3, num::pow10(-10))));
    }
    Real slope = lsq_slope(pts);
    CHECK(slope > Real(5) / 2);
    CHECK(slope < Real(4));
}
