#include "afinv/oned.h"

#include "doctest.h"
#include "test_util.h"

using num::Real;
using oned::LagrangeMethod;
using testutil::close_abs;
using testutil::close_scaled;
using testutil::tol_digits;

namespace {

oned::System sys_a0() { return oned::System({Real(0)}, {Real(1)}); }
oned::System sys_a1() { return oned::System({Real(1)}, {Real(1)}); }
oned::System sys_harmonic() { return oned::System({}, {}); }

// closed-form values for the band (1, inf) of the a=1 system
const char* kPhi = "1.61803398874989484820458683436563811772030917980576286213545";
const char* kG1 = "0.27639320225002103035908263312687237645593816403884742757291";
const char* kG2 = "0.178885438199983175712733893498502098835249468768922057941672";
const char* kG3 = "0.107331262919989905427640336099101259301149681261353234765003";
const char* kG5 = "-0.171730020671983848684224537758562014881839490018165175624005";

}  // namespace

TEST_CASE("system validation") {
    CHECK_THROWS_AS(oned::System({Real(1), Real(0)}, {Real(1), Real(1)}), std::invalid_argument);
    CHECK_THROWS_AS(oned::System({Real(0), Real(0)}, {Real(1), Real(1)}), std::invalid_argument);
    CHECK_THROWS_AS(oned::System({Real(0)}, {Real(0)}), std::invalid_argument);
    CHECK_THROWS_AS(oned::System({Real(0)}, {Real(1), Real(1)}), std::invalid_argument);
}

TEST_CASE("build_f") {
    auto rf0 = oned::build_f(sys_harmonic());
    CHECK(rf0.q.coeffs() == std::vector<Real>{Real(0), Real(1)});  // q = x
    CHECK(rf0.p.coeffs() == std::vector<Real>{Real(1)});           // p = 1

    auto rf1 = oned::build_f(sys_a0());
    CHECK(rf1.q.coeffs() == std::vector<Real>{Real(-1), Real(0), Real(1)});  // x^2 - 1
    CHECK(rf1.p.coeffs() == std::vector<Real>{Real(0), Real(1)});            // x

    auto rf2 = oned::build_f(sys_a1());
    CHECK(rf2.q.coeffs() == std::vector<Real>{Real(-1), Real(-1), Real(1)});  // x^2 - x - 1
    CHECK(rf2.p.coeffs() == std::vector<Real>{Real(-1), Real(1)});            // x - 1

    // q/p equals f at a sample point
    Real x("2.75");
    CHECK(close_abs(rf2.q.eval(x) / rf2.p.eval(x), f_value(sys_a1(), x), tol_digits(3)));
    CHECK_THROWS_AS(oned::f_value(sys_a0(), Real(0)), std::domain_error);
}

TEST_CASE("critical points of the worked systems") {
    auto cps0 = oned::critical_points(sys_harmonic());
    REQUIRE(cps0.size() == 1);
    CHECK(cps0[0].location == Real(0));
    CHECK(cps0[0].slope == Real(1));

    auto cps1 = oned::critical_points(sys_a0());
    REQUIRE(cps1.size() == 2);
    CHECK(close_abs(cps1[0].location, Real(-1), tol_digits(2)));
    CHECK(close_abs(cps1[1].location, Real(1), tol_digits(2)));
    CHECK(close_abs(cps1[1].slope, Real(2), tol_digits(2)));

    auto cps2 = oned::critical_points(sys_a1());
    REQUIRE(cps2.size() == 2);
    CHECK(close_abs(cps2[1].location, Real(kPhi), tol_digits(2)));
    CHECK(close_abs(cps2[0].location, 1 - Real(kPhi), tol_digits(2)));  // (1 - sqrt 5)/2
}

TEST_CASE("interlacing and residual on a three-pole system") {
    oned::System sys({Real(-2), Real("0.5"), Real(3)}, {Real("0.5"), Real(2), Real(1)});
    auto cps = oned::critical_points(sys);
    REQUIRE(cps.size() == 4);
    for (std::size_t k = 0; k < cps.size(); ++k) {
        CHECK(cps[k].location > cps[k].band_lo);
        CHECK(cps[k].location < cps[k].band_hi);
        if (k > 0)
            CHECK(cps[k - 1].location < cps[k].location);
        CHECK(abs(oned::f_value(sys, cps[k].location)) <= tol_digits(3));
        CHECK(cps[k].slope > 1);
    }
}

TEST_CASE("taylor expansion of f at the critical point") {
    // f = x - 1/x at b = 1: f(1+xi) = 2 xi - xi^2 + xi^3 - xi^4 + ...
    auto ts = oned::taylor_of_f(sys_a0(), Real(1), 4);
    std::vector<Real> want{Real(0), Real(2), Real(-1), Real(1), Real(-1)};
    for (int i = 0; i <= 4; ++i)
        CHECK(close_abs(ts.coeff[i], want[i], tol_digits(3)));
}

TEST_CASE("lagrange coefficients, three methods, a=0 band (0, inf)") {
    auto sys = sys_a0();
    auto cps = oned::critical_points(sys);
    // closed inverse x = (w + sqrt(w^2+4))/2: even series beyond w/2
    std::vector<Real> want{Real(1) / 2,  Real(1) / 4,    Real(0), Real(-3) / 16, Real(0),
                           Real(45) / 64, Real(0),        Real(-1575) / 256,
                           Real(0),       Real(99225) / 1024};
    for (auto method : {LagrangeMethod::reversion, LagrangeMethod::derivative_formula,
                        LagrangeMethod::root_tracking}) {
        auto lc = oned::lagrange_coefficients(sys, cps, 1, 10, method);
        Real tol = method == LagrangeMethod::root_tracking ? Real(num::pow10(-9)) : tol_digits(8);
        for (int i = 0; i < 10; ++i)
            CHECK_MESSAGE(close_scaled(lc.g[i], want[i], tol),
                          "method ", static_cast<int>(method), " g_", i + 1, " = ",
                          lc.g[i].str(20));
    }

    // N = 0: the identity map inverts to itself
    auto cps0 = oned::critical_points(sys_harmonic());
    auto id = oned::lagrange_coefficients(sys_harmonic(), cps0, 0, 6, LagrangeMethod::reversion);
    CHECK(close_abs(id.g[0], Real(1), tol_digits(8)));
    for (int i = 1; i < 6; ++i)
        CHECK(close_abs(id.g[i], Real(0), tol_digits(8)));
}

TEST_CASE("lagrange coefficients, a=1 golden band") {
    auto sys = sys_a1();
    auto cps = oned::critical_points(sys);
    auto lc = oned::lagrange_coefficients(sys, cps, 1, 5, LagrangeMethod::reversion);
    CHECK(close_abs(lc.g[0], Real(kG1), tol_digits(8)));
    CHECK(close_abs(lc.g[1], Real(kG2), tol_digits(8)));
    CHECK(close_abs(lc.g[2], Real(kG3), tol_digits(8)));
    CHECK(close_abs(lc.g[3], Real(0), tol_digits(8)));  // g_4 vanishes here
    CHECK(close_abs(lc.g[4], Real(kG5), tol_digits(8)));

    // g_1 = 1/f'(b_k)
    CHECK(close_scaled(lc.g[0], 1 / cps[1].slope, tol_digits(8)));

    CHECK_THROWS_AS(oned::lagrange_coefficients(sys, cps, 5, 3, LagrangeMethod::reversion),
                    std::invalid_argument);
    CHECK_THROWS_AS(oned::lagrange_coefficients(sys, cps, 1, 0, LagrangeMethod::reversion),
                    std::invalid_argument);
}

TEST_CASE("three-way agreement on a two-pole system") {
    oned::System sys({Real("0.5"), Real(3)}, {Real(2), Real(1) / 3});
    auto cps = oned::critical_points(sys);
    for (int k = 0; k < 3; ++k) {
        auto rev = oned::lagrange_coefficients(sys, cps, k, 8, LagrangeMethod::reversion);
        auto der = oned::lagrange_coefficients(sys, cps, k, 8, LagrangeMethod::derivative_formula);
        auto trk = oned::lagrange_coefficients(sys, cps, k, 8, LagrangeMethod::root_tracking);
        for (int i = 0; i < 8; ++i) {
            CHECK(close_scaled(rev.g[i], der.g[i], tol_digits(10)));
            CHECK(close_scaled(rev.g[i], trk.g[i], num::pow10(-8)));
        }
    }
}

TEST_CASE("closed forms for g1 and g2") {
    {
        auto sys = sys_a0();
        auto cps = oned::critical_points(sys);
        auto [g1, g2] = oned::closed_form_g1_g2(sys, cps, 1);
        CHECK(close_abs(g1, Real(1) / 2, tol_digits(8)));
        CHECK(close_abs(g2, Real(1) / 4, tol_digits(8)));
    }
    {
        auto sys = sys_a1();
        auto cps = oned::critical_points(sys);
        auto [g1, g2] = oned::closed_form_g1_g2(sys, cps, 1);
        CHECK(close_abs(g1, Real(kG1), tol_digits(8)));
        CHECK(close_abs(g2, Real(kG2), tol_digits(8)));
        auto lc = oned::lagrange_coefficients(sys, cps, 1, 2, LagrangeMethod::reversion);
        CHECK(close_scaled(g1, lc.g[0], tol_digits(10)));
        CHECK(close_scaled(g2, lc.g[1], tol_digits(10)));
    }
}

TEST_CASE("inverse evaluation and defect") {
    auto sys = sys_a0();
    auto cps = oned::critical_points(sys);
    auto lc = oned::lagrange_coefficients(sys, cps, 1, 8, LagrangeMethod::reversion);

    auto at0 = oned::inverse_eval(sys, lc, Real(0));
    CHECK(at0.x == lc.center);
    CHECK(close_abs(at0.defect, Real(0), tol_digits(3)));

    // w = 0.1 against the closed inverse (w + sqrt(w^2 + 4))/2
    auto v = oned::inverse_eval(sys, lc, Real("0.1"));
    Real want("1.05124921972503928638486060741613027107432256564579686405445");
    CHECK(close_abs(v.x, want, num::pow10(-12)));
    CHECK(v.defect < num::pow10(-8));

    // identity system: x(w) = w exactly at any order
    auto cps0 = oned::critical_points(sys_harmonic());
    auto id = oned::lagrange_coefficients(sys_harmonic(), cps0, 0, 4, LagrangeMethod::reversion);
    auto r = oned::inverse_eval(sys_harmonic(), id, Real("0.37"));
    CHECK(close_abs(r.x, Real("0.37"), tol_digits(5)));
}

TEST_CASE("defect decreases with the truncation order") {
    auto sys = sys_a1();
    auto cps = oned::critical_points(sys);
    Real w("0.05");
    Real prev = -1;
    for (int M : {2, 4, 8}) {
        auto lc = oned::lagrange_coefficients(sys, cps, 1, M, LagrangeMethod::reversion);
        Real defect = oned::inverse_eval(sys, lc, w).defect;
        if (prev >= 0)
            CHECK(defect < prev);
        prev = defect;
    }
}

TEST_CASE("parity of the a=0 band series") {
    // x(w) - b - w/2 is even in w, so g_3 = g_5 = g_7 = g_9 = 0
    auto sys = sys_a0();
    auto cps = oned::critical_points(sys);
    auto lc = oned::lagrange_coefficients(sys, cps, 1, 9, LagrangeMethod::reversion);
    for (int i : {3, 5, 7, 9})
        CHECK(close_abs(lc.g[i - 1], Real(0), tol_digits(20)));
}

TEST_CASE("action series") {
    Real pi = num::real_pi();
    {
        auto sys = sys_harmonic();
        auto cps = oned::critical_points(sys);
        auto as = oned::action_series(sys, cps, 0, 4);
        CHECK(close_abs(as.coeff[0], 2 * pi, tol_digits(20)));
        for (int p = 2; p <= 4; ++p)
            CHECK(close_abs(as.coeff[p - 1], Real(0), tol_digits(20)));
    }
    {
        auto sys = sys_a0();
        auto cps = oned::critical_points(sys);
        auto as = oned::action_series(sys, cps, 1, 6);
        CHECK(close_abs(as.coeff[0], pi, tol_digits(20)));
        for (int p = 2; p <= 6; ++p)
            CHECK(close_abs(as.coeff[p - 1], Real(0), tol_digits(20)));
    }
    {
        auto sys = sys_a1();
        auto cps = oned::critical_points(sys);
        auto as = oned::action_series(sys, cps, 1, 2);
        CHECK(close_abs(as.coeff[0], 2 * pi * Real(kG1), tol_digits(10)));
        CHECK(close_abs(as.coeff[1], 3 * pi / (25 * sqrt(Real(5))), tol_digits(10)));
    }
}

TEST_CASE("action quadrature against closed cases") {
    Real pi = num::real_pi();
    Real tol = num::pow10(-15);
    {
        auto sys = sys_harmonic();
        auto cps = oned::critical_points(sys);
        Real a = oned::action_quadrature(sys, cps, 0, Real(1), tol);
        CHECK(close_abs(a, 2 * pi, num::pow10(-13)));
    }
    {
        auto sys = sys_a0();
        auto cps = oned::critical_points(sys);
        Real a = oned::action_quadrature(sys, cps, 1, Real("0.5"), tol);
        CHECK(close_abs(a, pi / 2, num::pow10(-13)));
        CHECK_THROWS_AS(oned::action_quadrature(sys, cps, 1, Real(0), tol),
                        std::invalid_argument);
    }
    {
        // truncation error after A_2 is |A_3| c^3 (about 2.25e-8 at c = 0.01)
        auto sys = sys_a1();
        auto cps = oned::critical_points(sys);
        auto as = oned::action_series(sys, cps, 1, 2);
        Real c("0.01");
        Real q = oned::action_quadrature(sys, cps, 1, c, num::pow10(-20));
        Real dev = abs(q - (as.coeff[0] * c + as.coeff[1] * c * c));
        CHECK(dev < num::pow10(-7) * 3 / 10);
        CHECK(dev > num::pow10(-8));
    }
}

TEST_CASE("action consistency: quadrature error decays like c^(P+1)") {
    auto sys = sys_a1();
    auto cps = oned::critical_points(sys);
    const int p_max = 2;
    auto as = oned::action_series(sys, cps, 1, p_max);
    std::vector<std::pair<Real, Real>> pts;
    Real c = num::pow10(-3);
    for (int i = 0; i < 5; ++i) {
        Real partial = as.coeff[0] * c + as.coeff[1] * c * c;
        Real err = abs(oned::action_quadrature(sys, cps, 1, c, num::pow10(-22)) - partial);
        pts.emplace_back(log(c), log(err));
        c *= Real("1.77827941");  // half-decade steps over one decade
    }
    Real sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto& [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    Real n = static_cast<int>(pts.size());
    Real slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    CHECK(abs(slope - (p_max + 1)) < Real(2) / 10);
}

TEST_CASE("isochronicity report") {
    {
        auto sys = sys_a0();
        auto cps = oned::critical_points(sys);
        auto rep = oned::isochronicity_report(sys, cps, 1, 6, testutil::tol_digits(20));
        CHECK(rep.isochronous);
    }
    {
        auto sys = sys_a1();
        auto cps = oned::critical_points(sys);
        auto rep = oned::isochronicity_report(sys, cps, 1, 6, testutil::tol_digits(20));
        CHECK_FALSE(rep.isochronous);
        CHECK(close_abs(rep.worst, abs(Real("0.1685955535449774334357529914369174751871962205")),
                        num::pow10(-12)));
    }
    {
        auto sys = sys_harmonic();
        auto cps = oned::critical_points(sys);
        CHECK(oned::isochronicity_report(sys, cps, 0, 6, testutil::tol_digits(20)).isochronous);
    }
}

TEST_CASE("newton tracking") {
    auto sys = sys_a1();
    auto cps = oned::critical_points(sys);
    CHECK(close_abs(oned::newton_track(sys, cps[1], Real(0)), cps[1].location, tol_digits(3)));
    Real w("0.3");
    Real x = oned::newton_track(sys, cps[1], w);
    CHECK(close_abs(oned::f_value(sys, x), w, tol_digits(3)));
    CHECK(x > cps[1].band_lo);
}
