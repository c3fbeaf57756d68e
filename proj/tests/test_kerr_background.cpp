#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kerrh/frame.hpp"
#include "kerrh/htensor.hpp"

using namespace kerrh;

namespace {
double rel(cplx a, cplx b) {
    const double s = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) / s;
}
}  // namespace

TEST_CASE("params and guard bands") {
    CHECK_THROWS_AS(KerrParams(1.0, 1.5), InvalidParams);
    CHECK_THROWS_AS(KerrParams(-1.0, 0.0), InvalidParams);
    const KerrParams p(1.0, 0.0);
    CHECK_THROWS_AS(check_point(p, BLPoint{0, 2.0, M_PI / 2, 0}), AxisOrHorizonProximity);
    CHECK_THROWS_AS(check_point(p, BLPoint{0, 4.0, 1e-9, 0}), AxisOrHorizonProximity);
    CHECK_NOTHROW(check_point(p, BLPoint{0, 4.0, M_PI / 2, 0}));
}

TEST_CASE("metric matches Schwarzschild values and the standard g_tt form") {
    const KerrParams p(1.0, 0.0);
    const auto bg = make_background(p, {0, 4.0, M_PI / 2, 0});
    const auto g = metric(bg);
    CHECK(rel(g[1][1].v, 2.0) < 1e-14);          // 1/(1-2m/r) at r=4
    CHECK(rel(g[0][0].v, -0.5) < 1e-14);         // -(1-2m/r)
    CHECK(std::abs(g[0][3].v) < 1e-15);

    // g_tt -> 0 approaching the horizon boundary of validity
    const auto bg2 = make_background(p, {0, 2.0 + 1e-6, M_PI / 2, 0});
    CHECK(std::abs(metric(bg2)[0][0].v) < 1e-5);

    // line-element g_tt equals -(1 - 2mr/|q|^2) for generic spin
    const KerrParams pk(1.0, 0.7);
    const auto bg3 = make_background(pk, {0, 3.1, 1.1, 0});
    const auto g3 = metric(bg3);
    const double q2 = value(bg3.qq).real();
    CHECK(rel(g3[0][0].v, -(1.0 - 2.0 * 1.0 * 3.1 / q2)) < 1e-13);
}

TEST_CASE("inverse metric contracts to identity") {
    const KerrParams p(1.0, 0.95);
    const auto bg = make_background(p, {0, 2.2, 0.4, 0});
    const auto g = metric(bg), gi = inverse_metric(bg);
    for (int mu = 0; mu < 4; ++mu)
        for (int la = 0; la < 4; ++la) {
            cplx s = 0;
            for (int nu = 0; nu < 4; ++nu) s += g[mu][nu].v * gi[nu][la].v;
            CHECK(std::abs(s - (mu == la ? 1.0 : 0.0)) < 1e-13);
        }
    CHECK(std::abs(value(metric_det(bg))) > 1e-12);
}

TEST_CASE("frame is null, orthonormal and correctly normalized") {
    for (double a : {0.0, 0.3, 0.95}) {
        const KerrParams p(1.0, a);
        const auto bg = make_background(p, {0, 3.3, 1.2, 0});
        const auto g = metric(bg);
        auto ip = [&](const Vec4& X, const Vec4& Y) {
            cplx s = 0;
            for (int mu = 0; mu < 4; ++mu)
                for (int nu = 0; nu < 4; ++nu) s += g[mu][nu].v * X[mu].v * Y[nu].v;
            return s;
        };
        CHECK(std::abs(ip(bg.e3, bg.e3)) < 1e-12);
        CHECK(std::abs(ip(bg.e4, bg.e4)) < 1e-12);
        CHECK(rel(ip(bg.e3, bg.e4), -2.0) < 1e-12);
        CHECK(rel(ip(bg.e1, bg.e1), 1.0) < 1e-12);
        CHECK(rel(ip(bg.e2, bg.e2), 1.0) < 1e-12);
        CHECK(std::abs(ip(bg.e1, bg.e2)) < 1e-12);
        CHECK(std::abs(ip(bg.e3, bg.e1)) < 1e-12);
        CHECK(std::abs(ip(bg.e4, bg.e2)) < 1e-12);
    }

    // Schwarzschild e4 = (1/(1-2m/r), 1, 0, 0)
    const auto bg = make_background(KerrParams(1.0, 0.0), {0, 4.0, 1.0, 0});
    CHECK(rel(bg.e4[0].v, 2.0) < 1e-14);
    CHECK(rel(bg.e4[1].v, 1.0) < 1e-14);
    CHECK(std::abs(bg.e4[2].v) + std::abs(bg.e4[3].v) < 1e-15);
}

TEST_CASE("orientation canary: volume form on (e1,e2,e3,e4)") {
    const auto fc = make_frame_calc(KerrParams(1.0, 0.6), {0, 3.0, 1.0, 0});
    const double v = frame_volume(fc);
    // |eps(e1,e2,e3,e4)| = 2; the induced horizontal form is half of it
    CHECK(std::abs(std::abs(v) - 2.0) < 1e-10);
}

TEST_CASE("christoffels: metricity, symmetry and the flat limit") {
    const auto fc = make_frame_calc(KerrParams(1.0, 0.7), {0, 2.8, 0.9, 0});
    // lower-index symmetry
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu)
            for (int la = 0; la < 4; ++la)
                CHECK(std::abs(value(fc.Gamma[mu][nu][la]) - value(fc.Gamma[mu][la][nu])) < 1e-12);
    // metricity residual
    double scale = 0.0;
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) scale = std::max(scale, std::abs(value(fc.g[mu][nu])));
    for (int si = 0; si < 4; ++si)
        for (int nu = 0; nu < 4; ++nu)
            for (int la = 0; la < 4; ++la) {
                cplx resid = value(partial(fc.g[nu][la], si));
                for (int mu = 0; mu < 4; ++mu)
                    resid -= value(fc.Gamma[mu][si][nu]) * value(fc.g[mu][la]) +
                             value(fc.Gamma[mu][si][la]) * value(fc.g[nu][mu]);
                CHECK(std::abs(resid) / scale < 1e-11);
            }

    // flat limit: spherical-chart Christoffels
    const auto ff = make_frame_calc(KerrParams(1e-30, 0.0), {0, 5.0, 1.0, 0});
    const double r = 5.0, th = 1.0;
    CHECK(rel(value(ff.Gamma[1][2][2]), -r) < 1e-12);                                   // r_thth
    CHECK(rel(value(ff.Gamma[1][3][3]), -r * std::sin(th) * std::sin(th)) < 1e-12);     // r_phph
    CHECK(rel(value(ff.Gamma[2][1][2]), 1.0 / r) < 1e-12);                              // th_rth
    CHECK(rel(value(ff.Gamma[2][3][3]), -std::sin(th) * std::cos(th)) < 1e-12);         // th_phph
    CHECK(rel(value(ff.Gamma[3][1][3]), 1.0 / r) < 1e-12);                              // ph_rph
    CHECK(rel(value(ff.Gamma[3][2][3]), std::cos(th) / std::sin(th)) < 1e-12);          // ph_thph
}

TEST_CASE("horizontal rotation coefficients match their closed forms") {
    const KerrParams p(1.0, 0.8);
    const BLPoint x{0, 2.6, 0.8, 0};
    const auto fc = make_frame_calc(p, x);
    const auto rf = ricci_from_frame(fc);
    const auto& bg = fc.bg;
    CHECK(std::abs(rf.w1) < 1e-12);
    CHECK(rel(rf.w2, value(bg.Lam)) < 1e-11);
    CHECK(rel(rf.w3, 0.5 * value(bg.atrchib())) < 1e-11);
    CHECK(rel(rf.w4, 0.5 * value(bg.atrchi())) < 1e-11);
}

TEST_CASE("riemann: vacuum, Weyl antisymmetry and the P oracle") {
    for (double a : {0.0, 0.3, 0.95}) {
        const KerrParams p(1.0, a);
        const BLPoint x{0, 3.0, 1.0, 0};
        const auto fc = make_frame_calc(p, x);
        const auto cv = curv_from_riemann(fc);
        const double scale = std::abs(cv.P) + 1e-300;

        for (int nu = 0; nu < 4; ++nu)
            for (int la = 0; la < 4; ++la) CHECK(std::abs(fc.RicciT[nu][la]) / scale < 1e-9);

        for (int al = 0; al < 4; ++al)
            for (int be = 0; be < 4; ++be)
                for (int ga = 0; ga < 4; ++ga)
                    for (int de = 0; de < 4; ++de) {
                        CHECK(std::abs(fc.W[al][be][ga][de] + fc.W[be][al][ga][de]) / scale < 1e-10);
                        CHECK(std::abs(fc.W[al][be][ga][de] - fc.W[ga][de][al][be]) / scale < 1e-10);
                    }

        const cplx Pcf = value(fc.bg.P);
        CHECK(rel(cv.P, Pcf) < 1e-9);
        CHECK(std::abs(cv.A11) / scale < 1e-9);
        CHECK(std::abs(cv.Abar11) / scale < 1e-9);
        CHECK(std::abs(cv.B1) / scale < 1e-9);
        CHECK(std::abs(cv.Bbar1) / scale < 1e-9);
    }

    // rho = -2m/r^3 at Schwarzschild r=3
    const auto fc = make_frame_calc(KerrParams(1.0, 0.0), {0, 3.0, 1.3, 0});
    const auto cv = curv_from_riemann(fc);
    CHECK(rel(cv.rho, -2.0 / 27.0) < 1e-11);
    CHECK(std::abs(cv.rhostar) < 1e-12);

    // *rho vanishes on the equator where q is real
    const auto fce = make_frame_calc(KerrParams(1.0, 0.9), {0, 2.5, M_PI / 2, 0});
    const auto cve = curv_from_riemann(fce);
    CHECK(std::abs(cve.rhostar) / std::abs(cve.P) < 1e-10);

    // varrho structure: W_{a3b4} = -rho delta_ab + rho* eps_ab
    const auto fck = make_frame_calc(KerrParams(1.0, 0.7), {0, 2.9, 1.2, 0});
    const auto cvk = curv_from_riemann(fck);
    for (int a2 = 0; a2 < 2; ++a2)
        for (int b2 = 0; b2 < 2; ++b2) {
            const cplx want = -cvk.rho * kron(a2, b2) + cvk.rhostar * eps12(a2, b2);
            CHECK(std::abs(fck.W[FE1 + a2][F3][FE1 + b2][F4] - want) / std::abs(cvk.P) < 1e-9);
        }
}
