#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kerrh/identities_calc.hpp"

using namespace kerrh;

namespace {
const KerrParams kParams[] = {KerrParams(1.0, 0.0), KerrParams(1.0, 0.3), KerrParams(1.0, 0.7),
                              KerrParams(1.0, 0.95)};
const BLPoint kPoints[] = {{0, 2.4, 0.7, 0}, {0, 3.5, 1.3, 0}, {0, 7.0, 2.2, 0}, {0, 21.0, 1.9, 0}};
}  // namespace

TEST_CASE("frame derivative basics on background scalars and constant fields") {
    const auto bg = make_background(KerrParams(1.0, 0.6), {0, 3.2, 1.1, 0});
    // nab3 q = (1/2) conj(trXb) q via the field machinery
    FieldS0 qf{[&](const Jet2& r, const Jet2& th) { return r + cplx(0, 1) * (0.6 * cos(th)); },
               Mode{}, 0, "q"};
    const auto n3q = nab3(bg, at_point(bg, qf), qf.mode);
    const cplx want = 0.5 * std::conj(value(bg.trXb)) * value(bg.q);
    CHECK(std::abs(n3q.c[0].v - want) < 1e-13);

    // constant-amplitude axisymmetric static S2 field: (nab4 U)_11 = i atrchi u
    FieldS2 cf{[](const Jet2&, const Jet2&) { return Jet2{cplx(0.8, -0.3)}; }, Mode{}, 2, "const"};
    const auto U = at_point(bg, cf);
    const auto n4 = nab4(bg, U, cf.mode);
    CHECK(std::abs(n4.c[0].v - cplx(0, 1) * value(bg.atrchi()) * cplx(0.8, -0.3)) < 1e-13);
    const auto n3 = nab3(bg, U, cf.mode);
    CHECK(std::abs(n3.c[0].v - cplx(0, 1) * value(bg.atrchib()) * cplx(0.8, -0.3)) < 1e-13);

    // zero field stays zero
    FieldS2 zf{[](const Jet2&, const Jet2&) { return Jet2{}; }, Mode{0.3, 2}, 2, "zero"};
    const auto z = nab4(bg, nab3(bg, at_point(bg, zf), zf.mode), zf.mode);
    for (auto& v : z.c) CHECK(std::abs(v) == 0.0);
}

TEST_CASE("e2 acts as i m_phi / |q| on radial amplitudes at the equator") {
    const auto bg = make_background(KerrParams(1.0, 0.5), {0, 4.0, M_PI / 2, 0});
    FieldS0 f{[](const Jet2& r, const Jet2&) { return 1.0 / r; }, Mode{0.0, 3}, 0, "radial"};
    const auto v = at_point(bg, f);
    const cplx e2psi = value(dirD(bg.e2, v.c[0], f.mode));
    const cplx want = cplx(0, 3) / std::sqrt(value(bg.qq)) * (1.0 / 4.0);
    CHECK(std::abs(e2psi - want) < 1e-14);
}

TEST_CASE("anti-self-duality is preserved by the operators") {
    const auto bg = make_background(KerrParams(1.0, 0.7), {0, 2.9, 0.9, 0});
    const FieldS2 f = test_field_s2(1);
    const auto U = at_point(bg, f);
    const auto n3 = nab3(bg, U, f.mode);
    const auto dd = ddbar_dot_s2(bg, U, f.mode);
    const cplx i(0, 1);
    double scale = std::abs(n3.c[0].v) + std::abs(dd.c[0].v);
    CHECK(std::abs(n3.c[ix2(0, 1)].v + i * n3.c[ix2(0, 0)].v) / scale < 1e-13);
    CHECK(std::abs(n3.c[ix2(1, 1)].v + n3.c[ix2(0, 0)].v) / scale < 1e-13);
    CHECK(std::abs(dd.c[1].v + i * dd.c[0].v) / scale < 1e-13);
}

TEST_CASE("structural zeros: DD annihilates anti-self-dual fields") {
    for (int k = 0; k < 3; ++k) {
        const auto bg = make_background(kParams[k % 4], kPoints[k % 4]);
        const auto r = idn::dd_structural(bg, test_field_s1(k), test_field_s2(k + 1));
        CHECK(r.rel() < 1e-13);
    }
}

TEST_CASE("laplacian projection identity") {
    // (Lap2 A)_11 = Lap a + 4 i Lam e2(a) - 4 Lam^2 a, Lap a = e1e1 a + e2e2 a + Lam e1 a
    for (int k = 0; k < 4; ++k) {
        const auto bg = make_background(kParams[k], kPoints[k]);
        const FieldS2 f = test_field_s2(k);
        const auto U = at_point(bg, f);
        const auto L2 = lap2(bg, U, f.mode);
        const auto a0 = at_point(bg, FieldS0{f.amp, f.mode, 0, "proj"});
        const auto e1a = nab_dir(bg.e1, Jet2{}, a0, f.mode);
        const auto e2a = nab_dir(bg.e2, Jet2{}, a0, f.mode);
        const cplx e1e1 = dirD(bg.e1, e1a.c[0], f.mode);
        const cplx e2e2 = dirD(bg.e2, e2a.c[0], f.mode);
        const cplx lap = e1e1 + e2e2 + value(bg.Lam) * value(e1a.c[0]);
        const cplx want = lap + cplx(0, 4) * value(bg.Lam) * value(e2a.c[0]) -
                          4.0 * value(bg.Lam) * value(bg.Lam) * value(a0.c[0]);
        const double scale = std::max({std::abs(L2.c[0]), std::abs(want), 1e-30});
        CHECK(std::abs(L2.c[0] - want) / scale < 1e-9);
    }
}

TEST_CASE("scalar commutators on the grid") {
    for (int k = 0; k < 4; ++k) {
        const auto bg = make_background(kParams[k], kPoints[k]);
        for (int j = 0; j < 3; ++j) {
            const FieldS0 f = test_field_s0(j + k);
            CHECK(idn::comm_s0_3a(bg, f).rel() < 1e-8);
            CHECK(idn::comm_s0_4a(bg, f).rel() < 1e-8);
            CHECK(idn::comm_s0_43(bg, f).rel() < 1e-8);
        }
    }
}

TEST_CASE("S1 commutators on the grid") {
    for (int k = 0; k < 4; ++k) {
        const auto bg = make_background(kParams[k], kPoints[k]);
        for (int j = 0; j < 3; ++j) {
            const FieldS1 f = test_field_s1(j + k);
            CHECK(idn::comm_s1_3a(bg, f).rel() < 1e-8);
            CHECK(idn::comm_s1_4a(bg, f).rel() < 1e-8);
            CHECK(idn::comm_s1_43(bg, f).rel() < 1e-8);
            CHECK(idn::comm_div_s1_3(bg, f).rel() < 1e-8);
            CHECK(idn::comm_div_s1_4(bg, f).rel() < 1e-8);
            CHECK(idn::comm_hot_s1_3(bg, f).rel() < 1e-8);
            CHECK(idn::comm_hot_s1_4(bg, f).rel() < 1e-8);
        }
    }
}

TEST_CASE("S2 commutators on the grid") {
    for (int k = 0; k < 4; ++k) {
        const auto bg = make_background(kParams[k], kPoints[k]);
        for (int j = 0; j < 3; ++j) {
            const FieldS2 f = test_field_s2(j + k);
            CHECK(idn::comm_s2_3a(bg, f).rel() < 1e-8);
            CHECK(idn::comm_s2_4a(bg, f).rel() < 1e-8);
            CHECK(idn::comm_s2_43(bg, f).rel() < 1e-8);
            CHECK(idn::comm_div_s2_3(bg, f).rel() < 1e-8);
            CHECK(idn::comm_div_s2_4(bg, f).rel() < 1e-8);
        }
    }
}

TEST_CASE("the 3-4 commutator needs its eta-pair zeroth-order block") {
    // with spin on, dropping the block leaves an O(a^2) mismatch
    const auto bg = make_background(KerrParams(1.0, 0.95), {0, 2.4, 1.0, 0});
    const FieldS2 f = test_field_s2(1);
    CHECK(idn::comm_s2_43(bg, f, true).rel() < 1e-9);
    CHECK(idn::comm_s2_43(bg, f, false).rel() > 1e-5);
}

TEST_CASE("complexified commutators") {
    for (int k = 0; k < 4; ++k) {
        const auto bg = make_background(kParams[k], kPoints[k]);
        for (int j = 0; j < 3; ++j) {
            const FieldS1 f1 = test_field_s1(j + k);
            const FieldS2 f2 = test_field_s2(j + k + 1);
            CHECK(idn::comm_c_ddhot_4(bg, f1).rel() < 1e-8);
            CHECK(idn::comm_c_ddhot_3(bg, f1).rel() < 1e-8);
            CHECK(idn::comm_c_34_s2(bg, f2).rel() < 1e-8);
            CHECK(idn::comm_c_ddbar_4(bg, f2).rel() < 1e-8);
            CHECK(idn::comm_c_ddbar_3(bg, f2).rel() < 1e-8);
        }
    }
}

TEST_CASE("conformal commutators") {
    for (int k = 0; k < 4; ++k) {
        const auto bg = make_background(kParams[k], kPoints[k]);
        for (int j = 0; j < 3; ++j) {
            FieldS1 f1 = test_field_s1(j + k);
            f1.sig = (j + k) % 3;
            FieldS2 f2 = test_field_s2(j + k + 1);
            f2.sig = 2 - (j % 2);
            CHECK(idn::comm_conf_ddhot_4(bg, f1).rel() < 1e-8);
            CHECK(idn::comm_conf_ddhot_3(bg, f1).rel() < 1e-8);
            CHECK(idn::comm_conf_34(bg, f2).rel() < 1e-8);
            CHECK(idn::comm_conf_ddbar_3(bg, f2).rel() < 1e-8);
            CHECK(idn::comm_conf_3a(bg, f2).rel() < 1e-8);
        }
    }
}

TEST_CASE("horizontal Gauss identity for S1 fields") {
    for (int k = 0; k < 4; ++k) {
        const auto fc = make_frame_calc(kParams[k], kPoints[k]);
        for (int j = 0; j < 3; ++j) {
            CHECK(idn::gauss_s1(fc, test_field_s1(j)).rel() < 1e-8);
        }
    }
}

TEST_CASE("Leibniz rules") {
    for (int k = 0; k < 4; ++k) {
        const auto bg = make_background(kParams[k], kPoints[k]);
        const FieldS0 h = test_field_s0(k);
        const FieldS1 f = test_field_s1(k + 1);
        const FieldS2 u = test_field_s2(k + 2);
        CHECK(idn::leibniz_ddbar_hF(bg, h, f).rel() < 1e-9);
        CHECK(idn::leibniz_ddhot_hF(bg, h, f).rel() < 1e-9);
        CHECK(idn::leibniz_ddbar_hU(bg, h, u).rel() < 1e-9);
        CHECK(idn::leibniz_hot(bg, f, u).rel() < 1e-9);
        CHECK(idn::simplification_angular(bg, f, u).rel() < 1e-9);
    }
}

TEST_CASE("hodge consistency and curl of a gradient at zero spin") {
    for (int k = 0; k < 4; ++k) {
        const auto bg = make_background(kParams[k], kPoints[k]);
        CHECK(idn::hodge_consistency(bg, test_field_s1(k)).rel() < 1e-10);
    }
    // curl grad h = 0 on the integrable (a = 0) structure for static axisymmetric h
    const auto bg = make_background(KerrParams(1.0, 0.0), {0, 5.0, 1.2, 0});
    const FieldS0 h{[](const Jet2& r, const Jet2& th) { return sin(th) / r; }, Mode{}, 0, "h"};
    const auto gh = grad(bg, at_point(bg, h), h.mode);
    const auto cg = curl_s1(bg, gh, h.mode);
    CHECK(std::abs(cg.c[0]) < 1e-14);
}

TEST_CASE("conformal derivative invariance under frame rescaling") {
    const auto bg = make_background(KerrParams(1.0, 0.7), {0, 3.1, 1.0, 0});
    const auto rs = rescaled_background(bg, rescale_bank(0));
    for (int s : {1, 2}) {
        // scalar of type s: f' = lam^s f, then (nabc3 f)' = lam^(s-1) nabc3 f
        const FieldS0 f = test_field_s0(s);
        const auto F = at_point(bg, f);
        const T0<Jet2> Fp{{pow_int(rs.lam, s) * F.c[0]}};
        const auto lhs = nabc3(rs.bg, s, Fp, f.mode);
        const auto rhs = nabc3(bg, s, F, f.mode);
        const cplx scalefac = std::pow(value(rs.lam), s - 1);
        CHECK(std::abs(lhs.c[0].v - scalefac * rhs.c[0].v) /
                  std::max(std::abs(lhs.c[0].v), 1e-30) < 1e-9);
        // nabc4: type s+1
        const auto lhs4 = nabc4(rs.bg, s, Fp, f.mode);
        const auto rhs4 = nabc4(bg, s, F, f.mode);
        const cplx sf4 = std::pow(value(rs.lam), s + 1);
        CHECK(std::abs(lhs4.c[0].v - sf4 * rhs4.c[0].v) /
                  std::max(std::abs(lhs4.c[0].v), 1e-30) < 1e-9);
        // horizontal: type s
        const auto lhsa = gradc(rs.bg, s, Fp, f.mode);
        const auto rhsa = gradc(bg, s, F, f.mode);
        const cplx sfa = std::pow(value(rs.lam), s);
        for (int a = 0; a < 2; ++a)
            CHECK(std::abs(lhsa.c[a].v - sfa * rhsa.c[a].v) /
                      std::max(std::abs(lhsa.c[a].v), 1e-30) < 1e-9);
    }
    // s = 0: conformal operators coincide with the plain ones
    const FieldS2 u = test_field_s2(0, 0);
    const auto U = at_point(bg, u);
    const auto c3 = nabc3(bg, 0, U, u.mode), p3 = nab3(bg, U, u.mode);
    const auto cD = ddbarc_dot_s2(bg, 0, U, u.mode), pD = ddbar_dot_s2(bg, U, u.mode);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(c3.c[i].v - p3.c[i].v) == 0.0);
    for (int a = 0; a < 2; ++a) CHECK(std::abs(cD.c[a].v - pD.c[a].v) == 0.0);
}
