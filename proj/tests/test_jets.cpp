#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "kerrh/jets.hpp"

using namespace kerrh;

namespace {
double rel(cplx a, cplx b) {
    const double s = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) / s;
}
}  // namespace

TEST_CASE("jet product and chain rules against closed forms") {
    const double r = 3.7, th = 1.1;
    const Jet2 R = Jet2::var_r(r), TH = Jet2::var_theta(th);

    // f = r^2 sin(th) + exp(-r) cos(th)
    const Jet2 f = R * R * sin(TH) + exp(-R) * cos(TH);
    CHECK(rel(f.v, r * r * std::sin(th) + std::exp(-r) * std::cos(th)) < 1e-15);
    CHECK(rel(f.dr, 2 * r * std::sin(th) - std::exp(-r) * std::cos(th)) < 1e-15);
    CHECK(rel(f.dth, r * r * std::cos(th) - std::exp(-r) * std::sin(th)) < 1e-15);
    CHECK(rel(f.drr, 2 * std::sin(th) + std::exp(-r) * std::cos(th)) < 1e-15);
    CHECK(rel(f.drth, 2 * r * std::cos(th) + std::exp(-r) * std::sin(th)) < 1e-15);
    CHECK(rel(f.dthth, -r * r * std::sin(th) - std::exp(-r) * std::cos(th)) < 1e-15);

    // quotient: g = sin(th)/r, g_rr = 2 sin/r^3
    const Jet2 g = sin(TH) / R;
    CHECK(rel(g.drr, 2 * std::sin(th) / (r * r * r)) < 1e-14);
    CHECK(rel(g.drth, -std::cos(th) / (r * r)) < 1e-14);

    // sqrt/log composition: h = log(sqrt(r^2 + cos(th)^2)) has known Hessian
    const Jet2 h = log(sqrt(R * R + cos(TH) * cos(TH)));
    const double u = r * r + std::cos(th) * std::cos(th);
    CHECK(rel(h.dr, r / u) < 1e-14);
    CHECK(rel(h.drr, (u - 2 * r * r) / (u * u)) < 1e-13);
}

TEST_CASE("mixed second derivative has a single slot") {
    // d_rth computed from either first derivative agrees exactly
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ur(2.0, 9.0), ut(0.3, 2.7);
    for (int it = 0; it < 200; ++it) {
        const Jet2 R = Jet2::var_r(ur(rng)), TH = Jet2::var_theta(ut(rng));
        const Jet2 f = sin(R * cos(TH)) * exp(0.1 * R) / (1.0 + R * R) + pow_int(sin(TH), 3) * log(R);
        const Jet1 fr = d_r(f), fth = d_theta(f);
        CHECK(fr.dth == fth.dr);  // same stored slot by construction
        CHECK(rel(d_theta(fr), d_r(fth)) == 0.0);
    }
}

TEST_CASE("complex jets: conjugation commutes with real-variable derivatives") {
    const Jet2 R = Jet2::var_r(2.5), TH = Jet2::var_theta(0.9);
    const Jet2 q = R + cplx(0, 1) * (0.7 * cos(TH));
    const Jet2 w = pow_int(q, 3) * conj(q);
    const Jet2 wc = conj(w);
    CHECK(rel(wc.dr, std::conj(w.dr)) < 1e-15);
    CHECK(rel(wc.dthth, std::conj(w.dthth)) < 1e-15);
}

TEST_CASE("pow_int matches repeated products and inverse powers") {
    const Jet2 R = Jet2::var_r(1.7);
    const Jet2 p = pow_int(R, -3);
    CHECK(rel(p.v, std::pow(1.7, -3)) < 1e-15);
    CHECK(rel(p.dr, -3 * std::pow(1.7, -4)) < 1e-14);
    CHECK(rel(p.drr, 12 * std::pow(1.7, -5)) < 1e-14);
}
