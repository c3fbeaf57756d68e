#pragma once

#include <array>
#include <cmath>

#include "kerrh/errors.hpp"
#include "kerrh/jets.hpp"

// Exact Kerr background in Boyer-Lindquist coordinates (t, r, theta, phi),
// geometric units. All chart scalars are produced as second-order jets in
// (r, theta); t and phi dependence is handled analytically elsewhere via
// the mode ansatz.

namespace kerrh {

struct KerrParams {
    double m = 1.0;  // mass
    double a = 0.0;  // angular momentum per unit mass

    KerrParams() = default;
    KerrParams(double m_, double a_) : m(m_), a(a_) {
        if (!(m > 0.0)) throw InvalidParams("mass must be positive");
        if (!(std::abs(a) < m)) throw InvalidParams("subextremality |a| < m required");
    }
    double r_plus() const { return m + std::sqrt(m * m - a * a); }
};

struct BLPoint {
    double t = 0.0, r = 0.0, theta = 0.0, phi = 0.0;
};

// Guard bands: the chart is singular on the axis and at the horizon.
inline constexpr double kSinThetaGuard = 1e-6;
inline constexpr double kDeltaGuard = 1e-8;

inline void check_point(const KerrParams& p, const BLPoint& x) {
    const double s = std::sin(x.theta);
    const double aq = x.r * x.r + p.a * p.a * std::cos(x.theta) * std::cos(x.theta);
    const double Delta = x.r * x.r - 2.0 * p.m * x.r + p.a * p.a;
    if (x.theta <= 0.0 || x.theta >= M_PI || s < kSinThetaGuard)
        throw AxisOrHorizonProximity("theta within axis guard band");
    if (x.r <= p.r_plus() || Delta / aq < kDeltaGuard)
        throw AxisOrHorizonProximity("r within horizon guard band");
}

using Vec4 = std::array<Jet2, 4>;  // coordinate components in (t, r, theta, phi)
using Mat4 = std::array<std::array<Jet2, 4>, 4>;

// Chart scalars at a point, order-2 differentiable in (r, theta).
struct Background {
    KerrParams par;
    BLPoint pt;
    Jet2 r, th;             // chart variables as jets
    Jet2 sinth, costh;
    Jet2 Delta, qq;         // qq = |q|^2 = r^2 + a^2 cos^2
    Jet2 q, qbar;           // q = r + i a cos(theta)
    Jet2 Sigma2;

    // principal null frame (coordinate components)
    Vec4 e3, e4, e1, e2;

    // complexified connection coefficients in the omega = 0 gauge
    Jet2 trX, trXb, P;
    Jet2 H1, Hb1, Z1;       // anti-self-dual first components
    Jet2 om, omb;           // omega, omega-bar (real scalars)
    Jet2 Lam;               // (r^2+a^2) cot(theta) / |q|^3

    // rotation speed w(X) = g(D_X e1, e2) of the horizontal frame
    Jet2 w3, w4, w1, w2;

    // real decompositions
    Jet2 trchi() const { return (trX + conj(trX)) * 0.5; }
    Jet2 atrchi() const { return (conj(trX) - trX) * cplx(0, -0.5); }  // -Im trX
    Jet2 trchib() const { return (trXb + conj(trXb)) * 0.5; }
    Jet2 atrchib() const { return (conj(trXb) - trXb) * cplx(0, -0.5); }
    Jet2 rho() const { return (P + conj(P)) * 0.5; }
    Jet2 rhostar() const { return (P - conj(P)) * cplx(0, -0.5); }  // Im P

    // eta, etab, zeta real components (H = eta + i *eta gives eta1 = Re H1, eta2 = Im H1)
    Jet2 eta(int a2) const { return a2 == 0 ? (H1 + conj(H1)) * 0.5 : (H1 - conj(H1)) * cplx(0, -0.5); }
    Jet2 etab(int a2) const { return a2 == 0 ? (Hb1 + conj(Hb1)) * 0.5 : (Hb1 - conj(Hb1)) * cplx(0, -0.5); }
    Jet2 zeta(int a2) const { return a2 == 0 ? (Z1 + conj(Z1)) * 0.5 : (Z1 - conj(Z1)) * cplx(0, -0.5); }
};

inline Background make_background(const KerrParams& p, const BLPoint& x) {
    check_point(p, x);
    Background bg;
    bg.par = p;
    bg.pt = x;
    const double a = p.a, m = p.m;
    bg.r = Jet2::var_r(x.r);
    bg.th = Jet2::var_theta(x.theta);
    bg.sinth = sin(bg.th);
    bg.costh = cos(bg.th);
    bg.Delta = bg.r * bg.r - 2.0 * m * bg.r + a * a;
    bg.q = bg.r + cplx(0, 1) * (a * bg.costh);
    bg.qbar = conj(bg.q);
    bg.qq = bg.q * bg.qbar;
    const Jet2 r2a2 = bg.r * bg.r + a * a;
    bg.Sigma2 = r2a2 * r2a2 - (a * a) * bg.sinth * bg.sinth * bg.Delta;

    // frame vectors
    bg.e4 = {r2a2 / bg.Delta, Jet2{1.0}, Jet2{0.0}, Jet2{a} / bg.Delta};
    bg.e3 = {r2a2 / bg.qq, -bg.Delta / bg.qq, Jet2{0.0}, Jet2{a} / bg.qq};
    const Jet2 absq = sqrt(bg.qq);
    bg.e1 = {Jet2{0.0}, Jet2{0.0}, inv(absq), Jet2{0.0}};
    bg.e2 = {a * bg.sinth / absq, Jet2{0.0}, Jet2{0.0}, inv(absq * bg.sinth)};

    const Jet2 qq2 = bg.qq * bg.qq;
    const Jet2 absq3 = absq * bg.qq;
    bg.trX = 2.0 / bg.q;
    bg.trXb = -2.0 * bg.Delta * bg.q / qq2;
    bg.P = -2.0 * m / pow_int(bg.q, 3);
    bg.H1 = cplx(0, 1) * a * bg.sinth * bg.q / absq3;
    bg.Z1 = cplx(0, 1) * a * bg.sinth * bg.qbar / absq3;
    bg.Hb1 = -bg.Z1;
    bg.om = Jet2{0.0};
    bg.omb = ((a * a) * bg.costh * bg.costh * (bg.r - m) + m * bg.r * bg.r - (a * a) * bg.r) / qq2;
    bg.Lam = r2a2 * bg.costh / (bg.sinth * absq3);

    bg.w1 = Jet2{0.0};
    bg.w2 = bg.Lam;
    bg.w3 = 0.5 * bg.atrchib();
    bg.w4 = 0.5 * bg.atrchi();
    return bg;
}

// Metric from the displayed line element, as jets.
inline Mat4 metric(const Background& bg) {
    const double a = bg.par.a, m = bg.par.m;
    Mat4 g{};
    const Jet2 s2 = bg.sinth * bg.sinth;
    const Jet2 w = 2.0 * a * m * bg.r / bg.Sigma2;  // frame-dragging potential
    g[0][0] = -bg.qq * bg.Delta / bg.Sigma2 + bg.Sigma2 * s2 / bg.qq * (w * w);
    g[0][3] = -bg.Sigma2 * s2 / bg.qq * w;
    g[3][0] = g[0][3];
    g[3][3] = bg.Sigma2 * s2 / bg.qq;
    g[1][1] = bg.qq / bg.Delta;
    g[2][2] = bg.qq;
    return g;
}

// Inverse by blockwise elimination (t-phi block plus diagonal r, theta).
inline Mat4 inverse_metric(const Background& bg) {
    const Mat4 g = metric(bg);
    Mat4 gi{};
    const Jet2 det = g[0][0] * g[3][3] - g[0][3] * g[0][3];
    gi[0][0] = g[3][3] / det;
    gi[3][3] = g[0][0] / det;
    gi[0][3] = -g[0][3] / det;
    gi[3][0] = gi[0][3];
    gi[1][1] = inv(g[1][1]);
    gi[2][2] = inv(g[2][2]);
    return gi;
}

inline Jet2 metric_det(const Background& bg) {
    const Mat4 g = metric(bg);
    return (g[0][0] * g[3][3] - g[0][3] * g[0][3]) * g[1][1] * g[2][2];
}

}  // namespace kerrh
