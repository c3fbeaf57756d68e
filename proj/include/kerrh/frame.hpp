#pragma once

#include <array>

#include "kerrh/kerr.hpp"

// Frame-derivative route: Christoffel symbols from metric jets, covariant
// derivatives of the principal null frame, the Riemann tensor and its frame
// projections. Everything here is independent of the closed-form coefficient
// table in kerr.hpp; the two routes are compared by the verifier.

namespace kerrh {

// frame index order used throughout: 0 -> e3, 1 -> e4, 2 -> e1, 3 -> e2
inline constexpr int F3 = 0, F4 = 1, FE1 = 2, FE2 = 3;

inline double frame_metric(int al, int be) {
    if ((al == F3 && be == F4) || (al == F4 && be == F3)) return -2.0;
    if (al == be && al >= 2) return 1.0;
    return 0.0;
}
inline double frame_metric_inv(int al, int be) {
    if ((al == F3 && be == F4) || (al == F4 && be == F3)) return -0.5;
    if (al == be && al >= 2) return 1.0;
    return 0.0;
}

struct FrameCalc {
    Background bg;
    std::array<Vec4, 4> fr;                            // working frame, order (e3, e4, e1, e2)
    Mat4 g, gi;                                        // metric and inverse (Jet2)
    std::array<std::array<std::array<Jet1, 4>, 4>, 4> Gamma;  // Gamma^mu_{nu lam}
    std::array<std::array<std::array<Jet1, 4>, 4>, 4> Ghat;   // g(D_{e_al} e_be, e_ga), frame indices
    std::array<std::array<std::array<std::array<cplx, 4>, 4>, 4>, 4> W;  // Riemann frame projection
    std::array<std::array<cplx, 4>, 4> RicciT;          // coordinate Ricci tensor values

    const Vec4& frame(int al) const { return fr[al]; }
};

inline Jet1 partial(const Jet2& f, int mu) {
    if (mu == 1) return d_r(f);
    if (mu == 2) return d_theta(f);
    return Jet1{};  // stationary and axisymmetric background
}
inline cplx partial(const Jet1& f, int mu) {
    if (mu == 1) return f.dr;
    if (mu == 2) return f.dth;
    return {};
}

inline FrameCalc make_frame_calc_frames(const Background& bg, const std::array<Vec4, 4>& frames) {
    FrameCalc fc{bg, frames, {}, {}, {}, {}, {}, {}};
    fc.g = metric(fc.bg);
    fc.gi = inverse_metric(fc.bg);

    // Christoffels, one derivative below the metric order
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu)
            for (int la = 0; la < 4; ++la) {
                Jet1 s{};
                for (int si = 0; si < 4; ++si) {
                    const Jet1 t = partial(fc.g[si][la], nu) + partial(fc.g[si][nu], la) -
                                   partial(fc.g[nu][la], si);
                    s = s + trunc1(fc.gi[mu][si]) * t;
                }
                fc.Gamma[mu][nu][la] = s * 0.5;
            }

    // covariant derivatives of the frame and the full frame connection table
    std::array<std::array<std::array<Jet1, 4>, 4>, 4> Dfr{};  // (D_{e_al} e_be)^sigma
    for (int al = 0; al < 4; ++al) {
        const Vec4& X = fc.frame(al);
        for (int be = 0; be < 4; ++be) {
            const Vec4& E = fc.frame(be);
            for (int si = 0; si < 4; ++si) {
                Jet1 s{};
                for (int mu = 0; mu < 4; ++mu) {
                    Jet1 t = partial(E[si], mu);
                    for (int la = 0; la < 4; ++la) t = t + fc.Gamma[si][mu][la] * trunc1(E[la]);
                    s = s + trunc1(X[mu]) * t;
                }
                Dfr[al][be][si] = s;
            }
        }
    }
    for (int al = 0; al < 4; ++al)
        for (int be = 0; be < 4; ++be)
            for (int ga = 0; ga < 4; ++ga) {
                Jet1 s{};
                const Vec4& Eg = fc.frame(ga);
                for (int si = 0; si < 4; ++si)
                    for (int ka = 0; ka < 4; ++ka)
                        s = s + Dfr[al][be][si] * trunc1(fc.g[si][ka]) * trunc1(Eg[ka]);
                fc.Ghat[al][be][ga] = s;
            }

    // Riemann R^rho_{sigma mu nu} at the point, then lowered and frame-projected
    cplx Rup[4][4][4][4];
    for (int rho = 0; rho < 4; ++rho)
        for (int si = 0; si < 4; ++si)
            for (int mu = 0; mu < 4; ++mu)
                for (int nu = 0; nu < 4; ++nu) {
                    cplx s = value(partial(fc.Gamma[rho][nu][si], mu)) -
                             value(partial(fc.Gamma[rho][mu][si], nu));
                    for (int la = 0; la < 4; ++la)
                        s += value(fc.Gamma[rho][mu][la]) * value(fc.Gamma[la][nu][si]) -
                             value(fc.Gamma[rho][nu][la]) * value(fc.Gamma[la][mu][si]);
                    Rup[rho][si][mu][nu] = s;
                }
    cplx Rdn[4][4][4][4];
    for (int rho = 0; rho < 4; ++rho)
        for (int si = 0; si < 4; ++si)
            for (int mu = 0; mu < 4; ++mu)
                for (int nu = 0; nu < 4; ++nu) {
                    cplx s = 0.0;
                    for (int ka = 0; ka < 4; ++ka) s += value(fc.g[rho][ka]) * Rup[ka][si][mu][nu];
                    Rdn[rho][si][mu][nu] = s;
                }
    for (int nu = 0; nu < 4; ++nu)
        for (int la = 0; la < 4; ++la) {
            cplx s = 0.0;
            for (int mu = 0; mu < 4; ++mu) s += Rup[mu][nu][mu][la];
            fc.RicciT[nu][la] = s;
        }
    for (int al = 0; al < 4; ++al)
        for (int be = 0; be < 4; ++be)
            for (int ga = 0; ga < 4; ++ga)
                for (int de = 0; de < 4; ++de) {
                    cplx s = 0.0;
                    const Vec4 &A = fc.frame(al), &B = fc.frame(be), &C = fc.frame(ga), &D = fc.frame(de);
                    for (int mu = 0; mu < 4; ++mu)
                        for (int nu = 0; nu < 4; ++nu)
                            for (int r2 = 0; r2 < 4; ++r2)
                                for (int s2 = 0; s2 < 4; ++s2)
                                    s += Rdn[mu][nu][r2][s2] * value(A[mu]) * value(B[nu]) *
                                         value(C[r2]) * value(D[s2]);
                    fc.W[al][be][ga][de] = s;
                }
    return fc;
}

inline FrameCalc make_frame_calc(const KerrParams& p, const BLPoint& x) {
    const Background bg = make_background(p, x);
    return make_frame_calc_frames(bg, {bg.e3, bg.e4, bg.e1, bg.e2});
}

// Volume element evaluated on (e1, e2, e3, e4); the induced horizontal form
// is half of this, and the orientation is fixed so that it equals +1.
inline double frame_volume(const FrameCalc& fc) {
    double M[4][4];
    const int order[4] = {FE1, FE2, F3, F4};
    for (int c = 0; c < 4; ++c)
        for (int mu = 0; mu < 4; ++mu) M[mu][c] = value(fc.frame(order[c])[mu]).real();
    // 4x4 determinant
    double det = 0.0;
    int perm[4] = {0, 1, 2, 3};
    // explicit expansion over permutations
    const int perms[24][4] = {{0,1,2,3},{0,1,3,2},{0,2,1,3},{0,2,3,1},{0,3,1,2},{0,3,2,1},
                              {1,0,2,3},{1,0,3,2},{1,2,0,3},{1,2,3,0},{1,3,0,2},{1,3,2,0},
                              {2,0,1,3},{2,0,3,1},{2,1,0,3},{2,1,3,0},{2,3,0,1},{2,3,1,0},
                              {3,0,1,2},{3,0,2,1},{3,1,0,2},{3,1,2,0},{3,2,0,1},{3,2,1,0}};
    const int signs[24] = {1,-1,-1,1,1,-1, -1,1,1,-1,-1,1, 1,-1,-1,1,1,-1, -1,1,1,-1,-1,1};
    for (int k = 0; k < 24; ++k) {
        double t = 1.0;
        for (int i = 0; i < 4; ++i) t *= M[perms[k][i]][i];
        det += signs[k] * t;
    }
    (void)perm;
    const double sqrtg = std::sqrt(-value(metric_det(fc.bg)).real());
    return sqrtg * det;
}

// Connection coefficients computed from the frame table (independent route).
struct RicciFrame {
    cplx trX{}, trXb{}, Xhat11{}, Xbhat11{};
    cplx H1{}, Hb1{}, Z1{}, Xi1{}, Xib1{};
    cplx om{}, omb{};
    cplx w3{}, w4{}, w1{}, w2{};
};

inline RicciFrame ricci_from_frame(const FrameCalc& fc) {
    RicciFrame rs;
    cplx chi[2][2], chib[2][2], eta[2], etab[2], zeta[2], xi[2], xib[2];
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            chi[a][b] = value(fc.Ghat[FE1 + a][F4][FE1 + b]);
            chib[a][b] = value(fc.Ghat[FE1 + a][F3][FE1 + b]);
        }
        eta[a] = 0.5 * value(fc.Ghat[F3][F4][FE1 + a]);
        etab[a] = 0.5 * value(fc.Ghat[F4][F3][FE1 + a]);
        zeta[a] = 0.5 * value(fc.Ghat[FE1 + a][F4][F3]);
        xi[a] = 0.5 * value(fc.Ghat[F4][F4][FE1 + a]);
        xib[a] = 0.5 * value(fc.Ghat[F3][F3][FE1 + a]);
    }
    rs.om = 0.25 * value(fc.Ghat[F4][F4][F3]);
    rs.omb = 0.25 * value(fc.Ghat[F3][F3][F4]);

    const cplx I(0, 1);
    const cplx trchi = chi[0][0] + chi[1][1], atrchi = chi[0][1] - chi[1][0];
    const cplx trchib = chib[0][0] + chib[1][1], atrchib = chib[0][1] - chib[1][0];
    rs.trX = trchi - I * atrchi;
    rs.trXb = trchib - I * atrchib;
    // hat part, complexified: Xhat11 = chihat11 + i chihat21
    const cplx ch11 = 0.5 * (chi[0][0] - chi[1][1]), ch12 = 0.5 * (chi[0][1] + chi[1][0]);
    const cplx cbh11 = 0.5 * (chib[0][0] - chib[1][1]), cbh12 = 0.5 * (chib[0][1] + chib[1][0]);
    rs.Xhat11 = ch11 + I * ch12;
    rs.Xbhat11 = cbh11 + I * cbh12;
    rs.H1 = eta[0] + I * eta[1];
    rs.Hb1 = etab[0] + I * etab[1];
    rs.Z1 = zeta[0] + I * zeta[1];
    rs.Xi1 = xi[0] + I * xi[1];
    rs.Xib1 = xib[0] + I * xib[1];
    rs.w3 = value(fc.Ghat[F3][FE1][FE2]);
    rs.w4 = value(fc.Ghat[F4][FE1][FE2]);
    rs.w1 = value(fc.Ghat[FE1][FE1][FE2]);
    rs.w2 = value(fc.Ghat[FE2][FE1][FE2]);
    return rs;
}

struct CurvFrame {
    cplx P{};                  // rho + i rho*
    cplx A11{}, Abar11{};      // alpha + i *alpha projections
    cplx B1{}, Bbar1{};
    cplx alpha[2][2]{}, alphabar[2][2]{};
    cplx rho{}, rhostar{};
};

inline CurvFrame curv_from_riemann(const FrameCalc& fc) {
    CurvFrame cs;
    const cplx I(0, 1);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            cs.alpha[a][b] = fc.W[F4][FE1 + a][F4][FE1 + b];
            cs.alphabar[a][b] = fc.W[F3][FE1 + a][F3][FE1 + b];
        }
    const cplx beta1 = 0.5 * fc.W[FE1][F4][F3][F4];
    const cplx beta2 = 0.5 * fc.W[FE2][F4][F3][F4];
    const cplx betab1 = 0.5 * fc.W[FE1][F3][F3][F4];
    const cplx betab2 = 0.5 * fc.W[FE2][F3][F3][F4];
    cs.rho = 0.25 * fc.W[F4][F3][F4][F3];
    cs.rhostar = 0.5 * fc.W[FE1][FE2][F3][F4];
    cs.P = cs.rho + I * cs.rhostar;
    cs.A11 = cs.alpha[0][0] + I * cs.alpha[1][0];     // alpha + i *alpha, (*alpha)_11 = alpha_21
    cs.Abar11 = cs.alphabar[0][0] + I * cs.alphabar[1][0];
    cs.B1 = beta1 + I * beta2;
    cs.Bbar1 = betab1 + I * betab2;
    return cs;
}

}  // namespace kerrh
