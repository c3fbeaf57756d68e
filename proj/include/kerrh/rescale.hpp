#pragma once

#include "kerrh/kerr.hpp"

// Conformal frame rescaling e3 -> lam^-1 e3, e4 -> lam e4, e_a fixed.
// The rescaled coefficient set follows the transformation table; the table
// itself is verified against the frame-derivative route by the test suite.
// The rescale function supplies log(lam) and its chart derivatives in closed
// form so that the primed coefficients stay order-2 differentiable.

namespace kerrh {

struct RescaleFn {
    std::function<Jet2(const Jet2&, const Jet2&)> loglam;
    std::function<Jet2(const Jet2&, const Jet2&)> dlog_dr;
    std::function<Jet2(const Jet2&, const Jet2&)> dlog_dth;
};

inline RescaleFn rescale_bank(int k) {
    switch (((k % 2) + 2) % 2) {
        case 0:
            return {[](const Jet2& r, const Jet2& th) { return 0.1 * sin(r) * cos(th); },
                    [](const Jet2& r, const Jet2& th) { return 0.1 * cos(r) * cos(th); },
                    [](const Jet2& r, const Jet2& th) { return -0.1 * sin(r) * sin(th); }};
        default:
            return {[](const Jet2& r, const Jet2& th) { return 0.2 * cos(th) / r; },
                    [](const Jet2& r, const Jet2& th) { return -0.2 * cos(th) / (r * r); },
                    [](const Jet2& r, const Jet2& th) { return -0.2 * sin(th) / r; }};
    }
}

struct Rescaled {
    Background bg;   // primed coefficient set, usable by every operator
    Jet2 lam;        // lam as a jet at the point
};

inline Rescaled rescaled_background(const Background& b, const RescaleFn& f) {
    Rescaled out{b, Jet2{1.0}};
    Background& p = out.bg;
    const Jet2 gl = f.loglam(b.r, b.th);
    const Jet2 gr = f.dlog_dr(b.r, b.th);
    const Jet2 gt = f.dlog_dth(b.r, b.th);
    const Jet2 lam = exp(gl);
    const Jet2 ilam = inv(lam);
    out.lam = lam;

    for (int mu = 0; mu < 4; ++mu) {
        p.e3[mu] = ilam * b.e3[mu];
        p.e4[mu] = lam * b.e4[mu];
    }
    // background directional derivatives of log(lam): d_t = d_phi = 0
    const Jet2 e3log = b.e3[1] * gr + b.e3[2] * gt;
    const Jet2 e4log = b.e4[1] * gr + b.e4[2] * gt;
    const Jet2 e1log = b.e1[1] * gr + b.e1[2] * gt;

    p.w3 = ilam * b.w3;
    p.w4 = lam * b.w4;

    p.trX = lam * b.trX;
    p.trXb = ilam * b.trXb;
    p.H1 = b.H1;
    p.Hb1 = b.Hb1;
    p.Z1 = b.Z1 - e1log;  // (D log lam)_1 = e1(log lam) for background scalars
    p.om = lam * (b.om - 0.5 * e4log);
    p.omb = ilam * (b.omb + 0.5 * e3log);
    p.P = b.P;
    return out;
}

// multiply every component of a tensor value by a jet coefficient
template <class J, int K>
inline Tk<J, K> coeff_mul(const J& c, const Tk<J, K>& U) {
    Tk<J, K> o;
    for (int i = 0; i < Tk<J, K>::N; ++i) o.c[i] = c * U.c[i];
    return o;
}

}  // namespace kerrh
