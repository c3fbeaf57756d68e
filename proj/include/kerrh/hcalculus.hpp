#pragma once

#include "kerrh/fields.hpp"
#include "kerrh/htensor.hpp"

// Differential operators on horizontal tensor fields. Frame derivatives use
// the rotation speed w(X) = g(D_X e1, e2) of the horizontal pair; conformal
// variants add the signature corrections with omega, omega-bar and zeta.
// Every derivative lowers the jet order by one, so compositions of depth two
// bottom out at plain complex values.

namespace kerrh {

template <class J>
inline lower_t<J> lower(const J& f) {
    if constexpr (std::is_same_v<J, Jet2>) return trunc1(f);
    else return value(f);
}

// directional derivative of a mode-ansatz scalar along a coordinate vector
template <class J>
inline lower_t<J> dirD(const Vec4& X, const J& f, const Mode& md) {
    using L = lower_t<J>;
    const cplx mt = cplx(0, -1) * md.omega;         // d/dt multiplier
    const cplx mp = cplx(0, 1) * double(md.m_phi);  // d/dphi multiplier
    const L fl = lower(f);
    return at_order<L>(X[0]) * (fl * mt) + at_order<L>(X[1]) * d_r(f) +
           at_order<L>(X[2]) * d_theta(f) + at_order<L>(X[3]) * (fl * mp);
}

// ---- componentwise linear algebra on Tk ----

template <class J, int K>
inline Tk<J, K> operator+(const Tk<J, K>& x, const Tk<J, K>& y) {
    Tk<J, K> o;
    for (int i = 0; i < Tk<J, K>::N; ++i) o.c[i] = x.c[i] + y.c[i];
    return o;
}
template <class J, int K>
inline Tk<J, K> operator-(const Tk<J, K>& x, const Tk<J, K>& y) {
    Tk<J, K> o;
    for (int i = 0; i < Tk<J, K>::N; ++i) o.c[i] = x.c[i] - y.c[i];
    return o;
}
template <class J, int K>
inline Tk<J, K> operator-(const Tk<J, K>& x) {
    Tk<J, K> o;
    for (int i = 0; i < Tk<J, K>::N; ++i) o.c[i] = -x.c[i];
    return o;
}
template <class J, int K, class S>
inline Tk<J, K> operator*(const S& s, const Tk<J, K>& x) {
    Tk<J, K> o;
    for (int i = 0; i < Tk<J, K>::N; ++i) o.c[i] = s * x.c[i];
    return o;
}
template <class J, int K>
inline Tk<J, K> conj_T(const Tk<J, K>& x) {
    Tk<J, K> o;
    for (int i = 0; i < Tk<J, K>::N; ++i) o.c[i] = conj(x.c[i]);
    return o;
}

template <class J, int K>
inline Tk<lower_t<J>, K> lower_T(const Tk<J, K>& x) {
    Tk<lower_t<J>, K> o;
    for (int i = 0; i < Tk<J, K>::N; ++i) o.c[i] = lower(x.c[i]);
    return o;
}

// index of component i with slot s replaced by value v (slot 0 most significant)
template <int K>
inline constexpr int replace_slot(int i, int s, int v) {
    const int bit = K - 1 - s;
    return (i & ~(1 << bit)) | (v << bit);
}
template <int K>
inline constexpr int slot_val(int i, int s) {
    return (i >> (K - 1 - s)) & 1;
}

// rot(U)_A = sum over slots i of eps_{c a_i} U_{..c..}
template <class J, int K>
inline Tk<J, K> rot(const Tk<J, K>& U) {
    Tk<J, K> o;
    for (int i = 0; i < Tk<J, K>::N; ++i) {
        J s{};
        for (int sl = 0; sl < K; ++sl) {
            const int ai = slot_val<K>(i, sl);
            for (int cc = 0; cc < 2; ++cc) {
                const double e = eps12(cc, ai);
                if (e != 0.0) s = s + e * U.c[replace_slot<K>(i, sl, cc)];
            }
        }
        o.c[i] = s;
    }
    return o;
}

// dual on slot s: (*U)_{.. a ..} = eps_{a c} U_{.. c ..}
template <class J, int K>
inline Tk<J, K> dual_slot(const Tk<J, K>& U, int sl) {
    Tk<J, K> o;
    for (int i = 0; i < Tk<J, K>::N; ++i) {
        const int ai = slot_val<K>(i, sl);
        J s{};
        for (int cc = 0; cc < 2; ++cc) {
            const double e = eps12(ai, cc);
            if (e != 0.0) s = s + e * U.c[replace_slot<K>(i, sl, cc)];
        }
        o.c[i] = s;
    }
    return o;
}

// ---- frame derivatives ----

template <class J, int K>
inline Tk<lower_t<J>, K> nab_dir(const Vec4& X, const Jet2& w, const Tk<J, K>& U, const Mode& md) {
    using L = lower_t<J>;
    Tk<L, K> o;
    for (int i = 0; i < Tk<J, K>::N; ++i) o.c[i] = dirD(X, U.c[i], md);
    if constexpr (K > 0) {
        const Tk<L, K> rc = rot(lower_T(U));
        const L wl = at_order<L>(w);
        for (int i = 0; i < Tk<J, K>::N; ++i) o.c[i] = o.c[i] + wl * rc.c[i];
    }
    (void)w;
    return o;
}

template <class J, int K>
inline Tk<lower_t<J>, K> nab3(const Background& B, const Tk<J, K>& U, const Mode& md) {
    return nab_dir(B.e3, B.w3, U, md);
}
template <class J, int K>
inline Tk<lower_t<J>, K> nab4(const Background& B, const Tk<J, K>& U, const Mode& md) {
    return nab_dir(B.e4, B.w4, U, md);
}
template <class J, int K>
inline Tk<lower_t<J>, K> nabh(const Background& B, int a, const Tk<J, K>& U, const Mode& md) {
    return nab_dir(a == 0 ? B.e1 : B.e2, a == 0 ? B.w1 : B.w2, U, md);
}

// gradient: new derivative slot first
template <class J, int K>
inline Tk<lower_t<J>, K + 1> grad(const Background& B, const Tk<J, K>& U, const Mode& md) {
    Tk<lower_t<J>, K + 1> o;
    for (int a = 0; a < 2; ++a) {
        const auto d = nabh(B, a, U, md);
        for (int i = 0; i < Tk<J, K>::N; ++i) o.c[a * Tk<J, K>::N + i] = d.c[i];
    }
    return o;
}

// conformal variants; s is the signature of U
template <class J, int K>
inline Tk<lower_t<J>, K> nabc3(const Background& B, int s, const Tk<J, K>& U, const Mode& md) {
    using L = lower_t<J>;
    auto o = nab3(B, U, md);
    const L corr = -2.0 * double(s) * at_order<L>(B.omb);
    const auto lowU = lower_T(U);
    for (int i = 0; i < Tk<J, K>::N; ++i) o.c[i] = o.c[i] + corr * lowU.c[i];
    return o;
}
template <class J, int K>
inline Tk<lower_t<J>, K> nabc4(const Background& B, int s, const Tk<J, K>& U, const Mode& md) {
    using L = lower_t<J>;
    auto o = nab4(B, U, md);
    const L corr = 2.0 * double(s) * at_order<L>(B.om);
    const auto lowU = lower_T(U);
    for (int i = 0; i < Tk<J, K>::N; ++i) o.c[i] = o.c[i] + corr * lowU.c[i];
    return o;
}
template <class J, int K>
inline Tk<lower_t<J>, K + 1> gradc(const Background& B, int s, const Tk<J, K>& U, const Mode& md) {
    using L = lower_t<J>;
    auto o = grad(B, U, md);
    const auto lowU = lower_T(U);
    for (int a = 0; a < 2; ++a) {
        const L z = double(s) * at_order<L>(B.zeta(a));
        for (int i = 0; i < Tk<J, K>::N; ++i)
            o.c[a * Tk<J, K>::N + i] = o.c[a * Tk<J, K>::N + i] + z * lowU.c[i];
    }
    return o;
}

// ---- complexified derivative combinations ----
// DD = grad + i * (dual on the derivative slot); DDbar with -i.

template <class J, int K>
inline Tk<J, K> dd_from_grad(const Tk<J, K>& G, double sign) {
    // G has the derivative slot first (slot 0)
    return G + (cplx(0, sign) * dual_slot(G, 0));
}

template <class J>
inline T1<J> contract_13(const Tk<J, 3>& G) {
    // (G)_{d,a,b} -> sum_b G_{b,a,b}
    T1<J> o;
    for (int a = 0; a < 2; ++a) {
        J s{};
        for (int b = 0; b < 2; ++b) s = s + G.c[ix3(b, a, b)];
        o.c[a] = s;
    }
    return o;
}
template <class J>
inline T0<J> contract_12(const Tk<J, 2>& G) {
    T0<J> o;
    o.c[0] = G.c[ix2(0, 0)] + G.c[ix2(1, 1)];
    return o;
}

// hot product of two 1-tensors
template <class J>
inline T2<J> hotT(const T1<J>& x, const T1<J>& y) {
    T2<J> o;
    const J d = x.c[0] * y.c[0] + x.c[1] * y.c[1];
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            o.c[ix2(a, b)] = 0.5 * (x.c[a] * y.c[b] + x.c[b] * y.c[a] - kron(a, b) * d);
    return o;
}
template <class J>
inline J dotT(const T1<J>& x, const T1<J>& y) { return x.c[0] * y.c[0] + x.c[1] * y.c[1]; }

// (v . U)_a = v^b U_{ba} (first-slot contraction)
template <class J>
inline T1<J> vec_dot_T2(const T1<J>& v, const T2<J>& U) {
    T1<J> o;
    for (int a = 0; a < 2; ++a) o.c[a] = v.c[0] * U.c[ix2(0, a)] + v.c[1] * U.c[ix2(1, a)];
    return o;
}

// (v . G)_A = v^d G_{d A} (contract the derivative slot of a gradient)
template <class J>
inline T2<J> vec_dot_T3(const T1<J>& v, const Tk<J, 3>& G) {
    T2<J> o;
    for (int i = 0; i < 4; ++i) o.c[i] = v.c[0] * G.c[i] + v.c[1] * G.c[4 + i];
    return o;
}
template <class J>
inline T1<J> vec_dot_T2grad(const T1<J>& v, const Tk<J, 2>& G) {
    T1<J> o;
    for (int i = 0; i < 2; ++i) o.c[i] = v.c[0] * G.c[i] + v.c[1] * G.c[2 + i];
    return o;
}
template <class J>
inline T0<J> vec_dot_T1grad(const T1<J>& v, const Tk<J, 1>& G) {
    return {{v.c[0] * G.c[0] + v.c[1] * G.c[1]}};
}

// bundle coefficient vectors at order J; anti-self-dual F = (F1, -i F1)
template <class J>
inline T1<J> asd_vec(const Jet2& F1) {
    return {{at_order<J>(F1), cplx(0, -1) * at_order<J>(F1)}};
}
// real vector from its two real components
template <class J>
inline T1<J> real_vec(const Jet2& v1, const Jet2& v2) {
    return {{at_order<J>(v1), at_order<J>(v2)}};
}

// ---- named operators ----

// D . F and Dbar . F for F in S1(C) (output complex scalar, factor 2 conventions
// as in the component expansions of the complexified derivative)
template <class J>
inline T0<lower_t<J>> dd_dot_s1(const Background& B, const T1<J>& F, const Mode& md) {
    const auto G = grad(B, F, md);             // G_{d,a}
    const auto D = dd_from_grad(G, +1.0);      // (D_d F_a)
    return contract_12(D);
}
template <class J>
inline T0<lower_t<J>> ddbar_dot_s1(const Background& B, const T1<J>& F, const Mode& md) {
    const auto G = grad(B, F, md);
    const auto D = dd_from_grad(G, -1.0);
    return contract_12(D);
}

// D hot F (output S2(C))
template <class J>
inline T2<lower_t<J>> dd_hot_s1(const Background& B, const T1<J>& F, const Mode& md) {
    const auto G = grad(B, F, md);
    const auto D = dd_from_grad(G, +1.0);  // D_{d,a} = DD_d F_a
    T2<lower_t<J>> o;
    const auto tr = contract_12(D);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            o.c[ix2(a, b)] =
                0.5 * (D.c[ix2(a, b)] + D.c[ix2(b, a)] - kron(a, b) * tr.c[0]);
    return o;
}

// D . U (structural zero) and Dbar . U for U in S2(C)
template <class J>
inline T1<lower_t<J>> dd_dot_s2(const Background& B, const T2<J>& U, const Mode& md) {
    const auto G = grad(B, U, md);
    const auto D = dd_from_grad(G, +1.0);
    return contract_13(D);
}
template <class J>
inline T1<lower_t<J>> ddbar_dot_s2(const Background& B, const T2<J>& U, const Mode& md) {
    const auto G = grad(B, U, md);
    const auto D = dd_from_grad(G, -1.0);
    return contract_13(D);
}

// D h, Dbar h for scalars
template <class J>
inline T1<lower_t<J>> dd_s0(const Background& B, const T0<J>& h, const Mode& md) {
    const auto G = grad(B, h, md);
    return {{G.c[0] + cplx(0, 1) * G.c[1], G.c[1] - cplx(0, 1) * G.c[0]}};
}
template <class J>
inline T1<lower_t<J>> ddbar_s0(const Background& B, const T0<J>& h, const Mode& md) {
    const auto G = grad(B, h, md);
    return {{G.c[0] - cplx(0, 1) * G.c[1], G.c[1] + cplx(0, 1) * G.c[0]}};
}

// conformal complexified combinations: DDc = DD + s Z, DDbarc = DDbar + s Zbar
template <class J>
inline T1<lower_t<J>> ddbarc_dot_s2(const Background& B, int s, const T2<J>& U, const Mode& md) {
    using L = lower_t<J>;
    auto o = ddbar_dot_s2(B, U, md);
    const T1<L> Zb = conj_T(asd_vec<L>(B.Z1));
    const auto lowU = lower_T(U);
    const auto corr = vec_dot_T2(Zb, lowU);
    for (int a = 0; a < 2; ++a) o.c[a] = o.c[a] + double(s) * corr.c[a];
    return o;
}
template <class J>
inline T2<lower_t<J>> ddc_hot_s1(const Background& B, int s, const T1<J>& F, const Mode& md) {
    using L = lower_t<J>;
    auto o = dd_hot_s1(B, F, md);
    const T1<L> Z = asd_vec<L>(B.Z1);
    const auto corr = hotT(Z, lower_T(F));
    for (int i = 0; i < 4; ++i) o.c[i] = o.c[i] + double(s) * corr.c[i];
    return o;
}
template <class J>
inline T1<lower_t<J>> ddc_s0(const Background& B, int s, const T0<J>& h, const Mode& md) {
    using L = lower_t<J>;
    auto o = dd_s0(B, h, md);
    const T1<L> Z = asd_vec<L>(B.Z1);
    for (int a = 0; a < 2; ++a) o.c[a] = o.c[a] + double(s) * Z.c[a] * lower(h.c[0]);
    return o;
}

// div and curl of an S1 field, and div of an S2 field
template <class J>
inline T0<lower_t<J>> div_s1(const Background& B, const T1<J>& F, const Mode& md) {
    const auto G = grad(B, F, md);
    return {{G.c[ix2(0, 0)] + G.c[ix2(1, 1)]}};
}
template <class J>
inline T0<lower_t<J>> curl_s1(const Background& B, const T1<J>& F, const Mode& md) {
    const auto G = grad(B, F, md);
    return {{G.c[ix2(0, 1)] - G.c[ix2(1, 0)]}};
}
template <class J>
inline T1<lower_t<J>> div_s2(const Background& B, const T2<J>& U, const Mode& md) {
    const auto G = grad(B, U, md);
    return contract_13(G);
}
template <class J>
inline T2<lower_t<J>> nabla_hot_s1(const Background& B, const T1<J>& F, const Mode& md) {
    const auto G = grad(B, F, md);  // G_{d,a}
    T2<lower_t<J>> o;
    const auto dv = div_s1(B, F, md);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            o.c[ix2(a, b)] = 0.5 * (G.c[ix2(a, b)] + G.c[ix2(b, a)] - kron(a, b) * dv.c[0]);
    return o;
}

// horizontal Laplacian as the trace of the second covariant gradient
template <int K>
inline Tk<cplx, K> lap2(const Background& B, const Tk<Jet2, K>& U, const Mode& md) {
    const auto G = grad(B, U, md);          // Jet1, rank K+1
    const auto GG = grad(B, G, md);         // cplx, rank K+2
    Tk<cplx, K> o;
    constexpr int NK = Tk<Jet2, K>::N;
    for (int i = 0; i < NK; ++i) {
        // contract the two derivative slots
        o.c[i] = GG.c[0 * 2 * NK + 0 * NK + i] + GG.c[1 * 2 * NK + 1 * NK + i];
    }
    return o;
}

}  // namespace kerrh
