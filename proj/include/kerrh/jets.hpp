#pragma once

#include <cmath>
#include <complex>

#include "kerrh/errors.hpp"

// Second-order forward-mode jets in the two chart variables (r, theta).
// A Jet2 carries value, gradient and Hessian of a scalar; a Jet1 carries
// value and gradient only. Differentiating lowers the order by one, so a
// chain of two frame derivatives bottoms out at plain complex values.
// Coefficients may be complex; all transcendental kernels are only ever
// applied to real-valued jets, where the usual chain rule is valid.

namespace kerrh {

using cplx = std::complex<double>;

struct Jet1 {
    cplx v{}, dr{}, dth{};

    Jet1() = default;
    Jet1(double x) : v(x) {}
    Jet1(cplx x) : v(x) {}
    Jet1(cplx v_, cplx dr_, cplx dth_) : v(v_), dr(dr_), dth(dth_) {}
};

struct Jet2 {
    cplx v{}, dr{}, dth{}, drr{}, drth{}, dthth{};

    Jet2() = default;
    Jet2(double x) : v(x) {}
    Jet2(cplx x) : v(x) {}
    Jet2(cplx v_, cplx dr_, cplx dth_, cplx drr_, cplx drth_, cplx dthth_)
        : v(v_), dr(dr_), dth(dth_), drr(drr_), drth(drth_), dthth(dthth_) {}

    static Jet2 var_r(double r) { return Jet2{r, 1.0, 0.0, 0.0, 0.0, 0.0}; }
    static Jet2 var_theta(double th) { return Jet2{th, 0.0, 1.0, 0.0, 0.0, 0.0}; }
};

// ---- Jet1 arithmetic ----

inline Jet1 operator+(const Jet1& a, const Jet1& b) { return {a.v + b.v, a.dr + b.dr, a.dth + b.dth}; }
inline Jet1 operator-(const Jet1& a, const Jet1& b) { return {a.v - b.v, a.dr - b.dr, a.dth - b.dth}; }
inline Jet1 operator-(const Jet1& a) { return {-a.v, -a.dr, -a.dth}; }
inline Jet1 operator*(const Jet1& a, const Jet1& b) {
    return {a.v * b.v, a.dr * b.v + a.v * b.dr, a.dth * b.v + a.v * b.dth};
}
inline Jet1 inv(const Jet1& a) {
    const cplx w = 1.0 / a.v;
    const cplx w2 = w * w;
    return {w, -a.dr * w2, -a.dth * w2};
}
inline Jet1 operator/(const Jet1& a, const Jet1& b) { return a * inv(b); }
inline Jet1 conj(const Jet1& a) { return {std::conj(a.v), std::conj(a.dr), std::conj(a.dth)}; }

// ---- Jet2 arithmetic ----

inline Jet2 operator+(const Jet2& a, const Jet2& b) {
    return {a.v + b.v, a.dr + b.dr, a.dth + b.dth, a.drr + b.drr, a.drth + b.drth, a.dthth + b.dthth};
}
inline Jet2 operator-(const Jet2& a, const Jet2& b) {
    return {a.v - b.v, a.dr - b.dr, a.dth - b.dth, a.drr - b.drr, a.drth - b.drth, a.dthth - b.dthth};
}
inline Jet2 operator-(const Jet2& a) { return {-a.v, -a.dr, -a.dth, -a.drr, -a.drth, -a.dthth}; }
inline Jet2 operator*(const Jet2& a, const Jet2& b) {
    return {a.v * b.v,
            a.dr * b.v + a.v * b.dr,
            a.dth * b.v + a.v * b.dth,
            a.drr * b.v + 2.0 * a.dr * b.dr + a.v * b.drr,
            a.drth * b.v + a.dr * b.dth + a.dth * b.dr + a.v * b.drth,
            a.dthth * b.v + 2.0 * a.dth * b.dth + a.v * b.dthth};
}

// Unary composition f(a) given f', f'' at a.v.
inline Jet2 compose(const Jet2& a, cplx f0, cplx f1, cplx f2) {
    return {f0,
            f1 * a.dr,
            f1 * a.dth,
            f2 * a.dr * a.dr + f1 * a.drr,
            f2 * a.dr * a.dth + f1 * a.drth,
            f2 * a.dth * a.dth + f1 * a.dthth};
}

inline Jet2 inv(const Jet2& a) {
    const cplx w = 1.0 / a.v;
    return compose(a, w, -w * w, 2.0 * w * w * w);
}
inline Jet2 operator/(const Jet2& a, const Jet2& b) { return a * inv(b); }
inline Jet2 conj(const Jet2& a) {
    return {std::conj(a.v), std::conj(a.dr), std::conj(a.dth),
            std::conj(a.drr), std::conj(a.drth), std::conj(a.dthth)};
}

inline Jet2 sin(const Jet2& a) { const cplx s = std::sin(a.v), c = std::cos(a.v); return compose(a, s, c, -s); }
inline Jet2 cos(const Jet2& a) { const cplx s = std::sin(a.v), c = std::cos(a.v); return compose(a, c, -s, -c); }
inline Jet2 exp(const Jet2& a) { const cplx e = std::exp(a.v); return compose(a, e, e, e); }
inline Jet2 log(const Jet2& a) { const cplx w = 1.0 / a.v; return compose(a, std::log(a.v), w, -w * w); }
inline Jet2 sqrt(const Jet2& a) {
    const cplx s = std::sqrt(a.v);
    return compose(a, s, 0.5 / s, -0.25 / (s * a.v));
}
inline Jet2 pow_int(const Jet2& a, int n) {
    if (n == 0) return Jet2{1.0};
    if (n < 0) return inv(pow_int(a, -n));
    Jet2 r = a;
    for (int i = 1; i < n; ++i) r = r * a;
    return r;
}

inline Jet1 sin(const Jet1& a) { const cplx c = std::cos(a.v); return {std::sin(a.v), c * a.dr, c * a.dth}; }
inline Jet1 cos(const Jet1& a) { const cplx s = -std::sin(a.v); return {std::cos(a.v), s * a.dr, s * a.dth}; }

// ---- order lowering / truncation ----

inline Jet1 d_r(const Jet2& a) { return {a.dr, a.drr, a.drth}; }
inline Jet1 d_theta(const Jet2& a) { return {a.dth, a.drth, a.dthth}; }
inline cplx d_r(const Jet1& a) { return a.dr; }
inline cplx d_theta(const Jet1& a) { return a.dth; }

inline Jet1 trunc1(const Jet2& a) { return {a.v, a.dr, a.dth}; }
inline cplx value(const Jet2& a) { return a.v; }
inline cplx value(const Jet1& a) { return a.v; }
inline cplx value(const cplx& a) { return a; }

template <class J>
struct jet_traits;
template <>
struct jet_traits<Jet2> {
    using lower = Jet1;
    static Jet2 from(const Jet2& x) { return x; }
};
template <>
struct jet_traits<Jet1> {
    using lower = cplx;
    static Jet1 from(const Jet2& x) { return trunc1(x); }
};
template <>
struct jet_traits<cplx> {
    // truncation of an order-0 value is the identity; an actual derivative
    // request at this order does not compile (no d_r overload)
    using lower = cplx;
    static cplx from(const Jet2& x) { return x.v; }
};

template <class J>
using lower_t = typename jet_traits<J>::lower;

// Truncate a Jet2 background coefficient to the working order J.
template <class J>
inline J at_order(const Jet2& x) {
    return jet_traits<J>::from(x);
}

inline cplx conj(const cplx& a) { return std::conj(a); }

}  // namespace kerrh
