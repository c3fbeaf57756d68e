#pragma once

#include <array>
#include <complex>

#include "kerrh/jets.hpp"

// Pointwise horizontal tensor algebra in an orthonormal (e1, e2) frame.
//
// Conventions (each has a canary test):
//   eps12 = +1, duals act as (*w)_a = eps_ab w_b, (w*)_a = w_b eps_ba,
//   (*U)_ab = eps_ac U_cb, (U*)_ab = U_ac eps_cb,
//   (xi hot eta)_ab = (1/2)(xi_a eta_b + xi_b eta_a - delta_ab xi.eta),
//   anti-self-dual complexification F = f + i*f satisfies *F = -iF.
// The hot product carries the extra 1/2 relative to the Minkowski-stability
// literature; every downstream equation in this library assumes it.

namespace kerrh {

inline constexpr double eps12(int a, int b) {
    return (a == b) ? 0.0 : (a == 0 && b == 1 ? 1.0 : -1.0);
}
inline constexpr double kron(int a, int b) { return a == b ? 1.0 : 0.0; }

template <class T>
struct HVec {
    std::array<T, 2> c{};
    T& operator[](int a) { return c[a]; }
    const T& operator[](int a) const { return c[a]; }
};

template <class T>
struct H2Tensor {
    std::array<std::array<T, 2>, 2> u{};
    T& operator()(int a, int b) { return u[a][b]; }
    const T& operator()(int a, int b) const { return u[a][b]; }
};

// symmetric traceless: h22 = -h11, h21 = h12 by construction
template <class T>
struct HSym2 {
    T h11{}, h12{};
    T operator()(int a, int b) const {
        if (a == 0 && b == 0) return h11;
        if (a == 1 && b == 1) return T(-1.0) * h11;
        return h12;
    }
};

using HVecR = HVec<double>;
using H2TensorR = H2Tensor<double>;
using HSym2R = HSym2<double>;

// ---- vector operations ----

template <class T>
HVec<T> operator+(const HVec<T>& x, const HVec<T>& y) { return {{x.c[0] + y.c[0], x.c[1] + y.c[1]}}; }
template <class T>
HVec<T> operator-(const HVec<T>& x, const HVec<T>& y) { return {{x.c[0] - y.c[0], x.c[1] - y.c[1]}}; }
template <class T, class S>
HVec<T> operator*(const S& s, const HVec<T>& x) { return {{s * x.c[0], s * x.c[1]}}; }

template <class T>
HVec<T> dual(const HVec<T>& w) {
    // (*w)_a = eps_ab w_b
    return {{w.c[1], T(-1.0) * w.c[0]}};
}
template <class T>
HVec<T> dual_right(const HVec<T>& w) {
    // (w*)_a = w_b eps_ba
    return {{T(-1.0) * w.c[1], w.c[0]}};
}

template <class T>
T dot(const HVec<T>& x, const HVec<T>& y) { return x.c[0] * y.c[0] + x.c[1] * y.c[1]; }

template <class T>
T wedge(const HVec<T>& x, const HVec<T>& y) { return x.c[0] * y.c[1] - x.c[1] * y.c[0]; }

template <class T>
HSym2<T> hot(const HVec<T>& x, const HVec<T>& y) {
    HSym2<T> out;
    const T d = dot(x, y);
    out.h11 = 0.5 * (2.0 * x.c[0] * y.c[0] - d);
    out.h12 = 0.5 * (x.c[0] * y.c[1] + x.c[1] * y.c[0]);
    return out;
}

// ---- 2-tensor operations ----

template <class T>
H2Tensor<T> operator+(const H2Tensor<T>& x, const H2Tensor<T>& y) {
    H2Tensor<T> o;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) o(a, b) = x(a, b) + y(a, b);
    return o;
}
template <class T>
H2Tensor<T> operator-(const H2Tensor<T>& x, const H2Tensor<T>& y) {
    H2Tensor<T> o;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) o(a, b) = x(a, b) - y(a, b);
    return o;
}

template <class T>
T tr(const H2Tensor<T>& U) { return U(0, 0) + U(1, 1); }

template <class T>
T atr(const H2Tensor<T>& U) { return U(0, 1) - U(1, 0); }

template <class T>
H2Tensor<T> dual_left(const H2Tensor<T>& U) {
    // (*U)_ab = eps_ac U_cb
    H2Tensor<T> o;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) o(a, b) = eps12(a, 0) * U(0, b) + eps12(a, 1) * U(1, b);
    return o;
}

template <class T>
H2Tensor<T> dual_right(const H2Tensor<T>& U) {
    // (U*)_ab = U_ac eps_cb
    H2Tensor<T> o;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) o(a, b) = U(a, 0) * eps12(0, b) + U(a, 1) * eps12(1, b);
    return o;
}

template <class T>
HSym2<T> hat(const H2Tensor<T>& U) {
    HSym2<T> o;
    o.h11 = 0.5 * (U(0, 0) - U(1, 1));
    o.h12 = 0.5 * (U(0, 1) + U(1, 0));
    return o;
}

template <class T>
struct Decomp {
    HSym2<T> hatpart;
    T trace;
    T atrace;
};

template <class T>
Decomp<T> decompose(const H2Tensor<T>& U) {
    return {hat(U), tr(U), atr(U)};
}

template <class T>
H2Tensor<T> reassemble(const Decomp<T>& d) {
    H2Tensor<T> o;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            o(a, b) = d.hatpart(a, b) + 0.5 * kron(a, b) * d.trace + 0.5 * eps12(a, b) * d.atrace;
    return o;
}

template <class T>
H2Tensor<T> as_general(const HSym2<T>& h) {
    H2Tensor<T> o;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) o(a, b) = h(a, b);
    return o;
}

template <class T>
HSym2<T> dual_sym(const HSym2<T>& h) {
    // *h is again symmetric traceless
    return hat(dual_left(as_general(h)));
}

// (xi . U)_a = xi^b U_ab for symmetric U; full contraction helpers
template <class T>
HVec<T> vec_dot_sym(const HVec<T>& xi, const HSym2<T>& U) {
    HVec<T> o;
    for (int a = 0; a < 2; ++a) o.c[a] = xi.c[0] * U(0, a) + xi.c[1] * U(1, a);
    return o;
}

template <class T>
T sym_dot(const HSym2<T>& u, const HSym2<T>& v) {
    T s{};
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) s = s + u(a, b) * v(a, b);
    return s;
}

// ---- anti-self-dual complex storage (single component, accessors) ----

// F in S1(C): F2 = -i F1 holds by construction.
struct HVecC {
    cplx F1{};
    cplx F2() const { return cplx(0, -1) * F1; }
    cplx comp(int a) const { return a == 0 ? F1 : F2(); }
};

// U in S2(C): U12 = U21 = -i U11, U22 = -U11 hold by construction.
struct HSym2C {
    cplx U11{};
    cplx U12() const { return cplx(0, -1) * U11; }
    cplx U22() const { return -U11; }
    cplx comp(int a, int b) const {
        if (a == 0 && b == 0) return U11;
        if (a == 1 && b == 1) return U22();
        return U12();
    }
};

inline HVecC complexify(const HVec<double>& f) {
    // F = f + i*f
    const HVec<double> sf = dual(f);
    return {cplx(f.c[0], sf.c[0])};
}
inline HVecC complexify(const HVec<cplx>& f) {
    const HVec<cplx> sf = dual(f);
    return {f.c[0] + cplx(0, 1) * sf.c[0]};
}

inline HSym2C complexify(const HSym2<double>& u) {
    const HSym2<double> s = dual_sym(u);
    return {cplx(u.h11, s.h11)};
}
inline HSym2C complexify(const HSym2<cplx>& u) {
    const HSym2<cplx> s = dual_sym(u);
    return {u.h11 + cplx(0, 1) * s.h11};
}

inline HVec<double> real_part_vec(const HVecC& F) {
    // f with F = f + i*f for real f: f1 = Re F1, f2 = Re F2 = Im F1... (*f)_1 = f_2
    return {{F.F1.real(), F.F1.imag()}};
}
inline HSym2<double> real_part_sym(const HSym2C& U) {
    return {U.U11.real(), U.U11.imag()};
}

// complex products of anti-self-dual values (expansions verified against
// the two-component representation in the test suite)
inline cplx dotC(const HVecC& E, const HVecC& F) { return E.comp(0) * F.comp(0) + E.comp(1) * F.comp(1); }
inline cplx dot_conjC(const HVecC& E, const HVecC& F) {
    // E . conj(F)
    return E.comp(0) * std::conj(F.comp(0)) + E.comp(1) * std::conj(F.comp(1));
}
inline HSym2C hotC(const HVecC& E, const HVecC& F) {
    const cplx d = dotC(E, F);
    return {0.5 * (2.0 * E.comp(0) * F.comp(0) - d)};
}
inline cplx wedgeC(const HVecC& E, const HVecC& F) {
    return E.comp(0) * F.comp(1) - E.comp(1) * F.comp(0);
}

}  // namespace kerrh
