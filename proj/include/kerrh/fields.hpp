#pragma once

#include <functional>
#include <string>

#include "kerrh/kerr.hpp"

// Test fields with mode ansatz: amplitude(r, theta) times e^{i(m_phi phi - omega t)}.
// Coordinate t and phi derivatives act as multipliers -i omega and i m_phi on the
// amplitude jet, which keeps the differentiation engine two-dimensional.

namespace kerrh {

struct Mode {
    double omega = 0.0;
    int m_phi = 0;
};

// Horizontal tensor value of rank K with explicit components, flat-indexed as
// idx = sum a_i 2^(K-1-i). Anti-self-duality is an invariant of the
// constructors, not of the type.
template <class J, int K>
struct Tk {
    static constexpr int rank = K;
    static constexpr int N = 1 << K;
    std::array<J, N> c{};

    J& at(int i) { return c[i]; }
    const J& at(int i) const { return c[i]; }
};

template <class J>
using T0 = Tk<J, 0>;
template <class J>
using T1 = Tk<J, 1>;
template <class J>
using T2 = Tk<J, 2>;
template <class J>
using T3 = Tk<J, 3>;

inline constexpr int ix2(int a, int b) { return 2 * a + b; }
inline constexpr int ix3(int a, int b, int c) { return 4 * a + 2 * b + c; }

using AmpFn = std::function<Jet2(const Jet2& r, const Jet2& th)>;

struct FieldS0 {
    AmpFn amp;
    Mode mode;
    int sig = 0;
    std::string name;
};
struct FieldS1 {
    AmpFn amp;  // first component of the anti-self-dual value
    Mode mode;
    int sig = 0;
    std::string name;
};
struct FieldS2 {
    AmpFn amp;  // 11 component of the anti-self-dual value
    Mode mode;
    int sig = 2;
    std::string name;
};

inline T0<Jet2> at_point(const Background& bg, const FieldS0& f) { return {{f.amp(bg.r, bg.th)}}; }

inline T1<Jet2> at_point(const Background& bg, const FieldS1& f) {
    const Jet2 F1 = f.amp(bg.r, bg.th);
    return {{F1, cplx(0, -1) * F1}};
}

inline T2<Jet2> at_point(const Background& bg, const FieldS2& f) {
    const Jet2 u = f.amp(bg.r, bg.th);
    T2<Jet2> U;
    U.c[ix2(0, 0)] = u;
    U.c[ix2(0, 1)] = cplx(0, -1) * u;
    U.c[ix2(1, 0)] = cplx(0, -1) * u;
    U.c[ix2(1, 1)] = -u;
    return U;
}

// ---- amplitude library: radial decay x angular structure, genuinely complex ----

inline AmpFn amp_bank(int k) {
    switch (((k % 5) + 5) % 5) {
        case 0:
            return [](const Jet2& r, const Jet2& th) {
                const Jet2 s = sin(th), c = cos(th);
                return s * s * (1.0 + 0.5 * c) / pow_int(r, 3) +
                       cplx(0, 0.4) * exp(-0.1 * r) * (s + 0.3 * s * s * c);
            };
        case 1:
            return [](const Jet2& r, const Jet2& th) {
                const Jet2 s = sin(th), c = cos(th);
                return exp(-0.1 * r) * (s + 0.3 * s * s * c) +
                       cplx(0, 0.9) * (0.5 + c * c) * (1.0 + 2.0 / r) / (r * r);
            };
        case 2:
            return [](const Jet2& r, const Jet2& th) {
                const Jet2 s = sin(th), c = cos(th);
                // Legendre-type angular profile (3cos^2 - 1)
                return (3.0 * c * c - 1.0) / (r * r) + cplx(0, 0.25) * s * c / r;
            };
        case 3:
            return [](const Jet2& r, const Jet2& th) {
                const Jet2 s = sin(th);
                return (1.0 + 0.2 * s) / r + cplx(0, 0.6) * s * s / pow_int(r, 2);
            };
        default:
            return [](const Jet2& r, const Jet2& th) {
                const Jet2 s = sin(th), c = cos(th);
                return exp(-0.05 * r) * s * (1.0 + c + 0.5 * c * c) / r;
            };
    }
}

inline Mode mode_bank(int k) {
    switch (((k % 3) + 3) % 3) {
        case 0: return {0.0, 0};
        case 1: return {0.3, 2};
        default: return {0.7, -1};
    }
}

inline FieldS2 test_field_s2(int k, int sig = 2) {
    return {amp_bank(k), mode_bank(k), sig, "s2-" + std::to_string(k)};
}
inline FieldS1 test_field_s1(int k, int sig = 1) {
    return {amp_bank(k), mode_bank(k), sig, "s1-" + std::to_string(k)};
}
inline FieldS0 test_field_s0(int k, int sig = 0) {
    return {amp_bank(k), mode_bank(k), sig, "s0-" + std::to_string(k)};
}

}  // namespace kerrh
