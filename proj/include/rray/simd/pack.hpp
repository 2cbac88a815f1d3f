#pragma once

#include <cmath>
#include <cstddef>

// Scalar-or-pack abstraction used by the templated math core. The same
// source instantiates with T = double (reference kernel), T = PackD<4>
// (portable wide kernel) and T = PackAvx2 (see pack_avx2.hpp). Packs carry
// no masks: per-lane decisions (hit tests, validity thresholds) are made by
// extracting lanes, which keeps the pack surface small and every kernel
// bit-identical to the scalar reference.

namespace rray::simd {

template <class T>
struct LaneCount {
    static constexpr int value = 1;
};

template <class T>
inline constexpr int lanes_v = LaneCount<T>::value;

inline double lane(double x, int) { return x; }
inline void set_lane(double& x, int, double v) { x = v; }

// Portable fixed-width pack. Plain loops; the optimizer turns them into
// whatever the target baseline offers.
template <int N>
struct PackD {
    double v[N];

    PackD() = default;
    PackD(double x) {
        for (int i = 0; i < N; ++i) v[i] = x;
    }

    PackD& operator+=(const PackD& o) {
        for (int i = 0; i < N; ++i) v[i] += o.v[i];
        return *this;
    }
    PackD& operator-=(const PackD& o) {
        for (int i = 0; i < N; ++i) v[i] -= o.v[i];
        return *this;
    }
    PackD& operator*=(const PackD& o) {
        for (int i = 0; i < N; ++i) v[i] *= o.v[i];
        return *this;
    }
    PackD& operator/=(const PackD& o) {
        for (int i = 0; i < N; ++i) v[i] /= o.v[i];
        return *this;
    }
};

template <int N>
struct LaneCount<PackD<N>> {
    static constexpr int value = N;
};

template <int N>
inline PackD<N> operator+(PackD<N> a, const PackD<N>& b) { return a += b; }
template <int N>
inline PackD<N> operator-(PackD<N> a, const PackD<N>& b) { return a -= b; }
template <int N>
inline PackD<N> operator*(PackD<N> a, const PackD<N>& b) { return a *= b; }
template <int N>
inline PackD<N> operator/(PackD<N> a, const PackD<N>& b) { return a /= b; }

template <int N>
inline PackD<N> operator-(const PackD<N>& a) {
    PackD<N> r;
    for (int i = 0; i < N; ++i) r.v[i] = -a.v[i];
    return r;
}

template <int N>
inline double lane(const PackD<N>& p, int i) { return p.v[i]; }
template <int N>
inline void set_lane(PackD<N>& p, int i, double x) { p.v[i] = x; }

// Transcendentals go through libm one lane at a time so every kernel rounds
// identically. The pack win lives in the surrounding tensor algebra.
template <int N>
inline PackD<N> exp(const PackD<N>& a) {
    PackD<N> r;
    for (int i = 0; i < N; ++i) r.v[i] = std::exp(a.v[i]);
    return r;
}
template <int N>
inline PackD<N> sin(const PackD<N>& a) {
    PackD<N> r;
    for (int i = 0; i < N; ++i) r.v[i] = std::sin(a.v[i]);
    return r;
}
template <int N>
inline PackD<N> cos(const PackD<N>& a) {
    PackD<N> r;
    for (int i = 0; i < N; ++i) r.v[i] = std::cos(a.v[i]);
    return r;
}
template <int N>
inline PackD<N> sqrt(const PackD<N>& a) {
    PackD<N> r;
    for (int i = 0; i < N; ++i) r.v[i] = std::sqrt(a.v[i]);
    return r;
}
template <int N>
inline PackD<N> abs(const PackD<N>& a) {
    PackD<N> r;
    for (int i = 0; i < N; ++i) r.v[i] = std::fabs(a.v[i]);
    return r;
}
template <int N>
inline PackD<N> min(const PackD<N>& a, const PackD<N>& b) {
    PackD<N> r;
    for (int i = 0; i < N; ++i) r.v[i] = a.v[i] < b.v[i] ? a.v[i] : b.v[i];
    return r;
}

inline double min(double a, double b) { return a < b ? a : b; }
inline double abs(double a) { return std::fabs(a); }

} // namespace rray::simd
