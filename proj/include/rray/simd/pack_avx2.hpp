#pragma once

// AVX2 pack. Only included from translation units compiled with -mavx2;
// runtime selection happens in the kernel dispatcher.

#ifdef __AVX2__

#include <immintrin.h>

#include <cmath>

#include "rray/simd/pack.hpp"

namespace rray::simd {

struct PackAvx2 {
    __m256d v;

    PackAvx2() = default;
    PackAvx2(double x) : v(_mm256_set1_pd(x)) {}
    explicit PackAvx2(__m256d x) : v(x) {}

    PackAvx2& operator+=(const PackAvx2& o) { v = _mm256_add_pd(v, o.v); return *this; }
    PackAvx2& operator-=(const PackAvx2& o) { v = _mm256_sub_pd(v, o.v); return *this; }
    PackAvx2& operator*=(const PackAvx2& o) { v = _mm256_mul_pd(v, o.v); return *this; }
    PackAvx2& operator/=(const PackAvx2& o) { v = _mm256_div_pd(v, o.v); return *this; }
};

template <>
struct LaneCount<PackAvx2> {
    static constexpr int value = 4;
};

inline PackAvx2 operator+(PackAvx2 a, const PackAvx2& b) { return a += b; }
inline PackAvx2 operator-(PackAvx2 a, const PackAvx2& b) { return a -= b; }
inline PackAvx2 operator*(PackAvx2 a, const PackAvx2& b) { return a *= b; }
inline PackAvx2 operator/(PackAvx2 a, const PackAvx2& b) { return a /= b; }

inline PackAvx2 operator-(const PackAvx2& a) {
    return PackAvx2(_mm256_sub_pd(_mm256_setzero_pd(), a.v));
}

inline double lane(const PackAvx2& p, int i) {
    alignas(32) double buf[4];
    _mm256_store_pd(buf, p.v);
    return buf[i];
}

inline void set_lane(PackAvx2& p, int i, double x) {
    alignas(32) double buf[4];
    _mm256_store_pd(buf, p.v);
    buf[i] = x;
    p.v = _mm256_load_pd(buf);
}

inline PackAvx2 exp(const PackAvx2& a) {
    alignas(32) double buf[4];
    _mm256_store_pd(buf, a.v);
    for (double& x : buf) x = std::exp(x);
    return PackAvx2(_mm256_load_pd(buf));
}

inline PackAvx2 sin(const PackAvx2& a) {
    alignas(32) double buf[4];
    _mm256_store_pd(buf, a.v);
    for (double& x : buf) x = std::sin(x);
    return PackAvx2(_mm256_load_pd(buf));
}

inline PackAvx2 cos(const PackAvx2& a) {
    alignas(32) double buf[4];
    _mm256_store_pd(buf, a.v);
    for (double& x : buf) x = std::cos(x);
    return PackAvx2(_mm256_load_pd(buf));
}

inline PackAvx2 sqrt(const PackAvx2& a) { return PackAvx2(_mm256_sqrt_pd(a.v)); }

inline PackAvx2 abs(const PackAvx2& a) {
    const __m256d sign = _mm256_set1_pd(-0.0);
    return PackAvx2(_mm256_andnot_pd(sign, a.v));
}

inline PackAvx2 min(const PackAvx2& a, const PackAvx2& b) {
    return PackAvx2(_mm256_min_pd(a.v, b.v));
}

} // namespace rray::simd

#endif // __AVX2__
