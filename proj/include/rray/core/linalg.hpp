#pragma once

#include <array>
#include <cmath>

#include "rray/core/error.hpp"
#include "rray/simd/pack.hpp"

// Small fixed-dimension tensor algebra for chart coordinates on R^3:
// 3-vectors, symmetric 3x3 matrices (metric tensors), general 3x3 matrices
// (Jacobians) and rank-3 tensors symmetric in their last two indices
// (Christoffel symbols, Hessian stacks). Everything is templated on the
// scalar type so the same formulas drive the scalar reference kernel and
// the SIMD kernels.

namespace rray::core {

template <class T>
struct Vec3T {
    T x, y, z;

    // Only instantiated for scalar T; packs are never compared directly.
    bool operator==(const Vec3T&) const = default;
};

using Vec3 = Vec3T<double>;

template <class T>
inline Vec3T<T> operator+(const Vec3T<T>& a, const Vec3T<T>& b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
}

template <class T>
inline Vec3T<T> operator-(const Vec3T<T>& a, const Vec3T<T>& b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
}

template <class T>
inline Vec3T<T> operator-(const Vec3T<T>& a) {
    return {-a.x, -a.y, -a.z};
}

template <class T>
inline Vec3T<T> operator*(const T& s, const Vec3T<T>& a) {
    return {s * a.x, s * a.y, s * a.z};
}

template <class T>
inline Vec3T<T> operator*(const Vec3T<T>& a, const T& s) {
    return {a.x * s, a.y * s, a.z * s};
}

template <class T>
inline Vec3T<T> operator/(const Vec3T<T>& a, const T& s) {
    return {a.x / s, a.y / s, a.z / s};
}

template <class T>
inline T dot(const Vec3T<T>& a, const Vec3T<T>& b) {
    return a.x * b.x + a.y * b.y + a.z * b.z;
}

template <class T>
inline T& comp(Vec3T<T>& v, int i) {
    return i == 0 ? v.x : (i == 1 ? v.y : v.z);
}

template <class T>
inline const T& comp(const Vec3T<T>& v, int i) {
    return i == 0 ? v.x : (i == 1 ? v.y : v.z);
}

inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

inline bool finite(const Vec3& a) {
    return std::isfinite(a.x) && std::isfinite(a.y) && std::isfinite(a.z);
}

// Symmetric 3x3 matrix, upper triangle storage: symmetry holds by
// construction, there is no asymmetric slot to get wrong.
template <class T>
struct SymMat3T {
    T xx, xy, xz, yy, yz, zz;

    static SymMat3T identity() {
        return {T(1.0), T(0.0), T(0.0), T(1.0), T(0.0), T(1.0)};
    }
    static SymMat3T zero() {
        return {T(0.0), T(0.0), T(0.0), T(0.0), T(0.0), T(0.0)};
    }
};

using SymMat3 = SymMat3T<double>;

template <class T>
inline SymMat3T<T> operator+(const SymMat3T<T>& a, const SymMat3T<T>& b) {
    return {a.xx + b.xx, a.xy + b.xy, a.xz + b.xz, a.yy + b.yy, a.yz + b.yz, a.zz + b.zz};
}

template <class T>
inline SymMat3T<T> operator-(const SymMat3T<T>& a, const SymMat3T<T>& b) {
    return {a.xx - b.xx, a.xy - b.xy, a.xz - b.xz, a.yy - b.yy, a.yz - b.yz, a.zz - b.zz};
}

template <class T>
inline SymMat3T<T> operator*(const T& s, const SymMat3T<T>& a) {
    return {s * a.xx, s * a.xy, s * a.xz, s * a.yy, s * a.yz, s * a.zz};
}

template <class T>
inline Vec3T<T> mul(const SymMat3T<T>& m, const Vec3T<T>& v) {
    return {m.xx * v.x + m.xy * v.y + m.xz * v.z,
            m.xy * v.x + m.yy * v.y + m.yz * v.z,
            m.xz * v.x + m.yz * v.y + m.zz * v.z};
}

// Bilinear form u^T m v. Accumulation order is part of the contract: with
// m = I it rounds exactly like dot(u, v), which the render oracle relies on.
template <class T>
inline T quad_form(const SymMat3T<T>& m, const Vec3T<T>& u, const Vec3T<T>& v) {
    T acc = m.xx * u.x * v.x;
    acc = acc + m.xy * (u.x * v.y + u.y * v.x);
    acc = acc + m.xz * (u.x * v.z + u.z * v.x);
    acc = acc + m.yy * u.y * v.y;
    acc = acc + m.yz * (u.y * v.z + u.z * v.y);
    acc = acc + m.zz * u.z * v.z;
    return acc;
}

template <class T>
inline T quad_form(const SymMat3T<T>& m, const Vec3T<T>& v) {
    return quad_form(m, v, v);
}

template <class T>
inline T det(const SymMat3T<T>& m) {
    return m.xx * (m.yy * m.zz - m.yz * m.yz)
         - m.xy * (m.xy * m.zz - m.yz * m.xz)
         + m.xz * (m.xy * m.yz - m.yy * m.xz);
}

// v v^T as a symmetric matrix.
template <class T>
inline SymMat3T<T> outer_sym(const Vec3T<T>& v) {
    return {v.x * v.x, v.x * v.y, v.x * v.z, v.y * v.y, v.y * v.z, v.z * v.z};
}

// Closed-form adjugate inverse; caller owns the singularity decision.
template <class T>
inline SymMat3T<T> sym_inverse_unchecked(const SymMat3T<T>& m, const T& d) {
    SymMat3T<T> r;
    r.xx = (m.yy * m.zz - m.yz * m.yz) / d;
    r.xy = (m.xz * m.yz - m.xy * m.zz) / d;
    r.xz = (m.xy * m.yz - m.xz * m.yy) / d;
    r.yy = (m.xx * m.zz - m.xz * m.xz) / d;
    r.yz = (m.xy * m.xz - m.xx * m.yz) / d;
    r.zz = (m.xx * m.yy - m.xy * m.xy) / d;
    return r;
}

inline constexpr double kSingularDetEps = 1e-14;

// Throws SingularMatrix when |det| <= 1e-14 in chart units. The designed
// metrics all have det >= 1; this guards user-supplied degenerate input.
SymMat3 sym_inverse(const SymMat3& m);

// General (non-symmetric) 3x3 matrix, row-major; used for Jacobians.
template <class T>
struct Mat3T {
    T m[3][3];

    static Mat3T identity() {
        Mat3T r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r.m[i][j] = T(i == j ? 1.0 : 0.0);
        return r;
    }
    static Mat3T zero() {
        Mat3T r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r.m[i][j] = T(0.0);
        return r;
    }
};

using Mat3 = Mat3T<double>;

template <class T>
inline Mat3T<T> broadcast_mat(const Mat3& a) {
    Mat3T<T> r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r.m[i][j] = T(a.m[i][j]);
    return r;
}

template <class T>
inline Vec3T<T> mul(const Mat3T<T>& a, const Vec3T<T>& v) {
    return {a.m[0][0] * v.x + a.m[0][1] * v.y + a.m[0][2] * v.z,
            a.m[1][0] * v.x + a.m[1][1] * v.y + a.m[1][2] * v.z,
            a.m[2][0] * v.x + a.m[2][1] * v.y + a.m[2][2] * v.z};
}

template <class T>
inline Mat3T<T> mul(const Mat3T<T>& a, const Mat3T<T>& b) {
    Mat3T<T> r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            r.m[i][j] = a.m[i][0] * b.m[0][j] + a.m[i][1] * b.m[1][j] + a.m[i][2] * b.m[2][j];
    return r;
}

template <class T>
inline T det(const Mat3T<T>& a) {
    return a.m[0][0] * (a.m[1][1] * a.m[2][2] - a.m[1][2] * a.m[2][1])
         - a.m[0][1] * (a.m[1][0] * a.m[2][2] - a.m[1][2] * a.m[2][0])
         + a.m[0][2] * (a.m[1][0] * a.m[2][1] - a.m[1][1] * a.m[2][0]);
}

template <class T>
inline Mat3T<T> inverse_unchecked(const Mat3T<T>& a, const T& d) {
    Mat3T<T> r;
    r.m[0][0] = (a.m[1][1] * a.m[2][2] - a.m[1][2] * a.m[2][1]) / d;
    r.m[0][1] = (a.m[0][2] * a.m[2][1] - a.m[0][1] * a.m[2][2]) / d;
    r.m[0][2] = (a.m[0][1] * a.m[1][2] - a.m[0][2] * a.m[1][1]) / d;
    r.m[1][0] = (a.m[1][2] * a.m[2][0] - a.m[1][0] * a.m[2][2]) / d;
    r.m[1][1] = (a.m[0][0] * a.m[2][2] - a.m[0][2] * a.m[2][0]) / d;
    r.m[1][2] = (a.m[0][2] * a.m[1][0] - a.m[0][0] * a.m[1][2]) / d;
    r.m[2][0] = (a.m[1][0] * a.m[2][1] - a.m[1][1] * a.m[2][0]) / d;
    r.m[2][1] = (a.m[0][1] * a.m[2][0] - a.m[0][0] * a.m[2][1]) / d;
    r.m[2][2] = (a.m[0][0] * a.m[1][1] - a.m[0][1] * a.m[1][0]) / d;
    return r;
}

// J^T J as a symmetric matrix (upper triangle picked directly).
template <class T>
inline SymMat3T<T> gram(const Mat3T<T>& j) {
    SymMat3T<T> r;
    r.xx = j.m[0][0] * j.m[0][0] + j.m[1][0] * j.m[1][0] + j.m[2][0] * j.m[2][0];
    r.xy = j.m[0][0] * j.m[0][1] + j.m[1][0] * j.m[1][1] + j.m[2][0] * j.m[2][1];
    r.xz = j.m[0][0] * j.m[0][2] + j.m[1][0] * j.m[1][2] + j.m[2][0] * j.m[2][2];
    r.yy = j.m[0][1] * j.m[0][1] + j.m[1][1] * j.m[1][1] + j.m[2][1] * j.m[2][1];
    r.yz = j.m[0][1] * j.m[0][2] + j.m[1][1] * j.m[1][2] + j.m[2][1] * j.m[2][2];
    r.zz = j.m[0][2] * j.m[0][2] + j.m[1][2] * j.m[1][2] + j.m[2][2] * j.m[2][2];
    return r;
}

// A^T S A for symmetric S; the result is symmetric, upper triangle kept.
template <class T>
inline SymMat3T<T> congruence(const Mat3T<T>& a, const SymMat3T<T>& s) {
    // t = S * A
    T t[3][3];
    const T s00 = s.xx, s01 = s.xy, s02 = s.xz;
    const T s11 = s.yy, s12 = s.yz, s22 = s.zz;
    for (int j = 0; j < 3; ++j) {
        t[0][j] = s00 * a.m[0][j] + s01 * a.m[1][j] + s02 * a.m[2][j];
        t[1][j] = s01 * a.m[0][j] + s11 * a.m[1][j] + s12 * a.m[2][j];
        t[2][j] = s02 * a.m[0][j] + s12 * a.m[1][j] + s22 * a.m[2][j];
    }
    auto entry = [&](int i, int j) {
        return a.m[0][i] * t[0][j] + a.m[1][i] * t[1][j] + a.m[2][i] * t[2][j];
    };
    SymMat3T<T> r;
    r.xx = entry(0, 0);
    r.xy = entry(0, 1);
    r.xz = entry(0, 2);
    r.yy = entry(1, 1);
    r.yz = entry(1, 2);
    r.zz = entry(2, 2);
    return r;
}

// Rank-3 tensor T[m][i][j], symmetric in (i, j) by storage: one symmetric
// slice per output index m.
template <class T>
struct Tensor3T {
    SymMat3T<T> s[3];

    static Tensor3T zero() {
        return {{SymMat3T<T>::zero(), SymMat3T<T>::zero(), SymMat3T<T>::zero()}};
    }
};

using Tensor3 = Tensor3T<double>;

// sum_{i,j} G[m][i][j] y_i y_j for each m; the geodesic flow contraction.
template <class T>
inline Vec3T<T> contract_quad(const Tensor3T<T>& g, const Vec3T<T>& y) {
    return {quad_form(g.s[0], y), quad_form(g.s[1], y), quad_form(g.s[2], y)};
}

inline double entry(const SymMat3& m, int i, int j) {
    switch (i * 3 + j) {
        case 0: return m.xx;
        case 1: case 3: return m.xy;
        case 2: case 6: return m.xz;
        case 4: return m.yy;
        case 5: case 7: return m.yz;
        default: return m.zz;
    }
}

inline double entry(const Tensor3& t, int m, int i, int j) { return entry(t.s[m], i, j); }

} // namespace rray::core
