#pragma once

#include <utility>

#include "rray/core/linalg.hpp"

// Central finite differences over R^3, the independent oracle used against
// every analytic derivative in the library. Step 1e-4 balances O(h^2)
// truncation against cancellation for the magnitudes on the test domain.

namespace rray::verify {

inline constexpr double kFdStep = 1e-4;

template <class F> // F: Vec3 -> double
core::Vec3 fd_gradient(F&& f, const core::Vec3& p, double h = kFdStep) {
    core::Vec3 g;
    for (int k = 0; k < 3; ++k) {
        core::Vec3 pp = p, pm = p;
        comp(pp, k) += h;
        comp(pm, k) -= h;
        comp(g, k) = (f(pp) - f(pm)) / (2.0 * h);
    }
    return g;
}

template <class F> // F: Vec3 -> double
core::SymMat3 fd_hessian(F&& f, const core::Vec3& p, double h = kFdStep) {
    const double f0 = f(p);
    double fp[3], fm[3];
    for (int k = 0; k < 3; ++k) {
        core::Vec3 pp = p, pm = p;
        comp(pp, k) += h;
        comp(pm, k) -= h;
        fp[k] = f(pp);
        fm[k] = f(pm);
    }
    auto cross = [&](int i, int j) {
        core::Vec3 a = p, b = p, c = p, d = p;
        comp(a, i) += h; comp(a, j) += h;
        comp(b, i) += h; comp(b, j) -= h;
        comp(c, i) -= h; comp(c, j) += h;
        comp(d, i) -= h; comp(d, j) -= h;
        return (f(a) - f(b) - f(c) + f(d)) / (4.0 * h * h);
    };
    core::SymMat3 m;
    m.xx = (fp[0] - 2.0 * f0 + fm[0]) / (h * h);
    m.yy = (fp[1] - 2.0 * f0 + fm[1]) / (h * h);
    m.zz = (fp[2] - 2.0 * f0 + fm[2]) / (h * h);
    m.xy = cross(0, 1);
    m.xz = cross(0, 2);
    m.yz = cross(1, 2);
    return m;
}

template <class F> // F: Vec3 -> Vec3
core::Mat3 fd_jacobian(F&& f, const core::Vec3& p, double h = kFdStep) {
    core::Mat3 j;
    for (int k = 0; k < 3; ++k) {
        core::Vec3 pp = p, pm = p;
        comp(pp, k) += h;
        comp(pm, k) -= h;
        const core::Vec3 d = (f(pp) - f(pm)) / (2.0 * h);
        j.m[0][k] = d.x;
        j.m[1][k] = d.y;
        j.m[2][k] = d.z;
    }
    return j;
}

// H[s][i][j] = d^2 f_s / dx_i dx_j for a map R^3 -> R^3.
template <class F>
core::Tensor3 fd_second_deriv(F&& f, const core::Vec3& p, double h = kFdStep) {
    core::Tensor3 t;
    for (int s = 0; s < 3; ++s) {
        auto fs = [&](const core::Vec3& q) { return comp(f(q), s); };
        t.s[s] = fd_hessian(fs, p, h);
    }
    return t;
}

} // namespace rray::verify
