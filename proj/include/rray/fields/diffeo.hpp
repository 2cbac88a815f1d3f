#pragma once

#include <cmath>
#include <variant>
#include <vector>

#include "rray/core/linalg.hpp"
#include "rray/fields/scalar_field.hpp"

// Diffeomorphisms Phi: R^3 -> R^3 with analytic image, Jacobian and second
// derivative tensor H[s][i][j] = d^2 x_s / dx_i dx_j. Composition chains are
// evaluated by folding the binary chain-rule/Hessian-composition step from
// the innermost map outward, so only per-map Jacobians and Hessians are ever
// materialized.

namespace rray::fields {

class DiffeoExpr;

struct IdentityMap {
    bool operator==(const IdentityMap&) const = default;
};

struct AffineMap {
    core::Mat3 matrix = core::Mat3::identity();
    core::Vec3 offset{0.0, 0.0, 0.0};

    bool operator==(const AffineMap& o) const {
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (matrix.m[i][j] != o.matrix.m[i][j]) return false;
        return offset == o.offset;
    }
};

// Phi(x,y,z) = (x cos z - y sin z, x sin z + y cos z, z): each z-slice
// rotated by angle z.
struct TwistMap {
    bool operator==(const TwistMap&) const = default;
};

// Phi(p) = p + f(p) * v with Gaussian f.
struct LocalBumpMap {
    GaussianParams bump;
    core::Vec3 direction{0.0, 0.0, 0.0};

    bool operator==(const LocalBumpMap&) const = default;
};

struct ComposeMap {
    // maps[0] is the outermost map: Phi = maps[0] o maps[1] o ... o maps[k-1].
    std::vector<DiffeoExpr> maps;

    bool operator==(const ComposeMap&) const;
};

class DiffeoExpr {
public:
    using Node = std::variant<IdentityMap, AffineMap, TwistMap, LocalBumpMap, ComposeMap>;

    DiffeoExpr() : node_(IdentityMap{}) {}
    DiffeoExpr(IdentityMap n) : node_(n) {}
    DiffeoExpr(AffineMap n) : node_(std::move(n)) {}
    DiffeoExpr(TwistMap n) : node_(n) {}
    DiffeoExpr(LocalBumpMap n) : node_(std::move(n)) {}
    DiffeoExpr(ComposeMap n) : node_(std::move(n)) {}

    const Node& node() const { return node_; }

    bool operator==(const DiffeoExpr& o) const { return node_ == o.node_; }

private:
    Node node_;
};

inline bool ComposeMap::operator==(const ComposeMap& o) const { return maps == o.maps; }

inline DiffeoExpr make_twist() { return DiffeoExpr(TwistMap{}); }

inline DiffeoExpr make_local_bump(double amplitude, core::Vec3 center, core::Vec3 sigma,
                                  core::Vec3 direction) {
    return DiffeoExpr(LocalBumpMap{GaussianParams{amplitude, center, sigma}, direction});
}

inline DiffeoExpr make_compose(std::vector<DiffeoExpr> maps) {
    return DiffeoExpr(ComposeMap{std::move(maps)});
}

template <class T>
struct DiffeoSampleT {
    core::Vec3T<T> image;
    core::Mat3T<T> jacobian;
    core::Tensor3T<T> second_deriv; // second_deriv.s[s] holds d^2 x_s / dx_i dx_j
};

using DiffeoSample = DiffeoSampleT<double>;

// Raw evaluation result: `validity` is the running minimum of |det J| over
// the top-level map and every composition stage. Lanes (or the scalar call)
// with validity <= 1e-14 must be treated as SingularJacobian failures.
template <class T>
struct DiffeoEvalT {
    DiffeoSampleT<T> sample;
    T validity;
};

// Chain rule + Hessian composition for Phi = outer o inner, with `outer`
// sampled at inner.image:
//   J = J_outer J_inner
//   H[s] = J_inner^T H_outer[s] J_inner + sum_t (J_outer)_{s t} H_inner[t]
template <class T>
DiffeoSampleT<T> compose_diffeo_samples(const DiffeoSampleT<T>& outer,
                                        const DiffeoSampleT<T>& inner) {
    DiffeoSampleT<T> r;
    r.image = outer.image;
    r.jacobian = mul(outer.jacobian, inner.jacobian);
    for (int s = 0; s < 3; ++s) {
        core::SymMat3T<T> h = congruence(inner.jacobian, outer.second_deriv.s[s]);
        for (int t = 0; t < 3; ++t)
            h = h + outer.jacobian.m[s][t] * inner.second_deriv.s[t];
        r.second_deriv.s[s] = h;
    }
    return r;
}

namespace detail {

template <class T>
inline DiffeoEvalT<T> eval_node(const IdentityMap&, const core::Vec3T<T>& p) {
    return {{p, core::Mat3T<T>::identity(), core::Tensor3T<T>::zero()}, T(1.0)};
}

template <class T>
inline DiffeoEvalT<T> eval_node(const AffineMap& a, const core::Vec3T<T>& p) {
    DiffeoSampleT<T> s;
    s.jacobian = core::broadcast_mat<T>(a.matrix);
    s.image = mul(s.jacobian, p) + core::Vec3T<T>{T(a.offset.x), T(a.offset.y), T(a.offset.z)};
    s.second_deriv = core::Tensor3T<T>::zero();
    using rray::simd::abs;
    return {s, abs(det(s.jacobian))};
}

template <class T>
inline DiffeoEvalT<T> eval_node(const TwistMap&, const core::Vec3T<T>& p) {
    using std::cos;
    using std::sin;
    const T c = cos(p.z);
    const T s = sin(p.z);

    DiffeoSampleT<T> out;
    out.image = {p.x * c - p.y * s, p.x * s + p.y * c, p.z};

    out.jacobian.m[0][0] = c;
    out.jacobian.m[0][1] = -s;
    out.jacobian.m[0][2] = -(p.x * s) - p.y * c;
    out.jacobian.m[1][0] = s;
    out.jacobian.m[1][1] = c;
    out.jacobian.m[1][2] = p.x * c - p.y * s;
    out.jacobian.m[2][0] = T(0.0);
    out.jacobian.m[2][1] = T(0.0);
    out.jacobian.m[2][2] = T(1.0);

    out.second_deriv = core::Tensor3T<T>::zero();
    out.second_deriv.s[0].xz = -s;
    out.second_deriv.s[0].yz = -c;
    out.second_deriv.s[0].zz = -(p.x * c) + p.y * s;
    out.second_deriv.s[1].xz = c;
    out.second_deriv.s[1].yz = -s;
    out.second_deriv.s[1].zz = -(p.x * s) - p.y * c;

    using rray::simd::abs;
    return {out, abs(det(out.jacobian))};
}

template <class T>
inline DiffeoEvalT<T> eval_node(const LocalBumpMap& b, const core::Vec3T<T>& p) {
    const ScalarSampleT<T> f = eval_node(GaussianField{b.bump}, p);
    const core::Vec3T<T> v{T(b.direction.x), T(b.direction.y), T(b.direction.z)};

    DiffeoSampleT<T> out;
    out.image = p + f.value * v;
    // J = I + v grad^T
    out.jacobian = core::Mat3T<T>::identity();
    const T g[3] = {f.gradient.x, f.gradient.y, f.gradient.z};
    const T vv[3] = {v.x, v.y, v.z};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            out.jacobian.m[i][j] = out.jacobian.m[i][j] + vv[i] * g[j];
    for (int s = 0; s < 3; ++s) out.second_deriv.s[s] = vv[s] * f.hessian;

    using rray::simd::abs;
    return {out, abs(det(out.jacobian))};
}

template <class T>
DiffeoEvalT<T> eval_expr(const DiffeoExpr& e, const core::Vec3T<T>& p);

template <class T>
inline DiffeoEvalT<T> eval_node(const ComposeMap& c, const core::Vec3T<T>& p) {
    using rray::simd::abs;
    using rray::simd::min;
    // Fold right-to-left: innermost map is applied to p first.
    DiffeoEvalT<T> cur = eval_expr(c.maps.back(), p);
    for (int i = static_cast<int>(c.maps.size()) - 2; i >= 0; --i) {
        const DiffeoEvalT<T> outer = eval_expr(c.maps[i], cur.sample.image);
        DiffeoSampleT<T> composed = compose_diffeo_samples(outer.sample, cur.sample);
        T validity = min(cur.validity, outer.validity);
        validity = min(validity, abs(det(composed.jacobian)));
        cur = {composed, validity};
    }
    return cur;
}

template <class T>
DiffeoEvalT<T> eval_expr(const DiffeoExpr& e, const core::Vec3T<T>& p) {
    return std::visit([&](const auto& n) { return eval_node(n, p); }, e.node());
}

} // namespace detail

// Total (non-throwing) evaluation; kernels check validity per lane.
template <class T>
DiffeoEvalT<T> eval_diffeo_raw(const DiffeoExpr& e, const core::Vec3T<T>& p) {
    return detail::eval_expr(e, p);
}

// Scalar evaluation; throws SingularJacobian when |det J| <= 1e-14 at the
// top level or at any composition stage.
DiffeoSample eval_diffeo(const DiffeoExpr& e, const core::Vec3& p);

// Binary composition of already-evaluated samples (outer sampled exactly at
// inner.image). Throws SingularJacobian if the composed Jacobian is singular.
DiffeoSample compose_diffeo_sample(const DiffeoSample& outer, const DiffeoSample& inner);

} // namespace rray::fields
