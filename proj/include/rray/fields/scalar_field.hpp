#pragma once

#include <array>
#include <cmath>
#include <variant>
#include <vector>

#include "rray/core/linalg.hpp"

// Scalar fields f: R^3 -> R with analytic value, gradient and Hessian.
// Expression trees are immutable after construction; evaluation is pure and
// templated on the scalar type so the SIMD kernels evaluate the same trees.

namespace rray::fields {

struct GaussianParams {
    double amplitude = 0.0;
    core::Vec3 center{0.0, 0.0, 0.0};
    core::Vec3 sigma{1.0, 1.0, 1.0}; // spreads, all > 0

    bool operator==(const GaussianParams&) const = default;
};

// One trivariate monomial: coef * x^p0 * y^p1 * z^p2, total degree <= 4.
struct PolyTerm {
    double coef = 0.0;
    std::array<int, 3> powers{0, 0, 0};

    bool operator==(const PolyTerm&) const = default;
};

class ScalarFieldExpr;

struct GaussianField {
    GaussianParams params;
    bool operator==(const GaussianField&) const = default;
};

struct PolynomialField {
    std::vector<PolyTerm> terms;
    bool operator==(const PolynomialField&) const = default;
};

struct SumField {
    std::vector<ScalarFieldExpr> terms;
    bool operator==(const SumField&) const;
};

class ScalarFieldExpr {
public:
    using Node = std::variant<GaussianField, PolynomialField, SumField>;

    ScalarFieldExpr() : node_(PolynomialField{}) {} // the zero field
    ScalarFieldExpr(GaussianField n) : node_(std::move(n)) {}
    ScalarFieldExpr(PolynomialField n) : node_(std::move(n)) {}
    ScalarFieldExpr(SumField n) : node_(std::move(n)) {}

    const Node& node() const { return node_; }

    bool operator==(const ScalarFieldExpr& o) const { return node_ == o.node_; }

private:
    Node node_;
};

inline bool SumField::operator==(const SumField& o) const { return terms == o.terms; }

// Convenience builders.
inline ScalarFieldExpr make_gaussian(double amplitude, core::Vec3 center, core::Vec3 sigma) {
    return ScalarFieldExpr(GaussianField{GaussianParams{amplitude, center, sigma}});
}

inline ScalarFieldExpr make_polynomial(std::vector<PolyTerm> terms) {
    return ScalarFieldExpr(PolynomialField{std::move(terms)});
}

inline ScalarFieldExpr make_sum(std::vector<ScalarFieldExpr> terms) {
    return ScalarFieldExpr(SumField{std::move(terms)});
}

// f(x,y,z) = x^2 + y^2 - z^2, the quadric example used all over the tests.
inline ScalarFieldExpr make_quadric() {
    return make_polynomial({{1.0, {2, 0, 0}}, {1.0, {0, 2, 0}}, {-1.0, {0, 0, 2}}});
}

template <class T>
struct ScalarSampleT {
    T value;
    core::Vec3T<T> gradient;
    core::SymMat3T<T> hessian;
};

using ScalarSample = ScalarSampleT<double>;

namespace detail {

template <class T>
inline T ipow(const T& x, int n) {
    T r(1.0);
    for (int i = 0; i < n; ++i) r = r * x;
    return r;
}

template <class T>
inline ScalarSampleT<T> eval_node(const GaussianField& f, const core::Vec3T<T>& p) {
    using std::exp;
    const GaussianParams& g = f.params;
    const T ux = (p.x - T(g.center.x)) / T(g.sigma.x);
    const T uy = (p.y - T(g.center.y)) / T(g.sigma.y);
    const T uz = (p.z - T(g.center.z)) / T(g.sigma.z);
    const T e = exp(T(-0.5) * (ux * ux + uy * uy + uz * uz));
    const T val = T(g.amplitude) * e;

    const T gx = -(val * ux) / T(g.sigma.x);
    const T gy = -(val * uy) / T(g.sigma.y);
    const T gz = -(val * uz) / T(g.sigma.z);

    core::SymMat3T<T> h;
    h.xx = val * (ux * ux - T(1.0)) / T(g.sigma.x * g.sigma.x);
    h.yy = val * (uy * uy - T(1.0)) / T(g.sigma.y * g.sigma.y);
    h.zz = val * (uz * uz - T(1.0)) / T(g.sigma.z * g.sigma.z);
    h.xy = val * (ux * uy) / T(g.sigma.x * g.sigma.y);
    h.xz = val * (ux * uz) / T(g.sigma.x * g.sigma.z);
    h.yz = val * (uy * uz) / T(g.sigma.y * g.sigma.z);
    return {val, {gx, gy, gz}, h};
}

template <class T>
inline ScalarSampleT<T> eval_node(const PolynomialField& f, const core::Vec3T<T>& p) {
    ScalarSampleT<T> out{T(0.0), {T(0.0), T(0.0), T(0.0)}, core::SymMat3T<T>::zero()};
    for (const PolyTerm& t : f.terms) {
        const int a = t.powers[0], b = t.powers[1], c = t.powers[2];
        const T xa = ipow(p.x, a), yb = ipow(p.y, b), zc = ipow(p.z, c);
        const T coef = T(t.coef);
        out.value = out.value + coef * xa * yb * zc;

        const T xa1 = a > 0 ? ipow(p.x, a - 1) : T(0.0);
        const T yb1 = b > 0 ? ipow(p.y, b - 1) : T(0.0);
        const T zc1 = c > 0 ? ipow(p.z, c - 1) : T(0.0);
        if (a > 0) out.gradient.x = out.gradient.x + coef * T(double(a)) * xa1 * yb * zc;
        if (b > 0) out.gradient.y = out.gradient.y + coef * T(double(b)) * xa * yb1 * zc;
        if (c > 0) out.gradient.z = out.gradient.z + coef * T(double(c)) * xa * yb * zc1;

        if (a > 1)
            out.hessian.xx = out.hessian.xx +
                             coef * T(double(a * (a - 1))) * ipow(p.x, a - 2) * yb * zc;
        if (b > 1)
            out.hessian.yy = out.hessian.yy +
                             coef * T(double(b * (b - 1))) * xa * ipow(p.y, b - 2) * zc;
        if (c > 1)
            out.hessian.zz = out.hessian.zz +
                             coef * T(double(c * (c - 1))) * xa * yb * ipow(p.z, c - 2);
        if (a > 0 && b > 0)
            out.hessian.xy = out.hessian.xy + coef * T(double(a * b)) * xa1 * yb1 * zc;
        if (a > 0 && c > 0)
            out.hessian.xz = out.hessian.xz + coef * T(double(a * c)) * xa1 * yb * zc1;
        if (b > 0 && c > 0)
            out.hessian.yz = out.hessian.yz + coef * T(double(b * c)) * xa * yb1 * zc1;
    }
    return out;
}

} // namespace detail

// Exact analytic value, gradient and Hessian of the expression at p. Fields
// are entire functions; there is no error path.
template <class T>
ScalarSampleT<T> eval_scalar(const ScalarFieldExpr& f, const core::Vec3T<T>& p) {
    return std::visit(
        [&](const auto& n) -> ScalarSampleT<T> {
            using N = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<N, SumField>) {
                ScalarSampleT<T> acc{T(0.0), {T(0.0), T(0.0), T(0.0)},
                                     core::SymMat3T<T>::zero()};
                for (const ScalarFieldExpr& term : n.terms) {
                    const ScalarSampleT<T> s = eval_scalar(term, p);
                    acc.value = acc.value + s.value;
                    acc.gradient = acc.gradient + s.gradient;
                    acc.hessian = acc.hessian + s.hessian;
                }
                return acc;
            } else {
                return detail::eval_node(n, p);
            }
        },
        f.node());
}

} // namespace rray::fields
