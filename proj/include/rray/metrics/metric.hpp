#pragma once

#include <variant>

#include "rray/core/linalg.hpp"
#include "rray/fields/diffeo.hpp"
#include "rray/fields/scalar_field.hpp"

// Metric tensors and Christoffel symbols for three families:
//   Euclidean          g = I,          Gamma = 0
//   Graph(f)           g = I + grad f grad f^T (pullback from the graph
//                      hypersurface x4 = f), Gamma^m_ij = f_m f_ij / (1+|grad f|^2)
//   Diffeo(Phi)        g = J^T J (pullback of the Euclidean metric through
//                      Phi), Gamma^m_ij = sum_s H[s]_ij [J^-1]_ms
// plus a finite-difference Christoffel oracle built from the general
// formula on metric coefficients, used to cross-check the analytic paths.

namespace rray::metrics {

struct EuclideanMetric {
    bool operator==(const EuclideanMetric&) const = default;
};

struct GraphMetric {
    fields::ScalarFieldExpr field;
    bool operator==(const GraphMetric&) const = default;
};

struct DiffeoMetric {
    fields::DiffeoExpr map;
    bool operator==(const DiffeoMetric&) const = default;
};

class MetricField {
public:
    using Node = std::variant<EuclideanMetric, GraphMetric, DiffeoMetric>;

    MetricField() : node_(EuclideanMetric{}) {}
    MetricField(EuclideanMetric n) : node_(n) {}
    MetricField(GraphMetric n) : node_(std::move(n)) {}
    MetricField(DiffeoMetric n) : node_(std::move(n)) {}

    const Node& node() const { return node_; }

    bool operator==(const MetricField& o) const { return node_ == o.node_; }

private:
    Node node_;
};

inline MetricField make_graph_metric(fields::ScalarFieldExpr f) {
    return MetricField(GraphMetric{std::move(f)});
}

inline MetricField make_diffeo_metric(fields::DiffeoExpr e) {
    return MetricField(DiffeoMetric{std::move(e)});
}

// --- templated samplers shared by the march kernels -----------------------

// Christoffel tensor plus a per-lane validity scalar: the running minimum of
// |det J| for diffeo metrics, constant 1 for the families that cannot fail.
template <class T>
struct ChristoffelEvalT {
    core::Tensor3T<T> gamma;
    T validity;
};

template <class T>
inline ChristoffelEvalT<T> christoffel_eval(const EuclideanMetric&, const core::Vec3T<T>&) {
    return {core::Tensor3T<T>::zero(), T(1.0)};
}

template <class T>
inline ChristoffelEvalT<T> christoffel_eval(const GraphMetric& gm, const core::Vec3T<T>& p) {
    const fields::ScalarSampleT<T> s = eval_scalar(gm.field, p);
    const T w = T(1.0) + dot(s.gradient, s.gradient);
    core::Tensor3T<T> gamma;
    gamma.s[0] = (s.gradient.x / w) * s.hessian;
    gamma.s[1] = (s.gradient.y / w) * s.hessian;
    gamma.s[2] = (s.gradient.z / w) * s.hessian;
    return {gamma, T(1.0)};
}

template <class T>
inline ChristoffelEvalT<T> christoffel_eval(const DiffeoMetric& dm, const core::Vec3T<T>& p) {
    using rray::simd::abs;
    using rray::simd::min;
    const fields::DiffeoEvalT<T> ev = eval_diffeo_raw(dm.map, p);
    const T d = det(ev.sample.jacobian);
    const core::Mat3T<T> jinv = inverse_unchecked(ev.sample.jacobian, d);
    core::Tensor3T<T> gamma;
    for (int m = 0; m < 3; ++m) {
        core::SymMat3T<T> acc = jinv.m[m][0] * ev.sample.second_deriv.s[0];
        acc = acc + jinv.m[m][1] * ev.sample.second_deriv.s[1];
        acc = acc + jinv.m[m][2] * ev.sample.second_deriv.s[2];
        gamma.s[m] = acc;
    }
    return {gamma, min(ev.validity, abs(d))};
}

template <class T>
inline ChristoffelEvalT<T> christoffel_eval(const MetricField& m, const core::Vec3T<T>& p) {
    return std::visit([&](const auto& n) { return christoffel_eval(n, p); }, m.node());
}

// Metric tensor only (no Christoffels); used for g-norms and cameras.
template <class T>
struct MetricTensorEvalT {
    core::SymMat3T<T> g;
    T validity;
};

template <class T>
inline MetricTensorEvalT<T> metric_tensor_eval(const EuclideanMetric&, const core::Vec3T<T>&) {
    return {core::SymMat3T<T>::identity(), T(1.0)};
}

template <class T>
inline MetricTensorEvalT<T> metric_tensor_eval(const GraphMetric& gm, const core::Vec3T<T>& p) {
    const fields::ScalarSampleT<T> s = eval_scalar(gm.field, p);
    return {core::SymMat3T<T>::identity() + outer_sym(s.gradient), T(1.0)};
}

template <class T>
inline MetricTensorEvalT<T> metric_tensor_eval(const DiffeoMetric& dm, const core::Vec3T<T>& p) {
    using rray::simd::abs;
    using rray::simd::min;
    const fields::DiffeoEvalT<T> ev = eval_diffeo_raw(dm.map, p);
    return {gram(ev.sample.jacobian), min(ev.validity, abs(det(ev.sample.jacobian)))};
}

template <class T>
inline MetricTensorEvalT<T> metric_tensor_eval(const MetricField& m, const core::Vec3T<T>& p) {
    return std::visit([&](const auto& n) { return metric_tensor_eval(n, p); }, m.node());
}

// --- scalar operations -----------------------------------------------------

// g = I + grad f grad f^T.
core::SymMat3 graph_metric(const fields::ScalarFieldExpr& f, const core::Vec3& p);

// Closed-form inverse g^-1 = I - grad f grad f^T / (1 + |grad f|^2).
core::SymMat3 graph_metric_inverse(const fields::ScalarFieldExpr& f, const core::Vec3& p);

// Gamma^m_ij = f_m f_ij / (1 + |grad f|^2).
core::Tensor3 graph_christoffel(const fields::ScalarFieldExpr& f, const core::Vec3& p);

// g = J^T J; throws SingularJacobian when |det J| <= 1e-14.
core::SymMat3 diffeo_metric(const fields::DiffeoExpr& e, const core::Vec3& p);

// Gamma^m_ij = sum_s H[s]_ij [J^-1]_ms; throws SingularJacobian.
core::Tensor3 diffeo_christoffel(const fields::DiffeoExpr& e, const core::Vec3& p);

struct MetricSample {
    core::SymMat3 g;
    core::SymMat3 g_inv;
    core::Tensor3 christoffel;
};

// Bundled per-variant sample: g, its inverse and the analytic Christoffels.
MetricSample sample_metric(const MetricField& m, const core::Vec3& p);

// Finite-difference Christoffel oracle from central differences of the
// metric coefficients:
//   Gamma^m_ij = 1/2 sum_k (d_i g_jk + d_j g_ik - d_k g_ij) g^km
// `max_asymmetry`, when given, receives max |raw_ij - raw_ji| before the
// explicit symmetrization (a smoothness sanity value).
core::Tensor3 christoffel_fd(const MetricField& m, const core::Vec3& p, double h_fd = 1e-4,
                             double* max_asymmetry = nullptr);

} // namespace rray::metrics
