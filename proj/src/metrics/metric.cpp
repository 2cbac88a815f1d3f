#include "rray/metrics/metric.hpp"

#include <cmath>
#include <string>

namespace rray::metrics {

using core::SymMat3;
using core::Tensor3;
using core::Vec3;

SymMat3 graph_metric(const fields::ScalarFieldExpr& f, const Vec3& p) {
    const fields::ScalarSample s = eval_scalar(f, p);
    return SymMat3::identity() + outer_sym(s.gradient);
}

SymMat3 graph_metric_inverse(const fields::ScalarFieldExpr& f, const Vec3& p) {
    const fields::ScalarSample s = eval_scalar(f, p);
    const double w = 1.0 + dot(s.gradient, s.gradient);
    return SymMat3::identity() - (1.0 / w) * outer_sym(s.gradient);
}

Tensor3 graph_christoffel(const fields::ScalarFieldExpr& f, const Vec3& p) {
    return christoffel_eval(GraphMetric{f}, core::Vec3T<double>{p.x, p.y, p.z}).gamma;
}

namespace {

fields::DiffeoEvalT<double> eval_checked(const fields::DiffeoExpr& e, const Vec3& p,
                                         const char* who) {
    fields::DiffeoEvalT<double> ev = eval_diffeo_raw(e, p);
    if (!(ev.validity > core::kSingularDetEps))
        throw SingularJacobian(std::string(who) + ": |det J| = " +
                               std::to_string(ev.validity) + " <= 1e-14");
    return ev;
}

} // namespace

SymMat3 diffeo_metric(const fields::DiffeoExpr& e, const Vec3& p) {
    return gram(eval_checked(e, p, "diffeo_metric").sample.jacobian);
}

Tensor3 diffeo_christoffel(const fields::DiffeoExpr& e, const Vec3& p) {
    const fields::DiffeoEvalT<double> ev = eval_checked(e, p, "diffeo_christoffel");
    const double d = det(ev.sample.jacobian);
    const core::Mat3 jinv = inverse_unchecked(ev.sample.jacobian, d);
    Tensor3 gamma;
    for (int m = 0; m < 3; ++m) {
        core::SymMat3 acc = jinv.m[m][0] * ev.sample.second_deriv.s[0];
        acc = acc + jinv.m[m][1] * ev.sample.second_deriv.s[1];
        acc = acc + jinv.m[m][2] * ev.sample.second_deriv.s[2];
        gamma.s[m] = acc;
    }
    return gamma;
}

MetricSample sample_metric(const MetricField& m, const Vec3& p) {
    return std::visit(
        [&](const auto& n) -> MetricSample {
            using N = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<N, EuclideanMetric>) {
                return {SymMat3::identity(), SymMat3::identity(), Tensor3::zero()};
            } else if constexpr (std::is_same_v<N, GraphMetric>) {
                return {graph_metric(n.field, p), graph_metric_inverse(n.field, p),
                        graph_christoffel(n.field, p)};
            } else {
                const SymMat3 g = diffeo_metric(n.map, p);
                return {g, sym_inverse(g), diffeo_christoffel(n.map, p)};
            }
        },
        m.node());
}

namespace {

SymMat3 metric_tensor_checked(const MetricField& m, const Vec3& p) {
    const MetricTensorEvalT<double> ev = metric_tensor_eval(m, p);
    if (!(ev.validity > core::kSingularDetEps))
        throw SingularJacobian("christoffel_fd: singular metric at stencil point (" +
                               std::to_string(p.x) + ", " + std::to_string(p.y) + ", " +
                               std::to_string(p.z) + ")");
    return ev.g;
}

} // namespace

Tensor3 christoffel_fd(const MetricField& m, const Vec3& p, double h_fd,
                       double* max_asymmetry) {
    // Central differences of the metric coefficients over a 6-point stencil.
    SymMat3 dg[3];
    for (int k = 0; k < 3; ++k) {
        Vec3 pp = p, pm = p;
        core::comp(pp, k) += h_fd;
        core::comp(pm, k) -= h_fd;
        const SymMat3 gp = metric_tensor_checked(m, pp);
        const SymMat3 gm = metric_tensor_checked(m, pm);
        dg[k] = (1.0 / (2.0 * h_fd)) * (gp - gm);
    }
    const SymMat3 g = metric_tensor_checked(m, p);
    const SymMat3 ginv = sym_inverse(g);

    // Raw 27-entry tensor, then explicit symmetrization in (i, j).
    double raw[3][3][3];
    for (int mm = 0; mm < 3; ++mm)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double acc = 0.0;
                for (int k = 0; k < 3; ++k) {
                    const double term = entry(dg[i], j, k) + entry(dg[j], i, k) -
                                        entry(dg[k], i, j);
                    acc += term * entry(ginv, k, mm);
                }
                raw[mm][i][j] = 0.5 * acc;
            }

    double asym = 0.0;
    Tensor3 out;
    for (int mm = 0; mm < 3; ++mm) {
        auto avg = [&](int i, int j) {
            asym = std::max(asym, std::fabs(raw[mm][i][j] - raw[mm][j][i]));
            return 0.5 * (raw[mm][i][j] + raw[mm][j][i]);
        };
        out.s[mm].xx = avg(0, 0);
        out.s[mm].xy = avg(0, 1);
        out.s[mm].xz = avg(0, 2);
        out.s[mm].yy = avg(1, 1);
        out.s[mm].yz = avg(1, 2);
        out.s[mm].zz = avg(2, 2);
    }
    if (max_asymmetry) *max_asymmetry = asym;
    return out;
}

} // namespace rray::metrics
