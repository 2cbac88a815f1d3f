#pragma once

#include <optional>
#include <vector>

#include "rray/core/aabb.hpp"
#include "rray/core/linalg.hpp"
#include "rray/metrics/metric.hpp"

// Geodesic flow integration. The flow on (position x, velocity y) is
//   x'_k = y_k
//   y'_k = -sum_{ij} Gamma^k_ij y_i y_j
// advanced either by explicit Euler (both derivatives evaluated at the
// incoming state) or by classical RK4, which serves as the accuracy oracle.
// The step templates are shared verbatim by the render kernels, so a ray
// marched by any kernel reproduces trace_geodesic bit for bit.

namespace rray::geodesics {

template <class T>
struct GeodesicStateT {
    core::Vec3T<T> position;
    core::Vec3T<T> velocity;
};

using GeodesicState = GeodesicStateT<double>;

enum class Scheme { Euler, Rk4 };

struct IntegratorConfig {
    double h = 1e-2;
    int max_steps = 2000;
    Scheme scheme = Scheme::Euler;

    bool operator==(const IntegratorConfig&) const = default;
};

template <class T>
struct StepOutT {
    GeodesicStateT<T> state;
    T validity; // min |det J| seen across the metric evaluations of the step
};

// MV is a metric variant (EuclideanMetric / GraphMetric / DiffeoMetric) or
// the MetricField wrapper; christoffel_eval resolves either way.
template <class T, class MV>
inline core::Vec3T<T> flow_accel(const MV& mv, const core::Vec3T<T>& pos,
                                 const core::Vec3T<T>& vel, T& validity) {
    using rray::simd::min;
    const metrics::ChristoffelEvalT<T> ce = metrics::christoffel_eval(mv, pos);
    validity = min(validity, ce.validity);
    return -contract_quad(ce.gamma, vel);
}

template <class T, class MV>
inline StepOutT<T> euler_step_t(const MV& mv, const GeodesicStateT<T>& s, double h) {
    T validity(1.0);
    const core::Vec3T<T> a = flow_accel(mv, s.position, s.velocity, validity);
    const T hh(h);
    return {{s.position + hh * s.velocity, s.velocity + hh * a}, validity};
}

template <class T, class MV>
inline StepOutT<T> rk4_step_t(const MV& mv, const GeodesicStateT<T>& s, double h) {
    T validity(1.0);
    const T hh(h);
    const T half(0.5 * h);
    const T sixth(h / 6.0);

    const core::Vec3T<T> k1x = s.velocity;
    const core::Vec3T<T> k1v = flow_accel(mv, s.position, s.velocity, validity);

    const core::Vec3T<T> p2 = s.position + half * k1x;
    const core::Vec3T<T> v2 = s.velocity + half * k1v;
    const core::Vec3T<T> k2x = v2;
    const core::Vec3T<T> k2v = flow_accel(mv, p2, v2, validity);

    const core::Vec3T<T> p3 = s.position + half * k2x;
    const core::Vec3T<T> v3 = s.velocity + half * k2v;
    const core::Vec3T<T> k3x = v3;
    const core::Vec3T<T> k3v = flow_accel(mv, p3, v3, validity);

    const core::Vec3T<T> p4 = s.position + hh * k3x;
    const core::Vec3T<T> v4 = s.velocity + hh * k3v;
    const core::Vec3T<T> k4x = v4;
    const core::Vec3T<T> k4v = flow_accel(mv, p4, v4, validity);

    const T two(2.0);
    GeodesicStateT<T> next;
    next.position = s.position + sixth * (k1x + two * k2x + two * k3x + k4x);
    next.velocity = s.velocity + sixth * (k1v + two * k2v + two * k3v + k4v);
    return {next, validity};
}

template <class T, class MV>
inline StepOutT<T> flow_step_t(const MV& mv, const GeodesicStateT<T>& s, double h,
                               Scheme scheme) {
    return scheme == Scheme::Euler ? euler_step_t(mv, s, h) : rk4_step_t(mv, s, h);
}

// --- scalar API -------------------------------------------------------------

// y'_k = -sum_{ij} Gamma^k_ij y_i y_j at the given state.
core::Vec3 geodesic_accel(const metrics::MetricField& m, const GeodesicState& s);

GeodesicState euler_step(const metrics::MetricField& m, const GeodesicState& s, double h);
GeodesicState rk4_step(const metrics::MetricField& m, const GeodesicState& s, double h);

struct Polyline {
    std::vector<GeodesicState> states; // states[i] at parameter t_i = i * h
    double h = 0.0;

    double t(std::size_t i) const { return static_cast<double>(i) * h; }
};

using Aabb = core::Aabb;

// Polyline of up to max_steps+1 states starting at `start`. Terminates early
// when the position leaves `bounds` (the exiting state is kept) and throws
// NumericError naming the step index if a metric evaluation fails.
Polyline trace_geodesic(const metrics::MetricField& m, const GeodesicState& start,
                        const IntegratorConfig& cfg,
                        const std::optional<Aabb>& bounds = std::nullopt);

// Endpoint of the unit-speed geodesic from p in direction v/|v|_g run to
// parameter |v|_g (g-norm at p); the last partial step is shortened to land
// exactly. v = 0 returns p.
core::Vec3 exponential_map(const metrics::MetricField& m, const core::Vec3& p,
                           const core::Vec3& v, const IntegratorConfig& cfg);

} // namespace rray::geodesics
