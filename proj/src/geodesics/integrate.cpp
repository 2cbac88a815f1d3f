#include "rray/geodesics/integrate.hpp"

#include <cmath>
#include <string>

namespace rray::geodesics {

using core::Vec3;

namespace {

void require_valid(double validity, const char* who, int step = -1) {
    if (validity > core::kSingularDetEps) return;
    std::string msg = std::string(who) + ": metric evaluation failed (|det J| <= 1e-14)";
    if (step >= 0) msg += " at step " + std::to_string(step);
    throw NumericError(msg);
}

} // namespace

Vec3 geodesic_accel(const metrics::MetricField& m, const GeodesicState& s) {
    double validity = 1.0;
    const Vec3 a = flow_accel(m, s.position, s.velocity, validity);
    require_valid(validity, "geodesic_accel");
    return a;
}

GeodesicState euler_step(const metrics::MetricField& m, const GeodesicState& s, double h) {
    const StepOutT<double> out = euler_step_t(m, s, h);
    require_valid(out.validity, "euler_step");
    return out.state;
}

GeodesicState rk4_step(const metrics::MetricField& m, const GeodesicState& s, double h) {
    const StepOutT<double> out = rk4_step_t(m, s, h);
    require_valid(out.validity, "rk4_step");
    return out.state;
}

Polyline trace_geodesic(const metrics::MetricField& m, const GeodesicState& start,
                        const IntegratorConfig& cfg, const std::optional<Aabb>& bounds) {
    Polyline line;
    line.h = cfg.h;
    line.states.reserve(static_cast<std::size_t>(cfg.max_steps) + 1);
    line.states.push_back(start);
    GeodesicState s = start;
    for (int i = 0; i < cfg.max_steps; ++i) {
        const StepOutT<double> out = flow_step_t(m, s, cfg.h, cfg.scheme);
        require_valid(out.validity, "trace_geodesic", i);
        s = out.state;
        line.states.push_back(s);
        if (bounds && !bounds->contains(s.position)) break;
    }
    return line;
}

Vec3 exponential_map(const metrics::MetricField& m, const core::Vec3& p, const core::Vec3& v,
                     const IntegratorConfig& cfg) {
    const core::SymMat3 g = metrics::sample_metric(m, p).g;
    const double len = std::sqrt(quad_form(g, v, v));
    if (len == 0.0) return p;

    GeodesicState s{p, v / len};
    const int full = static_cast<int>(std::floor(len / cfg.h));
    if (full > cfg.max_steps)
        throw NumericError("exponential_map: |v|_g / h = " + std::to_string(len / cfg.h) +
                           " exceeds max_steps");
    for (int i = 0; i < full; ++i) {
        const StepOutT<double> out = flow_step_t(m, s, cfg.h, cfg.scheme);
        require_valid(out.validity, "exponential_map", i);
        s = out.state;
    }
    const double rest = len - static_cast<double>(full) * cfg.h;
    if (rest > 0.0) {
        const StepOutT<double> out = flow_step_t(m, s, rest, cfg.scheme);
        require_valid(out.validity, "exponential_map", full);
        s = out.state;
    }
    return s.position;
}

} // namespace rray::geodesics
