#pragma once

#include <optional>

#include "rray/geodesics/integrate.hpp"
#include "rray/metrics/metric.hpp"
#include "rray/render/camera.hpp"
#include "rray/render/image.hpp"
#include "rray/render/kernel.hpp"
#include "rray/render/scene.hpp"

namespace rray::render {

struct Hit {
    core::Vec3 point;
    double t = 0.0; // arc length in the g-unit-speed parameter
    int prim = -1;
};

// Pseudo-color shading: hit points color by the fractional part of their
// chart coordinates, attenuated by exp(-kappa * t) fog; misses are black.
Rgb8 shade(const std::optional<Hit>& hit, double kappa);

struct RenderStats {
    double wall_seconds = 0.0;
    long long rays = 0;
    long long total_steps = 0;
    long long pixel_errors = 0; // magenta pixels from per-pixel metric failures

    double avg_steps_per_ray() const {
        return rays > 0 ? static_cast<double>(total_steps) / static_cast<double>(rays) : 0.0;
    }
};

struct RenderOptions {
    int workers = 0; // 0: hardware concurrency (RRAY_THREADS overrides)
    KernelKind kernel = KernelKind::Auto; // RRAY_KERNEL overrides Auto
};

struct RenderResult {
    Image image;
    RenderStats stats;
};

// Deterministic render: the output bytes depend only on the inputs, never on
// worker count or kernel choice. Per-pixel metric failures shade magenta and
// are counted instead of aborting the frame.
RenderResult render(const metrics::MetricField& m, const Scene& scene, const Camera& cam,
                    const geodesics::IntegratorConfig& cfg, int width, int height,
                    const RenderOptions& opt = {});

} // namespace rray::render
