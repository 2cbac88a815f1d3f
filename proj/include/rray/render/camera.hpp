#pragma once

#include <array>

#include "rray/core/frame.hpp"
#include "rray/core/linalg.hpp"
#include "rray/metrics/metric.hpp"

namespace rray::render {

// Pinhole camera with a g-orthonormal frame at `position`: frame[0] looks
// along look_dir, frame[1] is the up axis, frame[2] the right axis, all
// orthonormal in the metric at the camera point. Pixel centers map onto the
// unit g-sphere of directions.
struct Camera {
    core::Vec3 position{0.0, 0.0, 0.0};
    core::Vec3 look_dir{1.0, 0.0, 0.0};
    core::Vec3 up_hint{0.0, 0.0, 1.0};
    double fov = 0.0; // vertical, radians
    std::array<core::Vec3, 3> frame{};
    core::SymMat3 g_at_position = core::SymMat3::identity();
};

// Builds the frame via Gram-Schmidt on [look_dir, up_hint, look_dir x up_hint]
// against g(position). Throws DegenerateBasis for dependent seeds.
Camera build_camera(const metrics::MetricField& m, const core::Vec3& position,
                    const core::Vec3& look_dir, const core::Vec3& up_hint, double fov);

// Unit-g-speed ray direction through the center of pixel (px, py).
core::Vec3 pixel_direction(const Camera& cam, int px, int py, int width, int height);

} // namespace rray::render
