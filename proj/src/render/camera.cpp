#include "rray/render/camera.hpp"

#include <cmath>

namespace rray::render {

using core::Vec3;

Camera build_camera(const metrics::MetricField& m, const Vec3& position, const Vec3& look_dir,
                    const Vec3& up_hint, double fov) {
    Camera cam;
    cam.position = position;
    cam.look_dir = look_dir;
    cam.up_hint = up_hint;
    cam.fov = fov;
    cam.g_at_position = metrics::sample_metric(m, position).g;
    cam.frame = core::gram_schmidt_frame(cam.g_at_position,
                                         {look_dir, up_hint, cross(look_dir, up_hint)});
    return cam;
}

Vec3 pixel_direction(const Camera& cam, int px, int py, int width, int height) {
    const double tan_half = std::tan(0.5 * cam.fov);
    const double aspect = static_cast<double>(width) / static_cast<double>(height);
    const double sx = (2.0 * (px + 0.5) / width - 1.0) * tan_half * aspect;
    const double sy = (1.0 - 2.0 * (py + 0.5) / height) * tan_half;
    const Vec3 d = cam.frame[0] + sx * cam.frame[2] + sy * cam.frame[1];
    return d / std::sqrt(quad_form(cam.g_at_position, d, d));
}

} // namespace rray::render
