#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "rray/core/aabb.hpp"
#include "rray/core/linalg.hpp"

// Scene primitives and exact chord-vs-primitive intersection. Geodesics are
// marched as polygonal lines; each chord [a, b] is tested analytically
// against every primitive (quadratic solve for spheres, slab intervals for
// grid planes and half spaces), so the only discretization error left is the
// polyline itself.

namespace rray::render {

// Three families of axis-aligned slabs of total thickness 2*half_width
// around the planes x_d = k * spacing, clipped to `bounds`.
struct GridPlanes {
    double spacing = 1.0;
    double half_width = 0.02;
    core::Aabb bounds;

    bool operator==(const GridPlanes&) const = default;
};

struct Sphere {
    core::Vec3 center{0.0, 0.0, 0.0};
    double radius = 1.0;

    bool operator==(const Sphere&) const = default;
};

// The region dot(normal, p) <= offset.
struct HalfSpace {
    core::Vec3 normal{0.0, 0.0, 1.0};
    double offset = 0.0;

    bool operator==(const HalfSpace&) const = default;
};

using Primitive = std::variant<GridPlanes, Sphere, HalfSpace>;

struct Scene {
    std::vector<Primitive> primitives;
    core::Aabb bounds;       // rays terminate once they leave this box
    double fog_density = 0.05;

    bool operator==(const Scene&) const = default;
};

struct SegmentHit {
    core::Vec3 point;
    double s = 0.0; // chord fraction in [0, 1]
    int prim = -1;  // index into Scene::primitives
};

// Nearest-to-a intersection of the chord [a, b] with any primitive, or
// nullopt. Ties keep the earliest primitive in the list.
std::optional<SegmentHit> intersect_segment(const Scene& scene, const core::Vec3& a,
                                            const core::Vec3& b);

// Implicit surface residual of a point against a primitive boundary
// (distance-like; ~0 for points on the surface). Used by tests.
double surface_residual(const Primitive& prim, const core::Vec3& p);

} // namespace rray::render
