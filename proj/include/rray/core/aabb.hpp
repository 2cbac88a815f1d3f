#pragma once

#include "rray/core/linalg.hpp"

namespace rray::core {

struct Aabb {
    Vec3 min{-10.0, -10.0, -10.0};
    Vec3 max{10.0, 10.0, 10.0};

    // NaN coordinates compare false and therefore count as outside.
    bool contains(const Vec3& p) const {
        return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y &&
               p.z >= min.z && p.z <= max.z;
    }

    bool contains(const Aabb& inner) const {
        return contains(inner.min) && contains(inner.max);
    }

    bool operator==(const Aabb&) const = default;
};

} // namespace rray::core
