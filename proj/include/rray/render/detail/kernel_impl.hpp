#pragma once

#include <array>
#include <cmath>

#include "rray/render/kernel.hpp"
#include "rray/simd/pack.hpp"

// March-kernel template shared by every lane type. Rays advance in groups of
// lanes_v<P>; metric sampling and the integrator step run packed, while the
// cheap chord-vs-scene test and all bookkeeping run per lane through the
// same scalar intersect_segment every path uses. Finished lanes keep
// integrating until the whole group retires; their results are already
// locked in, and lanes are independent, so the extra arithmetic changes
// nothing.

namespace rray::render::detail {

using simd::lane;
using simd::set_lane;

template <class P, class MV>
void march_group(const MV& mv, const MarchContext& ctx, const RayStart* rays,
                 PixelOutcome* out, std::size_t base, int count) {
    constexpr int K = simd::lanes_v<P>;
    const Scene& scene = *ctx.scene;
    const double h = ctx.integ.h;
    const int max_steps = ctx.integ.max_steps;
    const geodesics::Scheme scheme = ctx.integ.scheme;

    geodesics::GeodesicStateT<P> s;
    for (int l = 0; l < K; ++l) {
        // Tail groups replicate their last ray; the copies are never read back.
        const RayStart& r = rays[base + (l < count ? l : count - 1)];
        set_lane(s.position.x, l, r.position.x);
        set_lane(s.position.y, l, r.position.y);
        set_lane(s.position.z, l, r.position.z);
        set_lane(s.velocity.x, l, r.direction.x);
        set_lane(s.velocity.y, l, r.direction.y);
        set_lane(s.velocity.z, l, r.direction.z);
    }

    std::array<bool, K> active{};
    std::array<PixelOutcome, K> res{};
    int live = count;
    for (int l = 0; l < count; ++l) active[l] = true;

    for (int step = 0; step < max_steps && live > 0; ++step) {
        const geodesics::StepOutT<P> next = geodesics::flow_step_t(mv, s, h, scheme);

        for (int l = 0; l < K; ++l) {
            if (!active[l]) continue;

            const double validity = lane(next.validity, l);
            if (!(validity > core::kSingularDetEps)) {
                res[l].status = RayStatus::Failed;
                res[l].steps = step;
                active[l] = false;
                --live;
                continue;
            }

            const core::Vec3 a{lane(s.position.x, l), lane(s.position.y, l),
                               lane(s.position.z, l)};
            const core::Vec3 b{lane(next.state.position.x, l), lane(next.state.position.y, l),
                               lane(next.state.position.z, l)};
            if (const auto hit = intersect_segment(scene, a, b)) {
                res[l].status = RayStatus::Hit;
                res[l].prim = hit->prim;
                res[l].point = hit->point;
                res[l].t = (static_cast<double>(step) + hit->s) * h;
                res[l].steps = step + 1;
                active[l] = false;
                --live;
                continue;
            }
            if (!scene.bounds.contains(b)) {
                res[l].status = RayStatus::Miss;
                res[l].steps = step + 1;
                active[l] = false;
                --live;
            }
        }
        s = next.state;
    }

    for (int l = 0; l < count; ++l) {
        if (active[l]) {
            res[l].status = RayStatus::Miss;
            res[l].steps = max_steps;
        }
        out[base + l] = res[l];
    }
}

template <class P>
void march_rays(const MarchContext& ctx, const RayStart* rays, PixelOutcome* out,
                std::size_t n) {
    constexpr std::size_t K = simd::lanes_v<P>;
    std::visit(
        [&](const auto& mv) {
            for (std::size_t base = 0; base < n; base += K) {
                const int count = static_cast<int>(n - base < K ? n - base : K);
                march_group<P>(mv, ctx, rays, out, base, count);
            }
        },
        ctx.metric->node());
}

} // namespace rray::render::detail
