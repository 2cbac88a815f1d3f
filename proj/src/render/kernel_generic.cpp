#include "rray/render/detail/kernel_impl.hpp"

namespace rray::render::detail {

void march_rays_generic(const MarchContext& ctx, const RayStart* rays, PixelOutcome* out,
                        std::size_t n) {
    march_rays<simd::PackD<4>>(ctx, rays, out, n);
}

} // namespace rray::render::detail
