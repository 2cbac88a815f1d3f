#include "rray/render/detail/kernel_impl.hpp"

namespace rray::render::detail {

void march_rays_scalar(const MarchContext& ctx, const RayStart* rays, PixelOutcome* out,
                       std::size_t n) {
    march_rays<double>(ctx, rays, out, n);
}

} // namespace rray::render::detail
