// Compiled with -mavx2 on x86-64 builds; dispatched only when the CPU
// reports AVX2 support.

#include "rray/simd/pack_avx2.hpp"

#include "rray/render/detail/kernel_impl.hpp"

namespace rray::render::detail {

#ifdef __AVX2__

void march_rays_avx2(const MarchContext& ctx, const RayStart* rays, PixelOutcome* out,
                     std::size_t n) {
    march_rays<simd::PackAvx2>(ctx, rays, out, n);
}

// Bitwise comparison of the AVX2 pack operations against scalar libm/IEEE
// arithmetic; the kernels rely on this identity.
bool avx2_pack_selftest() {
    using simd::PackAvx2;
    const double xs[4] = {0.37, -1.84, 2.5009765625, -0.0001220703125};
    const double ys[4] = {1.25, -0.333, 7.875, -2.0};
    PackAvx2 x(0.0), y(0.0);
    for (int l = 0; l < 4; ++l) {
        set_lane(x, l, xs[l]);
        set_lane(y, l, ys[l]);
    }

    auto same = [](const PackAvx2& p, auto&& ref) {
        for (int l = 0; l < 4; ++l)
            if (lane(p, l) != ref(l)) return false;
        return true;
    };

    bool ok = true;
    ok = ok && same(x + y, [&](int l) { return xs[l] + ys[l]; });
    ok = ok && same(x - y, [&](int l) { return xs[l] - ys[l]; });
    ok = ok && same(x * y, [&](int l) { return xs[l] * ys[l]; });
    ok = ok && same(x / y, [&](int l) { return xs[l] / ys[l]; });
    ok = ok && same(-x, [&](int l) { return -xs[l]; });
    ok = ok && same(exp(x), [&](int l) { return std::exp(xs[l]); });
    ok = ok && same(sin(x), [&](int l) { return std::sin(xs[l]); });
    ok = ok && same(cos(x), [&](int l) { return std::cos(xs[l]); });
    ok = ok && same(abs(x), [&](int l) { return std::fabs(xs[l]); });
    ok = ok && same(min(x, y), [&](int l) { return std::min(xs[l], ys[l]); });
    ok = ok && same(sqrt(abs(x)), [&](int l) { return std::sqrt(std::fabs(xs[l])); });
    return ok;
}

#endif

} // namespace rray::render::detail
