#include <cstdlib>
#include <string>

#include "rray/render/kernel.hpp"

namespace rray::render {

namespace detail {
void march_rays_scalar(const MarchContext&, const RayStart*, PixelOutcome*, std::size_t);
void march_rays_generic(const MarchContext&, const RayStart*, PixelOutcome*, std::size_t);
#if defined(RRAY_HAVE_AVX2_KERNEL)
void march_rays_avx2(const MarchContext&, const RayStart*, PixelOutcome*, std::size_t);
#endif
} // namespace detail

namespace {

bool avx2_available() {
#if defined(RRAY_HAVE_AVX2_KERNEL) && defined(__GNUC__)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

} // namespace

KernelKind resolve_kernel(KernelKind kind) {
    if (kind != KernelKind::Auto) return kind;
    return avx2_available() ? KernelKind::Avx2 : KernelKind::Generic;
}

bool kernel_available(KernelKind kind) {
    switch (kind) {
        case KernelKind::Avx2: return avx2_available();
        default: return true;
    }
}

MarchFn march_fn(KernelKind kind) {
    switch (resolve_kernel(kind)) {
        case KernelKind::Scalar:
            return detail::march_rays_scalar;
        case KernelKind::Generic:
            return detail::march_rays_generic;
        case KernelKind::Avx2:
#if defined(RRAY_HAVE_AVX2_KERNEL)
            if (avx2_available()) return detail::march_rays_avx2;
#endif
            throw ValidationError("kernel 'avx2' is not available on this build/CPU");
        default:
            return detail::march_rays_generic;
    }
}

const char* kernel_name(KernelKind kind) {
    switch (kind) {
        case KernelKind::Auto: return "auto";
        case KernelKind::Scalar: return "scalar";
        case KernelKind::Generic: return "generic";
        case KernelKind::Avx2: return "avx2";
    }
    return "?";
}

KernelKind kernel_from_env() {
    const char* e = std::getenv("RRAY_KERNEL");
    if (!e) return KernelKind::Auto;
    const std::string v(e);
    if (v == "scalar") return KernelKind::Scalar;
    if (v == "generic") return KernelKind::Generic;
    if (v == "avx2") return KernelKind::Avx2;
    if (v == "auto" || v.empty()) return KernelKind::Auto;
    throw ValidationError("RRAY_KERNEL must be one of scalar|generic|avx2|auto, got '" + v +
                          "'");
}

} // namespace rray::render
