#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "rray/core/linalg.hpp"
#include "rray/geodesics/integrate.hpp"
#include "rray/metrics/metric.hpp"
#include "rray/render/scene.hpp"

// Ray-march kernels. One templated implementation (kernel_impl.hpp) is
// instantiated per lane type:
//   scalar   P = double        — the reference kernel
//   generic  P = PackD<4>      — portable wide kernel, autovectorized
//   avx2     P = PackAvx2      — AVX2 intrinsics (x86-64, runtime-detected)
// All kernels execute the identical arithmetic per lane (pack
// transcendentals call libm lane-wise, FP contraction is disabled
// project-wide), so their outputs are byte-identical; the equivalence tests
// assert exactly that.

namespace rray::render {

enum class KernelKind { Auto, Scalar, Generic, Avx2 };

struct RayStart {
    core::Vec3 position;
    core::Vec3 direction; // unit g-speed
};

enum class RayStatus : std::uint8_t { Miss, Hit, Failed };

struct PixelOutcome {
    RayStatus status = RayStatus::Miss;
    int prim = -1;
    core::Vec3 point{0.0, 0.0, 0.0};
    double t = 0.0; // unit-speed parameter (arc length) of the hit
    int steps = 0;
};

struct MarchContext {
    const metrics::MetricField* metric = nullptr;
    const Scene* scene = nullptr;
    geodesics::IntegratorConfig integ;
};

using MarchFn = void (*)(const MarchContext&, const RayStart*, PixelOutcome*, std::size_t);

// Resolves Auto to the best kernel this CPU supports. Throws ValidationError
// for a kernel the build or CPU does not provide.
MarchFn march_fn(KernelKind kind);

const char* kernel_name(KernelKind kind);
KernelKind resolve_kernel(KernelKind kind);
bool kernel_available(KernelKind kind);

// Parses the RRAY_KERNEL environment variable (scalar|generic|avx2),
// defaulting to Auto when unset.
KernelKind kernel_from_env();

} // namespace rray::render
