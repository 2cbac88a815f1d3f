#include "rray/render/render.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <thread>
#include <vector>

namespace rray::render {

using core::Vec3;

Rgb8 shade(const std::optional<Hit>& hit, double kappa) {
    if (!hit) return {0, 0, 0};
    const double atten = std::exp(-kappa * hit->t);
    auto channel = [&](double x) {
        const double frac = x - std::floor(x);
        long v = std::lround(255.0 * (frac * atten));
        if (v < 0) v = 0;
        if (v > 255) v = 255;
        return static_cast<std::uint8_t>(v);
    };
    return {channel(hit->point.x), channel(hit->point.y), channel(hit->point.z)};
}

namespace {

int worker_count(const RenderOptions& opt) {
    if (const char* e = std::getenv("RRAY_THREADS")) {
        const int n = std::atoi(e);
        if (n >= 1) return n;
    }
    if (opt.workers >= 1) return opt.workers;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

constexpr Rgb8 kErrorColor{255, 0, 255};

} // namespace

RenderResult render(const metrics::MetricField& m, const Scene& scene, const Camera& cam,
                    const geodesics::IntegratorConfig& cfg, int width, int height,
                    const RenderOptions& opt) {
    const auto t0 = std::chrono::steady_clock::now();

    MarchContext ctx;
    ctx.metric = &m;
    ctx.scene = &scene;
    ctx.integ = cfg;

    KernelKind kind = opt.kernel;
    if (kind == KernelKind::Auto) kind = kernel_from_env();
    const MarchFn march = march_fn(kind);

    RenderResult out;
    out.image = Image(width, height);
    out.stats.rays = static_cast<long long>(width) * height;

    std::atomic<int> next_row{0};
    std::atomic<long long> total_steps{0};
    std::atomic<long long> pixel_errors{0};

    // One image row per work item: ray packing inside a row is a pure
    // function of the pixel index, so output never depends on scheduling.
    auto work = [&]() {
        std::vector<RayStart> rays(static_cast<std::size_t>(width));
        std::vector<PixelOutcome> res(static_cast<std::size_t>(width));
        long long steps = 0, errors = 0;
        for (;;) {
            const int py = next_row.fetch_add(1);
            if (py >= height) break;
            for (int px = 0; px < width; ++px)
                rays[px] = RayStart{cam.position, pixel_direction(cam, px, py, width, height)};
            march(ctx, rays.data(), res.data(), rays.size());
            for (int px = 0; px < width; ++px) {
                const PixelOutcome& o = res[px];
                steps += o.steps;
                Rgb8 c;
                if (o.status == RayStatus::Failed) {
                    c = kErrorColor;
                    ++errors;
                } else if (o.status == RayStatus::Hit) {
                    c = shade(Hit{o.point, o.t, o.prim}, scene.fog_density);
                } else {
                    c = shade(std::nullopt, scene.fog_density);
                }
                out.image.set(px, py, c);
            }
        }
        total_steps += steps;
        pixel_errors += errors;
    };

    const int workers = worker_count(opt);
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int i = 0; i < workers; ++i) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    out.stats.total_steps = total_steps.load();
    out.stats.pixel_errors = pixel_errors.load();
    out.stats.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

} // namespace rray::render
