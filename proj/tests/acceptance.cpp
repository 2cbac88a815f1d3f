// Acceptance suite: one binary, one pass/fail line per criterion, nonzero
// exit when anything fails. Tolerances and runtime budgets are pinned in
// code next to each check.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "rray/config/config.hpp"
#include "rray/geodesics/integrate.hpp"
#include "rray/metrics/metric.hpp"
#include "rray/render/camera.hpp"
#include "rray/render/image.hpp"
#include "rray/render/render.hpp"
#include "rray/verify/verify.hpp"
#include "support/reference_tracer.hpp"

using namespace rray;
using core::Vec3;

namespace {

constexpr std::uint64_t kSeed = 42;
const std::string kGoldenDir = std::string(RRAY_SOURCE_DIR) + "/tests/golden/";
const std::string kConfigDir = std::string(RRAY_SOURCE_DIR) + "/configs/";

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

fields::DiffeoExpr bump_a() {
    return fields::make_local_bump(0.3, {0.4, 0.0, -0.2}, {0.8, 0.9, 0.7}, {0.5, 0.3, -0.6});
}

fields::DiffeoExpr bump_b() {
    return fields::make_local_bump(-0.25, {-0.3, 0.2, 0.3}, {0.9, 0.7, 0.8}, {-0.4, 0.6, 0.3});
}

render::Camera camera_of(const config::RunConfig& cfg) {
    return render::build_camera(cfg.metric, cfg.camera.position, cfg.camera.look_dir,
                                cfg.camera.up_hint, cfg.camera.fov_deg * M_PI / 180.0);
}

render::RenderResult render_cfg(const config::RunConfig& cfg, int workers,
                                render::KernelKind kernel = render::KernelKind::Auto) {
    render::RenderOptions opt;
    opt.workers = workers;
    opt.kernel = kernel;
    return render::render(cfg.metric, cfg.scene, camera_of(cfg), cfg.integrator,
                          cfg.output.width, cfg.output.height, opt);
}

// 1. Analytic Christoffel symbols match the finite-difference oracle within
//    1e-5 componentwise over 100 seeded points for all six designed metrics.
Outcome criterion_christoffel_oracle() {
    double worst = 0.0;
    std::string worst_name;
    for (const auto& [name, m] : verify::oracle_metric_families()) {
        const double err = verify::christoffel_oracle_err(m, kSeed, 100);
        if (err > worst) {
            worst = err;
            worst_name = name;
        }
    }
    return {worst < 1e-5, "max err " + fmt(worst) + " (" + worst_name + ", tol 1e-5)"};
}

// 2. det g = 1 + |grad f|^2 within 1e-10 at the oracle points.
Outcome criterion_graph_det() {
    const std::vector<std::pair<std::string, fields::ScalarFieldExpr>> gs = {
        {"quadric", fields::make_quadric()},
        {"gaussian", fields::make_gaussian(1.0, {0.3, -0.2, 0.1}, {0.8, 0.7, 0.9})},
        {"two-gaussians",
         fields::make_sum({fields::make_gaussian(0.8, {-0.6, 0.4, 0.0}, {0.7, 0.9, 0.8}),
                           fields::make_gaussian(-0.5, {0.5, -0.3, 0.6}, {1.1, 0.6, 0.7})})},
    };
    double worst = 0.0;
    for (const auto& [name, f] : gs)
        worst = std::max(worst, verify::graph_det_identity_err(f, kSeed, 100));
    return {worst < 1e-10, "max err " + fmt(worst) + " (tol 1e-10)"};
}

// 3. Euler-traced geodesics of each pullback metric, mapped through Phi,
//    converge to the exact Euclidean line at first order; RK4 lands below
//    1e-8 at h = 1e-2.
Outcome criterion_pullback_straightness() {
    const std::vector<std::pair<std::string, fields::DiffeoExpr>> ds = {
        {"twist", fields::make_twist()},
        {"local-bump", bump_a()},
        {"compose-bumps", fields::make_compose({bump_a(), bump_b()})},
    };
    bool pass = true;
    std::string detail;
    for (const auto& [name, d] : ds) {
        const auto e = verify::pullback_straightness(d, {1e-2, 5e-3, 2.5e-3}, 1.0);
        detail += name + ":";
        for (std::size_t i = 0; i + 1 < e.euler.size(); ++i) {
            const double r = e.euler[i + 1] / e.euler[i];
            pass = pass && r > 0.4 && r < 0.6;
            detail += " " + fmt(r);
        }
        pass = pass && e.rk4 < 1e-8;
        detail += " rk4 " + fmt(e.rk4) + "  ";
    }
    return {pass, detail + "(ratios in [0.4,0.6], rk4 tol 1e-8)"};
}

// 4. g(gamma', gamma') drifts below 1e-8 with RK4 at h = 1e-3 over unit
//    parameter length for all three families; Euler drift halves with h.
//    On the Euclidean metric Euler conserves energy exactly, so the halving
//    ratio is vacuous there and exact zero drift is required instead.
Outcome criterion_energy() {
    bool pass = true;
    std::string detail;
    for (const auto& [name, m] : verify::oracle_metric_families()) {
        const double d = verify::energy_drift(m, geodesics::Scheme::Rk4, 1e-3, 1000);
        pass = pass && d < 1e-8;
    }
    const metrics::MetricField euclid{metrics::EuclideanMetric{}};
    const double de = verify::energy_drift(euclid, geodesics::Scheme::Rk4, 1e-3, 1000);
    pass = pass && de < 1e-8;
    const double dee = verify::energy_drift(euclid, geodesics::Scheme::Euler, 1e-3, 1000);
    pass = pass && dee == 0.0;
    detail += "rk4 ok, euclid euler drift " + fmt(dee) + ", ratios";
    for (const auto& [name, m] : verify::curved_metric_families()) {
        const double d1 = verify::energy_drift(m, geodesics::Scheme::Euler, 2e-3, 500);
        const double d2 = verify::energy_drift(m, geodesics::Scheme::Euler, 1e-3, 1000);
        const double r = d2 / d1;
        pass = pass && r > 0.4 && r < 0.6;
        detail += " " + fmt(r);
    }
    return {pass, detail + " (rk4 tol 1e-8, ratios in [0.4,0.6])"};
}

// 5. The geodesic renderer on the Euclidean metric is byte-identical to the
//    independent straight-line tracer at 256x256, single-threaded.
Outcome criterion_euclid_oracle(double* wall) {
    const config::RunConfig cfg = testsupport::oracle_grid_config();
    const render::Image oracle = testsupport::reference_render(
        cfg.scene, cfg.camera, cfg.integrator.h, cfg.integrator.max_steps, 256, 256);
    const auto t0 = std::chrono::steady_clock::now();
    const auto res = render_cfg(cfg, 1);
    *wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool same = render::ppm_bytes(res.image) == render::ppm_bytes(oracle);
    return {same && res.stats.pixel_errors == 0,
            same ? "byte-identical to the reference tracer" : "IMAGES DIFFER"};
}

// 6. Zero-amplitude graph metric and identity diffeo metric render
//    byte-identically to the Euclidean render.
Outcome criterion_null_deformation() {
    config::RunConfig cfg = testsupport::oracle_grid_config();
    const auto euclid = render_cfg(cfg, 0);

    cfg.metric = metrics::make_graph_metric(fields::make_gaussian(0.0, {0, 0, 0}, {1, 1, 1}));
    const auto zero_graph = render_cfg(cfg, 0);

    cfg.metric = metrics::make_diffeo_metric(fields::DiffeoExpr());
    const auto ident = render_cfg(cfg, 0);

    const bool ok =
        zero_graph.image == euclid.image && ident.image == euclid.image;
    return {ok, ok ? "zero-amplitude graph and identity diffeo equal Euclidean bytes"
                   : "IMAGES DIFFER"};
}

// 7. Twist and quadric figures at 256x256, h = 1e-2: zero per-pixel errors,
//    byte-equal to the committed goldens, and byte-stable across a repeat
//    run and a 4-worker run. Budget: < 60 s single-threaded each.
Outcome criterion_figures(double* wall) {
    const std::vector<std::pair<std::string, std::string>> figs = {
        {kConfigDir + "twist.json", kGoldenDir + "twist_256.ppm"},
        {kConfigDir + "quadric_graph.json", kGoldenDir + "quadric_graph_256.ppm"},
    };
    bool pass = true;
    std::string detail;
    double total = 0.0;
    for (const auto& [cfg_path, golden_path] : figs) {
        const config::RunConfig cfg = config::load_config(cfg_path);
        const auto t0 = std::chrono::steady_clock::now();
        const auto res = render_cfg(cfg, 1);
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        total += secs;

        render::Image golden;
        bool golden_ok = true;
        try {
            golden = render::read_ppm(golden_path);
        } catch (const IoError&) {
            golden_ok = false;
        }
        const auto again = render_cfg(cfg, 4);
        const bool stable = again.image == res.image;
        const bool matches = golden_ok && res.image == golden;
        pass = pass && res.stats.pixel_errors == 0 && secs < 60.0 && stable && matches;
        detail += cfg_path.substr(cfg_path.rfind('/') + 1) + ": " + fmt(secs) + "s, " +
                  std::to_string(res.stats.pixel_errors) + " err, " +
                  (matches ? "golden ok" : (golden_ok ? "GOLDEN MISMATCH" : "GOLDEN MISSING")) +
                  (stable ? "" : ", UNSTABLE ACROSS WORKERS") + "  ";
    }
    *wall = total;
    return {pass, detail};
}

// 8. Analytic first derivatives within 1e-5 and second derivatives within
//    1e-4 of central differences at 100 seeded points for every field and
//    diffeo variant, including a 3-deep composition chain.
Outcome criterion_derivatives() {
    const auto bump_c =
        fields::make_local_bump(0.2, {0.0, -0.4, 0.1}, {0.75, 0.85, 0.95}, {0.3, 0.5, 0.4});
    double worst1 = 0.0, worst2 = 0.0;
    for (const auto& f :
         {fields::make_gaussian(1.0, {0.3, -0.2, 0.1}, {0.8, 0.7, 0.9}), fields::make_quadric(),
          fields::make_sum({fields::make_gaussian(0.8, {-0.6, 0.4, 0.0}, {0.7, 0.9, 0.8}),
                            fields::make_gaussian(-0.5, {0.5, -0.3, 0.6}, {1.1, 0.6, 0.7})})}) {
        const auto e = verify::scalar_field_fd_err(f, kSeed, 100);
        worst1 = std::max(worst1, e.first);
        worst2 = std::max(worst2, e.second);
    }
    for (const auto& d :
         {fields::DiffeoExpr(), fields::make_twist(), bump_a(),
          fields::make_compose({bump_a(), bump_b()}),
          fields::make_compose({bump_a(), bump_b(), bump_c})}) {
        const auto e = verify::diffeo_fd_err(d, kSeed, 100);
        worst1 = std::max(worst1, e.first);
        worst2 = std::max(worst2, e.second);
    }
    return {worst1 < 1e-5 && worst2 < 1e-4,
            "first " + fmt(worst1) + " second " + fmt(worst2) + " (tol 1e-5 / 1e-4)"};
}

// 9. Renders at 1, 4 and 8 workers produce identical bytes.
Outcome criterion_parallel_determinism() {
    config::RunConfig cfg = config::load_config(kConfigDir + "twist.json");
    cfg.output.width = 192;
    cfg.output.height = 144;
    const auto one = render_cfg(cfg, 1);
    const auto four = render_cfg(cfg, 4);
    const auto eight = render_cfg(cfg, 8);
    const bool ok = one.image == four.image && four.image == eight.image;
    return {ok, ok ? "1/4/8 workers byte-identical" : "IMAGES DIFFER ACROSS WORKER COUNTS"};
}

} // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double budget; // seconds; 0 = unbudgeted
        std::function<Outcome(double*)> run;
    };

    auto timed = [](std::function<Outcome()> fn) {
        return [fn](double*) { return fn(); };
    };

    const std::vector<Criterion> criteria = {
        {1, "christoffel-oracle-equivalence", 5.0, timed(criterion_christoffel_oracle)},
        {2, "graph-determinant-identity", 0.0, timed(criterion_graph_det)},
        {3, "pullback-straightness", 10.0, timed(criterion_pullback_straightness)},
        {4, "energy-conservation", 0.0, timed(criterion_energy)},
        {5, "euclidean-render-oracle", 30.0, criterion_euclid_oracle},
        {6, "null-deformation-equivalence", 0.0, timed(criterion_null_deformation)},
        {7, "figure-reproduction", 120.0, criterion_figures},
        {8, "derivative-consistency", 0.0, timed(criterion_derivatives)},
        {9, "determinism-under-parallelism", 0.0, timed(criterion_parallel_determinism)},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        double measured = -1.0;
        Outcome out;
        try {
            out = c.run(&measured);
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (measured >= 0.0) wall = measured; // budgeted portion only
        if (c.budget > 0.0 && wall >= c.budget) {
            out.pass = false;
            out.detail += " [OVER BUDGET " + fmt(c.budget) + "s]";
        }
        if (!out.pass) ++failures;
        std::printf("[%s] %d. %s (%.2fs): %s\n", out.pass ? "PASS" : "FAIL", c.id, c.name,
                    wall, out.detail.c_str());
        std::fflush(stdout);
    }
    if (failures) std::printf("%d criterion(s) FAILED\n", failures);
    else std::printf("all %zu criteria passed\n", criteria.size());
    return failures == 0 ? 0 : 1;
}
