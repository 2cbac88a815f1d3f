// rray: render scenes over designed Riemannian metrics, export geodesic
// polylines, and run the numerical verification suites.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "rray/config/config.hpp"
#include "rray/core/error.hpp"
#include "rray/geodesics/integrate.hpp"
#include "rray/render/camera.hpp"
#include "rray/render/image.hpp"
#include "rray/render/render.hpp"
#include "rray/verify/verify.hpp"

namespace {

using rray::core::Vec3;

struct SizeArg {
    int width = 0, height = 0;
};

SizeArg parse_size(const std::string& s) {
    SizeArg out;
    char sep = 0;
    std::istringstream ss(s);
    if (!(ss >> out.width >> sep >> out.height) || (sep != 'x' && sep != 'X') ||
        out.width < 1 || out.height < 1)
        throw rray::ValidationError("--size expects WxH, got '" + s + "'");
    return out;
}

Vec3 parse_vec3(const std::string& s, const std::string& flag) {
    Vec3 v;
    char c1 = 0, c2 = 0;
    std::istringstream ss(s);
    if (!(ss >> v.x >> c1 >> v.y >> c2 >> v.z) || c1 != ',' || c2 != ',')
        throw rray::ValidationError(flag + " expects x,y,z, got '" + s + "'");
    return v;
}

std::string report_path(const std::string& output_path) {
    const auto dot = output_path.find_last_of('.');
    const std::string base = dot == std::string::npos ? output_path : output_path.substr(0, dot);
    return base + ".report.txt";
}

int cmd_render(const rray::config::RunConfig& cfg) {
    using namespace rray;

    const double fov = cfg.camera.fov_deg * M_PI / 180.0;
    const render::Camera cam = render::build_camera(cfg.metric, cfg.camera.position,
                                                    cfg.camera.look_dir, cfg.camera.up_hint, fov);
    render::RenderOptions opt;
    const render::RenderResult res = render::render(cfg.metric, cfg.scene, cam, cfg.integrator,
                                                    cfg.output.width, cfg.output.height, opt);
    render::write_ppm(res.image, cfg.output.path);

    const std::string rpath = report_path(cfg.output.path);
    std::ofstream rep(rpath);
    if (!rep) throw IoError("cannot open report '" + rpath + "' for writing");
    rep << "image: " << cfg.output.path << "\n"
        << "wall_seconds: " << res.stats.wall_seconds << "\n"
        << "rays: " << res.stats.rays << "\n"
        << "avg_steps_per_ray: " << res.stats.avg_steps_per_ray() << "\n"
        << "pixel_errors: " << res.stats.pixel_errors << "\n"
        << "kernel: "
        << render::kernel_name(render::resolve_kernel(render::kernel_from_env())) << "\n"
        << "config:\n"
        << config::serialize_config(cfg);
    if (!rep) throw IoError("short write to '" + rpath + "'");

    std::cout << cfg.output.path << ": " << cfg.output.width << "x" << cfg.output.height
              << ", " << res.stats.wall_seconds << " s, "
              << res.stats.avg_steps_per_ray() << " steps/ray, "
              << res.stats.pixel_errors << " pixel errors\n";
    return 0;
}

int cmd_geodesic(const rray::config::RunConfig& cfg, const Vec3& start, const Vec3& dir,
                 const std::string& out_path) {
    using namespace rray;

    std::ofstream f(out_path);
    if (!f) throw IoError("cannot open '" + out_path + "' for writing");
    f.precision(17);
    f << "t,x,y,z,vx,vy,vz\n";

    auto row = [&](double t, const geodesics::GeodesicState& s) {
        f << t << ',' << s.position.x << ',' << s.position.y << ',' << s.position.z << ','
          << s.velocity.x << ',' << s.velocity.y << ',' << s.velocity.z << '\n';
    };

    const core::SymMat3 g = metrics::sample_metric(cfg.metric, start).g;
    const double len = std::sqrt(quad_form(g, dir, dir));
    if (len == 0.0) {
        row(0.0, {start, dir});
        std::cerr << "warning: zero direction, wrote the start state only\n";
        if (!f) throw IoError("short write to '" + out_path + "'");
        return 0;
    }

    const geodesics::GeodesicState s0{start, dir / len};
    const geodesics::Polyline line =
        trace_geodesic(cfg.metric, s0, cfg.integrator, cfg.scene.bounds);
    for (std::size_t i = 0; i < line.states.size(); ++i) row(line.t(i), line.states[i]);
    if (!f) throw IoError("short write to '" + out_path + "'");

    std::cout << out_path << ": " << line.states.size() << " states, h = " << line.h << "\n";
    return 0;
}

int cmd_verify(std::uint64_t seed) {
    const auto results = rray::verify::run_all_checks(seed);
    std::size_t width = 0;
    for (const auto& r : results) width = std::max(width, r.name.size());
    int failures = 0;
    for (const auto& r : results) {
        if (!r.pass) ++failures;
        std::printf("%-6s %-*s %s\n", r.pass ? "[PASS]" : "[FAIL]", static_cast<int>(width),
                    r.name.c_str(), r.detail.c_str());
    }
    std::printf("%d/%zu suites passed (seed %llu)\n", static_cast<int>(results.size()) - failures,
                results.size(), static_cast<unsigned long long>(seed));
    return failures == 0 ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"rray - CPU ray tracer for designed Riemannian metrics on R^3"};
    app.require_subcommand(1);

    std::string config_path, out_override, size_override, start_str, dir_str;
    std::string geo_out = "geodesic.csv";
    double h_override = 0.0;
    bool print_config = false;
    std::uint64_t seed = 42;

    CLI::App* render = app.add_subcommand("render", "render a scene to a PPM image");
    render->add_option("config", config_path, "JSON run configuration")->required();
    render->add_option("-o,--output", out_override, "override output.path");
    render->add_option("--h", h_override, "override integrator.h");
    render->add_option("--size", size_override, "override output size as WxH");
    render->add_flag("--print-config", print_config,
                     "print the effective config and exit");

    CLI::App* geodesic = app.add_subcommand("geodesic", "export one geodesic polyline as CSV");
    geodesic->add_option("config", config_path, "JSON run configuration")->required();
    geodesic->add_option("--start", start_str, "start point x,y,z")->required();
    geodesic->add_option("--dir", dir_str, "initial direction x,y,z")->required();
    geodesic->add_option("-o,--output", geo_out, "output CSV path");
    geodesic->add_option("--h", h_override, "override integrator.h");
    geodesic->add_flag("--print-config", print_config,
                       "print the effective config and exit");

    CLI::App* verify = app.add_subcommand("verify", "run the numerical property suites");
    verify->add_option("--seed", seed, "RNG seed for the property suites");

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed()) return cmd_verify(seed);

        rray::config::RunConfig cfg = rray::config::load_config(config_path);
        if (!out_override.empty()) cfg.output.path = out_override;
        if (h_override > 0.0) cfg.integrator.h = h_override;
        if (!size_override.empty()) {
            const SizeArg sz = parse_size(size_override);
            cfg.output.width = sz.width;
            cfg.output.height = sz.height;
        }
        if (print_config) {
            std::cout << rray::config::serialize_config(cfg);
            return 0;
        }
        if (render->parsed()) return cmd_render(cfg);
        return cmd_geodesic(cfg, parse_vec3(start_str, "--start"), parse_vec3(dir_str, "--dir"),
                            geo_out);
    } catch (const rray::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const rray::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
