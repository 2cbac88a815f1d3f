// Regenerates the committed golden images:
//   grid_euclid_256.ppm   from the independent straight-line tracer
//   twist_256.ppm         from the renderer (first-run commit, then frozen)
//   quadric_graph_256.ppm same
// Usage: make_goldens [output_dir]

#include <cmath>
#include <cstdio>
#include <string>

#include "rray/config/config.hpp"
#include "rray/render/camera.hpp"
#include "rray/render/image.hpp"
#include "rray/render/render.hpp"
#include "support/reference_tracer.hpp"

using namespace rray;

int main(int argc, char** argv) {
    const std::string out_dir =
        argc > 1 ? argv[1] : std::string(RRAY_SOURCE_DIR) + "/tests/golden";
    const std::string cfg_dir = std::string(RRAY_SOURCE_DIR) + "/configs/";

    {
        const config::RunConfig cfg = testsupport::oracle_grid_config();
        const render::Image img = testsupport::reference_render(
            cfg.scene, cfg.camera, cfg.integrator.h, cfg.integrator.max_steps, 256, 256);
        render::write_ppm(img, out_dir + "/grid_euclid_256.ppm");
        std::printf("wrote %s/grid_euclid_256.ppm (reference tracer)\n", out_dir.c_str());
    }

    for (const auto& [cfg_name, golden] :
         {std::pair<std::string, std::string>{"twist.json", "twist_256.ppm"},
          std::pair<std::string, std::string>{"quadric_graph.json", "quadric_graph_256.ppm"}}) {
        const config::RunConfig cfg = config::load_config(cfg_dir + cfg_name);
        const auto cam =
            render::build_camera(cfg.metric, cfg.camera.position, cfg.camera.look_dir,
                                 cfg.camera.up_hint, cfg.camera.fov_deg * M_PI / 180.0);
        const auto res = render::render(cfg.metric, cfg.scene, cam, cfg.integrator,
                                        cfg.output.width, cfg.output.height);
        render::write_ppm(res.image, out_dir + "/" + golden);
        std::printf("wrote %s/%s (%lld pixel errors, %.2fs)\n", out_dir.c_str(),
                    golden.c_str(), res.stats.pixel_errors, res.stats.wall_seconds);
    }
    return 0;
}
