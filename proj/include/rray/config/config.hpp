#pragma once

#include <string>

#include "rray/core/linalg.hpp"
#include "rray/geodesics/integrate.hpp"
#include "rray/metrics/metric.hpp"
#include "rray/render/scene.hpp"

// One self-describing JSON document per run: nested tables for metric,
// scene, camera, integrator and output, with expression trees as tagged
// {"kind": ...} nodes. Parsing fills every default, rejects unknown keys and
// validates all invariants before any computation starts; serialize_config
// always emits the fully-defaulted document, so parse(serialize(cfg)) == cfg.

namespace rray::config {

struct CameraSpec {
    core::Vec3 position{0.5, 0.5, 0.5};
    core::Vec3 look_dir{1.0, 0.0, 0.0};
    core::Vec3 up_hint{0.0, 0.0, 1.0};
    double fov_deg = 60.0;

    bool operator==(const CameraSpec&) const = default;
};

struct OutputSpec {
    std::string path = "render.ppm";
    int width = 512;
    int height = 512;
    std::string format = "ppm";

    bool operator==(const OutputSpec&) const = default;
};

struct RunConfig {
    metrics::MetricField metric;
    render::Scene scene;
    CameraSpec camera;
    geodesics::IntegratorConfig integrator;
    OutputSpec output;

    bool operator==(const RunConfig&) const = default;
};

// Throws ParseError for malformed JSON, ValidationError naming the offending
// key and constraint otherwise.
RunConfig parse_config(const std::string& text);

RunConfig load_config(const std::string& path);

// Fully-defaulted, round-trippable document (2-space indented JSON).
std::string serialize_config(const RunConfig& cfg);

} // namespace rray::config
