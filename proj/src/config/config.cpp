#include "rray/config/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

namespace rray::config {

using core::Vec3;
using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw ValidationError(path + ": " + msg);
}

void check_keys(const json& o, const std::string& path,
                std::initializer_list<const char*> allowed) {
    if (!o.is_object()) fail(path, "must be an object");
    for (auto it = o.begin(); it != o.end(); ++it) {
        bool known = false;
        for (const char* k : allowed)
            if (it.key() == k) {
                known = true;
                break;
            }
        if (!known) fail(path, "unexpected key '" + it.key() + "'");
    }
}

const json* find(const json& o, const std::string& key) {
    const auto it = o.find(key);
    return it == o.end() ? nullptr : &*it;
}

double as_double(const json& v, const std::string& path) {
    if (!v.is_number()) fail(path, "must be a number");
    return v.get<double>();
}

double get_double(const json& o, const std::string& path, const std::string& key) {
    const json* v = find(o, key);
    if (!v) fail(path + "." + key, "required");
    return as_double(*v, path + "." + key);
}

double get_double_or(const json& o, const std::string& path, const std::string& key,
                     double def) {
    const json* v = find(o, key);
    return v ? as_double(*v, path + "." + key) : def;
}

int get_int_or(const json& o, const std::string& path, const std::string& key, int def) {
    const json* v = find(o, key);
    if (!v) return def;
    if (!v->is_number_integer()) fail(path + "." + key, "must be an integer");
    return v->get<int>();
}

std::string get_string_or(const json& o, const std::string& path, const std::string& key,
                          const std::string& def) {
    const json* v = find(o, key);
    if (!v) return def;
    if (!v->is_string()) fail(path + "." + key, "must be a string");
    return v->get<std::string>();
}

Vec3 as_vec3(const json& v, const std::string& path) {
    if (!v.is_array() || v.size() != 3) fail(path, "must be an array of 3 numbers");
    return {as_double(v[0], path + "[0]"), as_double(v[1], path + "[1]"),
            as_double(v[2], path + "[2]")};
}

Vec3 get_vec3(const json& o, const std::string& path, const std::string& key) {
    const json* v = find(o, key);
    if (!v) fail(path + "." + key, "required");
    return as_vec3(*v, path + "." + key);
}

Vec3 get_vec3_or(const json& o, const std::string& path, const std::string& key, Vec3 def) {
    const json* v = find(o, key);
    return v ? as_vec3(*v, path + "." + key) : def;
}

fields::GaussianParams parse_gaussian_params(const json& o, const std::string& path) {
    fields::GaussianParams g;
    g.amplitude = get_double(o, path, "amplitude");
    g.center = get_vec3(o, path, "center");
    g.sigma = get_vec3(o, path, "sigma");
    if (!(g.sigma.x > 0.0 && g.sigma.y > 0.0 && g.sigma.z > 0.0))
        fail(path + ".sigma", "all spreads must be > 0");
    return g;
}

fields::ScalarFieldExpr parse_field(const json& o, const std::string& path) {
    const std::string kind = get_string_or(o, path, "kind", "");
    if (kind == "gaussian") {
        check_keys(o, path, {"kind", "amplitude", "center", "sigma"});
        return fields::ScalarFieldExpr(fields::GaussianField{parse_gaussian_params(o, path)});
    }
    if (kind == "polynomial") {
        check_keys(o, path, {"kind", "terms"});
        const json* terms = find(o, "terms");
        if (!terms || !terms->is_array()) fail(path + ".terms", "required array");
        std::vector<fields::PolyTerm> ts;
        for (std::size_t i = 0; i < terms->size(); ++i) {
            const std::string tp = path + ".terms[" + std::to_string(i) + "]";
            const json& t = (*terms)[i];
            check_keys(t, tp, {"coef", "powers"});
            fields::PolyTerm pt;
            pt.coef = get_double(t, tp, "coef");
            const json* pw = find(t, "powers");
            if (!pw || !pw->is_array() || pw->size() != 3)
                fail(tp + ".powers", "must be an array of 3 integers");
            int total = 0;
            for (int k = 0; k < 3; ++k) {
                if (!(*pw)[k].is_number_integer()) fail(tp + ".powers", "must be integers");
                pt.powers[k] = (*pw)[k].get<int>();
                if (pt.powers[k] < 0) fail(tp + ".powers", "must be >= 0");
                total += pt.powers[k];
            }
            if (total > 4) fail(tp + ".powers", "total degree must be <= 4");
            ts.push_back(pt);
        }
        return fields::make_polynomial(std::move(ts));
    }
    if (kind == "sum") {
        check_keys(o, path, {"kind", "terms"});
        const json* terms = find(o, "terms");
        if (!terms || !terms->is_array()) fail(path + ".terms", "required array");
        std::vector<fields::ScalarFieldExpr> ts;
        for (std::size_t i = 0; i < terms->size(); ++i)
            ts.push_back(parse_field((*terms)[i], path + ".terms[" + std::to_string(i) + "]"));
        return fields::make_sum(std::move(ts));
    }
    fail(path + ".kind", "must be one of gaussian|polynomial|sum, got '" + kind + "'");
}

fields::DiffeoExpr parse_diffeo(const json& o, const std::string& path) {
    const std::string kind = get_string_or(o, path, "kind", "");
    if (kind == "identity") {
        check_keys(o, path, {"kind"});
        return fields::DiffeoExpr(fields::IdentityMap{});
    }
    if (kind == "affine") {
        check_keys(o, path, {"kind", "matrix", "offset"});
        const json* mj = find(o, "matrix");
        if (!mj || !mj->is_array() || mj->size() != 3)
            fail(path + ".matrix", "must be an array of 3 rows of 3 numbers");
        fields::AffineMap a;
        for (int i = 0; i < 3; ++i) {
            const json& row = (*mj)[i];
            if (!row.is_array() || row.size() != 3)
                fail(path + ".matrix", "must be an array of 3 rows of 3 numbers");
            for (int j = 0; j < 3; ++j)
                a.matrix.m[i][j] =
                    as_double(row[j], path + ".matrix[" + std::to_string(i) + "]");
        }
        a.offset = get_vec3_or(o, path, "offset", {0.0, 0.0, 0.0});
        return fields::DiffeoExpr(std::move(a));
    }
    if (kind == "twist") {
        check_keys(o, path, {"kind"});
        return fields::make_twist();
    }
    if (kind == "local_bump") {
        check_keys(o, path, {"kind", "amplitude", "center", "sigma", "direction"});
        fields::LocalBumpMap b;
        b.bump = parse_gaussian_params(o, path);
        b.direction = get_vec3(o, path, "direction");
        return fields::DiffeoExpr(std::move(b));
    }
    if (kind == "compose") {
        check_keys(o, path, {"kind", "maps"});
        const json* maps = find(o, "maps");
        if (!maps || !maps->is_array() || maps->empty())
            fail(path + ".maps", "required non-empty array");
        std::vector<fields::DiffeoExpr> ms;
        for (std::size_t i = 0; i < maps->size(); ++i)
            ms.push_back(parse_diffeo((*maps)[i], path + ".maps[" + std::to_string(i) + "]"));
        return fields::make_compose(std::move(ms));
    }
    fail(path + ".kind",
         "must be one of identity|affine|twist|local_bump|compose, got '" + kind + "'");
}

metrics::MetricField parse_metric(const json& o, const std::string& path) {
    const std::string kind = get_string_or(o, path, "kind", "");
    if (kind == "euclidean") {
        check_keys(o, path, {"kind"});
        return metrics::MetricField(metrics::EuclideanMetric{});
    }
    if (kind == "graph") {
        check_keys(o, path, {"kind", "field"});
        const json* f = find(o, "field");
        if (!f) fail(path + ".field", "required");
        return metrics::make_graph_metric(parse_field(*f, path + ".field"));
    }
    if (kind == "diffeo") {
        check_keys(o, path, {"kind", "map"});
        const json* mp = find(o, "map");
        if (!mp) fail(path + ".map", "required");
        return metrics::make_diffeo_metric(parse_diffeo(*mp, path + ".map"));
    }
    fail(path + ".kind", "must be one of euclidean|graph|diffeo, got '" + kind + "'");
}

core::Aabb parse_aabb(const json& o, const std::string& path) {
    check_keys(o, path, {"min", "max"});
    core::Aabb b;
    b.min = get_vec3(o, path, "min");
    b.max = get_vec3(o, path, "max");
    if (!(b.min.x < b.max.x && b.min.y < b.max.y && b.min.z < b.max.z))
        fail(path, "min must be strictly below max componentwise");
    return b;
}

render::Scene parse_scene(const json* o, const std::string& path) {
    render::Scene s;
    s.bounds = core::Aabb{};
    if (o) {
        check_keys(*o, path, {"primitives", "bounds", "fog_density"});
        if (const json* b = find(*o, "bounds")) s.bounds = parse_aabb(*b, path + ".bounds");
        s.fog_density = get_double_or(*o, path, "fog_density", 0.05);
        if (!(s.fog_density >= 0.0)) fail(path + ".fog_density", "must be >= 0");
    }

    const json* prims = o ? find(*o, "primitives") : nullptr;
    if (!prims) {
        // Default scene: one grid filling the bounding box.
        render::GridPlanes g;
        g.spacing = 1.0;
        g.half_width = 0.02;
        g.bounds = s.bounds;
        s.primitives.emplace_back(g);
        return s;
    }
    if (!prims->is_array()) fail(path + ".primitives", "must be an array");
    for (std::size_t i = 0; i < prims->size(); ++i) {
        const std::string pp = path + ".primitives[" + std::to_string(i) + "]";
        const json& p = (*prims)[i];
        const std::string kind = get_string_or(p, pp, "kind", "");
        if (kind == "grid_planes") {
            check_keys(p, pp, {"kind", "spacing", "half_width", "bounds"});
            render::GridPlanes g;
            g.spacing = get_double_or(p, pp, "spacing", 1.0);
            g.half_width = get_double_or(p, pp, "half_width", 0.02);
            g.bounds = s.bounds;
            if (const json* b = find(p, "bounds")) g.bounds = parse_aabb(*b, pp + ".bounds");
            if (!(g.half_width > 0.0)) fail(pp + ".half_width", "must be > 0");
            if (!(g.spacing > 2.0 * g.half_width))
                fail(pp + ".spacing", "must be > 2 * half_width");
            if (!s.bounds.contains(g.bounds))
                fail(pp + ".bounds", "must lie inside scene.bounds");
            s.primitives.emplace_back(g);
        } else if (kind == "sphere") {
            check_keys(p, pp, {"kind", "center", "radius"});
            render::Sphere sp;
            sp.center = get_vec3(p, pp, "center");
            sp.radius = get_double(p, pp, "radius");
            if (!(sp.radius > 0.0)) fail(pp + ".radius", "must be > 0");
            const Vec3 r{sp.radius, sp.radius, sp.radius};
            if (!s.bounds.contains(core::Aabb{sp.center - r, sp.center + r}))
                fail(pp, "sphere must lie inside scene.bounds");
            s.primitives.emplace_back(sp);
        } else if (kind == "half_space") {
            check_keys(p, pp, {"kind", "normal", "offset"});
            render::HalfSpace hs;
            hs.normal = get_vec3(p, pp, "normal");
            hs.offset = get_double(p, pp, "offset");
            if (!(norm(hs.normal) > 0.0)) fail(pp + ".normal", "must be nonzero");
            s.primitives.emplace_back(hs);
        } else {
            fail(pp + ".kind",
                 "must be one of grid_planes|sphere|half_space, got '" + kind + "'");
        }
    }
    return s;
}

CameraSpec parse_camera(const json* o, const std::string& path) {
    CameraSpec c;
    if (!o) return c;
    check_keys(*o, path, {"position", "look_dir", "up_hint", "fov_deg"});
    c.position = get_vec3_or(*o, path, "position", c.position);
    c.look_dir = get_vec3_or(*o, path, "look_dir", c.look_dir);
    c.up_hint = get_vec3_or(*o, path, "up_hint", c.up_hint);
    c.fov_deg = get_double_or(*o, path, "fov_deg", c.fov_deg);
    if (!(c.fov_deg > 0.0 && c.fov_deg < 180.0)) fail(path + ".fov_deg", "must be in (0, 180)");
    if (!(norm(cross(c.look_dir, c.up_hint)) > 1e-12))
        fail(path, "look_dir and up_hint must be linearly independent");
    return c;
}

geodesics::IntegratorConfig parse_integrator(const json* o, const std::string& path) {
    geodesics::IntegratorConfig c;
    if (!o) return c;
    check_keys(*o, path, {"h", "max_steps", "scheme"});
    c.h = get_double_or(*o, path, "h", c.h);
    if (!(c.h > 0.0)) fail(path + ".h", "must be > 0");
    c.max_steps = get_int_or(*o, path, "max_steps", c.max_steps);
    if (c.max_steps < 1) fail(path + ".max_steps", "must be >= 1");
    const std::string scheme = get_string_or(*o, path, "scheme", "euler");
    if (scheme == "euler")
        c.scheme = geodesics::Scheme::Euler;
    else if (scheme == "rk4")
        c.scheme = geodesics::Scheme::Rk4;
    else
        fail(path + ".scheme", "must be euler|rk4, got '" + scheme + "'");
    return c;
}

OutputSpec parse_output(const json* o, const std::string& path) {
    OutputSpec out;
    if (!o) return out;
    check_keys(*o, path, {"path", "width", "height", "format"});
    out.path = get_string_or(*o, path, "path", out.path);
    if (out.path.empty()) fail(path + ".path", "must be non-empty");
    out.width = get_int_or(*o, path, "width", out.width);
    out.height = get_int_or(*o, path, "height", out.height);
    if (out.width < 1 || out.height < 1) fail(path + ".width/height", "must be >= 1");
    out.format = get_string_or(*o, path, "format", out.format);
    if (out.format != "ppm")
        fail(path + ".format", "only 'ppm' is supported by this build, got '" + out.format +
                                   "'");
    return out;
}

// --- serialization ---------------------------------------------------------

json to_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

json to_json(const core::Aabb& b) {
    return json{{"min", to_json(b.min)}, {"max", to_json(b.max)}};
}

json to_json(const fields::ScalarFieldExpr& f) {
    return std::visit(
        [](const auto& n) -> json {
            using N = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<N, fields::GaussianField>) {
                return json{{"kind", "gaussian"},
                            {"amplitude", n.params.amplitude},
                            {"center", to_json(n.params.center)},
                            {"sigma", to_json(n.params.sigma)}};
            } else if constexpr (std::is_same_v<N, fields::PolynomialField>) {
                json terms = json::array();
                for (const auto& t : n.terms)
                    terms.push_back(json{{"coef", t.coef},
                                         {"powers", {t.powers[0], t.powers[1], t.powers[2]}}});
                return json{{"kind", "polynomial"}, {"terms", terms}};
            } else {
                json terms = json::array();
                for (const auto& t : n.terms) terms.push_back(to_json(t));
                return json{{"kind", "sum"}, {"terms", terms}};
            }
        },
        f.node());
}

json to_json(const fields::DiffeoExpr& e) {
    return std::visit(
        [](const auto& n) -> json {
            using N = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<N, fields::IdentityMap>) {
                return json{{"kind", "identity"}};
            } else if constexpr (std::is_same_v<N, fields::AffineMap>) {
                json rows = json::array();
                for (int i = 0; i < 3; ++i)
                    rows.push_back(
                        json::array({n.matrix.m[i][0], n.matrix.m[i][1], n.matrix.m[i][2]}));
                return json{{"kind", "affine"}, {"matrix", rows}, {"offset", to_json(n.offset)}};
            } else if constexpr (std::is_same_v<N, fields::TwistMap>) {
                return json{{"kind", "twist"}};
            } else if constexpr (std::is_same_v<N, fields::LocalBumpMap>) {
                return json{{"kind", "local_bump"},
                            {"amplitude", n.bump.amplitude},
                            {"center", to_json(n.bump.center)},
                            {"sigma", to_json(n.bump.sigma)},
                            {"direction", to_json(n.direction)}};
            } else {
                json maps = json::array();
                for (const auto& m : n.maps) maps.push_back(to_json(m));
                return json{{"kind", "compose"}, {"maps", maps}};
            }
        },
        e.node());
}

json to_json(const metrics::MetricField& m) {
    return std::visit(
        [](const auto& n) -> json {
            using N = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<N, metrics::EuclideanMetric>)
                return json{{"kind", "euclidean"}};
            else if constexpr (std::is_same_v<N, metrics::GraphMetric>)
                return json{{"kind", "graph"}, {"field", to_json(n.field)}};
            else
                return json{{"kind", "diffeo"}, {"map", to_json(n.map)}};
        },
        m.node());
}

json to_json(const render::Scene& s) {
    json prims = json::array();
    for (const auto& p : s.primitives) {
        prims.push_back(std::visit(
            [](const auto& pr) -> json {
                using P = std::decay_t<decltype(pr)>;
                if constexpr (std::is_same_v<P, render::GridPlanes>)
                    return json{{"kind", "grid_planes"},
                                {"spacing", pr.spacing},
                                {"half_width", pr.half_width},
                                {"bounds", to_json(pr.bounds)}};
                else if constexpr (std::is_same_v<P, render::Sphere>)
                    return json{{"kind", "sphere"},
                                {"center", to_json(pr.center)},
                                {"radius", pr.radius}};
                else
                    return json{{"kind", "half_space"},
                                {"normal", to_json(pr.normal)},
                                {"offset", pr.offset}};
            },
            p));
    }
    return json{{"primitives", prims},
                {"bounds", to_json(s.bounds)},
                {"fog_density", s.fog_density}};
}

} // namespace

RunConfig parse_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("config: ") + e.what());
    }
    check_keys(root, "config", {"metric", "scene", "camera", "integrator", "output"});

    const json* metric = find(root, "metric");
    if (!metric) fail("config.metric", "required");

    RunConfig cfg;
    cfg.metric = parse_metric(*metric, "metric");
    cfg.scene = parse_scene(find(root, "scene"), "scene");
    cfg.camera = parse_camera(find(root, "camera"), "camera");
    cfg.integrator = parse_integrator(find(root, "integrator"), "integrator");
    cfg.output = parse_output(find(root, "output"), "output");
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot open config '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& cfg) {
    json root;
    root["metric"] = to_json(cfg.metric);
    root["scene"] = to_json(cfg.scene);
    root["camera"] = json{{"position", to_json(cfg.camera.position)},
                          {"look_dir", to_json(cfg.camera.look_dir)},
                          {"up_hint", to_json(cfg.camera.up_hint)},
                          {"fov_deg", cfg.camera.fov_deg}};
    root["integrator"] =
        json{{"h", cfg.integrator.h},
             {"max_steps", cfg.integrator.max_steps},
             {"scheme", cfg.integrator.scheme == geodesics::Scheme::Euler ? "euler" : "rk4"}};
    root["output"] = json{{"path", cfg.output.path},
                          {"width", cfg.output.width},
                          {"height", cfg.output.height},
                          {"format", cfg.output.format}};
    return root.dump(2) + "\n";
}

} // namespace rray::config
