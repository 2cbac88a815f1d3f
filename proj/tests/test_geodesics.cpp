#include <doctest.h>

#include <cmath>

#include "rray/geodesics/integrate.hpp"
#include "rray/verify/verify.hpp"

using namespace rray;
using core::Vec3;
using geodesics::euler_step;
using geodesics::exponential_map;
using geodesics::geodesic_accel;
using geodesics::GeodesicState;
using geodesics::IntegratorConfig;
using geodesics::rk4_step;
using geodesics::Scheme;
using geodesics::trace_geodesic;

namespace {

const metrics::MetricField kEuclid{metrics::EuclideanMetric{}};

metrics::MetricField quadric_metric() {
    return metrics::make_graph_metric(fields::make_quadric());
}

} // namespace

TEST_CASE("geodesic_accel: Euclidean flow has zero acceleration") {
    CHECK(geodesic_accel(kEuclid, {{0.3, -1.0, 2.0}, {0.5, 0.25, -1.0}}) == Vec3{0, 0, 0});
}

TEST_CASE("geodesic_accel: quadric graph at (1,0,0) with y = (0,1,0)") {
    const Vec3 a = geodesic_accel(quadric_metric(), {{1, 0, 0}, {0, 1, 0}});
    CHECK(a.x == doctest::Approx(-0.8).epsilon(1e-15));
    CHECK(a.y == 0.0);
    CHECK(a.z == 0.0);
}

TEST_CASE("geodesic_accel: zero velocity gives zero acceleration") {
    CHECK(norm(geodesic_accel(quadric_metric(), {{1, 0, 0}, {0, 0, 0}})) == 0.0);
}

TEST_CASE("euler_step: Euclidean straight line") {
    const GeodesicState s = euler_step(kEuclid, {{0, 0, 0}, {1, 0, 0}}, 0.1);
    CHECK(s.position.x == doctest::Approx(0.1).epsilon(1e-16));
    CHECK(s.velocity == Vec3{1, 0, 0});
}

TEST_CASE("euler_step: zero velocity leaves the state unchanged") {
    const GeodesicState s0{{1, 0, 0}, {0, 0, 0}};
    const GeodesicState s = euler_step(quadric_metric(), s0, 0.1);
    CHECK(s.position == s0.position);
    CHECK(norm(s.velocity) == 0.0);
}

TEST_CASE("euler_step on the quadric example state") {
    const GeodesicState s = euler_step(quadric_metric(), {{1, 0, 0}, {0, 1, 0}}, 0.01);
    CHECK(s.position.x == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(s.position.y == doctest::Approx(0.01).epsilon(1e-15));
    CHECK(s.position.z == 0.0);
    CHECK(s.velocity.x == doctest::Approx(-0.008).epsilon(1e-14));
    CHECK(s.velocity.y == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(s.velocity.z == 0.0);
}

TEST_CASE("rk4_step: Euclidean equals Euler to machine precision") {
    const GeodesicState a = euler_step(kEuclid, {{0.2, 0.4, -0.6}, {0.3, -0.1, 0.9}}, 0.05);
    const GeodesicState b = rk4_step(kEuclid, {{0.2, 0.4, -0.6}, {0.3, -0.1, 0.9}}, 0.05);
    CHECK(norm(a.position - b.position) < 1e-15);
    CHECK(norm(a.velocity - b.velocity) < 1e-15);
}

TEST_CASE("rk4_step: one step vs two half steps agree to O(h^5)") {
    const metrics::MetricField m = quadric_metric();
    const GeodesicState s0{{1, 0, 0}, {0, 1, 0}};
    const GeodesicState one = rk4_step(m, s0, 0.01);
    const GeodesicState two = rk4_step(m, rk4_step(m, s0, 0.005), 0.005);
    CHECK(norm(one.position - two.position) < 1e-9);
}

TEST_CASE("trace_geodesic: Euclidean polyline marches in even steps") {
    IntegratorConfig cfg;
    cfg.h = 0.1;
    cfg.max_steps = 10;
    const auto line = trace_geodesic(kEuclid, {{0, 0, 0}, {1, 0, 0}}, cfg);
    REQUIRE(line.states.size() == 11);
    for (std::size_t i = 0; i < line.states.size(); ++i) {
        CHECK(line.states[i].position.x ==
              doctest::Approx(0.1 * static_cast<double>(i)).epsilon(1e-12));
        CHECK(line.states[i].position.y == 0.0);
        CHECK(line.t(i) == doctest::Approx(0.1 * static_cast<double>(i)));
    }
}

TEST_CASE("trace_geodesic stops after leaving the bounds box") {
    IntegratorConfig cfg;
    cfg.h = 0.5;
    cfg.max_steps = 100;
    core::Aabb box{{-1, -1, -1}, {1, 1, 1}};
    const auto line = trace_geodesic(kEuclid, {{0, 0, 0}, {1, 0, 0}}, cfg, box);
    REQUIRE(line.states.size() == 4); // 0, 0.5, 1.0, 1.5 (exits at 1.5)
    CHECK(line.states.back().position.x > 1.0);
}

TEST_CASE("euclidean exactness: both schemes stay on the line after 1e4 steps") {
    // Dyadic step and direction make Euler's arithmetic exact; the check
    // measures distance to the ray, which must stay at rounding level.
    const Vec3 v{1.0, 0.5, 0.25};
    const Vec3 vhat = v / norm(v);
    IntegratorConfig cfg;
    cfg.h = 1.0 / 128.0;
    cfg.max_steps = 10000;
    for (const Scheme scheme : {Scheme::Euler, Scheme::Rk4}) {
        cfg.scheme = scheme;
        const auto line = trace_geodesic(kEuclid, {{0, 0, 0}, v}, cfg);
        REQUIRE(line.states.size() == 10001);
        for (std::size_t i = 2000; i < line.states.size(); i += 2000) {
            const Vec3 p = line.states[i].position;
            const Vec3 residual = p - dot(p, vhat) * vhat;
            CHECK(norm(residual) < 1e-12);
        }
    }
}

TEST_CASE("energy conservation along the flow") {
    SUBCASE("rk4 drift below 1e-8 for all families") {
        for (const auto& [name, m] : verify::oracle_metric_families()) {
            CAPTURE(name);
            CHECK(verify::energy_drift(m, Scheme::Rk4, 1e-3, 1000) < 1e-8);
        }
    }
    SUBCASE("euler drift below 1% on the quadric at h = 1e-3") {
        CHECK(verify::energy_drift(quadric_metric(), Scheme::Euler, 1e-3, 1000) < 0.01);
    }
    SUBCASE("euler drift halves with h") {
        for (const auto& [name, m] : verify::curved_metric_families()) {
            CAPTURE(name);
            const double d1 = verify::energy_drift(m, Scheme::Euler, 2e-3, 500);
            const double d2 = verify::energy_drift(m, Scheme::Euler, 1e-3, 1000);
            const double r = d2 / d1;
            CHECK(r > 0.4);
            CHECK(r < 0.6);
        }
    }
}

TEST_CASE("euler order: endpoint error halves with h against an RK4 reference") {
    for (const auto& [name, m] : verify::curved_metric_families()) {
        CAPTURE(name);
        const auto errs = verify::euler_endpoint_errors(m, {1e-2, 5e-3, 2.5e-3}, 0.64);
        for (std::size_t i = 0; i + 1 < errs.size(); ++i) {
            const double r = errs[i] / errs[i + 1];
            CHECK(r > 1.7);
            CHECK(r < 2.3);
        }
    }
}

TEST_CASE("pullback straightness: images of geodesics are straight lines") {
    const std::vector<std::pair<std::string, fields::DiffeoExpr>> cases = {
        {"twist", fields::make_twist()},
        {"bump",
         fields::make_local_bump(0.3, {0.4, 0.0, -0.2}, {0.8, 0.9, 0.7}, {0.5, 0.3, -0.6})},
    };
    for (const auto& [name, d] : cases) {
        CAPTURE(name);
        const auto e = verify::pullback_straightness(d, {1e-2, 5e-3, 2.5e-3}, 1.0);
        for (std::size_t i = 0; i + 1 < e.euler.size(); ++i) {
            const double r = e.euler[i + 1] / e.euler[i];
            CHECK(r > 0.4);
            CHECK(r < 0.6);
        }
        CHECK(e.rk4 < 1e-8);
    }
}

TEST_CASE("exponential_map basics") {
    IntegratorConfig cfg;
    SUBCASE("zero vector returns the base point") {
        CHECK(exponential_map(kEuclid, {1, 2, 3}, {0, 0, 0}, cfg) == Vec3{1, 2, 3});
    }
    SUBCASE("Euclidean exponential is translation") {
        const Vec3 q = exponential_map(kEuclid, {1, 2, 3}, {0.5, 0, 0}, cfg);
        CHECK(norm(q - Vec3{1.5, 2, 3}) < 1e-12);
    }
    SUBCASE("diffeo pullback: endpoint maps near the Euclidean ray endpoint") {
        const auto tw = fields::make_twist();
        const auto m = metrics::make_diffeo_metric(tw);
        const Vec3 p{1, 0, 0};
        const fields::DiffeoSample s0 = eval_diffeo(tw, p);
        // v with unit g-norm: direction (0,1,0), g_yy = 1 at p, z = 0.
        const Vec3 v{0, 1, 0};
        cfg.scheme = Scheme::Rk4;
        cfg.h = 1e-3;
        const Vec3 q = exponential_map(m, p, v, cfg);
        const Vec3 want = s0.image + mul(s0.jacobian, v);
        CHECK(norm(eval_diffeo(tw, q).image - want) < 1e-8);
    }
}
