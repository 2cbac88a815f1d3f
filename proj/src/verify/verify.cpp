#include "rray/verify/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "rray/verify/fd.hpp"

namespace rray::verify {

using core::Mat3;
using core::SymMat3;
using core::Tensor3;
using core::Vec3;

std::vector<Vec3> sample_points(std::uint64_t seed, int count) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::vector<Vec3> pts(static_cast<std::size_t>(count));
    for (auto& p : pts) p = {u(rng), u(rng), u(rng)};
    return pts;
}

namespace {

double max_abs_diff(const SymMat3& a, const SymMat3& b) {
    double m = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            m = std::max(m, std::fabs(entry(a, i, j) - entry(b, i, j)));
    return m;
}

double max_abs_diff(const Mat3& a, const Mat3& b) {
    double m = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m = std::max(m, std::fabs(a.m[i][j] - b.m[i][j]));
    return m;
}

double max_abs_diff(const Tensor3& a, const Tensor3& b) {
    double m = 0.0;
    for (int s = 0; s < 3; ++s) m = std::max(m, max_abs_diff(a.s[s], b.s[s]));
    return m;
}

// Shared designed fields; amplitudes keep every bump Jacobian comfortably
// away from singular over [-2, 2]^3.
fields::ScalarFieldExpr test_gaussian() {
    return fields::make_gaussian(1.0, {0.3, -0.2, 0.1}, {0.8, 0.7, 0.9});
}

fields::ScalarFieldExpr test_two_gaussians() {
    return fields::make_sum({fields::make_gaussian(0.8, {-0.6, 0.4, 0.0}, {0.7, 0.9, 0.8}),
                             fields::make_gaussian(-0.5, {0.5, -0.3, 0.6}, {1.1, 0.6, 0.7})});
}

fields::DiffeoExpr bump_a() {
    return fields::make_local_bump(0.3, {0.4, 0.0, -0.2}, {0.8, 0.9, 0.7}, {0.5, 0.3, -0.6});
}

fields::DiffeoExpr bump_b() {
    return fields::make_local_bump(-0.25, {-0.3, 0.2, 0.3}, {0.9, 0.7, 0.8}, {-0.4, 0.6, 0.3});
}

fields::DiffeoExpr bump_c() {
    return fields::make_local_bump(0.2, {0.0, -0.4, 0.1}, {0.75, 0.85, 0.95}, {0.3, 0.5, 0.4});
}

fields::DiffeoExpr test_affine() {
    fields::AffineMap a;
    const double m[3][3] = {{1.1, 0.2, -0.1}, {0.0, 0.9, 0.3}, {-0.2, 0.1, 1.2}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) a.matrix.m[i][j] = m[i][j];
    a.offset = {0.4, -0.7, 0.2};
    return fields::DiffeoExpr(a);
}

const Vec3 kStart{0.4, -0.2, 0.3};
const Vec3 kStartDir{1.0, 0.6, 0.45};

geodesics::GeodesicState unit_speed_start(const metrics::MetricField& m) {
    const SymMat3 g = metrics::sample_metric(m, kStart).g;
    const double n = std::sqrt(quad_form(g, kStartDir, kStartDir));
    return {kStart, kStartDir / n};
}

} // namespace

double sym_inverse_roundtrip_err(std::uint64_t seed, int count) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0.0;
    for (int n = 0; n < count; ++n) {
        Mat3 a;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) a.m[i][j] = u(rng);
        SymMat3 m = gram(a);
        m.xx += 0.1;
        m.yy += 0.1;
        m.zz += 0.1;
        worst = std::max(worst, max_abs_diff(sym_inverse(sym_inverse(m)), m));
    }
    return worst;
}

DerivErr scalar_field_fd_err(const fields::ScalarFieldExpr& f, std::uint64_t seed, int count) {
    DerivErr err;
    auto value = [&](const Vec3& q) { return eval_scalar(f, q).value; };
    for (const Vec3& p : sample_points(seed, count)) {
        const fields::ScalarSample s = eval_scalar(f, p);
        const Vec3 gfd = fd_gradient(value, p);
        err.first = std::max({err.first, std::fabs(s.gradient.x - gfd.x),
                              std::fabs(s.gradient.y - gfd.y), std::fabs(s.gradient.z - gfd.z)});
        err.second = std::max(err.second, max_abs_diff(s.hessian, fd_hessian(value, p)));
    }
    return err;
}

DerivErr diffeo_fd_err(const fields::DiffeoExpr& e, std::uint64_t seed, int count) {
    DerivErr err;
    auto image = [&](const Vec3& q) { return eval_diffeo_raw(e, q).sample.image; };
    for (const Vec3& p : sample_points(seed, count)) {
        const fields::DiffeoSample s = eval_diffeo(e, p);
        err.first = std::max(err.first, max_abs_diff(s.jacobian, fd_jacobian(image, p)));
        err.second =
            std::max(err.second, max_abs_diff(s.second_deriv, fd_second_deriv(image, p)));
    }
    return err;
}

double twist_volume_err(std::uint64_t seed, int count) {
    const fields::DiffeoExpr twist = fields::make_twist();
    double worst = 0.0;
    for (const Vec3& p : sample_points(seed, count))
        worst = std::max(worst, std::fabs(det(eval_diffeo(twist, p).jacobian) - 1.0));
    return worst;
}

double christoffel_oracle_err(const metrics::MetricField& m, std::uint64_t seed, int count) {
    double worst = 0.0;
    for (const Vec3& p : sample_points(seed, count)) {
        const Tensor3 analytic = metrics::christoffel_eval(m, p).gamma;
        const Tensor3 fd = metrics::christoffel_fd(m, p);
        worst = std::max(worst, max_abs_diff(analytic, fd));
    }
    return worst;
}

double graph_det_identity_err(const fields::ScalarFieldExpr& f, std::uint64_t seed, int count) {
    double worst = 0.0;
    for (const Vec3& p : sample_points(seed, count)) {
        const SymMat3 g = metrics::graph_metric(f, p);
        const Vec3 grad = eval_scalar(f, p).gradient;
        worst = std::max(worst, std::fabs(det(g) - (1.0 + dot(grad, grad))));
    }
    return worst;
}

double diffeo_det_identity_err(const fields::DiffeoExpr& e, std::uint64_t seed, int count) {
    double worst = 0.0;
    for (const Vec3& p : sample_points(seed, count)) {
        const fields::DiffeoSample s = eval_diffeo(e, p);
        const double dj = det(s.jacobian);
        const double dg = det(gram(s.jacobian));
        worst = std::max(worst, std::fabs(dg - dj * dj) / std::max(1.0, std::fabs(dj * dj)));
    }
    return worst;
}

const std::vector<std::pair<std::string, metrics::MetricField>>& oracle_metric_families() {
    static const std::vector<std::pair<std::string, metrics::MetricField>> fams = {
        {"graph-quadric", metrics::make_graph_metric(fields::make_quadric())},
        {"graph-gaussian", metrics::make_graph_metric(test_gaussian())},
        {"graph-two-gaussians", metrics::make_graph_metric(test_two_gaussians())},
        {"diffeo-twist", metrics::make_diffeo_metric(fields::make_twist())},
        {"diffeo-bump", metrics::make_diffeo_metric(bump_a())},
        {"diffeo-compose-bumps",
         metrics::make_diffeo_metric(fields::make_compose({bump_a(), bump_b()}))},
    };
    return fams;
}

const std::vector<std::pair<std::string, metrics::MetricField>>& curved_metric_families() {
    static const std::vector<std::pair<std::string, metrics::MetricField>> fams = {
        {"graph-quadric", metrics::make_graph_metric(fields::make_quadric())},
        {"graph-gaussian", metrics::make_graph_metric(test_gaussian())},
        {"diffeo-twist", metrics::make_diffeo_metric(fields::make_twist())},
        {"diffeo-bump", metrics::make_diffeo_metric(bump_a())},
    };
    return fams;
}

std::vector<double> euler_endpoint_errors(const metrics::MetricField& m,
                                          const std::vector<double>& hs, double T) {
    const geodesics::GeodesicState start = unit_speed_start(m);
    std::vector<double> errs;
    for (const double h : hs) {
        const int steps = static_cast<int>(std::lround(T / h));

        geodesics::GeodesicState se = start;
        for (int i = 0; i < steps; ++i) se = euler_step(m, se, h);

        geodesics::GeodesicState sr = start;
        const double href = h / 64.0;
        for (int i = 0; i < steps * 64; ++i) sr = rk4_step(m, sr, href);

        errs.push_back(norm(se.position - sr.position));
    }
    return errs;
}

double energy_drift(const metrics::MetricField& m, geodesics::Scheme scheme, double h,
                    int steps) {
    geodesics::GeodesicState s = unit_speed_start(m);
    auto energy = [&](const geodesics::GeodesicState& st) {
        const SymMat3 g = metrics::metric_tensor_eval(m, st.position).g;
        return quad_form(g, st.velocity, st.velocity);
    };
    const double e0 = energy(s);
    double worst = 0.0;
    geodesics::IntegratorConfig cfg;
    cfg.h = h;
    cfg.scheme = scheme;
    for (int i = 0; i < steps; ++i) {
        s = scheme == geodesics::Scheme::Euler ? euler_step(m, s, h) : rk4_step(m, s, h);
        worst = std::max(worst, std::fabs(energy(s) - e0) / e0);
    }
    return worst;
}

StraightnessErr pullback_straightness(const fields::DiffeoExpr& e,
                                      const std::vector<double>& hs, double T) {
    const metrics::MetricField m = metrics::make_diffeo_metric(e);
    const geodesics::GeodesicState start = unit_speed_start(m);
    const fields::DiffeoSample s0 = eval_diffeo(e, start.position);
    const Vec3 q0 = s0.image;
    const Vec3 w = mul(s0.jacobian, start.velocity); // Euclidean-unit by isometry

    auto deviation = [&](geodesics::Scheme scheme, double h) {
        const int steps = static_cast<int>(std::lround(T / h));
        geodesics::IntegratorConfig cfg;
        cfg.h = h;
        cfg.max_steps = steps;
        cfg.scheme = scheme;
        const geodesics::Polyline line = trace_geodesic(m, start, cfg);
        double worst = 0.0;
        for (std::size_t i = 0; i < line.states.size(); ++i) {
            const Vec3 img = eval_diffeo_raw(e, line.states[i].position).sample.image;
            const Vec3 exact = q0 + line.t(i) * w;
            worst = std::max(worst, norm(img - exact));
        }
        return worst;
    };

    StraightnessErr out;
    for (const double h : hs) out.euler.push_back(deviation(geodesics::Scheme::Euler, h));
    out.rk4 = deviation(geodesics::Scheme::Rk4, 1e-2);
    return out;
}

namespace {

std::string fmt(double x) {
    std::ostringstream ss;
    ss.precision(3);
    ss << std::scientific << x;
    return ss.str();
}

} // namespace

std::vector<CheckResult> run_all_checks(std::uint64_t seed) {
    std::vector<CheckResult> out;
    auto add = [&](std::string name, bool pass, std::string detail) {
        out.push_back({std::move(name), pass, std::move(detail)});
    };

    {
        const double err = sym_inverse_roundtrip_err(seed, 200);
        add("core/sym-inverse-roundtrip", err < 1e-9, "max err " + fmt(err) + " (tol 1e-9)");
    }

    {
        const std::vector<std::pair<std::string, fields::ScalarFieldExpr>> cases = {
            {"gaussian", test_gaussian()},
            {"quadric", fields::make_quadric()},
            {"two-gaussians", test_two_gaussians()},
        };
        for (const auto& [name, f] : cases) {
            const DerivErr e = scalar_field_fd_err(f, seed, 100);
            add("fields/derivatives/" + name, e.first < 1e-5 && e.second < 1e-4,
                "grad " + fmt(e.first) + " hess " + fmt(e.second) + " (tol 1e-5 / 1e-4)");
        }
        const std::vector<std::pair<std::string, fields::DiffeoExpr>> dcases = {
            {"identity", fields::DiffeoExpr()},
            {"affine", test_affine()},
            {"twist", fields::make_twist()},
            {"local-bump", bump_a()},
            {"compose-2", fields::make_compose({bump_a(), bump_b()})},
            {"compose-3", fields::make_compose({bump_a(), bump_b(), bump_c()})},
        };
        for (const auto& [name, d] : dcases) {
            const DerivErr e = diffeo_fd_err(d, seed, 100);
            add("fields/derivatives/" + name, e.first < 1e-5 && e.second < 1e-4,
                "jac " + fmt(e.first) + " second " + fmt(e.second) + " (tol 1e-5 / 1e-4)");
        }
    }

    {
        const double err = twist_volume_err(seed, 100);
        add("fields/twist-volume", err < 1e-12, "max |det J - 1| " + fmt(err) + " (tol 1e-12)");
    }

    for (const auto& [name, m] : oracle_metric_families()) {
        const double err = christoffel_oracle_err(m, seed, 100);
        add("metrics/christoffel-oracle/" + name, err < 1e-5,
            "max err " + fmt(err) + " (tol 1e-5)");
    }

    {
        const std::vector<std::pair<std::string, fields::ScalarFieldExpr>> gs = {
            {"quadric", fields::make_quadric()},
            {"gaussian", test_gaussian()},
            {"two-gaussians", test_two_gaussians()},
        };
        for (const auto& [name, f] : gs) {
            const double err = graph_det_identity_err(f, seed, 100);
            add("metrics/graph-det-identity/" + name, err < 1e-10,
                "max err " + fmt(err) + " (tol 1e-10)");
        }
        const std::vector<std::pair<std::string, fields::DiffeoExpr>> ds = {
            {"twist", fields::make_twist()},
            {"local-bump", bump_a()},
            {"compose-2", fields::make_compose({bump_a(), bump_b()})},
        };
        for (const auto& [name, d] : ds) {
            const double err = diffeo_det_identity_err(d, seed, 100);
            add("metrics/diffeo-det-identity/" + name, err < 1e-10,
                "max rel err " + fmt(err) + " (tol 1e-10)");
        }
    }

    for (const auto& [name, m] : curved_metric_families()) {
        const std::vector<double> errs =
            euler_endpoint_errors(m, {1e-2, 5e-3, 2.5e-3}, 0.64);
        bool pass = true;
        std::string detail = "ratios";
        for (std::size_t i = 0; i + 1 < errs.size(); ++i) {
            const double r = errs[i] / errs[i + 1];
            pass = pass && r > 1.7 && r < 2.3;
            detail += " " + fmt(r);
        }
        add("geodesics/euler-order/" + name, pass, detail + " (expect ~2)");
    }

    {
        bool pass = true;
        std::string detail;
        for (const auto& [name, m] : oracle_metric_families()) {
            const double d = energy_drift(m, geodesics::Scheme::Rk4, 1e-3, 1000);
            pass = pass && d < 1e-8;
            detail += name + " " + fmt(d) + "  ";
        }
        add("geodesics/energy-rk4", pass, detail + "(tol 1e-8)");

        pass = true;
        detail = "";
        for (const auto& [name, m] : curved_metric_families()) {
            const double d1 = energy_drift(m, geodesics::Scheme::Euler, 2e-3, 500);
            const double d2 = energy_drift(m, geodesics::Scheme::Euler, 1e-3, 1000);
            const double r = d2 / d1;
            pass = pass && r > 0.4 && r < 0.6;
            detail += name + " " + fmt(r) + "  ";
        }
        add("geodesics/energy-euler-halving", pass, detail + "(expect ~0.5)");
    }

    {
        const std::vector<std::pair<std::string, fields::DiffeoExpr>> ds = {
            {"twist", fields::make_twist()},
            {"local-bump", bump_a()},
            {"compose-2", fields::make_compose({bump_a(), bump_b()})},
        };
        for (const auto& [name, d] : ds) {
            const StraightnessErr e = pullback_straightness(d, {1e-2, 5e-3, 2.5e-3}, 1.0);
            bool pass = e.rk4 < 1e-8;
            std::string detail = "euler ratios";
            for (std::size_t i = 0; i + 1 < e.euler.size(); ++i) {
                const double r = e.euler[i + 1] / e.euler[i];
                pass = pass && r > 0.4 && r < 0.6;
                detail += " " + fmt(r);
            }
            add("geodesics/pullback-straightness/" + name, pass,
                detail + ", rk4 " + fmt(e.rk4) + " (tol 1e-8)");
        }
    }

    return out;
}

} // namespace rray::verify
