#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "rray/config/config.hpp"
#include "rray/render/image.hpp"

// End-to-end checks of the installed subcommands, run against the built
// binary. Everything writes into a scratch directory under the build tree.

namespace fs = std::filesystem;
using namespace rray;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    const fs::path dir = fs::temp_directory_path() / "rray_cli_test";
    fs::create_directories(dir);
    const fs::path log = dir / "out.log";
    const std::string cmd = std::string(RRAY_BIN) + " " + args + " > " + log.string() + " 2>&1";
    const int raw = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    std::ifstream f(log);
    std::ostringstream ss;
    ss << f.rdbuf();
    r.out = ss.str();
    return r;
}

fs::path scratch() {
    const fs::path dir = fs::temp_directory_path() / "rray_cli_test";
    fs::create_directories(dir);
    return dir;
}

fs::path write_config(const std::string& name, const std::string& text) {
    const fs::path p = scratch() / name;
    std::ofstream f(p);
    f << text;
    return p;
}

std::vector<std::vector<double>> read_csv(const fs::path& p) {
    std::ifstream f(p);
    REQUIRE(f.good());
    std::string line;
    std::getline(f, line);
    REQUIRE(line == "t,x,y,z,vx,vy,vz");
    std::vector<std::vector<double>> rows;
    while (std::getline(f, line)) {
        std::vector<double> row;
        std::istringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        REQUIRE(row.size() == 7);
        rows.push_back(row);
    }
    return rows;
}

const char* kTinyEuclid = R"({
  "metric": {"kind": "euclidean"},
  "integrator": {"h": 0.01, "max_steps": 400},
  "output": {"width": 48, "height": 36}
})";

} // namespace

TEST_CASE("render subcommand writes the image and a sidecar report") {
    const fs::path cfg = write_config("tiny.json", kTinyEuclid);
    const fs::path img = scratch() / "tiny.ppm";
    const auto r = run("render " + cfg.string() + " -o " + img.string());
    CHECK(r.code == 0);

    const render::Image ppm = render::read_ppm(img.string());
    CHECK(ppm.width == 48);
    CHECK(ppm.height == 36);

    std::ifstream rep(scratch() / "tiny.report.txt");
    REQUIRE(rep.good());
    std::ostringstream ss;
    ss << rep.rdbuf();
    CHECK(ss.str().find("pixel_errors: 0") != std::string::npos);
    CHECK(ss.str().find("\"kind\": \"euclidean\"") != std::string::npos);
}

TEST_CASE("render against the committed Euclidean golden") {
    const std::string cfg = std::string(RRAY_SOURCE_DIR) + "/configs/grid_euclid.json";
    const fs::path img = scratch() / "grid_euclid.ppm";
    const auto r = run("render " + cfg + " -o " + img.string());
    CHECK(r.code == 0);

    const std::string golden = std::string(RRAY_SOURCE_DIR) + "/tests/golden/grid_euclid_256.ppm";
    if (fs::exists(golden)) {
        CHECK(render::read_ppm(img.string()) == render::read_ppm(golden));
    } else {
        MESSAGE("golden not generated yet; run make_goldens");
        CHECK(false);
    }
}

TEST_CASE("size and h overrides plus --print-config") {
    const fs::path cfg = write_config("tiny.json", kTinyEuclid);
    const auto r = run("render " + cfg.string() + " --size 64x32 --h 0.02 --print-config");
    CHECK(r.code == 0);
    const config::RunConfig parsed = config::parse_config(r.out);
    CHECK(parsed.output.width == 64);
    CHECK(parsed.output.height == 32);
    CHECK(parsed.integrator.h == 0.02);
}

TEST_CASE("geodesic export: Euclidean straight line") {
    const fs::path cfg = write_config("tiny.json", kTinyEuclid);
    const fs::path csv = scratch() / "line.csv";
    const auto r =
        run("geodesic " + cfg.string() + " --start 0,0,0 --dir 1,0,0 -o " + csv.string());
    CHECK(r.code == 0);
    const auto rows = read_csv(csv);
    REQUIRE(rows.size() == 401);
    for (std::size_t i = 0; i < rows.size(); i += 50) {
        CHECK(rows[i][0] == doctest::Approx(0.01 * static_cast<double>(i)));
        CHECK(rows[i][1] == doctest::Approx(0.01 * static_cast<double>(i)).epsilon(1e-9));
        CHECK(rows[i][4] == 1.0);
        CHECK(rows[i][5] == 0.0);
    }
}

TEST_CASE("geodesic export: twist rows are collinear through the twist map") {
    const std::string cfg = std::string(RRAY_SOURCE_DIR) + "/configs/twist.json";
    const fs::path csv = scratch() / "twist.csv";
    const auto r = run("geodesic " + cfg + " --start 1,0,0 --dir 0,1,0.2 -o " + csv.string());
    CHECK(r.code == 0);
    const auto rows = read_csv(csv);
    REQUIRE(rows.size() > 100);

    // Pullback oracle applied to the file contents: the twist images of the
    // positions must lie near the line q0 + t*w traced to first order.
    auto twist = [](double x, double y, double z) {
        return core::Vec3{x * std::cos(z) - y * std::sin(z), x * std::sin(z) + y * std::cos(z),
                          z};
    };
    const core::Vec3 q0 = twist(rows[0][1], rows[0][2], rows[0][3]);
    const core::Vec3 q1 = twist(rows[1][1], rows[1][2], rows[1][3]);
    core::Vec3 w = q1 - q0;
    w = w / norm(w);
    double worst = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const core::Vec3 q = twist(rows[i][1], rows[i][2], rows[i][3]) - q0;
        const core::Vec3 res = q - dot(q, w) * w;
        worst = std::max(worst, norm(res));
    }
    CHECK(worst < 0.05); // Euler at h = 1e-2 over a ray of length <= 20
}

TEST_CASE("geodesic export: zero direction writes a single row and warns") {
    const fs::path cfg = write_config("tiny.json", kTinyEuclid);
    const fs::path csv = scratch() / "zero.csv";
    const auto r =
        run("geodesic " + cfg.string() + " --start 1,2,3 --dir 0,0,0 -o " + csv.string());
    CHECK(r.code == 0);
    CHECK(r.out.find("warning") != std::string::npos);
    const auto rows = read_csv(csv);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0][1] == 1.0);
    CHECK(rows[0][3] == 3.0);
}

TEST_CASE("exit codes: 1 for config errors, 3 for IO errors") {
    const fs::path bad = write_config("bad.json", R"({"metric": {"kind": "nope"}})");
    CHECK(run("render " + bad.string()).code == 1);

    const fs::path malformed = write_config("malformed.json", "{");
    CHECK(run("render " + malformed.string()).code == 1);

    CHECK(run("render /nonexistent/config.json").code == 3);

    const fs::path cfg = write_config("tiny.json", kTinyEuclid);
    CHECK(run("render " + cfg.string() + " -o /nonexistent/dir/out.ppm").code == 3);
}

TEST_CASE("verify subcommand passes deterministically with seed 42") {
    const auto r = run("verify --seed 42");
    CHECK(r.code == 0);
    CHECK(r.out.find("[FAIL]") == std::string::npos);
    CHECK(r.out.find("suites passed") != std::string::npos);
}
