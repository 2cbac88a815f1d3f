#include <doctest.h>

#include <cmath>
#include <random>

#include "rray/core/frame.hpp"
#include "rray/core/linalg.hpp"

using namespace rray;
using core::Mat3;
using core::SymMat3;
using core::Vec3;

namespace {

double max_abs_diff(const SymMat3& a, const SymMat3& b) {
    double m = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            m = std::max(m, std::fabs(entry(a, i, j) - entry(b, i, j)));
    return m;
}

SymMat3 diag(double a, double b, double c) { return {a, 0.0, 0.0, b, 0.0, c}; }

} // namespace

TEST_CASE("sym_inverse: identity and diagonal") {
    CHECK(max_abs_diff(sym_inverse(SymMat3::identity()), SymMat3::identity()) == 0.0);
    CHECK(max_abs_diff(sym_inverse(diag(5.0, 1.0, 1.0)), diag(0.2, 1.0, 1.0)) < 1e-15);
}

TEST_CASE("sym_inverse: m * inv(m) = I for a generic SPD matrix") {
    // g of the twist pullback at p = (1,0,0): J^T J with J = [[1,0,0],[0,1,1],[0,0,1]].
    const SymMat3 g{1.0, 0.0, 0.0, 1.0, 1.0, 2.0};
    const SymMat3 gi = sym_inverse(g);
    // multiply back
    Mat3 prod;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            prod.m[i][j] = 0.0;
            for (int k = 0; k < 3; ++k) prod.m[i][j] += entry(g, i, k) * entry(gi, k, j);
        }
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(std::fabs(prod.m[i][j] - (i == j ? 1.0 : 0.0)) < 1e-12);
}

TEST_CASE("sym_inverse: singular input throws") {
    CHECK_THROWS_AS(sym_inverse(diag(0.0, 1.0, 1.0)), SingularMatrix);
    CHECK_THROWS_AS(sym_inverse(SymMat3::zero()), SingularMatrix);
}

TEST_CASE("sym_inverse: double inversion is the identity operation") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int n = 0; n < 200; ++n) {
        Mat3 a;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) a.m[i][j] = u(rng);
        SymMat3 m = gram(a);
        m.xx += 0.1;
        m.yy += 0.1;
        m.zz += 0.1;
        CHECK(max_abs_diff(sym_inverse(sym_inverse(m)), m) < 1e-9);
    }
}

TEST_CASE("gram_schmidt_frame: Euclidean standard basis is fixed") {
    const std::array<Vec3, 3> seed{Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}};
    const auto e = core::gram_schmidt_frame(SymMat3::identity(), seed);
    for (int i = 0; i < 3; ++i) {
        CHECK(comp(e[i], i) == 1.0);
        CHECK(comp(e[i], (i + 1) % 3) == 0.0);
        CHECK(comp(e[i], (i + 2) % 3) == 0.0);
    }
}

TEST_CASE("gram_schmidt_frame: diagonal metric rescales") {
    const std::array<Vec3, 3> seed{Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}};
    const auto e = core::gram_schmidt_frame(diag(4.0, 1.0, 1.0), seed);
    CHECK(e[0].x == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(e[1].y == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(e[2].z == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("gram_schmidt_frame: g-orthonormal for random SPD metrics and seeds") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int n = 0; n < 100; ++n) {
        Mat3 a;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) a.m[i][j] = u(rng);
        SymMat3 g = gram(a);
        g.xx += 0.1;
        g.yy += 0.1;
        g.zz += 0.1;

        std::array<Vec3, 3> seed;
        do {
            for (auto& v : seed) v = {u(rng), u(rng), u(rng)};
        } while (std::fabs(dot(cross(seed[0], seed[1]), seed[2])) < 1e-3);

        const auto e = core::gram_schmidt_frame(g, seed);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                const double want = i == j ? 1.0 : 0.0;
                CHECK(std::fabs(quad_form(g, e[i], e[j]) - want) < 1e-10);
            }
    }
}

TEST_CASE("gram_schmidt_frame: dependent seeds throw DegenerateBasis") {
    const std::array<Vec3, 3> seed{Vec3{1, 0, 0}, Vec3{2, 0, 0}, Vec3{0, 0, 1}};
    CHECK_THROWS_AS(core::gram_schmidt_frame(SymMat3::identity(), seed), DegenerateBasis);
}
