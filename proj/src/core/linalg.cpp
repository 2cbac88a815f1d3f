#include "rray/core/linalg.hpp"

#include <cmath>
#include <string>

#include "rray/core/frame.hpp"

namespace rray::core {

SymMat3 sym_inverse(const SymMat3& m) {
    const double d = det(m);
    if (std::fabs(d) <= kSingularDetEps)
        throw SingularMatrix("sym_inverse: |det| = " + std::to_string(std::fabs(d)) +
                             " <= 1e-14");
    return sym_inverse_unchecked(m, d);
}

std::array<Vec3, 3> gram_schmidt_frame(const SymMat3& g,
                                       const std::array<Vec3, 3>& seed_basis) {
    constexpr double kMinNorm = 1e-12;
    std::array<Vec3, 3> e{};
    for (int i = 0; i < 3; ++i) {
        Vec3 v = seed_basis[i];
        for (int j = 0; j < i; ++j) {
            const double c = quad_form(g, v, e[j]);
            v = v - c * e[j];
        }
        const double n = std::sqrt(quad_form(g, v, v));
        if (!(n >= kMinNorm))
            throw DegenerateBasis("gram_schmidt_frame: intermediate norm " +
                                  std::to_string(n) + " below 1e-12 at vector " +
                                  std::to_string(i));
        e[i] = v / n;
    }
    return e;
}

} // namespace rray::core
