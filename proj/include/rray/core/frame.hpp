#pragma once

#include <array>

#include "rray/core/linalg.hpp"

namespace rray::core {

// Gram-Schmidt against the inner product <u,v>_g = u^T g v. Returns a
// g-orthonormal frame; throws DegenerateBasis if an intermediate vector
// collapses below 1e-12 in g-norm.
std::array<Vec3, 3> gram_schmidt_frame(const SymMat3& g, const std::array<Vec3, 3>& seed_basis);

} // namespace rray::core
