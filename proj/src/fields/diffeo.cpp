#include "rray/fields/diffeo.hpp"

#include <cmath>
#include <string>

namespace rray::fields {

DiffeoSample eval_diffeo(const DiffeoExpr& e, const core::Vec3& p) {
    DiffeoEvalT<double> r = eval_diffeo_raw(e, p);
    if (!(r.validity > core::kSingularDetEps))
        throw SingularJacobian("eval_diffeo: |det J| = " + std::to_string(r.validity) +
                               " <= 1e-14 at (" + std::to_string(p.x) + ", " +
                               std::to_string(p.y) + ", " + std::to_string(p.z) + ")");
    return r.sample;
}

DiffeoSample compose_diffeo_sample(const DiffeoSample& outer, const DiffeoSample& inner) {
    DiffeoSample r = compose_diffeo_samples(outer, inner);
    const double d = std::fabs(det(r.jacobian));
    if (!(d > core::kSingularDetEps))
        throw SingularJacobian("compose_diffeo_sample: |det(J_outer J_inner)| = " +
                               std::to_string(d) + " <= 1e-14");
    return r;
}

} // namespace rray::fields
