#include "rray/render/scene.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rray::render {

using core::Vec3;

namespace {

// Entry parameter of the chord a + s*(b-a), s in [0,1], into an axis-aligned
// box, or nullopt. A chord starting inside reports s = 0.
std::optional<double> chord_box_entry(const Vec3& a, const Vec3& b, const Vec3& lo,
                                      const Vec3& hi) {
    double smin = 0.0, smax = 1.0;
    for (int e = 0; e < 3; ++e) {
        const double ae = comp(a, e), be = comp(b, e);
        const double l = comp(lo, e), h = comp(hi, e);
        const double d = be - ae;
        if (d == 0.0) {
            if (ae < l || ae > h) return std::nullopt;
            continue;
        }
        double s1 = (l - ae) / d;
        double s2 = (h - ae) / d;
        if (s1 > s2) std::swap(s1, s2);
        if (s1 > smin) smin = s1;
        if (s2 < smax) smax = s2;
        if (smin > smax) return std::nullopt;
    }
    return smin;
}

std::optional<double> hit_grid(const GridPlanes& g, const Vec3& a, const Vec3& b) {
    std::optional<double> best;
    for (int d = 0; d < 3; ++d) {
        const double ad = comp(a, d), bd = comp(b, d);
        const double clo = std::min(ad, bd), chi = std::max(ad, bd);
        const long kmin = static_cast<long>(std::ceil((clo - g.half_width) / g.spacing));
        const long kmax = static_cast<long>(std::floor((chi + g.half_width) / g.spacing));
        for (long k = kmin; k <= kmax; ++k) {
            Vec3 lo = g.bounds.min, hi = g.bounds.max;
            const double plane = static_cast<double>(k) * g.spacing;
            comp(lo, d) = std::max(comp(lo, d), plane - g.half_width);
            comp(hi, d) = std::min(comp(hi, d), plane + g.half_width);
            if (comp(lo, d) > comp(hi, d)) continue;
            const auto s = chord_box_entry(a, b, lo, hi);
            if (s && (!best || *s < *best)) best = s;
        }
    }
    return best;
}

std::optional<double> hit_sphere(const Sphere& sp, const Vec3& a, const Vec3& b) {
    const Vec3 d = b - a;
    const Vec3 oc = a - sp.center;
    const double c = dot(oc, oc) - sp.radius * sp.radius;
    if (c <= 0.0) return 0.0; // chord starts inside
    const double qa = dot(d, d);
    const double qb = 2.0 * dot(oc, d);
    if (qb >= 0.0) return std::nullopt; // moving away from the center
    const double disc = qb * qb - 4.0 * qa * c;
    if (disc < 0.0) return std::nullopt;
    // Stable smaller root: product of roots is c/qa, q below is positive.
    const double q = 0.5 * (std::sqrt(disc) - qb);
    const double s = c / q;
    if (s > 1.0) return std::nullopt;
    return s;
}

std::optional<double> hit_half_space(const HalfSpace& hs, const Vec3& a, const Vec3& b) {
    const double e0 = dot(hs.normal, a) - hs.offset;
    if (e0 <= 0.0) return 0.0;
    const double de = dot(hs.normal, b - a);
    if (de >= 0.0) return std::nullopt;
    const double s = -e0 / de;
    if (s > 1.0) return std::nullopt;
    return s;
}

std::optional<double> hit_param(const Primitive& prim, const Vec3& a, const Vec3& b) {
    return std::visit(
        [&](const auto& p) -> std::optional<double> {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, GridPlanes>)
                return hit_grid(p, a, b);
            else if constexpr (std::is_same_v<P, Sphere>)
                return hit_sphere(p, a, b);
            else
                return hit_half_space(p, a, b);
        },
        prim);
}

} // namespace

std::optional<SegmentHit> intersect_segment(const Scene& scene, const Vec3& a, const Vec3& b) {
    std::optional<SegmentHit> best;
    for (std::size_t i = 0; i < scene.primitives.size(); ++i) {
        const auto s = hit_param(scene.primitives[i], a, b);
        if (s && (!best || *s < best->s)) {
            const Vec3 d = b - a;
            best = SegmentHit{a + *s * d, *s, static_cast<int>(i)};
        }
    }
    return best;
}

double surface_residual(const Primitive& prim, const Vec3& p) {
    return std::visit(
        [&](const auto& pr) -> double {
            using P = std::decay_t<decltype(pr)>;
            if constexpr (std::is_same_v<P, GridPlanes>) {
                double r = std::numeric_limits<double>::infinity();
                for (int d = 0; d < 3; ++d) {
                    const double u = comp(p, d) / pr.spacing;
                    const double dist =
                        std::fabs(comp(p, d) - std::round(u) * pr.spacing);
                    r = std::min(r, std::fabs(dist - pr.half_width));
                }
                return r;
            } else if constexpr (std::is_same_v<P, Sphere>) {
                return std::fabs(norm(p - pr.center) - pr.radius);
            } else {
                return std::fabs(dot(pr.normal, p) - pr.offset);
            }
        },
        prim);
}

} // namespace rray::render
