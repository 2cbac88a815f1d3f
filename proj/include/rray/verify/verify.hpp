#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rray/fields/diffeo.hpp"
#include "rray/fields/scalar_field.hpp"
#include "rray/geodesics/integrate.hpp"
#include "rray/metrics/metric.hpp"

// Measured correctness probes. Each function returns the measured error so
// callers (the `verify` subcommand, the unit suites, the acceptance gate)
// apply their own thresholds.

namespace rray::verify {

// Deterministic points in [-2, 2]^3.
std::vector<core::Vec3> sample_points(std::uint64_t seed, int count);

// max |inv(inv(m)) - m| over random SPD matrices built as A^T A + 0.1 I.
double sym_inverse_roundtrip_err(std::uint64_t seed, int count);

struct DerivErr {
    double first = 0.0;  // gradient / Jacobian vs central differences
    double second = 0.0; // Hessian / second-derivative tensor
};

DerivErr scalar_field_fd_err(const fields::ScalarFieldExpr& f, std::uint64_t seed, int count);
DerivErr diffeo_fd_err(const fields::DiffeoExpr& e, std::uint64_t seed, int count);

// max |det J(Twist) - 1|.
double twist_volume_err(std::uint64_t seed, int count);

// max componentwise |analytic Gamma - FD-oracle Gamma|.
double christoffel_oracle_err(const metrics::MetricField& m, std::uint64_t seed, int count);

// max |det g - (1 + |grad f|^2)|.
double graph_det_identity_err(const fields::ScalarFieldExpr& f, std::uint64_t seed, int count);

// max relative |det g - (det J)^2|.
double diffeo_det_identity_err(const fields::DiffeoExpr& e, std::uint64_t seed, int count);

// The six designed metric configurations exercised by the oracle suites.
const std::vector<std::pair<std::string, metrics::MetricField>>& oracle_metric_families();

// Curved families only (graph + diffeo); integrator order checks are
// degenerate on the Euclidean metric, where both schemes are exact.
const std::vector<std::pair<std::string, metrics::MetricField>>& curved_metric_families();

// Endpoint error of Euler at each h against an RK4 reference at h/64,
// integrating to total parameter `T` from a canonical start.
std::vector<double> euler_endpoint_errors(const metrics::MetricField& m,
                                          const std::vector<double>& hs, double T);

// max relative drift of g(gamma', gamma') along a unit-parameter trace.
double energy_drift(const metrics::MetricField& m, geodesics::Scheme scheme, double h,
                    int steps);

struct StraightnessErr {
    std::vector<double> euler; // max deviation from the exact line, per h
    double rk4 = 0.0;          // same at h = 1e-2
};

// Deviation of Phi(trace) from the exact Euclidean ray for a pullback
// metric; the strongest end-to-end oracle available.
StraightnessErr pullback_straightness(const fields::DiffeoExpr& e,
                                      const std::vector<double>& hs, double T);

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Property suites behind `rray verify`; deterministic for a fixed seed.
std::vector<CheckResult> run_all_checks(std::uint64_t seed);

} // namespace rray::verify
