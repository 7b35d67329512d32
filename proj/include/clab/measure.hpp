#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "clab/check_report.hpp"
#include "clab/geom.hpp"

namespace clab {

/**
 * Log-concave measure dmu(x) = exp(-u(x)) dx on the plane, represented by a
 * C^2 convex potential with analytic gradient and Hessian. Derivatives are
 * always analytic per family; finite differences appear only in validation.
 *
 * Immutable after construction, safe for concurrent evaluation.
 */
struct MeasureModel {
    std::string kind;               // gaussian | quadratic | radial | evenpower | custom
    std::vector<double> params;
    bool even = true;

    std::function<double(Vec2)> u;
    std::function<Vec2(Vec2)> grad_u;
    std::function<Sym2(Vec2)> hess_u;

    std::string descriptor() const;
};

/** Standard Gaussian-type potential u(x) = |x|^2 / (2 sigma^2). */
MeasureModel make_gaussian(double sigma);

/** Anisotropic Gaussian u(x) = <Ax, x>/2 with A symmetric positive definite. */
MeasureModel make_quadratic(const Sym2& A);

/**
 * Rotationally invariant family u(x) = g(|x|^2/2), g(t) = sum_k c_k t^k.
 * Requires c_1 > 0 (Hessian would degenerate at the origin otherwise) and
 * c_k >= 0 for all k.
 */
MeasureModel make_radial(const std::vector<double>& g_coeffs);

/**
 * Even-power family u(x) = eps |x|^2/2 + (|x_1|^p + |x_2|^p)/p.
 * The eps > 0 regularization is required: without it the Hessian is
 * singular on the coordinate axes. Requires p >= 2 for C^2 smoothness.
 */
MeasureModel make_even_power(double epsilon, double p);

/**
 * Samples seeded random points in the disk of radius 5 and reports the
 * evenness defect, the smallest Hessian eigenvalue, and the agreement of the
 * analytic derivatives with central finite differences.
 */
CheckReport validate_measure(const MeasureModel& m, int sample_count, std::uint64_t seed);

} // namespace clab
