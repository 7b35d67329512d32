#pragma once

#include <functional>
#include <span>
#include <vector>

#include "clab/body.hpp"
#include "clab/measure.hpp"

namespace clab {

/**
 * Resolution of the fixed quadrature rule: trapezoid over the Gauss angle
 * (M nodes, spectrally accurate for smooth periodic data) and Gauss-Legendre
 * over the radial chart parameter s in [0,1] (S nodes).
 */
struct QuadratureSpec {
    int M = 256;
    int S = 128;
};

/** Throws unless M is even, M >= 16 and S >= 16. */
void validate(const QuadratureSpec& spec);

struct GaussLegendre {
    std::vector<double> nodes;    // on [0, 1]
    std::vector<double> weights;
};

/** Gauss-Legendre rule on [0,1], cached per S. */
const GaussLegendre& gauss_legendre(int S);

/**
 * Integral of f against dmu = exp(-u) dx over K, via the star-shaped chart
 * (s, theta) -> s x(theta) whose area element is s h(theta) r(theta) ds dtheta.
 */
double interior_integral(const MeasureModel& m, const Body2D& K,
                         const std::function<double(Vec2)>& f, const QuadratureSpec& spec);

/** Same chart with the measure weight overridden to 1 (quadrature self-tests). */
double interior_integral_lebesgue(const Body2D& K, const std::function<double(Vec2)>& f,
                                  const QuadratureSpec& spec);

/** Weighted boundary integral sum_j g_j w_j over a prepared frame. */
double boundary_integral(const BoundaryFrame& f, std::span<const double> g);
double boundary_integral(const BoundaryFrame& f,
                         const std::function<double(std::size_t, const BoundaryFrame&)>& g);

/**
 * The moment integrals used throughout the checks:
 *   mu_K = mu(K), m1 = int <grad u, x> dmu, m2 = int <grad u, x>^2 dmu,
 *   q = int <(hess u) x, x> dmu over K, and bh = int h dmu, bp = int 1 dmu
 * over the boundary.
 */
struct MomentSet {
    double mu_K = 0.0;
    double m1 = 0.0;
    double m2 = 0.0;
    double q = 0.0;
    double bh = 0.0;
    double bp = 0.0;
};

MomentSet moments(const MeasureModel& m, const Body2D& K, const QuadratureSpec& spec);

} // namespace clab
