#pragma once

#include <span>
#include <string>
#include <vector>

#include "clab/geom.hpp"
#include "clab/measure.hpp"

namespace clab {

struct Harmonic {
    int k = 1;
    double a = 0.0;
    double b = 0.0;
};

/**
 * Truncated trigonometric series f(theta) = a0 + sum_k a_k cos k theta
 * + b_k sin k theta. Used both for support functions and for boundary
 * perturbations on the Gauss angle.
 */
struct TrigSeries {
    double a0 = 0.0;
    std::vector<Harmonic> harmonics;   // strictly increasing k >= 1

    int max_order() const;

    double eval(double theta) const;
    double eval_d(double theta) const;
    double eval_dd(double theta) const;

    /**
     * Series and its first two derivatives on the uniform grid
     * theta_j = 2 pi j / M. Output spans must have size M.
     */
    void eval_grid(int M, std::span<double> val, std::span<double> dval,
                   std::span<double> ddval) const;

    TrigSeries scaled(double s) const;

    /** ca * A + cb * B with harmonic lists merged by order. */
    static TrigSeries combine(const TrigSeries& A, double ca, const TrigSeries& B, double cb);
};

/**
 * Planar convex body of class C2+ given by its support function in the
 * Gauss-angle parametrization. Constructed only through the factory
 * functions below, which enforce h > 0 and curvature radius r = h + h'' > 0
 * on an oversampled grid. Immutable.
 */
class Body2D {
public:
    Body2D() = default;

    const TrigSeries& support_series() const { return h_; }
    bool symmetric() const { return symmetric_; }
    int max_order() const { return h_.max_order(); }
    double min_curvature_radius() const { return min_r_; }

    double support(double theta) const { return h_.eval(theta); }
    double curvature_radius(double theta) const { return h_.eval(theta) + h_.eval_dd(theta); }

    std::string descriptor() const;

    /** Validates and builds; throws std::invalid_argument naming the failure. */
    static Body2D validated(TrigSeries h, bool symmetric);

private:
    TrigSeries h_;
    bool symmetric_ = false;
    double min_r_ = 0.0;
};

Body2D make_disk(double R);

/**
 * Projection of the ellipse support function sqrt(a^2 cos^2 + b^2 sin^2)
 * onto even cosine harmonics of order <= fourier_degree (degree >= 8).
 * The max pointwise projection error is written to *projection_error when
 * provided; errors above 1e-10 indicate insufficient degree.
 */
Body2D make_ellipse(double a, double b, int fourier_degree, double* projection_error = nullptr);

Body2D make_fourier(double a0, std::vector<Harmonic> harmonics, bool symmetric);

/** Minkowski interpolation (1-t) K + t L; support coefficients combine linearly. */
Body2D minkowski_mix(const Body2D& K, const Body2D& L, double t);

/** Dilate s K, s > 0. */
Body2D dilate(const Body2D& K, double s);

/**
 * Sampled boundary geometry of (K, mu) at M nodes theta_j = 2 pi j / M:
 * support values, curvature radius, boundary points, normals, the measure
 * weight, and the weighted mean curvature H_mu = 1/r - <grad u, nu>.
 * All arrays are node-indexed (structure of arrays).
 */
struct BoundaryFrame {
    int M = 0;
    double dtheta = 0.0;
    std::vector<double> theta;
    std::vector<double> h, hp, hpp, r;
    std::vector<double> x1, x2;          // boundary point
    std::vector<double> nu1, nu2;        // outer normal; tangent = (-nu2, nu1)
    std::vector<double> u_val, e_u;      // u(x), exp(-u(x))
    std::vector<double> gu_nu, gu_tau, gu_x;  // <grad u, nu>, <grad u, tau>, <grad u, x>
    std::vector<double> Hmu;
    std::vector<double> w;               // exp(-u) r dtheta, the boundary measure weight
    double weighted_perimeter = 0.0;
};

/** Requires M even and M >= max(8, 4 * max harmonic order). */
BoundaryFrame boundary_frame(const Body2D& K, const MeasureModel& m, int M);

} // namespace clab
