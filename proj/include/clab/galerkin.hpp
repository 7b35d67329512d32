#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>
#include <vector>

#include "clab/body.hpp"
#include "clab/measure.hpp"
#include "clab/quad.hpp"

namespace clab {

/**
 * Discretization of the boundary elliptic operator
 *
 *   E(rho) = -div(II^{-1} grad rho) + <grad_tangential u, II^{-1} grad rho>
 *            - H_mu rho + (1/mu(K)) int rho dmu
 *
 * in the trigonometric basis {1, cos th, sin th, ..., cos N th, sin N th}.
 * In the Gauss-angle chart the gradient part of the bilinear form reduces to
 * int rho' phi' exp(-u(x(theta))) dtheta, so
 *
 *   B_ij = int phi_i' phi_j' e^{-u} dtheta - int H_mu phi_i phi_j dmu
 *          + (1/mu_K) L_i L_j,      L_j = int phi_j dmu.
 */
struct GalerkinSystem {
    int N = 0;
    int M = 0;
    int S = 0;
    Eigen::MatrixXd B;       // (2N+1) x (2N+1), symmetric
    Eigen::VectorXd load;    // L
    double mu_K = 0.0;
};

/** Requires spec.M >= 8N and spec.M >= 4 * (body harmonic order). */
GalerkinSystem assemble(const MeasureModel& m, const Body2D& K, int N,
                        const QuadratureSpec& spec);

struct RhoBarSolution {
    TrigSeries rho;                 // solution as a trigonometric series
    Eigen::VectorXd coeffs;         // raw basis coefficients
    std::vector<double> nodal;      // values on the frame grid of size M
    double integral_rho = 0.0;      // int rho dmu over the boundary
    double p_value = 0.0;           // mu_K / integral_rho
    double weak_residual = 0.0;     // |B c - L| / |L|
    double strong_residual = 0.0;   // max_j |E(rho)(theta_j) - 1|, filled by concavity_power
    double min_eigenvalue = 0.0;    // smallest eigenvalue of B
    double norm_B = 0.0;            // largest |eigenvalue| of B
    double odd_mass = 0.0;          // odd-harmonic coefficient mass / total mass
};

/**
 * Solves B c = L by Cholesky after checking positive definiteness; aborts
 * with the offending eigenvalue if B is indefinite (hypothesis violation or
 * under-resolution).
 */
RhoBarSolution solve_rho_bar(const GalerkinSystem& sys);

/** Strong-form application of E via spectral differentiation of rho. */
std::vector<double> apply_operator_strong(const MeasureModel& m, const Body2D& K,
                                          const TrigSeries& rho, const QuadratureSpec& spec);

/** Nodal data is lifted to its trigonometric interpolant first. */
std::vector<double> apply_operator_strong(const MeasureModel& m, const Body2D& K,
                                          std::span<const double> rho_nodes,
                                          const QuadratureSpec& spec);

/** Trigonometric interpolant (orders < M/2) of samples on the uniform grid. */
TrigSeries trig_interpolate(std::span<const double> nodal);

struct PowerResult {
    double p = 0.0;
    RhoBarSolution sol;
    GalerkinSystem sys;
    std::vector<std::string> flags;   // hypothesis banners, never blocking
};

/** One-call pipeline: assemble, solve, residual check. */
PowerResult concavity_power(const MeasureModel& m, const Body2D& K, int N,
                            const QuadratureSpec& spec);

} // namespace clab
