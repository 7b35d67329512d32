#pragma once

#include <functional>
#include <string>
#include <vector>

#include "clab/check_report.hpp"
#include "clab/galerkin.hpp"

namespace clab {

/** Smooth test function with analytic derivatives, used by the identity checks. */
struct TestFunction {
    std::string name;
    bool even = true;
    std::function<double(Vec2)> value;
    std::function<Vec2(Vec2)> grad;
    std::function<Sym2(Vec2)> hess;
};

/** psi1 = |x|^2/2, psi2 = (x1^2+3x2^2)/2, psi3 = |x|^4/4, psi4 = x1^4/12 + x2^2/2. */
const std::vector<TestFunction>& test_function_catalog();

/** Weighted Laplacian L_mu psi = Delta psi - <grad u, grad psi>. */
double laplacian_mu(const MeasureModel& m, const TestFunction& psi, Vec2 x);

// Each check returns raw lhs/rhs/margin (or residual) plus a verdict at the
// given relative tolerance; the scale is max(|lhs|, |rhs|, 1).

/** int h dmu >= int rho_bar dmu over the boundary (margin = difference). */
CheckReport check_strong_dimbm(const MeasureModel& m, const Body2D& K,
                               const RhoBarSolution& sol, const QuadratureSpec& spec,
                               double tolerance);

/** p >= 1/(n - m1/mu_K) >= 1/n; the two links are reported separately. */
std::pair<CheckReport, CheckReport> check_chain(const MeasureModel& m, const Body2D& K,
                                                const RhoBarSolution& sol,
                                                const MomentSet& ms, double tolerance);

/** Variance form of the local (B) inequality (margin check). */
CheckReport check_local_b(const MeasureModel& m, const Body2D& K, const MomentSet& ms,
                          double tolerance);

/** Nodal identity E(h) = 1 + <grad u, x> - m1/mu_K (max residual). */
CheckReport check_action_support(const MeasureModel& m, const Body2D& K,
                                 const QuadratureSpec& spec, double tolerance);

/** Reilly formula residual for one catalog function. */
CheckReport check_reilly(const MeasureModel& m, const Body2D& K, const TestFunction& psi,
                         const QuadratureSpec& spec, double tolerance);

/** Integration-by-parts identity for a pair of test functions. */
CheckReport check_integration_by_parts(const MeasureModel& m, const Body2D& K,
                                       const TestFunction& phi, const TestFunction& psi,
                                       const QuadratureSpec& spec, double tolerance);

/** Boundary/interior identity int h dmu = n mu_K - m1 (residual). */
CheckReport check_moment_identity(const MeasureModel& m, const Body2D& K,
                                  const QuadratureSpec& spec, double tolerance);

/**
 * Hereditary-convexity functional with the uniform normalized restriction
 * to K as eta: margin of the Poincare-type inequality for one psi. Aborts
 * if the denominator int L_mu(|x|^2/2) deta is not positive.
 */
CheckReport check_hereditary_functional(const MeasureModel& m, const Body2D& K,
                                        const TestFunction& psi, const QuadratureSpec& spec,
                                        double tolerance);

/**
 * Proof-decomposition consistency for f = rho_bar - h: term (A) <= 0,
 * (A) + (B) matches int (h - rho_bar) deta, and the boundary route for (B)
 * matches its moment form. Three sub-verdicts.
 */
std::vector<CheckReport> check_proof_decomposition(const MeasureModel& m, const Body2D& K,
                                                   const RhoBarSolution& sol,
                                                   const QuadratureSpec& spec, double tolerance);

/**
 * Runs the whole battery for one (measure, body) pair: the per-psi checks are
 * aggregated to their worst case. Reports come back sorted by name; hypothesis
 * banners are attached to every report.
 */
std::vector<CheckReport> run_all_checks(const MeasureModel& m, const Body2D& K, int N,
                                        const QuadratureSpec& spec, double tolerance);

} // namespace clab
