#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "clab/galerkin.hpp"

namespace clab {

/**
 * Sampled concavity scan: values v on a uniform t grid, raw second central
 * differences at the interior nodes (NaN at the endpoints), and a concavity
 * verdict against tolerance = max(1e-10, 1e-6 step^2 max|v|).
 */
struct ScanCurve {
    std::vector<double> t;
    std::vector<double> v;
    std::vector<double> d2;
    double step = 0.0;
    double tolerance = 0.0;
    double min_margin = 0.0;   // -max d2
    bool concave = false;
    std::vector<std::string> flags;
};

/** t -> log mu(e^t K). Requires points >= 5. */
ScanCurve scan_b(const MeasureModel& m, const Body2D& K, double t_min, double t_max,
                 int points, const QuadratureSpec& spec);

/** t -> mu((1-t)K + tL)^{1/2} on [0,1] (dimensional Brunn-Minkowski, n = 2). */
ScanCurve scan_dim_bm(const MeasureModel& m, const Body2D& K, const Body2D& L, int points,
                      const QuadratureSpec& spec);

/** t -> log mu((1-t)K + tL) on [0,1]; needs no symmetry. */
ScanCurve scan_logc(const MeasureModel& m, const Body2D& K, const Body2D& L, int points,
                    const QuadratureSpec& spec);

/**
 * One sampled boundary perturbation rho (trig polynomial on the Gauss angle)
 * with the finite-difference critical exponent of f(t) = mu(K(rho, t)):
 * p_rho = 1 - f(0) f''(0) / f'(0)^2, Richardson-extrapolated from steps
 * t_step and t_step/2. Samples with |f'(0)| below the guard threshold are
 * marked indeterminate and report the sign of f''(0) instead.
 */
struct PerturbationSample {
    std::uint64_t seed = 0;       // 0 marks the mandatory rho_bar sample
    TrigSeries rho;               // after the validity rescale
    double t_step = 0.0;
    double f_minus = 0.0, f_zero = 0.0, f_plus = 0.0;
    double fp = 0.0, fpp = 0.0;
    double p_rho = 0.0;
    bool indeterminate = false;
    int fpp_sign = 0;
};

struct OracleResult {
    double p_hat = 0.0;           // min exponent over all determinate samples
    double p_pde = 0.0;
    double p_rho_bar = 0.0;       // exponent of the mandatory sample
    PerturbationSample worst;
    int indeterminate_count = 0;
    int sample_count = 0;
    std::uint64_t master_seed = 0;
};

/**
 * Brute-force variational oracle: seeded random trig perturbations of degree
 * <= D (the translation harmonics k = 1 are included, since mu is not
 * translation invariant), each rescaled by 0.1 min r / (max|rho| + max|rho''|)
 * so the perturbed bodies stay C2+, plus the solver output rho_bar as a
 * mandatory sample. Throws if every sample is indeterminate.
 */
OracleResult oracle_power(const MeasureModel& m, const Body2D& K, int samples, int degree,
                          double t_step, std::uint64_t seed, int N, const QuadratureSpec& spec);

} // namespace clab
