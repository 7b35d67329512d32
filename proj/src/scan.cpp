#include "clab/scan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "clab/parallel.hpp"
#include "clab/rng.hpp"

namespace clab {

namespace {

ScanCurve finish_curve(ScanCurve c)
{
    const int n = static_cast<int>(c.v.size());
    c.d2.assign(n, std::numeric_limits<double>::quiet_NaN());
    double vmax = 0.0;
    for (double v : c.v) vmax = std::max(vmax, std::abs(v));
    double worst = -std::numeric_limits<double>::infinity();
    for (int i = 1; i + 1 < n; ++i) {
        c.d2[i] = c.v[i + 1] - 2.0 * c.v[i] + c.v[i - 1];
        worst = std::max(worst, c.d2[i]);
    }
    c.tolerance = std::max(1e-10, 1e-6 * c.step * c.step * vmax);
    c.min_margin = -worst;
    c.concave = worst <= c.tolerance;
    return c;
}

std::vector<double> grid(double t_min, double t_max, int points)
{
    if (points < 5) throw std::invalid_argument("scan: need at least 5 grid points");
    if (!(t_max > t_min)) throw std::invalid_argument("scan: t_max must exceed t_min");
    std::vector<double> t(points);
    const double step = (t_max - t_min) / (points - 1);
    for (int i = 0; i < points; ++i) t[i] = t_min + step * i;
    t.back() = t_max;
    return t;
}

double measure_of(const MeasureModel& m, const Body2D& K, const QuadratureSpec& spec)
{
    return interior_integral(m, K, [](Vec2) { return 1.0; }, spec);
}

} // namespace

ScanCurve scan_b(const MeasureModel& m, const Body2D& K, double t_min, double t_max,
                 int points, const QuadratureSpec& spec)
{
    ScanCurve c;
    c.t = grid(t_min, t_max, points);
    c.step = (t_max - t_min) / (points - 1);
    c.v.resize(points);
    parallel_for(points, [&](std::size_t i) {
        c.v[i] = std::log(measure_of(m, dilate(K, std::exp(c.t[i])), spec));
    });
    if (!K.symmetric()) c.flags.push_back("body not origin-symmetric: hypotheses violated");
    if (!m.even) c.flags.push_back("measure not even: hypotheses violated");
    return finish_curve(std::move(c));
}

ScanCurve scan_dim_bm(const MeasureModel& m, const Body2D& K, const Body2D& L, int points,
                      const QuadratureSpec& spec)
{
    ScanCurve c;
    c.t = grid(0.0, 1.0, points);
    c.step = 1.0 / (points - 1);
    c.v.resize(points);
    parallel_for(points, [&](std::size_t i) {
        c.v[i] = std::sqrt(measure_of(m, minkowski_mix(K, L, c.t[i]), spec));
    });
    if (!K.symmetric() || !L.symmetric())
        c.flags.push_back("body not origin-symmetric: hypotheses violated");
    if (!m.even) c.flags.push_back("measure not even: hypotheses violated");
    return finish_curve(std::move(c));
}

ScanCurve scan_logc(const MeasureModel& m, const Body2D& K, const Body2D& L, int points,
                    const QuadratureSpec& spec)
{
    ScanCurve c;
    c.t = grid(0.0, 1.0, points);
    c.step = 1.0 / (points - 1);
    c.v.resize(points);
    parallel_for(points, [&](std::size_t i) {
        c.v[i] = std::log(measure_of(m, minkowski_mix(K, L, c.t[i]), spec));
    });
    return finish_curve(std::move(c));
}

namespace {

struct SampleOutcome {
    PerturbationSample sample;
    bool skipped = false;
};

Body2D perturbed_body(const Body2D& K, const TrigSeries& rho, double t)
{
    return Body2D::validated(TrigSeries::combine(K.support_series(), 1.0, rho, t), false);
}

/**
 * Rescales rho so all four perturbed bodies used by the differencing stay
 * C2+, then evaluates the Richardson-extrapolated exponent.
 */
SampleOutcome evaluate_sample(const MeasureModel& m, const Body2D& K, TrigSeries rho,
                              double t_step, double f0, const QuadratureSpec& spec,
                              std::uint64_t sample_seed)
{
    SampleOutcome out;
    out.sample.seed = sample_seed;
    out.sample.t_step = t_step;

    const int Mf = std::max(256, 8 * std::max(rho.max_order(), K.max_order()));
    std::vector<double> rv(Mf), rd(Mf), rdd(Mf);
    rho.eval_grid(Mf, rv, rd, rdd);
    double max_r = 0.0, max_rdd = 0.0;
    for (int j = 0; j < Mf; ++j) {
        max_r = std::max(max_r, std::abs(rv[j]));
        max_rdd = std::max(max_rdd, std::abs(rdd[j]));
    }
    if (max_r + max_rdd == 0.0) {
        out.skipped = true;
        return out;
    }
    double scale = 0.1 * K.min_curvature_radius() / (max_r + max_rdd);

    for (int attempt = 0;; ++attempt) {
        try {
            const TrigSeries scaled = rho.scaled(scale);
            const double fm = measure_of(m, perturbed_body(K, scaled, -t_step), spec);
            const double fm2 = measure_of(m, perturbed_body(K, scaled, -0.5 * t_step), spec);
            const double fp2 = measure_of(m, perturbed_body(K, scaled, 0.5 * t_step), spec);
            const double fp = measure_of(m, perturbed_body(K, scaled, t_step), spec);

            const double d_full = (fp - fm) / (2.0 * t_step);
            const double d_half = (fp2 - fm2) / t_step;
            const double s_full = (fp - 2.0 * f0 + fm) / (t_step * t_step);
            const double s_half = (fp2 - 2.0 * f0 + fm2) / (0.25 * t_step * t_step);

            PerturbationSample& s = out.sample;
            s.rho = scaled;
            s.f_minus = fm;
            s.f_zero = f0;
            s.f_plus = fp;
            s.fp = (4.0 * d_half - d_full) / 3.0;
            s.fpp = (4.0 * s_half - s_full) / 3.0;
            if (std::abs(s.fp) < 1e-8 * f0 / t_step) {
                s.indeterminate = true;
                s.fpp_sign = s.fpp > 0.0 ? 1 : (s.fpp < 0.0 ? -1 : 0);
                s.p_rho = std::numeric_limits<double>::quiet_NaN();
            } else {
                s.p_rho = 1.0 - f0 * s.fpp / (s.fp * s.fp);
            }
            return out;
        } catch (const std::invalid_argument&) {
            // perturbed body left C2+; shrink and retry
            if (attempt >= 8) {
                out.skipped = true;
                return out;
            }
            scale *= 0.5;
        }
    }
}

TrigSeries random_perturbation(std::uint64_t sample_seed, int degree)
{
    std::mt19937_64 rng(sample_seed);
    TrigSeries rho;
    rho.a0 = rng_uniform_sym(rng);
    for (int k = 1; k <= degree; ++k)
        rho.harmonics.push_back({k, rng_uniform_sym(rng), rng_uniform_sym(rng)});
    return rho;
}

} // namespace

OracleResult oracle_power(const MeasureModel& m, const Body2D& K, int samples, int degree,
                          double t_step, std::uint64_t seed, int N, const QuadratureSpec& spec)
{
    if (samples < 1) throw std::invalid_argument("oracle_power: samples must be >= 1");
    if (degree < 1) throw std::invalid_argument("oracle_power: degree must be >= 1");
    if (!(t_step > 0.0)) throw std::invalid_argument("oracle_power: t_step must be positive");

    const PowerResult pr = concavity_power(m, K, N, spec);
    const double f0 = pr.sys.mu_K;

    OracleResult res;
    res.p_pde = pr.p;
    res.master_seed = seed;
    res.sample_count = samples + 1;

    std::vector<SampleOutcome> outcomes(samples + 1);
    parallel_for(samples + 1, [&](std::size_t i) {
        if (i == 0) {
            // mandatory sample: the solver output itself, seed 0
            outcomes[0] = evaluate_sample(m, K, pr.sol.rho, t_step, f0, spec, 0);
        } else {
            const std::uint64_t s = derive_seed(seed, i - 1);
            outcomes[i] = evaluate_sample(m, K, random_perturbation(s, degree), t_step, f0, spec, s);
        }
    });

    if (outcomes[0].skipped || outcomes[0].sample.indeterminate)
        throw std::runtime_error("oracle_power: mandatory rho_bar sample is not informative");

    bool have = false;
    for (const SampleOutcome& o : outcomes) {
        if (o.skipped) continue;
        if (o.sample.indeterminate) {
            ++res.indeterminate_count;
            continue;
        }
        if (!have || o.sample.p_rho < res.p_hat) {
            res.p_hat = o.sample.p_rho;
            res.worst = o.sample;
            have = true;
        }
    }
    if (!have) throw std::runtime_error("oracle_power: no informative perturbation");
    res.p_rho_bar = outcomes[0].sample.p_rho;
    return res;
}

} // namespace clab
