#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "clab/galerkin.hpp"
#include "clab/kernels.hpp"
#include "clab/rng.hpp"
#include "support/closed_forms.hpp"

using namespace clab;

namespace {

const QuadratureSpec kSpec{256, 128};
const MeasureModel kGauss = make_gaussian(1.0);

TrigSeries random_series(std::uint64_t seed, int degree)
{
    std::mt19937_64 rng(seed);
    TrigSeries s;
    s.a0 = rng_uniform_sym(rng);
    for (int k = 1; k <= degree; ++k)
        s.harmonics.push_back({k, rng_uniform_sym(rng), rng_uniform_sym(rng)});
    return s;
}

/**
 * Direct finite-difference evaluation of the divergence-form operator on the
 * boundary curve, discretizing the geometric objects themselves (arclength
 * steps, tangential differences) rather than the Gauss-angle reduction used
 * by the production path. Second-order accurate in the node spacing.
 */
std::vector<double> apply_operator_fd(const MeasureModel& m, const Body2D& K,
                                      const TrigSeries& rho, int M)
{
    const BoundaryFrame f = boundary_frame(K, m, M);
    std::vector<double> rv(M), rd(M), rdd(M);
    rho.eval_grid(M, rv, rd, rdd);

    const double mu_K = interior_integral(m, K, [](Vec2) { return 1.0; }, {M, 128});
    const double mean_term = kern::dot(rv.data(), f.w.data(), M) / mu_K;

    auto wrap = [M](int j) { return (j % M + M) % M; };
    std::vector<double> out(M);
    for (int j = 0; j < M; ++j) {
        const int jm = wrap(j - 1), jp = wrap(j + 1);
        const double ds_m = 0.5 * (f.r[jm] + f.r[j]) * f.dtheta;   // arclength to the left
        const double ds_p = 0.5 * (f.r[j] + f.r[jp]) * f.dtheta;

        // flux II^{-1} rho_s = r rho_s at the half nodes
        const double flux_m = 0.5 * (f.r[jm] + f.r[j]) * (rv[j] - rv[jm]) / ds_m;
        const double flux_p = 0.5 * (f.r[j] + f.r[jp]) * (rv[jp] - rv[j]) / ds_p;
        const double div = (flux_p - flux_m) / (0.5 * (ds_m + ds_p));

        const double u_s = (f.u_val[jp] - f.u_val[jm]) / (ds_m + ds_p);
        const double flux_c = 0.5 * (flux_m + flux_p);

        out[j] = -div + u_s * flux_c - f.Hmu[j] * rv[j] + mean_term;
    }
    return out;
}

} // namespace

TEST_CASE("assembly on the gaussian unit disk matches closed forms")
{
    const GalerkinSystem sys = assemble(kGauss, make_disk(1.0), 8, kSpec);
    CHECK(sys.mu_K == doctest::Approx(oracle::kMuDisk1).epsilon(1e-13));

    // H_mu = 0 on disk(1), so the constant-constant entry is bp^2 / mu alone
    CHECK(sys.B(0, 0) == doctest::Approx(oracle::kB00Disk1).epsilon(1e-12));

    CHECK(sys.load(0) == doctest::Approx(oracle::kBpDisk1).epsilon(1e-13));
    for (int i = 1; i < sys.load.size(); ++i)
        CHECK(std::abs(sys.load(i)) <= 1e-13 * oracle::kBpDisk1);

    CHECK((sys.B - sys.B.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("assembly rejects resolution mismatch")
{
    CHECK_THROWS_WITH_AS(assemble(kGauss, make_disk(1.0), 64, kSpec),
                         doctest::Contains("resolution"), std::invalid_argument);
}

TEST_CASE("constant solution on gaussian disks")
{
    const PowerResult pr = concavity_power(kGauss, make_disk(1.0), 32, kSpec);
    CHECK(pr.p == doctest::Approx(1.0).epsilon(1e-8));
    for (double v : pr.sol.nodal)
        CHECK(v == doctest::Approx(oracle::kRhoConstDisk1).epsilon(1e-10));
    CHECK(pr.sol.weak_residual <= 1e-10);
    CHECK(pr.sol.strong_residual <= 1e-10);
    CHECK(pr.sol.integral_rho == doctest::Approx(oracle::kMuDisk1).epsilon(1e-10));
    CHECK(pr.flags.empty());

    CHECK(concavity_power(kGauss, make_disk(2.0), 32, kSpec).p ==
          doctest::Approx(oracle::kPDisk2).epsilon(1e-10));
    CHECK(concavity_power(kGauss, make_disk(0.1), 32, kSpec).p ==
          doctest::Approx(oracle::kPDisk01).epsilon(1e-10));
}

TEST_CASE("galerkin form is positive definite across the corpus")
{
    double err = 0.0;
    const MeasureModel measures[] = {kGauss, make_quadratic(Sym2::diag(1.0, 4.0))};
    const Body2D bodies[] = {make_disk(0.5), make_disk(1.0), make_disk(2.0),
                             make_ellipse(1.0, 2.0, 48, &err),
                             make_ellipse(1.0, 3.0, 64, &err),
                             make_fourier(1.0, {{2, 0.1, 0.0}}, true),
                             make_fourier(1.0, {{4, 0.04, 0.04}}, true)};
    for (const auto& m : measures) {
        for (const auto& K : bodies) {
            CAPTURE(m.descriptor());
            CAPTURE(K.descriptor());
            const RhoBarSolution sol = solve_rho_bar(assemble(m, K, 32, kSpec));
            CHECK(sol.min_eigenvalue >= -1e-9 * sol.norm_B);
            CHECK(sol.min_eigenvalue > 0.0);
            CHECK(sol.integral_rho > 0.0);
            CHECK(sol.odd_mass <= 1e-8);
            CHECK(sol.weak_residual <= 1e-10);
        }
    }
}

TEST_CASE("asymmetric exploration body still yields a PSD form under even mu")
{
    const Body2D K = make_fourier(1.0, {{1, 0.05, 0.0}, {3, 0.03, 0.02}}, false);
    const PowerResult pr = concavity_power(kGauss, K, 32, kSpec);
    CHECK(pr.sol.min_eigenvalue > 0.0);
    CHECK(pr.p > 0.0);
    REQUIRE(pr.flags.size() == 1);
    CHECK(pr.flags[0] == "body not origin-symmetric: hypotheses violated");
}

TEST_CASE("weak form agrees with the strong-form applicator")
{
    double err = 0.0;
    const Body2D bodies[] = {make_disk(1.3), make_ellipse(1.0, 2.0, 48, &err)};
    for (const Body2D& K : bodies) {
        CAPTURE(K.descriptor());
        const int N = 12;
        const GalerkinSystem sys = assemble(kGauss, K, N, kSpec);
        const BoundaryFrame f = boundary_frame(K, kGauss, kSpec.M);

        const TrigSeries rho = random_series(5, N);
        const TrigSeries phi = random_series(9, N);
        std::vector<double> rhov(kSpec.M), phiv(kSpec.M), d1(kSpec.M), d2(kSpec.M);
        rho.eval_grid(kSpec.M, rhov, d1, d2);
        phi.eval_grid(kSpec.M, phiv, d1, d2);

        // <E(rho), phi>_mu via nodal strong form and quadrature
        const std::vector<double> Erho = apply_operator_strong(kGauss, K, rho, kSpec);
        const double strong_pairing = kern::dot3(Erho.data(), phiv.data(), f.w.data(), kSpec.M);

        // same pairing through the bilinear form
        Eigen::VectorXd rc(2 * N + 1), pc(2 * N + 1);
        rc(0) = rho.a0;
        pc(0) = phi.a0;
        for (int k = 1; k <= N; ++k) {
            rc(2 * k - 1) = rho.harmonics[k - 1].a;
            rc(2 * k) = rho.harmonics[k - 1].b;
            pc(2 * k - 1) = phi.harmonics[k - 1].a;
            pc(2 * k) = phi.harmonics[k - 1].b;
        }
        const double weak_pairing = rc.dot(sys.B * pc);
        CHECK(strong_pairing == doctest::Approx(weak_pairing).epsilon(1e-10));
    }
}

TEST_CASE("strong form matches a direct finite-difference discretization")
{
    double err = 0.0;
    const Body2D bodies[] = {make_ellipse(1.0, 2.0, 48, &err),
                             make_fourier(1.0, {{2, 0.1, 0.0}}, true)};
    for (const Body2D& K : bodies) {
        CAPTURE(K.descriptor());
        const TrigSeries rho = random_series(21, 5);

        double prev_err = 0.0;
        for (int pass = 0; pass < 2; ++pass) {
            const int M = pass == 0 ? 512 : 1024;
            const std::vector<double> spectral =
                apply_operator_strong(kGauss, K, rho, {M, 64});
            const std::vector<double> fd = apply_operator_fd(kGauss, K, rho, M);
            double e = 0.0;
            for (int j = 0; j < M; ++j) e = std::max(e, std::abs(spectral[j] - fd[j]));
            if (pass == 0) {
                prev_err = e;
            } else {
                CHECK(e < prev_err / 3.0);   // second-order convergence
                CHECK(e < 1e-2);
            }
        }
    }
}

TEST_CASE("action of E on the support function (nodal identity)")
{
    double err = 0.0;
    const MeasureModel measures[] = {kGauss, make_quadratic(Sym2::diag(1.0, 4.0))};
    const Body2D bodies[] = {make_disk(1.0), make_ellipse(1.0, 2.0, 48, &err)};
    for (const auto& m : measures) {
        for (const auto& K : bodies) {
            CAPTURE(m.descriptor());
            CAPTURE(K.descriptor());
            const BoundaryFrame f = boundary_frame(K, m, kSpec.M);
            const double mu_K = interior_integral(m, K, [](Vec2) { return 1.0; }, kSpec);
            const double m1 =
                interior_integral(m, K, [&m](Vec2 x) { return dot(m.grad_u(x), x); }, kSpec);
            const std::vector<double> Eh =
                apply_operator_strong(m, K, K.support_series(), kSpec);
            double worst = 0.0;
            for (int j = 0; j < kSpec.M; ++j)
                worst = std::max(worst, std::abs(Eh[j] - (1.0 + f.gu_x[j] - m1 / mu_K)));
            CHECK(worst <= 1e-6 * (1.0 + std::abs(m1 / mu_K)));
        }
    }
}

TEST_CASE("E applied to a constant on the unit disk")
{
    const std::vector<double> Ec = apply_operator_strong(
        kGauss, make_disk(1.0), TrigSeries{0.37, {}}, kSpec);
    const double expect = 0.37 * oracle::kBpDisk1 / oracle::kMuDisk1;
    for (double v : Ec) CHECK(v == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("E applied to h on the unit disk hits 1 + <x,x> - mean")
{
    const std::vector<double> Eh = apply_operator_strong(
        kGauss, make_disk(1.0), make_disk(1.0).support_series(), kSpec);
    const double expect = 2.0 - oracle::kMeanDisk1;
    for (double v : Eh) CHECK(v == doctest::Approx(expect).epsilon(1e-10));
}

TEST_CASE("spectral convergence of p in the truncation degree")
{
    double err = 0.0;
    const Body2D K = make_ellipse(1.0, 2.0, 48, &err);
    const QuadratureSpec spec{512, 128};
    double p_prev = 0.0, diff_prev = 0.0;
    bool have_prev = false, have_diff = false;
    for (int N : {4, 8, 16, 32}) {
        const double p = concavity_power(kGauss, K, N, spec).p;
        if (have_prev) {
            const double diff = std::abs(p - p_prev);
            if (have_diff) CHECK((diff <= diff_prev / 10.0 || diff <= 1e-9));
            diff_prev = diff;
            have_diff = true;
        }
        p_prev = p;
        have_prev = true;
    }
    CHECK(diff_prev <= 1e-9);
}

TEST_CASE("evenness of rho_bar for symmetric data")
{
    double err = 0.0;
    const RhoBarSolution sol =
        solve_rho_bar(assemble(kGauss, make_ellipse(1.0, 2.0, 48, &err), 32, kSpec));
    double odd = 0.0, total = sol.coeffs(0) * sol.coeffs(0);
    for (int k = 1; k <= 32; ++k) {
        const double mass = sol.coeffs(2 * k - 1) * sol.coeffs(2 * k - 1) +
                            sol.coeffs(2 * k) * sol.coeffs(2 * k);
        total += mass;
        if (k % 2 == 1) odd += mass;
    }
    CHECK(std::sqrt(odd) <= 1e-8 * std::sqrt(total));
    CHECK(sol.odd_mass <= 1e-8);
}

TEST_CASE("trig interpolation round-trips nodal data")
{
    const TrigSeries s = random_series(33, 7);
    const int M = 64;
    std::vector<double> v(M), d1(M), d2(M);
    s.eval_grid(M, v, d1, d2);
    const TrigSeries back = trig_interpolate(v);
    CHECK(back.a0 == doctest::Approx(s.a0).epsilon(1e-12));
    for (int k = 1; k <= 7; ++k) {
        CHECK(back.harmonics[k - 1].a == doctest::Approx(s.harmonics[k - 1].a).epsilon(1e-12));
        CHECK(back.harmonics[k - 1].b == doctest::Approx(s.harmonics[k - 1].b).epsilon(1e-12));
    }
}

TEST_CASE("linear invariance cross-check: ellipse under gaussian vs disk under quadratic")
{
    // mu_gauss(T L) = det T * mu_A(L) with T = diag(a, b), A = diag(a^2, b^2),
    // so the two concavity powers coincide.
    double err = 0.0;
    const double p1 = concavity_power(kGauss, make_ellipse(1.0, 2.0, 48, &err), 32, kSpec).p;
    const double p2 =
        concavity_power(make_quadratic(Sym2::diag(1.0, 4.0)), make_disk(1.0), 32, kSpec).p;
    CHECK(p1 == doctest::Approx(p2).epsilon(1e-9));
}
