#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "clab/body.hpp"
#include "clab/measure.hpp"
#include "support/closed_forms.hpp"

using namespace clab;

TEST_CASE("disk basics")
{
    const Body2D K = make_disk(1.0);
    CHECK(K.support(0.0) == doctest::Approx(1.0));
    CHECK(K.curvature_radius(1.3) == doctest::Approx(1.0));
    CHECK(K.symmetric());
    CHECK_THROWS_AS(make_disk(0.0), std::invalid_argument);

    const BoundaryFrame f = boundary_frame(K, make_gaussian(1.0), 8);
    CHECK(f.x1[0] == doctest::Approx(1.0));
    CHECK(f.x2[0] == doctest::Approx(0.0));
    CHECK(f.r[0] == doctest::Approx(1.0));
}

TEST_CASE("fourier validation accepts and rejects per the curvature radius")
{
    // r(0) = 1 + a2 - 4 a2 = 1 - 3 a2
    const Body2D ok = make_fourier(1.0, {{2, 0.1, 0.0}}, true);
    CHECK(ok.min_curvature_radius() == doctest::Approx(0.7).epsilon(1e-12));

    CHECK_THROWS_WITH_AS(make_fourier(1.0, {{2, 0.4, 0.0}}, true),
                         doctest::Contains("theta"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(make_fourier(1.0, {{3, 0.01, 0.0}}, true),
                         doctest::Contains("odd harmonic"), std::invalid_argument);
    // same body is fine when not claimed symmetric
    CHECK_NOTHROW(make_fourier(1.0, {{3, 0.01, 0.0}}, false));
}

TEST_CASE("ellipse projection")
{
    double err = 0.0;
    const Body2D e = make_ellipse(1.0, 2.0, 48, &err);
    CHECK(err < 1e-10);
    CHECK(e.support(0.0) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(e.support(M_PI / 2) == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(e.symmetric());

    // a=b reduces to the disk
    double err_disk = 0.0;
    const Body2D d = make_ellipse(1.0, 1.0, 16, &err_disk);
    CHECK(err_disk < 1e-13);
    CHECK(d.support(0.77) == doctest::Approx(1.0));

    // low degree leaves a visible projection error on an eccentric ellipse
    double err_low = 0.0;
    make_ellipse(1.0, 3.0, 8, &err_low);
    CHECK(err_low > 1e-10);

    CHECK_THROWS_AS(make_ellipse(1.0, 2.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(make_ellipse(-1.0, 2.0, 16), std::invalid_argument);
}

TEST_CASE("minkowski mix and dilate act on coefficients")
{
    const Body2D K = make_disk(1.0);
    const Body2D L = make_disk(3.0);
    const Body2D half = minkowski_mix(K, L, 0.5);
    CHECK(half.support(0.3) == doctest::Approx(2.0));

    const Body2D at0 = minkowski_mix(K, L, 0.0);
    CHECK(at0.support(1.0) == doctest::Approx(1.0));
    const Body2D at1 = minkowski_mix(K, L, 1.0);
    CHECK(at1.support(1.0) == doctest::Approx(3.0));

    const Body2D e = dilate(K, std::exp(1.0));
    CHECK(e.support(0.0) == doctest::Approx(std::exp(1.0)));
    CHECK(dilate(K, 1.0).support(2.2) == doctest::Approx(1.0));

    double err = 0.0;
    const Body2D ell = make_ellipse(1.0, 2.0, 32, &err);
    const Body2D shrunk = dilate(ell, 0.5);
    CHECK(shrunk.support(0.0) == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(shrunk.support(M_PI / 2) == doctest::Approx(1.0).epsilon(1e-10));

    CHECK_THROWS_AS(minkowski_mix(K, L, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(dilate(K, 0.0), std::invalid_argument);
}

TEST_CASE("frame geometry invariants")
{
    const MeasureModel g = make_gaussian(1.0);
    double err = 0.0;
    const Body2D bodies[] = {make_disk(1.0), make_ellipse(1.0, 2.0, 48, &err),
                             make_fourier(1.0, {{2, 0.1, 0.0}}, true),
                             make_fourier(1.0, {{4, 0.04, 0.04}}, true)};
    for (const Body2D& K : bodies) {
        CAPTURE(K.descriptor());
        const int M = 256;
        const BoundaryFrame f = boundary_frame(K, g, M);

        // <x, nu> = h: the normal angle parametrization is the Gauss map
        for (int j = 0; j < M; ++j) {
            CHECK(f.x1[j] * f.nu1[j] + f.x2[j] * f.nu2[j] ==
                  doctest::Approx(f.h[j]).epsilon(1e-12));
        }

        // x'(theta) = r tau, checked against Fourier differentiation of the
        // sampled boundary points
        auto spectral_deriv = [M](const std::vector<double>& v) {
            std::vector<double> d(M, 0.0);
            for (int k = 1; k < M / 2; ++k) {
                double ca = 0.0, cb = 0.0;
                for (int j = 0; j < M; ++j) {
                    const double th = 2.0 * M_PI * j / M;
                    ca += v[j] * std::cos(k * th);
                    cb += v[j] * std::sin(k * th);
                }
                ca *= 2.0 / M;
                cb *= 2.0 / M;
                for (int j = 0; j < M; ++j) {
                    const double th = 2.0 * M_PI * j / M;
                    d[j] += k * (cb * std::cos(k * th) - ca * std::sin(k * th));
                }
            }
            return d;
        };
        const std::vector<double> dx1 = spectral_deriv(f.x1);
        const std::vector<double> dx2 = spectral_deriv(f.x2);
        const double a0 = K.support_series().a0;
        for (int j = 0; j < M; ++j) {
            const double t1 = -f.nu2[j], t2 = f.nu1[j];
            CHECK(std::abs(dx1[j] - f.r[j] * t1) <= 1e-10 * a0);
            CHECK(std::abs(dx2[j] - f.r[j] * t2) <= 1e-10 * a0);
        }

        CHECK(f.weighted_perimeter > 0.0);
    }
}

TEST_CASE("frame H_mu on gaussian disks")
{
    const MeasureModel g = make_gaussian(1.0);
    const BoundaryFrame f1 = boundary_frame(make_disk(1.0), g, 8);
    for (double v : f1.Hmu) CHECK(v == doctest::Approx(0.0).epsilon(1e-14));

    const BoundaryFrame f2 = boundary_frame(make_disk(2.0), g, 16);
    for (double v : f2.Hmu) CHECK(v == doctest::Approx(-1.5));

    // weighted perimeter of disk(2): 4 pi e^{-2}
    CHECK(f2.weighted_perimeter == doctest::Approx(oracle::bp_disk(2.0)).epsilon(1e-12));
}

TEST_CASE("support additivity transfers to frames nodewise")
{
    const MeasureModel g = make_gaussian(1.0);
    double err = 0.0;
    const Body2D K = make_fourier(1.0, {{2, 0.1, 0.0}}, true);
    const Body2D L = make_ellipse(1.0, 2.0, 32, &err);
    const double t = 0.3;
    const Body2D mix = minkowski_mix(K, L, t);

    const BoundaryFrame fK = boundary_frame(K, g, 128);
    const BoundaryFrame fL = boundary_frame(L, g, 128);
    const BoundaryFrame fM = boundary_frame(mix, g, 128);
    for (int j = 0; j < 128; ++j)
        CHECK(fM.h[j] == doctest::Approx((1 - t) * fK.h[j] + t * fL.h[j]).epsilon(1e-13));
}

TEST_CASE("symmetric bodies have pi-periodic support on the grid")
{
    double err = 0.0;
    const Body2D e = make_ellipse(1.0, 2.0, 48, &err);
    const BoundaryFrame f = boundary_frame(e, make_gaussian(1.0), 256);
    for (int j = 0; j < 128; ++j)
        CHECK(f.h[j] == doctest::Approx(f.h[j + 128]).epsilon(1e-13));
}

TEST_CASE("frame resolution preconditions")
{
    const Body2D K = make_fourier(1.0, {{4, 0.04, 0.0}}, true);
    CHECK_THROWS_AS(boundary_frame(K, make_gaussian(1.0), 15), std::invalid_argument);
    CHECK_THROWS_AS(boundary_frame(K, make_gaussian(1.0), 8), std::invalid_argument);
    CHECK_NOTHROW(boundary_frame(K, make_gaussian(1.0), 16));
}
