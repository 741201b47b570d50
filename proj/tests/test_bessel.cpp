#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>

#include <gsl/gsl_sf_bessel.h>

#include "billiard/bessel.hpp"

using namespace billiard;
using std::numbers::pi;

TEST_CASE("series values and closed half-integer forms") {
    CHECK(bessel_j(0.0, 0.0) == doctest::Approx(1.0));
    CHECK(bessel_j(0.5, 0.0) == doctest::Approx(0.0));

    // J_{1/2}(x) = sqrt(2/(pi x)) sin x vanishes at x = pi.
    CHECK(std::abs(bessel_j(0.5, pi)) < 1e-12);
    const double x = 2.3;
    CHECK(bessel_j(0.5, x) == doctest::Approx(std::sqrt(2.0 / (pi * x)) * std::sin(x)).epsilon(1e-12));
}

TEST_CASE("recurrence and derivative identities on a log grid") {
    for (double nu : {2.0 / 3.0, 4.0 / 3.0, 2.0, 10.0 / 3.0, 7.0, 50.0 + 2.0 / 3.0}) {
        for (int i = 0; i < 1000; ++i) {
            const double x = 0.1 * std::pow(1e4, i / 999.0);
            const double jm = bessel_j(nu - 1.0 < 0.0 ? nu + 1.0 : nu - 1.0, x);
            if (nu >= 1.0) {
                const double jm1 = bessel_j(nu - 1.0, x);
                const double jp1 = bessel_j(nu + 1.0, x);
                const double rhs = (2.0 * nu / x) * bessel_j(nu, x);
                // Scale by the participating magnitudes; near a zero of J_nu the
                // difference cancels to machine noise of the large terms.
                const double scale = std::max({std::abs(jm1), std::abs(jp1), std::abs(rhs), 1e-280});
                CHECK(std::abs(jm1 + jp1 - rhs) / scale < 1e-10);

                const double d = bessel_j_prime(nu, x);
                const double d2 = 0.5 * (jm1 - jp1);
                const double dscale = std::max({std::abs(jm1), std::abs(jp1), std::abs(d), 1e-280});
                CHECK(std::abs(d - d2) <= 1e-10 * dscale);
            }
            (void)jm;
        }
    }
}

TEST_CASE("turning point region is exponentially small, never junk") {
    // x well below the order: magnitude must collapse.
    CHECK(std::abs(bessel_j(300.0, 30.0)) < 1e-200);
    CHECK(std::abs(bessel_j(2000.0 / 3.0, 100.0)) < 1e-100);
    CHECK_THROWS(bessel_j(2e4, 10.0));
    CHECK_THROWS(bessel_j(-1.0, 1.0));
}

TEST_CASE("ladder agrees with direct evaluation over the solver regime") {
    for (double rho : {0.0, 1.0 / 3.0, 2.0 / 3.0}) {
        for (double x : {0.05, 0.7, 3.0, 17.0, 80.0, 166.0, 900.0}) {
            const int count = 400;
            const auto ladder = bessel_j_ladder(rho, count, x);
            for (int m = 0; m < count; m += 7) {
                const double direct = bessel_j(rho + m, x);
                const double err = std::abs(ladder[m] - direct);
                const double scale = std::max(std::abs(direct), 1e-280);
                if (std::abs(direct) > 1e-250) {
                    CHECK(err / scale < 1e-9);
                } else {
                    CHECK(std::abs(ladder[m]) < 1e-240);
                }
            }
        }
    }
}

TEST_CASE("first zero of J_{2/3}") {
    const double z = bessel_j_zero(2.0 / 3.0, 1);
    CHECK(z == doctest::Approx(3.3756106527).epsilon(1e-9));
    // Cross-check against an independent implementation.
    CHECK(z == doctest::Approx(gsl_sf_bessel_zero_Jnu(2.0 / 3.0, 1)).epsilon(1e-12));
    CHECK(std::abs(bessel_j(2.0 / 3.0, z)) < 1e-12);
}

TEST_CASE("hankel identities") {
    // Wronskian J_1 Y_1' - J_1' Y_1 = 2/(pi x) at x = 1.
    const double x = 1.0;
    const auto h0 = hankel1(0, x);
    const auto h1 = hankel1(1, x);
    const auto h2 = hankel1(2, x);
    const double j1 = h1.real(), y1 = h1.imag();
    const double j1p = 0.5 * (h0.real() - h2.real());
    const double y1p = 0.5 * (h0.imag() - h2.imag());
    CHECK(std::abs(j1 * y1p - j1p * y1 - 2.0 / (pi * x)) < 1e-10);

    // Recurrence H_0 + H_2 = (2/x) H_1 at x = 5.
    const auto lhs = hankel1(0, 5.0) + hankel1(2, 5.0);
    const auto rhs = (2.0 / 5.0) * hankel1(1, 5.0);
    CHECK(std::abs(lhs - rhs) < 1e-10);

    // Large-argument phase: H_0(x) ~ sqrt(2/(pi x)) e^{i(x - pi/4)}; the
    // leading form deviates by exactly 1/(8x), the corrected one by O(x^-2).
    const double big = 100.0;
    const auto asym = std::sqrt(2.0 / (pi * big)) *
                      std::exp(std::complex<double>(0.0, big - pi / 4.0));
    CHECK(std::abs(hankel1(0, big) - asym) / std::abs(asym) < 2e-3);
    const auto corrected = asym * (1.0 - std::complex<double>(0.0, 1.0) / (8.0 * big));
    CHECK(std::abs(hankel1(0, big) - corrected) / std::abs(asym) < 1e-4);

    CHECK_THROWS(hankel1(0, 0.0));
    CHECK_THROWS(hankel1(3, 1.0));
}

TEST_CASE("order continuity smoke check") {
    // Finite differences in order against a crude analytic estimate.
    const double x = 5.0, nu = 2.0, h = 1e-4;
    const double fd = (bessel_j(nu + h, x) - bessel_j(nu - h, x)) / (2.0 * h);
    const double fd2 = (bessel_j(nu + 2.0 * h, x) - bessel_j(nu - 2.0 * h, x)) / (4.0 * h);
    CHECK(std::abs(fd - fd2) < 0.01 * std::max(1.0, std::abs(fd)));
}
