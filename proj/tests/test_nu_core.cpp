#include "doctest.h"

#include <cmath>
#include <random>

#include "dfpep/model.hpp"
#include "dfpep/nu_core.hpp"
#include "oracles.hpp"

using namespace dfpep;

TEST_CASE("derive: all-zero xi instance by hand substitution") {
    const auto d = nu::derive({1, 1, 1, 0, 0, 0});
    CHECK(d.a4 == 0.0);
    CHECK(d.a5 == -0.5);
    CHECK(d.a6 == 0.25);
    CHECK(d.a7 == 0.0);
    CHECK(d.a8 == 0.0);
    CHECK(d.a9 == 0.25);
    CHECK(d.a10 == 1.0);
    // a11 = a2 - 2 a5 + 2(sqrt(a9) + a3 sqrt(a8)) = 1 + 1 + 1
    CHECK(d.a11 == 3.0);
    CHECK(d.a12 == 0.0);
    CHECK(d.a13 == -1.0);
    CHECK(d.all_real());
}

TEST_CASE("derive: fixed a4 = 0, a5 = -1/2 whenever a1 = a2 = a3 = 1") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> xi(-3.0, 3.0);
    for (int i = 0; i < 200; ++i) {
        const auto d = nu::derive({1, 1, 1, xi(rng), xi(rng), std::abs(xi(rng))});
        CHECK(d.a4 == 0.0);
        CHECK(d.a5 == -0.5);
    }
}

TEST_CASE("derive flags complex radicands instead of clamping") {
    const auto d = nu::derive({1, 1, 1, 0, 0, -0.5}); // a8 = -0.5
    CHECK_FALSE(d.real8);
    CHECK(d.rad8 == doctest::Approx(-0.5));
    // degenerate tolerance band treated as zero
    const auto dz = nu::derive({1, 1, 1, 0, 0, -1e-13});
    CHECK(dz.real8);
    CHECK(dz.a8 == 0.0);
}

TEST_CASE("generic chain equals the literal instanced coefficients (1000 draws)") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> gdist(-4.0, 4.0);
    std::uniform_real_distribution<double> gneg(-4.0, 0.0);
    std::uniform_real_distribution<double> adist(0.05, 2.0);
    std::uniform_real_distribution<double> qdist(0.2, 2.0);
    int checked = 0;
    while (checked < 1000) {
        const double g1 = gneg(rng); // keep sqrt(-w3) real
        const double g2 = gdist(rng);
        const double g3 = gdist(rng);
        const double alpha = adist(rng);
        const double q = qdist(rng);
        const auto lit = test_oracle::literal_coeffs(g1, g2, g3, alpha, q);
        if (lit.a9 < 0.0) {
            continue; // literal print assumes a real t radicand
        }
        const auto w = omega_coeffs({g1, g2, g3}, alpha, q);
        const auto d = nu::derive({1, 1, 1, w.xi1(), w.xi2(), w.xi3()});
        REQUIRE(d.all_real());
        CHECK(test_oracle::close_rel(d.a6, lit.a6, 1e-12));
        CHECK(test_oracle::close_rel(d.a7, lit.a7, 1e-12));
        CHECK(test_oracle::close_rel(d.a8, lit.a8, 1e-12));
        CHECK(test_oracle::close_rel(d.a9, lit.a9, 1e-12));
        CHECK(test_oracle::close_rel(d.a10, lit.a10, 1e-12));
        CHECK(test_oracle::close_rel(d.a11, lit.a11, 1e-12));
        CHECK(test_oracle::close_rel(d.a12, lit.a12, 1e-12));
        CHECK(test_oracle::close_rel(d.a13, lit.a13, 1e-12));
        ++checked;
    }
    CHECK(checked == 1000);
}

TEST_CASE("quantization residual: the xi = 0 instance collapses to (n+1)^2") {
    // a2 = a3 = 1, a5 = -1/2, a7 = a8 = 0, a9 = 1/4:
    // residual = n^2 + (2n+1)/2 + (2n+1)/2 = (n+1)^2
    for (int n = 0; n <= 6; ++n) {
        const double r = nu::quantization_residual({1, 1, 1, 0, 0, 0}, n);
        CHECK(r == doctest::Approx((n + 1.0) * (n + 1.0)).epsilon(1e-14));
    }
}

TEST_CASE("quantization residual is strictly increasing in n for the instanced family") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> xi(0.0, 2.0);
    for (int i = 0; i < 50; ++i) {
        const nu::NuInput in{1, 1, 1, xi(rng), -xi(rng), xi(rng)};
        double prev = nu::quantization_residual(in, 0);
        for (int n = 1; n <= 8; ++n) {
            const double cur = nu::quantization_residual(in, n);
            CHECK(cur > prev);
            prev = cur;
        }
    }
}

TEST_CASE("quantization residual refuses complex coefficients") {
    CHECK_THROWS_AS(nu::quantization_residual({1, 1, 1, 0, 0, -1.0}, 0), InvalidDomainError);
}

TEST_CASE("eigenfunction shape: instanced exponents and Jacobi pair") {
    SUBCASE("xi3 = 0 gives zero s-exponent") {
        const auto d = nu::derive({1, 1, 1, 0.3, -0.2, 0.0});
        REQUIRE(d.all_real());
        const auto shape = nu::eigenfunction_shape(d, 2);
        CHECK(shape.exponent_s == 0.0);
        CHECK(shape.jacobi.a == doctest::Approx(0.0));
    }

    SUBCASE("a-index is twice the s-exponent when a1 = 1") {
        std::mt19937_64 rng(77);
        std::uniform_real_distribution<double> xi(0.0, 3.0);
        for (int i = 0; i < 100; ++i) {
            const auto d = nu::derive({1, 1, 1, xi(rng), xi(rng) - 1.5, xi(rng)});
            if (!d.all_real()) {
                continue;
            }
            const auto shape = nu::eigenfunction_shape(d, 1);
            CHECK(shape.jacobi.a == doctest::Approx(2.0 * shape.exponent_s).epsilon(1e-13));
            // (1 - a3 s) exponent equals 1/2 + sqrt(a9)
            CHECK(shape.exponent_1ms ==
                  doctest::Approx(0.5 + std::sqrt(d.a9)).epsilon(1e-13));
        }
    }
}
