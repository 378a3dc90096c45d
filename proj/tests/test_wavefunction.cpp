#include "doctest.h"

#include <cmath>

#include "dfpep/oracle.hpp"
#include "dfpep/spectrum.hpp"
#include "dfpep/wavefunction.hpp"
#include "oracles.hpp"

using namespace dfpep;
namespace wf = dfpep::wavefun;

namespace {

// binding variant of the table parameters (p2 < 0), nonrelativistic context
const PotentialParams bound_pot = PotentialParams::rational(1.0, -2.0, 1.0, 1.0, 0.1);
const ApproxScheme bound_scheme{1.0 / 12.0, 2.0, 4.0};
constexpr double bound_m = 2.0;

wf::RadialSolution bound_solution(int n, int l, int D,
                                  wf::ExponentConvention conv = wf::ExponentConvention::a3_consistent) {
    const StateLabel st{n, l, D};
    const double e = spectrum::nonrelativistic_energy(st, bound_pot, bound_scheme, bound_m, 1.0);
    return wf::make_nonrelativistic_solution(bound_pot, bound_scheme, st, e, bound_m, 1.0, conv);
}

} // namespace

TEST_CASE("decay and origin limits for a valid bound solution") {
    const auto sol = bound_solution(0, 0, 3);
    REQUIRE(sol.valid());
    CHECK(sol.exponent_z > 0.0);
    const double peak = std::abs(wf::eval_F(sol, 5.0));
    CHECK(std::abs(wf::eval_F(sol, 120.0)) < 1e-8 * peak);
    CHECK(std::abs(wf::eval_F(sol, 1e-4)) < 1e-6 * peak); // q = 1: (1-z)^w -> 0
}

TEST_CASE("ground state has a single positive lobe") {
    const auto sol = bound_solution(0, 0, 3);
    for (double r = 0.05; r < 40.0; r += 0.05) {
        CHECK(wf::eval_F(sol, r) > 0.0);
    }
}

TEST_CASE("figure-4 configuration: relativistic n=0 profile is a positive lobe") {
    const auto p = PotentialParams::rational(2.0, 1.0, 0.5, 1.0, 0.4);
    const ApproxScheme s{1.0, 1.0, 0.01};
    const double E = 5.29524, mu = 1.0;
    const auto sol = wf::make_relativistic_solution(p, s, {0, 1, 3}, E, mu);
    REQUIRE(sol.valid());
    double peak = 0.0;
    for (double r = 0.1; r < 60.0; r += 0.1) {
        const double f = wf::eval_F(sol, r);
        CHECK(f >= 0.0);
        peak = std::max(peak, f);
    }
    CHECK(peak > 0.0);
    const auto nodes = wf::count_nodes(sol, 80.0, 4000);
    CHECK(nodes.nodes == 0);
}

TEST_CASE("R(r) dimension factor") {
    const auto sol1 = bound_solution(0, 1, 1);
    CHECK(wf::eval_R(sol1, 2.3) == doctest::Approx(wf::eval_F(sol1, 2.3)).epsilon(1e-14));
    const auto sol3 = bound_solution(0, 0, 3);
    CHECK(wf::eval_R(sol3, 2.3) ==
          doctest::Approx(wf::eval_F(sol3, 2.3) / 2.3).epsilon(1e-14));
}

TEST_CASE("node count equals the radial quantum number (n <= 5)") {
    for (int n = 0; n <= 5; ++n) {
        const auto sol = wf::normalize(bound_solution(n, 0, 3));
        const auto count = wf::count_nodes(sol, 150.0, 20000);
        CHECK(count.nodes == n);
        CHECK(count.tail_decayed);
    }
}

TEST_CASE("count_nodes preconditions") {
    const auto sol = bound_solution(0, 0, 3);
    CHECK_THROWS_AS(wf::count_nodes(sol, 50.0, 999), InvalidDomainError);

    // gamma1 > 0 (scattering-side energy) flags the solution; operations refuse
    const auto invalid = wf::make_nonrelativistic_solution(bound_pot, bound_scheme, {0, 0, 3},
                                                           5.0, bound_m, 1.0);
    CHECK_FALSE(invalid.valid());
    CHECK_THROWS_AS(wf::count_nodes(invalid, 50.0, 2000), InvalidDomainError);
    CHECK_THROWS_AS(wf::eval_F(invalid, 1.0), InvalidDomainError);
    CHECK_THROWS_AS(wf::normalize(invalid), InvalidDomainError);
}

TEST_CASE("q < 0 evaluation is refused") {
    const auto p = PotentialParams::rational(0.0, -1.0, 0.0, -0.5, 0.3);
    const ApproxScheme s{0.0, 0.0, 0.0};
    // energies still evaluate for q < 0
    const double e = spectrum::nonrelativistic_energy({0, 0, 3}, p, s, 1.0, 1.0);
    auto sol = wf::make_nonrelativistic_solution(p, s, {0, 0, 3}, e, 1.0, 1.0);
    if (sol.valid()) {
        CHECK_THROWS_AS(wf::eval_F(sol, 1.0), InvalidDomainError);
    }
}

TEST_CASE("normalization: unit norm, idempotence, projective invariance") {
    const auto sol = bound_solution(1, 0, 3);
    const auto normed = wf::normalize(sol);

    auto f2 = [&](double r) {
        const double f = wf::eval_F(normed, r);
        return f * f;
    };
    const double total = numeric::adaptive_simpson(f2, 0.0, 200.0, 1e-11);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-8));

    const auto again = wf::normalize(normed);
    CHECK(again.norm == doctest::Approx(normed.norm).epsilon(1e-10));

    auto scaled = sol;
    scaled.norm *= 7.0;
    const auto normed_scaled = wf::normalize(scaled);
    CHECK(normed_scaled.norm == doctest::Approx(normed.norm).epsilon(1e-12));
}

TEST_CASE("normalized F matches the oracle eigenvector pointwise to 1e-3") {
    const StateLabel st{0, 0, 3};
    const double e_analytic =
        spectrum::nonrelativistic_energy(st, bound_pot, bound_scheme, bound_m, 1.0);
    const auto sol = wf::normalize(
        wf::make_nonrelativistic_solution(bound_pot, bound_scheme, st, e_analytic, bound_m, 1.0));

    const oracle::GridSpec grid{80.0, 8000};
    const auto T = oracle::build_hamiltonian(bound_pot, bound_scheme, st, bound_m, 1.0, grid,
                                             oracle::CentrifugalMode::exact);
    const double lam = oracle::lowest_eigenvalues(T, 1)[0];
    CHECK(lam == doctest::Approx(e_analytic).epsilon(1e-4));
    const auto v = oracle::eigenvector(T, lam);

    double peak = 0.0;
    for (double x : v) {
        peak = std::max(peak, std::abs(x));
    }
    for (std::size_t i = 49; i < v.size(); i += 50) {
        const double r = T.h * static_cast<double>(i + 1);
        const double f = wf::eval_F(sol, r);
        CHECK(std::abs(f - v[i]) < 1e-3 * peak);
    }
}

TEST_CASE("the a3-consistent exponent matches the oracle; the printed one does not") {
    const StateLabel st{0, 0, 3};
    const double e =
        spectrum::nonrelativistic_energy(st, bound_pot, bound_scheme, bound_m, 1.0);
    const oracle::GridSpec grid{80.0, 8000};
    const auto T = oracle::build_hamiltonian(bound_pot, bound_scheme, st, bound_m, 1.0, grid,
                                             oracle::CentrifugalMode::exact);
    const auto v = oracle::eigenvector(T, oracle::lowest_eigenvalues(T, 1)[0]);
    double peak = 0.0;
    for (double x : v) {
        peak = std::max(peak, std::abs(x));
    }

    auto max_gap = [&](wf::ExponentConvention conv) {
        const auto sol = wf::normalize(
            wf::make_nonrelativistic_solution(bound_pot, bound_scheme, st, e, bound_m, 1.0, conv));
        double worst = 0.0;
        for (std::size_t i = 49; i < v.size(); i += 50) {
            const double r = T.h * static_cast<double>(i + 1);
            worst = std::max(worst, std::abs(wf::eval_F(sol, r) - v[i]));
        }
        return worst / peak;
    };

    CHECK(max_gap(wf::ExponentConvention::a3_consistent) < 1e-3);
    CHECK(max_gap(wf::ExponentConvention::printed) > 1e-2);
}
