// Test-only oracles, kept independent of the implementation paths they
// check.
#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace test_oracle {

/// erfi by its Maclaurin series (2/sqrt(pi)) sum x^{2k+1}/(k!(2k+1)).
/// All terms positive: stable for every x that fits in a double.
inline double erfi_series(double x) {
    const double two_over_sqrt_pi = 1.1283791670955125739;
    const double x2 = x * x;
    double term = x; // x^{2k+1}/k!
    double sum = x;
    for (int k = 1; k < 900; ++k) {
        term *= x2 / static_cast<double>(k);
        const double contrib = term / (2.0 * k + 1.0);
        sum += contrib;
        if (std::abs(contrib) < 1e-17 * std::abs(sum)) {
            break;
        }
    }
    return two_over_sqrt_pi * sum;
}

/// erfi via adaptive Simpson quadrature of e^{t^2} (recursion-free stack).
inline double erfi_quadrature(double x) {
    if (x == 0.0) {
        return 0.0;
    }
    const double sign = x < 0.0 ? -1.0 : 1.0;
    const double b = std::abs(x);
    struct Seg {
        double a, fa, b, fb, m, fm, whole;
        int depth;
    };
    auto f = [](double t) { return std::exp(t * t); };
    auto simpson = [](double a, double fa, double b, double fb, double fm) {
        return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    };
    std::vector<Seg> stack;
    const double fa = f(0.0), fb = f(b), fm = f(0.5 * b);
    stack.push_back({0.0, fa, b, fb, 0.5 * b, fm, simpson(0.0, fa, b, fb, fm), 60});
    double total = 0.0;
    const double tol0 = 1e-14;
    while (!stack.empty()) {
        Seg s = stack.back();
        stack.pop_back();
        const double lm = 0.5 * (s.a + s.m), rm = 0.5 * (s.m + s.b);
        const double flm = f(lm), frm = f(rm);
        const double left = simpson(s.a, s.fa, s.m, s.fm, flm);
        const double right = simpson(s.m, s.fm, s.b, s.fb, frm);
        const double delta = left + right - s.whole;
        if (s.depth <= 0 || std::abs(delta) <= 15.0 * tol0 * std::abs(left + right)) {
            total += left + right + delta / 15.0;
        } else {
            stack.push_back({s.a, s.fa, s.m, s.fm, lm, flm, left, s.depth - 1});
            stack.push_back({s.m, s.fm, s.b, s.fb, rm, frm, right, s.depth - 1});
        }
    }
    const double two_over_sqrt_pi = 1.1283791670955125739;
    return sign * two_over_sqrt_pi * total;
}

/// Exact binomial C(a+n, n) for integer a >= 0, n >= 0, via the
/// multiplicative form; every intermediate is an exact integer.
inline __int128 binomial_shifted(int a, int n) {
    __int128 c = 1;
    for (int k = 1; k <= n; ++k) {
        c = c * (a + k) / k;
    }
    return c;
}

inline double to_double(__int128 v) {
    return static_cast<double>(v);
}

/// Literal coefficient set printed for the deformed-potential instance
/// (alpha1 = alpha2 = alpha3 = 1), as functions of gamma and (alpha, q).
struct LiteralCoeffs {
    double a4, a5, a6, a7, a8, a9, a10, a11, a12, a13;
};

inline LiteralCoeffs literal_coeffs(double g1, double g2, double g3, double alpha, double q) {
    const double fa = 4.0 * alpha * alpha;
    LiteralCoeffs c{};
    c.a4 = 0.0;
    c.a5 = -0.5;
    c.a6 = 0.25 - g1 / fa - g2 / (fa * q) + g3 / (fa * q * q);
    c.a7 = 2.0 * g1 / fa + g2 / (fa * q);
    c.a8 = -g1 / fa;
    c.a9 = 0.25 + g3 / (fa * q * q);
    const double w3 = g1 / fa;
    const double s8 = std::sqrt(-w3);
    const double s9 = std::sqrt(c.a9);
    c.a10 = 1.0 + 2.0 * s8;
    c.a11 = 2.0 + 2.0 * (s9 + s8);
    c.a12 = s8;
    c.a13 = -0.5 - (s9 + s8);
    return c;
}

inline bool close_rel(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

} // namespace test_oracle
