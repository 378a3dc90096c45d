#pragma once

#include <cmath>
#include <string>

#include "dfpep/errors.hpp"

namespace dfpep::specfun {

/// Jacobi P_n^{(a,b)} index set. Classical orthogonality needs a, b > -1;
/// evaluation itself tolerates any real pair.
struct JacobiIndex {
    int n = 0;
    double a = 0.0;
    double b = 0.0;
};

/// Three-term recurrence with grouped coefficients; no factorial ratios, so
/// degrees of a few hundred stay finite. x may lie outside [-1, 1].
inline double jacobi_eval(const JacobiIndex& idx, double x) {
    if (idx.n < 0) {
        throw InvalidDomainError("jacobi_eval: degree must be non-negative");
    }
    const double a = idx.a;
    const double b = idx.b;
    if (idx.n == 0) {
        return 1.0;
    }
    double pm1 = 1.0;
    double p = 0.5 * (a - b) + (1.0 + 0.5 * (a + b)) * x;
    for (int k = 2; k <= idx.n; ++k) {
        const double n = static_cast<double>(k);
        const double apb = a + b;
        const double c1 = 2.0 * n * (n + apb) * (2.0 * n + apb - 2.0);
        const double c2 = (2.0 * n + apb - 1.0) * (a * a - b * b);
        const double c3 = (2.0 * n + apb - 1.0) * (2.0 * n + apb) * (2.0 * n + apb - 2.0);
        const double c4 = 2.0 * (n + a - 1.0) * (n + b - 1.0) * (2.0 * n + apb);
        const double next = ((c2 + c3 * x) * p - c4 * pm1) / c1;
        pm1 = p;
        p = next;
    }
    return p;
}

namespace detail {

/// Maclaurin Dawson, F = sum (-2)^k x^{2k+1} / (2k+1)!!. Alternating, so
/// only safe for small |x|.
inline double dawson_series(double x) {
    const double x2 = x * x;
    double term = x;
    double sum = x;
    for (int k = 0; k < 64; ++k) {
        term *= -2.0 * x2 / (2.0 * k + 3.0);
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) {
            break;
        }
    }
    return sum;
}

/// Rybicki sampling F(x) = (1/sqrt(pi)) sum_{n odd} exp(-(x-nh)^2)/n.
/// Discretization error ~ exp(-(pi/2h)^2); h = 0.2 puts it far below
/// double rounding.
inline double dawson_rybicki(double x) {
    constexpr double h = 0.2;
    constexpr double window = 6.5; // exp(-42) is below double noise
    const double inv_sqrt_pi = 0.56418958354775628695;
    const long n_lo_raw = static_cast<long>(std::floor((x - window) / h));
    const long n_hi_raw = static_cast<long>(std::ceil((x + window) / h));
    long n = n_lo_raw | 1L; // first odd >= n_lo_raw
    if (n < n_lo_raw) {
        n += 2;
    }
    double sum = 0.0;
    for (; n <= n_hi_raw; n += 2) {
        const double d = x - static_cast<double>(n) * h;
        sum += std::exp(-d * d) / static_cast<double>(n);
    }
    return inv_sqrt_pi * sum;
}

} // namespace detail

/// Dawson function F(x) = e^{-x^2} int_0^x e^{t^2} dt. Odd.
inline double dawson(double x) {
    const double ax = std::abs(x);
    const double val = ax <= 1.0 ? detail::dawson_series(ax) : detail::dawson_rybicki(ax);
    return x < 0.0 ? -val : val;
}

/// Largest |x| for which erfi fits in a double (e^{x^2} caps at x ~ 26.6).
inline constexpr double erfi_max_argument = 26.5;

/// Imaginary error function erfi(x) = (2/sqrt(pi)) int_0^x e^{t^2} dt,
/// computed as 2 e^{x^2} Dawson(x) / sqrt(pi). Odd.
inline double erfi(double x) {
    if (std::abs(x) > erfi_max_argument) {
        throw OverflowError("erfi: |x| > " + std::to_string(erfi_max_argument) +
                            " overflows double range");
    }
    const double two_over_sqrt_pi = 1.1283791670955125739;
    return two_over_sqrt_pi * std::exp(x * x) * dawson(x);
}

} // namespace dfpep::specfun
