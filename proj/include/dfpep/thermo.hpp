#pragma once

#include <cmath>
#include <optional>
#include <string>

#include "dfpep/errors.hpp"
#include "dfpep/model.hpp"
#include "dfpep/numeric.hpp"
#include "dfpep/specfun.hpp"

namespace dfpep::thermo {

/// Boltzmann-exponent constants of the recast spectrum:
///   -beta E_n = A beta + beta B/(n+sigma)^2 + beta C (n+sigma)^2.
struct ThermoCoeffs {
    double A = 0.0;
    double B = 0.0;     // >= 0 when built from a recast (C Q2^2)
    double Ccoef = 0.0; // hbar^2 a^2 / 2m > 0
    double sigma = 1.0;
    double eta = 0.0;
    double beta = 1.0; // 1/(kB T)
    double kB = 1.0;
};

/// A = (2 hbar^2 a^2/m)(Q2/2 - Q1), B = hbar^2 a^2 Q2^2/(2m),
/// C = hbar^2 a^2/(2m).
inline ThermoCoeffs thermo_coeffs(const RecastCoeffs& rc, double alpha, double m, double hbar,
                                  double beta, double kB = 1.0) {
    if (!(beta > 0.0)) {
        throw InvalidDomainError("thermo_coeffs: beta must be positive");
    }
    const double c = hbar * hbar * alpha * alpha / (2.0 * m);
    ThermoCoeffs tc;
    tc.A = 4.0 * c * (0.5 * rc.Q2 - rc.Q1);
    tc.B = c * rc.Q2 * rc.Q2;
    tc.Ccoef = c;
    tc.sigma = rc.sigma;
    tc.eta = rc.eta;
    tc.beta = beta;
    tc.kB = kB;
    return tc;
}

/// E_n = -(A + B/(n+sigma)^2 + C (n+sigma)^2); equals the recast closed form.
inline double level_energy(const ThermoCoeffs& tc, int n) {
    const double rho = static_cast<double>(n) + tc.sigma;
    return -(tc.A + tc.B / (rho * rho) + tc.Ccoef * rho * rho);
}

inline constexpr double exponent_guard = 700.0;

/// Z = sum_{n=0}^{levels-1} exp(A b + b B/(n+s)^2 + b C (n+s)^2). The level
/// count comes from bound_state_count. Exponents beyond 700 abort with the
/// offending n.
inline double partition_sum(const ThermoCoeffs& tc, int levels) {
    if (levels < 1) {
        throw InvalidDomainError("partition_sum: need at least one level");
    }
    double z = 0.0;
    for (int n = 0; n < levels; ++n) {
        const double rho = static_cast<double>(n) + tc.sigma;
        const double expo = tc.beta * (tc.A + tc.B / (rho * rho) + tc.Ccoef * rho * rho);
        if (expo > exponent_guard) {
            throw OverflowError("partition_sum: exponent > 700 at n = " + std::to_string(n));
        }
        z += std::exp(expo);
    }
    return z;
}

enum class Bounds {
    printed, // integral over rho in [0, eta]
    shifted  // integral over rho in [sigma, eta + sigma]
};

namespace detail {

inline double integrand(const ThermoCoeffs& tc, double rho) {
    if (rho == 0.0) {
        // only reachable with beta B < 0, where the integrand vanishes
        return 0.0;
    }
    const double expo = tc.beta * (tc.A + tc.B / (rho * rho) + tc.Ccoef * rho * rho);
    if (expo > exponent_guard) {
        throw OverflowError("partition_integral: exponent > 700 at rho = " + std::to_string(rho));
    }
    return std::exp(expo);
}

} // namespace detail

/// Classical-limit Z by quadrature to relative tolerance 1e-10. With the
/// printed [0, eta] bounds a positive beta*B makes the rho -> 0 end diverge;
/// that is reported, never regularized. The shifted [sigma, eta+sigma]
/// bounds follow the actual range of rho = n + sigma.
inline double partition_integral(const ThermoCoeffs& tc, Bounds bounds = Bounds::printed) {
    if (!(tc.eta > 0.0)) {
        throw InvalidDomainError("partition_integral: eta must be positive");
    }
    double lo = 0.0;
    double hi = tc.eta;
    if (bounds == Bounds::shifted) {
        lo = tc.sigma;
        hi = tc.eta + tc.sigma;
    } else if (tc.beta * tc.B > 0.0) {
        throw DivergenceError(
            "partition_integral: beta*B > 0 diverges at rho -> 0 with printed bounds");
    }
    auto f = [&tc](double rho) { return detail::integrand(tc, rho); };
    return numeric::adaptive_simpson(f, lo, hi, 1e-10);
}

struct ClosedFormResult {
    double value = 0.0;
    std::optional<double> quadrature; // reference integral, if it exists
    Bounds quadrature_bounds = Bounds::printed;
    std::optional<double> disagreement; // |closed - quad| / max(|quad|, eps)
};

/// The printed closed form
///   1/2 e^{b C r^2 + b A} sqrt(bB) [ 2 eta e^{B/eta^2}/sqrt(bB)
///     - 2 sqrt(bB) sqrt(pi) erfi(sqrt(bB)/eta)/sqrt(bB) - 2 sqrt(pi) ],
/// evaluated verbatim with the leftover integration variable read as eta.
/// Real only for beta*B > 0. The disagreement against the quadrature Z is a
/// reported metric, never asserted zero.
inline ClosedFormResult partition_closed_form(const ThermoCoeffs& tc) {
    if (!(tc.eta > 0.0)) {
        throw InvalidDomainError("partition_closed_form: eta must be positive");
    }
    const double bb = tc.beta * tc.B;
    if (bb <= 0.0) {
        throw InvalidDomainError(
            "partition_closed_form: beta*B <= 0 makes the printed erfi argument imaginary");
    }
    const double sqrt_bb = std::sqrt(bb);
    const double sqrt_pi = 1.7724538509055160273;
    const double prefactor =
        0.5 * std::exp(tc.beta * tc.Ccoef * tc.eta * tc.eta + tc.beta * tc.A) * sqrt_bb;
    const double bracket = 2.0 * tc.eta * std::exp(tc.B / (tc.eta * tc.eta)) / sqrt_bb -
                           2.0 * sqrt_pi * specfun::erfi(sqrt_bb / tc.eta) - 2.0 * sqrt_pi;
    ClosedFormResult out;
    out.value = prefactor * bracket;
    try {
        out.quadrature = partition_integral(tc, Bounds::printed);
        out.quadrature_bounds = Bounds::printed;
    } catch (const DivergenceError&) {
        out.quadrature = partition_integral(tc, Bounds::shifted);
        out.quadrature_bounds = Bounds::shifted;
    }
    if (out.quadrature.has_value()) {
        out.disagreement =
            std::abs(out.value - *out.quadrature) / std::max(std::abs(*out.quadrature), 1e-300);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Canonical thermodynamics on the quadrature Z. U and C are the exact
// derivative moments of the Boltzmann weight,
//   U = <E>,  C = kB beta^2 (<E^2> - <E>^2),
// evaluated by the same quadrature as Z itself: differentiating under the
// integral is exact, while finite differences on ln Z bottom out near
// eps/h^2 and cannot certify the degenerate B = C = 0 identities. The
// *_fd variants keep the finite-difference route as a cross-check.
// ---------------------------------------------------------------------------

namespace detail {

inline void integral_bounds(const ThermoCoeffs& tc, Bounds bounds, double& lo, double& hi) {
    if (!(tc.eta > 0.0)) {
        throw InvalidDomainError("thermo: eta must be positive");
    }
    if (bounds == Bounds::shifted) {
        lo = tc.sigma;
        hi = tc.eta + tc.sigma;
    } else {
        if (tc.beta * tc.B > 0.0) {
            throw DivergenceError("thermo: beta*B > 0 diverges with printed bounds");
        }
        lo = 0.0;
        hi = tc.eta;
    }
}

inline double weighted_moment(const ThermoCoeffs& tc, Bounds bounds,
                              const std::function<double(double)>& g) {
    double lo = 0.0, hi = 0.0;
    integral_bounds(tc, bounds, lo, hi);
    auto f = [&](double rho) {
        const double w = integrand(tc, rho);
        return w == 0.0 ? 0.0 : g(rho) * w;
    };
    return numeric::adaptive_simpson(f, lo, hi, 1e-10);
}

inline double energy_at(const ThermoCoeffs& tc, double rho) {
    return -(tc.A + tc.B / (rho * rho) + tc.Ccoef * rho * rho);
}

} // namespace detail

/// U = <E> over the classical-limit weight.
inline double mean_energy(const ThermoCoeffs& tc, Bounds bounds = Bounds::printed) {
    const double z = partition_integral(tc, bounds);
    if (!(z > 0.0)) {
        throw InvalidDomainError("mean_energy: Z must be positive");
    }
    const double num =
        detail::weighted_moment(tc, bounds, [&](double rho) { return detail::energy_at(tc, rho); });
    return num / z;
}

/// C = kB beta^2 Var(E) over the classical-limit weight (two-pass variance).
inline double specific_heat(const ThermoCoeffs& tc, Bounds bounds = Bounds::printed) {
    const double z = partition_integral(tc, bounds);
    if (!(z > 0.0)) {
        throw InvalidDomainError("specific_heat: Z must be positive");
    }
    const double mean =
        detail::weighted_moment(tc, bounds, [&](double rho) { return detail::energy_at(tc, rho); }) /
        z;
    const double var = detail::weighted_moment(tc, bounds, [&](double rho) {
                           const double d = detail::energy_at(tc, rho) - mean;
                           return d * d;
                       }) /
                       z;
    return tc.kB * tc.beta * tc.beta * var;
}

/// F = -(1/beta) ln Z; kB is inside beta.
inline double free_energy(const ThermoCoeffs& tc, Bounds bounds = Bounds::printed) {
    const double z = partition_integral(tc, bounds);
    if (!(z > 0.0)) {
        throw InvalidDomainError("free_energy: Z must be positive");
    }
    return -std::log(z) / tc.beta;
}

/// U = -d(ln Z)/d(beta) by 5-point central differences with Richardson,
/// step h = 1e-4 beta.
inline double mean_energy_fd(const ThermoCoeffs& tc, Bounds bounds = Bounds::printed) {
    auto lnz = [&](double beta) {
        ThermoCoeffs t = tc;
        t.beta = beta;
        return std::log(partition_integral(t, bounds));
    };
    return -numeric::derivative(lnz, tc.beta, 1e-4 * tc.beta);
}

/// C = kB beta^2 d^2(ln Z)/d(beta)^2, same differencing scheme.
inline double specific_heat_fd(const ThermoCoeffs& tc, Bounds bounds = Bounds::printed) {
    auto lnz = [&](double beta) {
        ThermoCoeffs t = tc;
        t.beta = beta;
        return std::log(partition_integral(t, bounds));
    };
    return tc.kB * tc.beta * tc.beta * numeric::second_derivative(lnz, tc.beta, 1e-4 * tc.beta);
}

// Discrete-sum counterparts (exact derivatives of ln of the finite sum).

inline double mean_energy_sum(const ThermoCoeffs& tc, int levels) {
    const double z = partition_sum(tc, levels);
    double num = 0.0;
    for (int n = 0; n < levels; ++n) {
        const double rho = static_cast<double>(n) + tc.sigma;
        num += detail::energy_at(tc, rho) *
               std::exp(tc.beta * (tc.A + tc.B / (rho * rho) + tc.Ccoef * rho * rho));
    }
    return num / z;
}

inline double specific_heat_sum(const ThermoCoeffs& tc, int levels) {
    const double z = partition_sum(tc, levels);
    const double mean = mean_energy_sum(tc, levels);
    double var = 0.0;
    for (int n = 0; n < levels; ++n) {
        const double rho = static_cast<double>(n) + tc.sigma;
        const double d = detail::energy_at(tc, rho) - mean;
        var += d * d * std::exp(tc.beta * (tc.A + tc.B / (rho * rho) + tc.Ccoef * rho * rho));
    }
    return tc.kB * tc.beta * tc.beta * var / z;
}

inline double free_energy_sum(const ThermoCoeffs& tc, int levels) {
    return -std::log(partition_sum(tc, levels)) / tc.beta;
}

// ---------------------------------------------------------------------------
// Printed-form diagnostics. The paper's delta/Lambda expansions inherit the
// closed form's leftover integration variable (read as eta here); they are
// evaluated verbatim for comparison output and nothing is built on them.
// ---------------------------------------------------------------------------

/// The printed U = -(2 d1 - d2/4 + d3)/d4 expression.
inline double mean_energy_printed(const ThermoCoeffs& tc) {
    const double bb = tc.beta * tc.B;
    if (bb <= 0.0) {
        throw InvalidDomainError("mean_energy_printed: beta*B must be positive");
    }
    const double sqrt_pi = 1.7724538509055160273;
    const double pi = 3.1415926535897932385;
    const double rho = tc.eta;
    const double eta = tc.eta;
    const double sqrt_bb = std::sqrt(bb);
    const double e_pref = std::exp(tc.beta * tc.Ccoef * rho * rho + tc.beta * tc.A);
    const double erfi_term = specfun::erfi(sqrt_bb / eta);
    const double e_b_eta2 = std::exp(tc.B / (eta * eta));

    const double d1 = 0.5 * e_pref * (tc.Ccoef * rho * rho + tc.A) * sqrt_bb *
                      (2.0 * eta * e_b_eta2 / sqrt_bb - 2.0 * sqrt_bb * sqrt_pi * erfi_term -
                       2.0 * pi);
    const double d2 = e_pref *
                      (2.0 * eta * e_b_eta2 / sqrt_bb -
                       2.0 * sqrt_bb * sqrt_pi * erfi_term / sqrt_bb - 2.0 * sqrt_pi) *
                      tc.B / sqrt_bb;
    const double d3 = 0.5 * e_pref * sqrt_bb *
                      (eta * e_b_eta2 / std::pow(bb, 1.5) -
                       sqrt_pi * erfi_term * tc.B / (sqrt_bb * sqrt_bb) -
                       2.0 * tc.B * e_b_eta2 / (eta * sqrt_bb) -
                       sqrt_bb * sqrt_pi * erfi_term * tc.B / std::pow(bb, 1.5));
    const double d4 = e_pref * sqrt_bb *
                      (2.0 * eta * e_b_eta2 / sqrt_bb -
                       2.0 * sqrt_bb * sqrt_pi * erfi_term / sqrt_bb - 2.0 * sqrt_pi);
    return -(2.0 * d1 - 0.25 * d2 + d3) / d4;
}

/// The printed C = k beta^2 d/dbeta[(2 L1 + L2 + L3)/L4] expression; the
/// outer derivative is taken numerically.
inline double specific_heat_printed(const ThermoCoeffs& tc) {
    auto ratio = [&tc](double beta) {
        const double bb = beta * tc.B;
        if (bb <= 0.0) {
            throw InvalidDomainError("specific_heat_printed: beta*B must be positive");
        }
        const double sqrt_pi = 1.7724538509055160273;
        const double rho = tc.eta;
        const double eta = tc.eta;
        const double sqrt_bb = std::sqrt(bb);
        const double sqrt_b = std::sqrt(tc.B);
        const double e_pref = std::exp(beta * tc.Ccoef * rho * rho + beta * tc.A);
        const double erfi_term = specfun::erfi(sqrt_bb / eta);
        const double e_bb_eta2 = std::exp(bb / (eta * eta));

        const double l1 = 0.5 * (tc.Ccoef * rho * rho + tc.A) * e_pref * sqrt_bb *
                          (2.0 * eta * e_bb_eta2 / sqrt_bb -
                           2.0 * sqrt_b * sqrt_pi * erfi_term / sqrt_bb - 2.0 * sqrt_pi);
        const double l2 = 0.25 * e_pref *
                          (2.0 * eta * e_bb_eta2 / sqrt_bb -
                           2.0 * sqrt_b * sqrt_pi * erfi_term / sqrt_bb - 2.0 * sqrt_pi) *
                          tc.B / std::sqrt(beta);
        const double l3 = 0.5 * e_pref * sqrt_bb *
                          (2.0 * tc.B * e_bb_eta2 / (eta * sqrt_bb) -
                           eta * tc.B * e_bb_eta2 / std::pow(bb, 1.5) -
                           2.0 * sqrt_b * e_bb_eta2 / (eta * beta) +
                           std::pow(tc.B, 1.5) * sqrt_pi * erfi_term / std::pow(bb, 1.5));
        const double l4 = e_pref * sqrt_bb *
                          (2.0 * eta * e_bb_eta2 / sqrt_bb -
                           2.0 * sqrt_b * sqrt_pi * erfi_term / sqrt_bb - 2.0 * sqrt_pi);
        return (2.0 * l1 + l2 + l3) / l4;
    };
    return tc.kB * tc.beta * tc.beta * numeric::derivative(ratio, tc.beta, 1e-4 * tc.beta);
}

} // namespace dfpep::thermo
