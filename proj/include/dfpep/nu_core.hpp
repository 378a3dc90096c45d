#pragma once

#include <cmath>

#include "dfpep/errors.hpp"
#include "dfpep/specfun.hpp"

namespace dfpep::nu {

/// Inputs of the parametric ODE
///   psi'' + (a1 - a2 s)/(s(1-a3 s)) psi'
///         + [-xi1 s^2 + xi2 s - xi3]/(s^2 (1-a3 s)^2) psi = 0.
struct NuInput {
    double a1 = 1.0;
    double a2 = 1.0;
    double a3 = 1.0;
    double xi1 = 0.0;
    double xi2 = 0.0;
    double xi3 = 0.0;
};

/// Derived coefficient set. rad8/rad9 are the raw radicands of a8, a9;
/// real8/real9 say whether the square roots below are real. Radicands in
/// (-1e-12, 0) are treated as exact zeros: the E = -mu corner lands there
/// up to float noise.
struct NuDerived {
    double a4 = 0.0, a5 = 0.0, a6 = 0.0, a7 = 0.0;
    double a8 = 0.0, a9 = 0.0;
    double a10 = 0.0, a11 = 0.0, a12 = 0.0, a13 = 0.0;
    double rad8 = 0.0, rad9 = 0.0;
    bool real8 = true, real9 = true;

    bool all_real() const { return real8 && real9; }
};

inline constexpr double radicand_tolerance = 1e-12;

namespace detail {
inline double safe_sqrt(double radicand, bool& real_flag) {
    if (radicand < 0.0) {
        if (radicand > -radicand_tolerance) {
            return 0.0;
        }
        real_flag = false;
        return 0.0;
    }
    return std::sqrt(radicand);
}
} // namespace detail

/// Full coefficient chain a4..a13. Complex square roots are flagged, never
/// silently clamped (except inside the degenerate tolerance band).
inline NuDerived derive(const NuInput& in) {
    NuDerived d;
    d.a4 = 0.5 * (1.0 - in.a1);
    d.a5 = 0.5 * (in.a2 - 2.0 * in.a3);
    d.a6 = d.a5 * d.a5 + in.xi1;
    d.a7 = 2.0 * d.a4 * d.a5 - in.xi2;
    d.rad8 = d.a4 * d.a4 + in.xi3;
    const double sqrt8 = detail::safe_sqrt(d.rad8, d.real8);
    d.a8 = d.real8 ? std::max(d.rad8, 0.0) : d.rad8;
    d.rad9 = in.a3 * d.a7 + in.a3 * in.a3 * d.a8 + d.a6;
    const double sqrt9 = detail::safe_sqrt(d.rad9, d.real9);
    d.a9 = d.real9 ? std::max(d.rad9, 0.0) : d.rad9;
    d.a10 = in.a1 + 2.0 * d.a4 + 2.0 * sqrt8;
    d.a11 = in.a2 - 2.0 * d.a5 + 2.0 * (sqrt9 + in.a3 * sqrt8);
    d.a12 = d.a4 + sqrt8;
    d.a13 = d.a5 - (sqrt9 + in.a3 * sqrt8);
    return d;
}

/// Left side of the quantization condition
///   (a2-a3) n + a3 n^2 - (2n+1) a5 + (2n+1)(sqrt(a9) + a3 sqrt(a8))
///   + a7 + 2 a3 a8 + 2 sqrt(a8 a9).
/// A bound state exists iff this vanishes.
inline double quantization_residual(const NuInput& in, int n) {
    const NuDerived d = derive(in);
    if (!d.all_real()) {
        throw InvalidDomainError("quantization_residual: complex coefficients (a8 or a9 radicand < 0)");
    }
    const double s8 = std::sqrt(d.a8);
    const double s9 = std::sqrt(d.a9);
    const double nn = static_cast<double>(n);
    return (in.a2 - in.a3) * nn + in.a3 * nn * nn - (2.0 * nn + 1.0) * d.a5 +
           (2.0 * nn + 1.0) * (s9 + in.a3 * s8) + d.a7 + 2.0 * in.a3 * d.a8 + 2.0 * s8 * s9;
}

/// Shape of psi(s) = s^{a12} (1 - a3 s)^{-a12 - a13/a3} P_n^{(a,b)}(1 - 2 a3 s)
/// with a = a10 - 1 and b = a11/a3 - a10 - 1.
struct EigenfunctionShape {
    double exponent_s = 0.0;   // a12
    double exponent_1ms = 0.0; // -a12 - a13/a3
    specfun::JacobiIndex jacobi;
};

inline EigenfunctionShape eigenfunction_shape(const NuDerived& d, int degree, double a3 = 1.0) {
    if (!d.all_real()) {
        throw InvalidDomainError("eigenfunction_shape: complex coefficients");
    }
    EigenfunctionShape shape;
    shape.exponent_s = d.a12;
    shape.exponent_1ms = -d.a12 - d.a13 / a3;
    shape.jacobi = specfun::JacobiIndex{degree, d.a10 - 1.0, d.a11 / a3 - d.a10 - 1.0};
    return shape;
}

} // namespace dfpep::nu
