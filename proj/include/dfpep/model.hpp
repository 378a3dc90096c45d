#pragma once

#include <cmath>
#include <string>

#include "dfpep/errors.hpp"

namespace dfpep {

/// Five-parameter exponential potential
///   V(r) = p1 + p2 z / (1 - q z) + p3 z^2 / (1 - q z)^2,   z = e^{-2 alpha r}.
/// q = 0 is reserved for the product form V = p1 + p2 z + p3 z^2, reachable
/// only through product_form(); the rational constructor rejects it.
struct PotentialParams {
    double p1 = 0.0;
    double p2 = 0.0;
    double p3 = 0.0;
    double q = 1.0;
    double alpha = 1.0;

    static PotentialParams rational(double p1, double p2, double p3, double q, double alpha) {
        if (!(alpha > 0.0)) {
            throw InvalidDomainError("PotentialParams: alpha must be positive");
        }
        if (q == 0.0 || q < -1.0) {
            throw InvalidDomainError("PotentialParams: q must satisfy q > 0 or -1 <= q < 0");
        }
        return PotentialParams{p1, p2, p3, q, alpha};
    }

    /// q -> 0 limit, V = p1 + p2 e^{-2 a r} + p3 e^{-4 a r}.
    static PotentialParams product_form(double p1, double p2, double p3, double alpha) {
        if (!(alpha > 0.0)) {
            throw InvalidDomainError("PotentialParams: alpha must be positive");
        }
        return PotentialParams{p1, p2, p3, 0.0, alpha};
    }

    bool is_product_form() const { return q == 0.0; }
};

/// Centrifugal surrogate  1/r^2 ~ c0 + w z/(1-qz) + l z^2/(1-qz)^2 with the
/// potential's own q and alpha.
struct ApproxScheme {
    double c0 = 1.0 / 12.0;
    double omega = 0.0;
    double lambda = 0.0;

    /// Greene-Aldrich: c0 = 0, omega = 0, lambda = 4 alpha^2. Exact shape
    /// 4 a^2 e^{-4 a r}/(1 - e^{-2 a r})^2 requires the potential to use q = 1.
    static ApproxScheme greene_aldrich(double alpha) {
        return ApproxScheme{0.0, 0.0, 4.0 * alpha * alpha};
    }
};

/// Quantum numbers: radial n >= 0, orbital l >= 0, dimension D >= 1.
struct StateLabel {
    int n = 0;
    int l = 0;
    int D = 3;
};

inline void validate(const StateLabel& s) {
    if (s.n < 0 || s.l < 0 || s.D < 1) {
        throw InvalidDomainError("StateLabel: need n >= 0, l >= 0, D >= 1");
    }
}

/// (D+2l-1)(D+2l-3) as an exact integer. Zero exactly when D+2l = 3;
/// the only negative value is -1 at D+2l = 2.
inline int centrifugal_kappa(const StateLabel& s) {
    const int d2l = s.D + 2 * s.l;
    return (d2l - 1) * (d2l - 3);
}

/// kappa is invariant under (D, l) -> (D+2, l-1); every energy depends on
/// (D, l) only through it.
struct PhysicalConstants {
    double mu = 1.0;   // relativistic rest mass
    double m = 1.0;    // nonrelativistic mass
    double hbar = 1.0;
    double kB = 1.0;
};

inline void validate(const PhysicalConstants& c) {
    if (!(c.mu > 0.0) || !(c.m > 0.0) || !(c.hbar > 0.0) || !(c.kB > 0.0)) {
        throw InvalidDomainError("PhysicalConstants: all constants must be positive");
    }
}

struct GammaCoeffs {
    double g1 = 0.0;
    double g2 = 0.0;
    double g3 = 0.0;

    /// Real decay exponent sqrt(-g1/4a^2) needs g1 <= 0.
    bool bound_exponent_real() const { return g1 <= 0.0; }
};

inline double pole_denominator(const PotentialParams& p, double r) {
    return 1.0 - p.q * std::exp(-2.0 * p.alpha * r);
}

/// V(r). Throws PoleError where 1 - q e^{-2 a r} = 0 (possible only for
/// q >= 1, at r = ln(q)/(2 alpha)).
inline double potential_value(const PotentialParams& p, double r) {
    const double z = std::exp(-2.0 * p.alpha * r);
    if (p.is_product_form()) {
        return p.p1 + p.p2 * z + p.p3 * z * z;
    }
    const double denom = 1.0 - p.q * z;
    if (denom == 0.0) {
        throw PoleError("potential_value: 1 - q e^{-2 a r} = 0 at r = " + std::to_string(r));
    }
    const double w = z / denom;
    return p.p1 + p.p2 * w + p.p3 * w * w;
}

/// The 1/r^2 surrogate evaluated at r. Same pole as the potential.
inline double approx_inv_r2(const ApproxScheme& s, const PotentialParams& p, double r) {
    const double z = std::exp(-2.0 * p.alpha * r);
    const double denom = 1.0 - p.q * z;
    if (denom == 0.0) {
        throw PoleError("approx_inv_r2: 1 - q e^{-2 a r} = 0 at r = " + std::to_string(r));
    }
    const double w = z / denom;
    return s.c0 + s.omega * w + s.lambda * w * w;
}

/// gamma_1 = E^2 - mu^2 - 2(E+mu) p1 - c0 k/4
/// gamma_2 = 2(E+mu) p2 + k w/4
/// gamma_3 = 2(E+mu) p3 + k l/4,  k = (D+2l-1)(D+2l-3).
inline GammaCoeffs gamma_relativistic(const PotentialParams& p, const ApproxScheme& s,
                                      const StateLabel& st, double E, double mu) {
    const double kappa = static_cast<double>(centrifugal_kappa(st));
    const double coupling = 2.0 * (E + mu);
    GammaCoeffs g;
    g.g1 = E * E - mu * mu - coupling * p.p1 - s.c0 * kappa / 4.0;
    g.g2 = coupling * p.p2 + kappa * s.omega / 4.0;
    g.g3 = coupling * p.p3 + kappa * s.lambda / 4.0;
    return g;
}

/// Nonrelativistic coefficients, obtained from the relativistic ones by
/// E + mu -> 2m/hbar^2 and E - mu -> E. The kappa = 3 instance is the
/// paper's s-wave special case.
inline GammaCoeffs gamma_nonrelativistic(const PotentialParams& p, const ApproxScheme& s,
                                         const StateLabel& st, double E, double m, double hbar) {
    const double kappa = static_cast<double>(centrifugal_kappa(st));
    const double coupling = 4.0 * m / (hbar * hbar);
    GammaCoeffs g;
    g.g1 = 2.0 * m * E / (hbar * hbar) - coupling * p.p1 - s.c0 * kappa / 4.0;
    g.g2 = coupling * p.p2 + kappa * s.omega / 4.0;
    g.g3 = coupling * p.p3 + kappa * s.lambda / 4.0;
    return g;
}

struct OmegaCoeffs {
    double w1 = 0.0;
    double w2 = 0.0;
    double w3 = 0.0;

    double xi1() const { return -w1; }
    double xi2() const { return w2; }
    double xi3() const { return -w3; }
};

/// w1 = g1/4a^2 + g2/4a^2q - g3/4a^2q^2, w2 = -(2 g1/4a^2 + g2/4a^2q),
/// w3 = g1/4a^2.
inline OmegaCoeffs omega_coeffs(const GammaCoeffs& g, double alpha, double q) {
    if (alpha == 0.0 || q == 0.0) {
        throw InvalidDomainError("omega_coeffs: alpha and q must be nonzero");
    }
    const double fa = 4.0 * alpha * alpha;
    OmegaCoeffs w;
    w.w1 = g.g1 / fa + g.g2 / (fa * q) - g.g3 / (fa * q * q);
    w.w2 = -(2.0 * g.g1 / fa + g.g2 / (fa * q));
    w.w3 = g.g1 / fa;
    return w;
}

enum class EtaBranch { plus, minus };
enum class Q1Mode {
    printed, // k c0 / (16 hbar a^2)
    hbar2    // k c0 / (16 a^2): makes the Q1 term reproduce hbar^2 k c0 / (8m)
};

struct RecastCoeffs {
    double Q1 = 0.0;
    double Q2 = 0.0;
    double sigma = 1.0; // >= 1/2
    double eta = 0.0;   // level cap; n runs over 0..floor(eta)
};

/// Constants of the recast spectrum E(rho) with rho = n + sigma. Uses the
/// nonrelativistic gamma_2, gamma_3 (no energy dependence).
inline RecastCoeffs recast_coeffs(const PotentialParams& p, const ApproxScheme& s,
                                  const StateLabel& st, const PhysicalConstants& c,
                                  Q1Mode q1_mode = Q1Mode::printed,
                                  EtaBranch branch = EtaBranch::plus) {
    if (p.q == 0.0) {
        throw InvalidDomainError("recast_coeffs: product-form potential has no q-deformed recast");
    }
    const double kappa = static_cast<double>(centrifugal_kappa(st));
    const double a2 = p.alpha * p.alpha;
    const GammaCoeffs g = gamma_nonrelativistic(p, s, st, 0.0, c.m, c.hbar); // g2, g3 only

    RecastCoeffs rc;
    rc.Q1 = 2.0 * c.m * p.p1 / (c.hbar * c.hbar * a2);
    if (q1_mode == Q1Mode::printed) {
        rc.Q1 += kappa * s.c0 / (16.0 * c.hbar * a2);
    } else {
        rc.Q1 += kappa * s.c0 / (16.0 * a2);
    }
    rc.Q2 = -(g.g2 / (4.0 * a2 * p.q) + g.g3 / (4.0 * a2 * p.q * p.q));

    const double sigma_radicand = 1.0 + g.g3 / (a2 * p.q * p.q);
    if (sigma_radicand < 0.0) {
        throw InvalidDomainError("recast_coeffs: sigma radicand negative");
    }
    rc.sigma = 0.5 * (1.0 + std::sqrt(sigma_radicand));

    if (rc.Q1 < 0.0 || rc.Q1 < rc.Q2) {
        throw InvalidDomainError(
            "recast_coeffs: no bound states guaranteed by cap formula (needs Q1 >= 0 and Q1 >= Q2)");
    }
    const double r1 = std::sqrt(rc.Q1);
    const double r2 = std::sqrt(rc.Q1 - rc.Q2);
    rc.eta = branch == EtaBranch::plus ? -rc.sigma + r1 + r2 : -rc.sigma + r1 - r2;
    return rc;
}

} // namespace dfpep
