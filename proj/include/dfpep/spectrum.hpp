#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "dfpep/errors.hpp"
#include "dfpep/model.hpp"
#include "dfpep/nu_core.hpp"
#include "dfpep/numeric.hpp"

namespace dfpep::spectrum {

/// Shared pieces of the eigenvalue relation for quantum number n:
///   t  = sqrt(1/4 + g3/(4 a^2 q^2))
///   N  = n^2 + n + 1/2 + g2/(4 a^2 q) + (2n+1) t
///   Dn = 2n + 1 + 2t.
struct RatioParts {
    double radicand = 0.0;
    double t = 0.0;
    double N = 0.0;
    double Dn = 1.0;
    bool real = false;
};

inline RatioParts ratio_parts(const GammaCoeffs& g, double alpha, double q, int n) {
    const double fa = 4.0 * alpha * alpha;
    RatioParts rp;
    rp.radicand = 0.25 + g.g3 / (fa * q * q);
    if (rp.radicand < 0.0) {
        if (rp.radicand <= -nu::radicand_tolerance) {
            return rp;
        }
        rp.radicand = 0.0;
    }
    rp.real = true;
    rp.t = std::sqrt(rp.radicand);
    const double nn = static_cast<double>(n);
    rp.N = nn * nn + nn + 0.5 + g.g2 / (fa * q) + (2.0 * nn + 1.0) * rp.t;
    rp.Dn = 2.0 * nn + 1.0 + 2.0 * rp.t;
    return rp;
}

/// f(E) = (E^2 - mu^2) + 4 a^2 (N/Dn)^2 - 2(E+mu) p1 - k c0/4. A root is an
/// eigenvalue of the squared relation. Returns nullopt where the t-radicand
/// is negative (excluded E region, never a throw inside scans).
inline std::optional<double> relativistic_residual(double E, const StateLabel& st,
                                                   const PotentialParams& p, const ApproxScheme& s,
                                                   double mu) {
    const GammaCoeffs g = gamma_relativistic(p, s, st, E, mu);
    const RatioParts rp = ratio_parts(g, p.alpha, p.q, st.n);
    if (!rp.real) {
        return std::nullopt;
    }
    const double ratio = rp.N / rp.Dn;
    const double kappa = static_cast<double>(centrifugal_kappa(st));
    return E * E - mu * mu + 4.0 * p.alpha * p.alpha * ratio * ratio - 2.0 * (E + mu) * p.p1 -
           s.c0 * kappa / 4.0;
}

/// Unsquared rearrangement N + sqrt(-g1/4a^2) Dn of the same relation; equals
/// the generic quantization residual of the parametric engine. Needs g1 <= 0.
inline double nu_residual_explicit(double E, const StateLabel& st, const PotentialParams& p,
                                   const ApproxScheme& s, double mu) {
    const GammaCoeffs g = gamma_relativistic(p, s, st, E, mu);
    const RatioParts rp = ratio_parts(g, p.alpha, p.q, st.n);
    if (!rp.real) {
        throw InvalidDomainError("nu_residual_explicit: t radicand negative");
    }
    double u_rad = -g.g1 / (4.0 * p.alpha * p.alpha);
    if (u_rad < 0.0) {
        if (u_rad <= -nu::radicand_tolerance) {
            throw InvalidDomainError("nu_residual_explicit: gamma1 > 0, exponent complex");
        }
        u_rad = 0.0;
    }
    return rp.N + std::sqrt(u_rad) * rp.Dn;
}

/// Builds the generic engine inputs for a DFPEP state at energy E.
inline nu::NuInput nu_input_for(double E, const StateLabel& st, const PotentialParams& p,
                                const ApproxScheme& s, double mu) {
    const GammaCoeffs g = gamma_relativistic(p, s, st, E, mu);
    const OmegaCoeffs w = omega_coeffs(g, p.alpha, p.q);
    return nu::NuInput{1.0, 1.0, 1.0, w.xi1(), w.xi2(), w.xi3()};
}

enum class Branch { negative, positive, extra };

struct RootReport {
    double E = 0.0;
    double residual = 0.0;
    Branch branch = Branch::negative;
    int n = 0, l = 0, D = 3;
    bool gamma1_ok = false;   // decay exponent real at this root
    bool radicand_ok = false; // t radicand non-negative at this root
    double nu_residual = 0.0; // N + u Dn when evaluable, else NaN
};

struct ExcludedInterval {
    double lo = 0.0;
    double hi = 0.0;
};

struct SolveResult {
    std::vector<RootReport> roots; // ascending in E
    std::vector<ExcludedInterval> excluded;
    bool extra_roots = false; // more than two roots found
};

struct SolveWindow {
    double e_lo = -60.0;
    double e_hi = 60.0;
    int grid = 200001;
};

inline SolveWindow default_window(double mu) {
    return SolveWindow{-10.0 * mu - 50.0, 10.0 * mu + 50.0, 200001};
}

namespace detail {

struct ScanOutcome {
    std::vector<double> roots;
    std::vector<ExcludedInterval> excluded;
};

/// Grid scan + sign-change bracketing + bisection to the floating-point
/// fixed point. Near-tangent dips (|f| local minimum below 1e-3 without a
/// sign change) trigger one 10x-denser rescan of the neighborhood.
inline ScanOutcome scan_roots(const std::function<std::optional<double>(double)>& f,
                              const SolveWindow& window) {
    if (!(window.e_lo < window.e_hi)) {
        throw InvalidDomainError("scan_roots: window must satisfy e_lo < e_hi");
    }
    if (window.grid < 100) {
        throw InvalidDomainError("scan_roots: grid must be >= 100");
    }
    const int grid = window.grid;
    const double h = (window.e_hi - window.e_lo) / static_cast<double>(grid - 1);
    std::vector<double> xs(grid);
    std::vector<std::optional<double>> fs(grid);
    for (int i = 0; i < grid; ++i) {
        xs[i] = window.e_lo + h * static_cast<double>(i);
        fs[i] = f(xs[i]);
    }

    ScanOutcome out;

    // excluded runs
    int run_start = -1;
    for (int i = 0; i < grid; ++i) {
        if (!fs[i].has_value()) {
            if (run_start < 0) {
                run_start = i;
            }
        } else if (run_start >= 0) {
            out.excluded.push_back(ExcludedInterval{xs[run_start], xs[i - 1]});
            run_start = -1;
        }
    }
    if (run_start >= 0) {
        out.excluded.push_back(ExcludedInterval{xs[run_start], xs[grid - 1]});
    }

    auto safe_eval = [&f](double x) {
        const std::optional<double> v = f(x);
        if (!v.has_value()) {
            throw InvalidDomainError("scan_roots: residual undefined inside a bracket");
        }
        return *v;
    };

    auto refine = [&](double a, double fa, double b, double fb) {
        if (fa == 0.0) {
            out.roots.push_back(a);
            return;
        }
        if (fb == 0.0) {
            out.roots.push_back(b);
            return;
        }
        out.roots.push_back(numeric::bisect_to_fixed_point(safe_eval, a, b));
    };

    auto sweep = [&](double a, double b, int steps, auto&& rescan) -> void {
        double x_prev = a;
        std::optional<double> f_prev = f(a);
        double dip_x[3] = {0, 0, 0};
        double dip_f[3] = {0, 0, 0};
        int dip_fill = 0;
        const double step = (b - a) / static_cast<double>(steps);
        for (int i = 1; i <= steps; ++i) {
            const double x = i == steps ? b : a + step * static_cast<double>(i);
            const std::optional<double> fx = f(x);
            if (f_prev.has_value() && fx.has_value()) {
                if ((*f_prev < 0.0) != (*fx < 0.0) || *f_prev == 0.0) {
                    refine(x_prev, *f_prev, x, *fx);
                    dip_fill = 0;
                } else {
                    if (dip_fill < 3) {
                        dip_x[dip_fill] = x;
                        dip_f[dip_fill] = *fx;
                        ++dip_fill;
                    } else {
                        dip_x[0] = dip_x[1];
                        dip_f[0] = dip_f[1];
                        dip_x[1] = dip_x[2];
                        dip_f[1] = dip_f[2];
                        dip_x[2] = x;
                        dip_f[2] = *fx;
                    }
                    if (dip_fill == 3 && std::abs(dip_f[1]) < 1e-3 &&
                        std::abs(dip_f[0]) >= std::abs(dip_f[1]) &&
                        std::abs(dip_f[2]) >= std::abs(dip_f[1])) {
                        rescan(dip_x[0], dip_x[2]);
                    }
                }
            } else {
                dip_fill = 0;
            }
            x_prev = x;
            f_prev = fx;
        }
    };

    auto no_rescan = [](double, double) {};
    auto one_rescan = [&](double a, double b) { sweep(a, b, 20, no_rescan); };

    const int coarse_steps = grid - 1;
    sweep(window.e_lo, window.e_hi, coarse_steps, one_rescan);

    std::sort(out.roots.begin(), out.roots.end());
    auto near = [](double a, double b) {
        return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
    };
    out.roots.erase(std::unique(out.roots.begin(), out.roots.end(), near), out.roots.end());
    return out;
}

} // namespace detail

/// Scans f_n(E) over the window, brackets every sign change and refines each
/// root until the bracket collapses in floating point. Roots come back
/// ascending; excluded (complex-radicand) subintervals are listed. An empty
/// result is not an error.
inline SolveResult solve_relativistic(const StateLabel& st, const PotentialParams& p,
                                      const ApproxScheme& s, double mu,
                                      const SolveWindow& window) {
    validate(st);
    if (p.q == 0.0) {
        throw InvalidDomainError("solve_relativistic: product-form potential not supported");
    }
    auto f = [&](double E) { return relativistic_residual(E, st, p, s, mu); };
    const detail::ScanOutcome scan = detail::scan_roots(f, window);

    SolveResult result;
    result.excluded = scan.excluded;
    result.extra_roots = scan.roots.size() > 2;
    for (std::size_t i = 0; i < scan.roots.size(); ++i) {
        RootReport r;
        r.E = scan.roots[i];
        r.residual = *relativistic_residual(r.E, st, p, s, mu);
        r.n = st.n;
        r.l = st.l;
        r.D = st.D;
        const GammaCoeffs g = gamma_relativistic(p, s, st, r.E, mu);
        r.gamma1_ok = g.bound_exponent_real();
        const RatioParts rp = ratio_parts(g, p.alpha, p.q, st.n);
        r.radicand_ok = rp.real;
        if (r.gamma1_ok && r.radicand_ok) {
            r.nu_residual = nu_residual_explicit(r.E, st, p, s, mu);
        } else {
            r.nu_residual = std::nan("");
        }
        if (scan.roots.size() <= 2) {
            r.branch = i == 0 && scan.roots.size() == 2 ? Branch::negative : Branch::positive;
            if (scan.roots.size() == 1) {
                r.branch = Branch::positive;
            }
        } else {
            r.branch = i == 0 ? Branch::negative
                              : (i + 1 == scan.roots.size() ? Branch::positive : Branch::extra);
        }
        result.roots.push_back(r);
    }
    return result;
}

/// Closed-form nonrelativistic energy
///   E = -(2 hbar^2 a^2/m)(N/Dn)^2 + 2 p1 + hbar^2 k c0/(8m)
/// with the nonrelativistic gamma_2, gamma_3 (no energy dependence).
inline double nonrelativistic_energy(const StateLabel& st, const PotentialParams& p,
                                     const ApproxScheme& s, double m, double hbar) {
    validate(st);
    if (p.q == 0.0) {
        throw InvalidDomainError("nonrelativistic_energy: product-form potential not supported");
    }
    const GammaCoeffs g = gamma_nonrelativistic(p, s, st, 0.0, m, hbar);
    const RatioParts rp = ratio_parts(g, p.alpha, p.q, st.n);
    if (!rp.real) {
        throw InvalidDomainError("nonrelativistic_energy: t radicand negative");
    }
    const double ratio = rp.N / rp.Dn;
    const double kappa = static_cast<double>(centrifugal_kappa(st));
    return -(2.0 * hbar * hbar * p.alpha * p.alpha / m) * ratio * ratio + 2.0 * p.p1 +
           hbar * hbar * kappa * s.c0 / (8.0 * m);
}

/// The s-wave instance: the centrifugal factor is pinned to kappa = 3
/// (i.e. any state with D + 2l = 4), giving the 3w/4, 3l/4 tilde
/// coefficients and the 3 hbar^2 c0/(8m) shift.
inline double swave_energy(int n, const PotentialParams& p, const ApproxScheme& s, double m,
                           double hbar) {
    return nonrelativistic_energy(StateLabel{n, 0, 4}, p, s, m, hbar);
}

// ---------------------------------------------------------------------------
// Special cases
// ---------------------------------------------------------------------------

/// Manning-Rosen well: p1 = 0, p2 = -V0/b^2, p3 = beta(beta-1)/b^2,
/// alpha = 1/(2b), q = 1. mrBeta is the shape parameter (renamed so it never
/// collides with inverse temperature).
struct ManningRosenParams {
    double V0 = 1.0;
    double mrBeta = 0.0;
    double b = 1.0;

    PotentialParams to_dfpep() const {
        if (!(b > 0.0)) {
            throw InvalidDomainError("ManningRosenParams: b must be positive");
        }
        return PotentialParams::rational(0.0, -V0 / (b * b), mrBeta * (mrBeta - 1.0) / (b * b),
                                         1.0, 1.0 / (2.0 * b));
    }
};

/// Hulthen well: p1 = p3 = 0, p2 = -V0 delta, q = 1, alpha = delta/2.
struct HulthenParams {
    double V0 = 1.0;
    double delta = 1.0;

    PotentialParams to_dfpep() const {
        if (!(delta > 0.0)) {
            throw InvalidDomainError("HulthenParams: delta must be positive");
        }
        return PotentialParams::rational(0.0, -V0 * delta, 0.0, 1.0, 0.5 * delta);
    }
};

/// Dedicated Manning-Rosen relativistic residual in Lambda/sigma form,
///   f(E) = E^2 - mu^2 + a^2 [Lambda/(n+sigma) + (n+sigma)]^2 - k c0/4,
/// a = 1/(2b). Both Lambda and sigma keep their (E+mu) couplings so the
/// form is the exact substitution image of the general relation.
inline std::optional<double> manning_rosen_residual(double E, const ManningRosenParams& mp,
                                                    const StateLabel& st, const ApproxScheme& s,
                                                    double mu) {
    const double kappa = static_cast<double>(centrifugal_kappa(st));
    const double b2 = mp.b * mp.b;
    const double coupling = 2.0 * (E + mu);
    const double lambda_mr =
        b2 * (-(coupling / b2) * (mp.V0 + mp.mrBeta * (mp.mrBeta - 1.0)) +
              kappa * (s.omega - s.lambda) / 4.0);
    double sig_rad = 1.0 + 4.0 * b2 * (coupling * mp.mrBeta * (mp.mrBeta - 1.0) / b2 +
                                       kappa * s.lambda / 4.0);
    if (sig_rad < 0.0) {
        if (sig_rad <= -nu::radicand_tolerance) {
            return std::nullopt;
        }
        sig_rad = 0.0;
    }
    const double sigma_mr = 0.5 * (1.0 + std::sqrt(sig_rad));
    const double rho = static_cast<double>(st.n) + sigma_mr;
    const double bracket = lambda_mr / rho + rho;
    const double a2 = 1.0 / (4.0 * b2);
    return E * E - mu * mu + a2 * bracket * bracket - s.c0 * kappa / 4.0;
}

inline SolveResult manning_rosen_relativistic(const ManningRosenParams& mp, const StateLabel& st,
                                              const ApproxScheme& s, double mu,
                                              const SolveWindow& window) {
    validate(st);
    auto f = [&](double E) { return manning_rosen_residual(E, mp, st, s, mu); };
    const detail::ScanOutcome scan = detail::scan_roots(f, window);
    SolveResult result;
    result.excluded = scan.excluded;
    result.extra_roots = scan.roots.size() > 2;
    for (std::size_t i = 0; i < scan.roots.size(); ++i) {
        RootReport r;
        r.E = scan.roots[i];
        r.residual = *manning_rosen_residual(r.E, mp, st, s, mu);
        r.n = st.n;
        r.l = st.l;
        r.D = st.D;
        r.gamma1_ok = true;
        r.radicand_ok = true;
        r.nu_residual = std::nan("");
        r.branch = scan.roots.size() >= 2 && i == 0
                       ? Branch::negative
                       : (i + 1 == scan.roots.size() ? Branch::positive : Branch::extra);
        result.roots.push_back(r);
    }
    return result;
}

/// Dedicated Manning-Rosen nonrelativistic level,
///   E = -(hbar^2/(8 m b^2)) [Lambda/(n+sigma) + (n+sigma)]^2
///       + hbar^2 c0 k/(8m).
inline double manning_rosen_nonrel(const ManningRosenParams& mp, const StateLabel& st,
                                   const ApproxScheme& s, double m, double hbar) {
    validate(st);
    const double kappa = static_cast<double>(centrifugal_kappa(st));
    const double b2 = mp.b * mp.b;
    const double h2 = hbar * hbar;
    const double coupling = 4.0 * m / h2;
    const double lambda_mr =
        b2 * (-(coupling / b2) * (mp.V0 + mp.mrBeta * (mp.mrBeta - 1.0)) +
              kappa * (s.omega - s.lambda) / 4.0);
    const double sig_rad = 1.0 + 4.0 * b2 * (coupling * mp.mrBeta * (mp.mrBeta - 1.0) / b2 +
                                             kappa * s.lambda / 4.0);
    if (sig_rad < 0.0) {
        throw InvalidDomainError("manning_rosen_nonrel: sigma radicand negative");
    }
    const double sigma_mr = 0.5 * (1.0 + std::sqrt(sig_rad));
    const double rho = static_cast<double>(st.n) + sigma_mr;
    const double bracket = lambda_mr / rho + rho;
    return -(h2 / (8.0 * m * b2)) * bracket * bracket + h2 * s.c0 * kappa / (8.0 * m);
}

/// Dedicated Hulthen relativistic residual,
///   f(E) = E^2 - mu^2 + (d^2/4) [Lambda/(n+sigma) + (n+sigma)]^2 - k c0/4.
inline std::optional<double> hulthen_residual(double E, const HulthenParams& hp,
                                              const StateLabel& st, const ApproxScheme& s,
                                              double mu) {
    const double kappa = static_cast<double>(centrifugal_kappa(st));
    const double d2 = hp.delta * hp.delta;
    const double lambda_h =
        (1.0 / d2) * (-2.0 * hp.V0 * (E + mu) * hp.delta + kappa * (s.omega - s.lambda) / 4.0);
    double sig_rad = 1.0 + (4.0 / d2) * (kappa * s.lambda / 4.0);
    if (sig_rad < 0.0) {
        if (sig_rad <= -nu::radicand_tolerance) {
            return std::nullopt;
        }
        sig_rad = 0.0;
    }
    const double sigma_h = 0.5 * (1.0 + std::sqrt(sig_rad));
    const double rho = static_cast<double>(st.n) + sigma_h;
    const double bracket = lambda_h / rho + rho;
    return E * E - mu * mu + (d2 / 4.0) * bracket * bracket - s.c0 * kappa / 4.0;
}

inline SolveResult hulthen_relativistic(const HulthenParams& hp, const StateLabel& st,
                                        const ApproxScheme& s, double mu,
                                        const SolveWindow& window) {
    validate(st);
    auto f = [&](double E) { return hulthen_residual(E, hp, st, s, mu); };
    const detail::ScanOutcome scan = detail::scan_roots(f, window);
    SolveResult result;
    result.excluded = scan.excluded;
    result.extra_roots = scan.roots.size() > 2;
    for (std::size_t i = 0; i < scan.roots.size(); ++i) {
        RootReport r;
        r.E = scan.roots[i];
        r.residual = *hulthen_residual(r.E, hp, st, s, mu);
        r.n = st.n;
        r.l = st.l;
        r.D = st.D;
        r.gamma1_ok = true;
        r.radicand_ok = true;
        r.nu_residual = std::nan("");
        r.branch = scan.roots.size() >= 2 && i == 0
                       ? Branch::negative
                       : (i + 1 == scan.roots.size() ? Branch::positive : Branch::extra);
        result.roots.push_back(r);
    }
    return result;
}

/// Dedicated Hulthen nonrelativistic level,
///   E = -(hbar^2 d^2/(8 m)) [Lambda/(n+sigma) + (n+sigma)]^2
///       + hbar^2 c0 k/(8m).
inline double hulthen_nonrel(const HulthenParams& hp, const StateLabel& st, const ApproxScheme& s,
                             double m, double hbar) {
    validate(st);
    const double kappa = static_cast<double>(centrifugal_kappa(st));
    const double d2 = hp.delta * hp.delta;
    const double h2 = hbar * hbar;
    const double lambda_h =
        (1.0 / d2) * (-4.0 * m * hp.V0 * hp.delta / h2 + kappa * (s.omega - s.lambda) / 4.0);
    const double sig_rad = 1.0 + (4.0 / d2) * (kappa * s.lambda / 4.0);
    if (sig_rad < 0.0) {
        throw InvalidDomainError("hulthen_nonrel: sigma radicand negative");
    }
    const double sigma_h = 0.5 * (1.0 + std::sqrt(sig_rad));
    const double rho = static_cast<double>(st.n) + sigma_h;
    const double bracket = lambda_h / rho + rho;
    return -(h2 * d2 / (8.0 * m)) * bracket * bracket + h2 * s.c0 * kappa / (8.0 * m);
}

/// sigma_H of the Hulthen relation under the Coulomb-limit conditions is kept
/// as an explicit argument; with kappa = 0 it equals 1.
///
/// Relativistic limit, printed form E = -mu [(n+s)^2 + V0^2] / [(n+s)^2 - V0^2].
inline double coulomb_limit_relativistic(double mu, double V0, int n, double sigmaH) {
    const double rho = static_cast<double>(n) + sigmaH;
    const double denom = rho * rho - V0 * V0;
    if (denom == 0.0) {
        throw InvalidDomainError("coulomb_limit_relativistic: pole at (n+sigma)^2 = V0^2");
    }
    return -mu * (rho * rho + V0 * V0) / denom;
}

/// Nonrelativistic limit, printed form E = -4 m hbar^2 V0^2 / (n+s)^2
/// (evaluated verbatim; the delta -> 0 limit of hulthen_nonrel is the
/// trustworthy value, and the two are cross-compared in reports).
inline double coulomb_limit_nonrel(double m, double hbar, double V0, int n, double sigmaH) {
    const double rho = static_cast<double>(n) + sigmaH;
    if (rho == 0.0) {
        throw InvalidDomainError("coulomb_limit_nonrel: n + sigma = 0");
    }
    return -4.0 * m * hbar * hbar * V0 * V0 / (rho * rho);
}

/// Number of levels admitted by the cap: n = 0..floor(eta), zero when
/// eta < 0.
inline int bound_state_count(const RecastCoeffs& rc) {
    if (rc.eta < 0.0) {
        return 0;
    }
    return static_cast<int>(std::floor(rc.eta)) + 1;
}

} // namespace dfpep::spectrum
