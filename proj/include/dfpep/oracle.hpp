#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "dfpep/errors.hpp"
#include "dfpep/model.hpp"
#include "dfpep/spectrum.hpp"

namespace dfpep::oracle {

/// Uniform radial grid with Dirichlet walls at r = 0 and r = r_max.
/// n_points counts interior nodes r_i = (i+1) h, h = r_max/(n_points+1).
struct GridSpec {
    double r_max = 60.0;
    int n_points = 20000;
};

inline void validate(const GridSpec& g) {
    if (g.n_points < 2000) {
        throw InvalidDomainError("GridSpec: need at least 2000 interior points");
    }
    if (!(g.r_max > 0.0)) {
        throw InvalidDomainError("GridSpec: r_max must be positive");
    }
}

enum class CentrifugalMode { exact, pekeris };

/// Symmetric tridiagonal operator: diag[i] couples to off[i] one step right.
struct Tridiagonal {
    std::vector<double> diag;
    std::vector<double> off; // size diag.size() - 1
    double h = 0.0;
};

/// Discretizes -(hbar^2/2m) F'' + V_eff(r) F on the grid. The caller's
/// potential must already be the full effective one (centrifugal term
/// included).
inline Tridiagonal build_hamiltonian_custom(const std::function<double(double)>& v_eff,
                                            const GridSpec& grid, double m, double hbar) {
    validate(grid);
    Tridiagonal T;
    const int n = grid.n_points;
    const double h = grid.r_max / static_cast<double>(n + 1);
    const double kin = hbar * hbar / (2.0 * m * h * h);
    T.h = h;
    T.diag.resize(n);
    T.off.assign(n - 1, -kin);
    for (int i = 0; i < n; ++i) {
        const double r = h * static_cast<double>(i + 1);
        T.diag[i] = 2.0 * kin + v_eff(r);
    }
    return T;
}

/// Nonrelativistic radial operator for the deformed potential,
///   -(hbar^2/2m) F'' + [2 V(r) + hbar^2 k/(8m) * (1/r^2 or surrogate)] F.
/// V enters doubled: the equal scalar and vector coupling survives the
/// nonrelativistic reduction (visible as the 2 p1 shift of the closed form).
inline Tridiagonal build_hamiltonian(const PotentialParams& p, const ApproxScheme& s,
                                     const StateLabel& st, double m, double hbar,
                                     const GridSpec& grid, CentrifugalMode mode) {
    validate(grid);
    if (p.q > 1.0) {
        const double r_pole = std::log(p.q) / (2.0 * p.alpha);
        if (r_pole < grid.r_max) {
            throw PoleError("build_hamiltonian: potential pole at r = " + std::to_string(r_pole) +
                            " lies inside the grid");
        }
    }
    const double kappa = static_cast<double>(centrifugal_kappa(st));
    const double cent = hbar * hbar * kappa / (8.0 * m);
    auto v_eff = [&, cent](double r) {
        double v = 2.0 * potential_value(p, r);
        if (kappa != 0.0) {
            v += cent * (mode == CentrifugalMode::exact ? 1.0 / (r * r)
                                                        : approx_inv_r2(s, p, r));
        }
        return v;
    };
    return build_hamiltonian_custom(v_eff, grid, m, hbar);
}

/// Number of eigenvalues strictly below x (Sturm sequence sign count).
inline int sturm_count(const Tridiagonal& T, double x) {
    const std::size_t n = T.diag.size();
    int count = 0;
    double q = T.diag[0] - x;
    if (q < 0.0) {
        ++count;
    }
    for (std::size_t i = 1; i < n; ++i) {
        const double e = T.off[i - 1];
        if (q == 0.0) {
            q = 1e-300;
        }
        q = T.diag[i] - x - e * e / q;
        if (q < 0.0) {
            ++count;
        }
    }
    return count;
}

/// k smallest eigenvalues by Sturm bisection. Brackets shrink until the
/// midpoint collapses in floating point, so each value is well inside the
/// 1e-12 * spectral-scale tolerance it promises. Deterministic; always
/// converges for a finite symmetric tridiagonal.
inline std::vector<double> lowest_eigenvalues(const Tridiagonal& T, int k) {
    if (k < 1 || k > 20) {
        throw InvalidDomainError("lowest_eigenvalues: k must be in 1..20");
    }
    const std::size_t n = T.diag.size();
    if (static_cast<std::size_t>(k) > n) {
        throw InvalidDomainError("lowest_eigenvalues: k exceeds matrix dimension");
    }
    double lo = T.diag[0];
    double hi = T.diag[0];
    for (std::size_t i = 0; i < n; ++i) {
        double radius = 0.0;
        if (i > 0) {
            radius += std::abs(T.off[i - 1]);
        }
        if (i + 1 < n) {
            radius += std::abs(T.off[i]);
        }
        lo = std::min(lo, T.diag[i] - radius);
        hi = std::max(hi, T.diag[i] + radius);
    }

    std::vector<double> eigs(k);
    for (int j = 1; j <= k; ++j) {
        double a = lo;
        double b = hi;
        for (;;) {
            const double mid = 0.5 * (a + b);
            if (mid <= a || mid >= b) {
                break;
            }
            if (sturm_count(T, mid) >= j) {
                b = mid;
            } else {
                a = mid;
            }
        }
        eigs[j - 1] = 0.5 * (a + b);
    }
    return eigs;
}

/// Eigenvector by inverse iteration at the given (converged) eigenvalue.
/// Normalized to unit discrete L2 norm, sum v_i^2 h = 1, with the first
/// significant component positive.
inline std::vector<double> eigenvector(const Tridiagonal& T, double lambda) {
    const std::size_t n = T.diag.size();
    std::vector<double> v(n, 1.0);
    std::vector<double> a(n), b(n), c(n);
    const double shift = lambda * (1.0 + 1e-13) + 1e-300;
    for (int iter = 0; iter < 3; ++iter) {
        // Thomas solve (T - shift I) w = v
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = T.diag[i] - shift;
        }
        std::vector<double> w = v;
        for (std::size_t i = 1; i < n; ++i) {
            if (a[i - 1] == 0.0) {
                a[i - 1] = 1e-300;
            }
            const double m_factor = T.off[i - 1] / a[i - 1];
            a[i] -= m_factor * T.off[i - 1];
            w[i] -= m_factor * w[i - 1];
        }
        if (a[n - 1] == 0.0) {
            a[n - 1] = 1e-300;
        }
        v[n - 1] = w[n - 1] / a[n - 1];
        for (std::size_t i = n - 1; i-- > 0;) {
            v[i] = (w[i] - T.off[i] * v[i + 1]) / a[i];
        }
        double norm = 0.0;
        for (double x : v) {
            norm += x * x;
        }
        norm = std::sqrt(norm);
        for (double& x : v) {
            x /= norm;
        }
    }
    double l2 = 0.0;
    double lead = 0.0;
    for (double x : v) {
        l2 += x * x * T.h;
        if (lead == 0.0 && std::abs(x) > 1e-8) {
            lead = x;
        }
    }
    const double s = (lead < 0.0 ? -1.0 : 1.0) / std::sqrt(l2);
    for (double& x : v) {
        x *= s;
    }
    return v;
}

/// Doubled-grid Richardson pair: the O(h^2) eigenvalue error cancels to
/// O(h^4) via (4 e_fine - e_coarse)/3.
inline std::vector<double> richardson_eigenvalues(const std::function<Tridiagonal(GridSpec)>& build,
                                                  const GridSpec& grid, int k) {
    const Tridiagonal coarse = build(grid);
    GridSpec fine = grid;
    fine.n_points = 2 * grid.n_points + 1; // halves h exactly
    const Tridiagonal fine_op = build(fine);
    const std::vector<double> e1 = lowest_eigenvalues(coarse, k);
    const std::vector<double> e2 = lowest_eigenvalues(fine_op, k);
    std::vector<double> out(k);
    for (int i = 0; i < k; ++i) {
        out[i] = (4.0 * e2[i] - e1[i]) / 3.0;
    }
    return out;
}

struct ApproxErrorReport {
    StateLabel state;
    std::vector<double> analytic;   // closed-form levels, n = 0..k-1
    std::vector<double> pekeris_fd; // Richardson FD eigenvalues, surrogate centrifugal
    std::vector<double> exact_fd;   // Richardson FD eigenvalues, true 1/r^2
    std::vector<double> gap_pekeris_vs_analytic;
    std::vector<double> gap_exact_vs_pekeris;
};

/// Compares closed-form levels against both discretizations. The
/// pekeris-mode eigenvalues solve the same ODE as the closed form, so that
/// gap is pure algebra verification; exact-vs-pekeris quantifies the
/// centrifugal surrogate error (zero when kappa = 0).
inline ApproxErrorReport approximation_error_report(const PotentialParams& p,
                                                    const ApproxScheme& s, const StateLabel& st,
                                                    double m, double hbar, const GridSpec& grid,
                                                    int k) {
    ApproxErrorReport rep;
    rep.state = st;
    for (int n = 0; n < k; ++n) {
        StateLabel level = st;
        level.n = n;
        rep.analytic.push_back(spectrum::nonrelativistic_energy(level, p, s, m, hbar));
    }
    auto build_pekeris = [&](GridSpec g) {
        return build_hamiltonian(p, s, st, m, hbar, g, CentrifugalMode::pekeris);
    };
    auto build_exact = [&](GridSpec g) {
        return build_hamiltonian(p, s, st, m, hbar, g, CentrifugalMode::exact);
    };
    rep.pekeris_fd = richardson_eigenvalues(build_pekeris, grid, k);
    rep.exact_fd = richardson_eigenvalues(build_exact, grid, k);
    for (int n = 0; n < k; ++n) {
        rep.gap_pekeris_vs_analytic.push_back(std::abs(rep.pekeris_fd[n] - rep.analytic[n]));
        rep.gap_exact_vs_pekeris.push_back(std::abs(rep.exact_fd[n] - rep.pekeris_fd[n]));
    }
    return rep;
}

/// Starting grid for the deformed potential: r_max = max(6/alpha, 60),
/// then extended until the slowest analytic tail among the first k levels
/// drops below 1e-10.
inline GridSpec auto_grid(const PotentialParams& p, const ApproxScheme& s, const StateLabel& st,
                          double m, double hbar, int k, int n_points = 20000) {
    GridSpec grid;
    grid.n_points = n_points;
    grid.r_max = std::max(6.0 / p.alpha, 60.0);
    double u_min = 1e300;
    for (int n = 0; n < k; ++n) {
        StateLabel level = st;
        level.n = n;
        const double e = spectrum::nonrelativistic_energy(level, p, s, m, hbar);
        const GammaCoeffs g = gamma_nonrelativistic(p, s, level, e, m, hbar);
        if (g.g1 < 0.0) {
            u_min = std::min(u_min, std::sqrt(-g.g1 / (4.0 * p.alpha * p.alpha)));
        }
    }
    if (u_min < 1e300) {
        const double rate = 2.0 * p.alpha * u_min;
        for (int i = 0; i < 16 && rate * grid.r_max * 0.5 < 23.0; ++i) {
            grid.r_max *= 1.5;
        }
    }
    return grid;
}

} // namespace dfpep::oracle
