#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "dfpep/errors.hpp"

namespace dfpep::numeric {

/// Recursive adaptive Simpson quadrature. The integrand must be finite on
/// [a, b]; endpoint singularities are the caller's problem.
namespace detail {

inline double simpson_step(double a, double fa, double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <class F>
double adaptive_simpson_rec(F&& f, double a, double fa, double b, double fb, double m, double fm,
                            double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson_step(a, fa, m, fm, flm);
    const double right = simpson_step(m, fm, b, fb, frm);
    const double delta = left + right - whole;
    if (depth <= 0) {
        return left + right + delta / 15.0;
    }
    if (std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return adaptive_simpson_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

} // namespace detail

/// Integrates f over [a, b] to the given relative tolerance (with an absolute
/// floor for integrals that are genuinely zero). The interval is first cut
/// into 256 panels that both set the error scale and seed the recursion, so
/// sharp interior peaks are resolved instead of silently skipped by the
/// 3-point first guess.
template <class F>
double adaptive_simpson(F&& f, double a, double b, double rel_tol = 1e-10,
                        double abs_floor = 1e-300, int max_depth = 40) {
    if (a == b) {
        return 0.0;
    }
    constexpr int panels = 256;
    const double h = (b - a) / panels;
    double xs[panels + 1];
    double fs[panels + 1];
    double scale = 0.0;
    xs[0] = a;
    fs[0] = f(a);
    for (int i = 1; i <= panels; ++i) {
        xs[i] = i == panels ? b : a + h * i;
        fs[i] = f(xs[i]);
        scale += 0.5 * (std::abs(fs[i - 1]) + std::abs(fs[i])) * std::abs(h);
    }
    const double tol = std::max(scale * rel_tol, abs_floor) / panels;

    double total = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double m = 0.5 * (xs[i] + xs[i + 1]);
        const double fm = f(m);
        const double whole = detail::simpson_step(xs[i], fs[i], xs[i + 1], fs[i + 1], fm);
        total += detail::adaptive_simpson_rec(f, xs[i], fs[i], xs[i + 1], fs[i + 1], m, fm, whole,
                                              tol, max_depth);
    }
    return total;
}

/// Bisection driven to the floating-point fixed point: stops when the midpoint
/// can no longer be distinguished from a bracket end. Requires f(lo) and
/// f(hi) of opposite sign (or zero).
template <class F>
double bisect_to_fixed_point(F&& f, double lo, double hi) {
    double flo = f(lo);
    if (flo == 0.0) {
        return lo;
    }
    double fhi = f(hi);
    if (fhi == 0.0) {
        return hi;
    }
    for (;;) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            return std::abs(flo) <= std::abs(fhi) ? lo : hi;
        }
        const double fmid = f(mid);
        if (fmid == 0.0) {
            return mid;
        }
        if ((flo < 0.0) == (fmid < 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
            fhi = fmid;
        }
    }
}

/// 5-point first derivative, two Richardson levels.
template <class F>
double derivative(F&& f, double x, double h) {
    auto d5 = [&](double step) {
        return (f(x - 2.0 * step) - 8.0 * f(x - step) + 8.0 * f(x + step) - f(x + 2.0 * step)) /
               (12.0 * step);
    };
    const double d1 = d5(h);
    const double d2 = d5(0.5 * h);
    const double d3 = d5(0.25 * h);
    // O(h^4) base order: each halving gains a factor 16.
    const double r1 = (16.0 * d2 - d1) / 15.0;
    const double r2 = (16.0 * d3 - d2) / 15.0;
    return (64.0 * r2 - r1) / 63.0;
}

/// 5-point second derivative, two Richardson levels.
template <class F>
double second_derivative(F&& f, double x, double h) {
    auto dd5 = [&](double step) {
        return (-f(x - 2.0 * step) + 16.0 * f(x - step) - 30.0 * f(x) + 16.0 * f(x + step) -
                f(x + 2.0 * step)) /
               (12.0 * step * step);
    };
    const double d1 = dd5(h);
    const double d2 = dd5(0.5 * h);
    const double d3 = dd5(0.25 * h);
    const double r1 = (16.0 * d2 - d1) / 15.0;
    const double r2 = (16.0 * d3 - d2) / 15.0;
    return (64.0 * r2 - r1) / 63.0;
}

/// Thread cap: DFPEP_THREADS if set (>=1), otherwise hardware concurrency.
inline unsigned thread_cap() {
    if (const char* env = std::getenv("DFPEP_THREADS")) {
        const long n = std::strtol(env, nullptr, 10);
        if (n >= 1) {
            return static_cast<unsigned>(n);
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1u : hw;
}

/// Runs fn(i) for i in [0, count). Results must be written to preallocated
/// slots so the output order never depends on scheduling.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
    const unsigned threads = std::min<std::size_t>(thread_cap(), count);
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t]() {
            for (std::size_t i = t; i < count; i += threads) {
                fn(i);
            }
        });
    }
    for (auto& th : pool) {
        th.join();
    }
}

} // namespace dfpep::numeric
