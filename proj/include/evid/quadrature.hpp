#pragma once

// Adaptive Simpson quadrature for sharply peaked likelihood-ratio integrands.
// The integrand is supplied in log form and evaluated as exp(logf - logf_peak),
// so the integral is computed on a scale where the maximum is exactly 1 and
// the result is exact up to a known log offset.

#include <cmath>
#include <stdexcept>

namespace evid {

struct QuadratureConfig {
    double rel_tol = 1e-10;     // relative tolerance on the integral
    int max_subdivisions = 2000;  // shared budget per integration call
};

struct NonConvergence : std::runtime_error {
    explicit NonConvergence(const char* what) : std::runtime_error(what) {}
};

namespace detail {

template <class F>
double simpson_rec(const F& f, double a, double fa, double b, double fb, double m, double fm,
                   double whole, double eps, int depth, int& budget) {
    double lm = 0.5 * (a + m);
    double rm = 0.5 * (m + b);
    double flm = f(lm);
    double frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    if (std::fabs(delta) <= 15.0 * eps || depth <= 0)
        return left + right + delta / 15.0;
    if (--budget < 0)
        throw NonConvergence("quadrature: subdivision budget exhausted");
    double he = 0.5 * eps;
    return simpson_rec(f, a, fa, m, fm, lm, flm, left, he, depth - 1, budget) +
           simpson_rec(f, m, fm, b, fb, rm, frm, right, he, depth - 1, budget);
}

template <class F>
double simpson(const F& f, double a, double b, double eps, int& budget) {
    if (!(b > a)) return 0.0;
    double m = 0.5 * (a + b);
    double fa = f(a), fb = f(b), fm = f(m);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(f, a, fa, b, fb, m, fm, whole, eps, 52, budget);
}

}  // namespace detail

// Integral over [a, b] of exp(logf(t) - logf(mode)), where mode is the
// maximizer of logf on [a, b]. The domain is split at the mode so each
// subinterval sees a one-sided peak. Two passes: a coarse pass bounds the
// integral, a second pass runs at rel_tol relative to that bound.
template <class F>
double integrate_exp_shifted(const F& logf, double a, double b, double mode,
                             const QuadratureConfig& cfg) {
    if (!(b > a)) throw std::invalid_argument("integrate_exp_shifted: empty interval");
    if (mode < a || mode > b) throw std::invalid_argument("integrate_exp_shifted: mode outside interval");
    double log_peak = logf(mode);
    auto g = [&](double t) { return std::exp(logf(t) - log_peak); };

    auto run = [&](double eps) {
        int budget = cfg.max_subdivisions;
        return detail::simpson(g, a, mode, eps, budget) +
               detail::simpson(g, mode, b, eps, budget);
    };
    double coarse = run(1e-4 * (b - a));
    if (!(coarse > 0.0)) coarse = b - a;  // peak value is 1, so this only guards degenerate rounding
    return run(cfg.rel_tol * coarse);
}

}  // namespace evid
