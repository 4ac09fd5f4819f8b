#pragma once

// The three state variables of an evidence computation: entropy S (maximum
// log likelihood ratio), volume V (normalized area under the likelihood
// ratio curve) and the correction b subtracted from V for nested contrasts.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "evid/binomial.hpp"
#include "evid/quadrature.hpp"

namespace evid {

struct InvalidClass : std::domain_error {
    explicit InvalidClass(const char* what) : std::domain_error(what) {}
};

// State of one (contrast, observation) pair. V can overflow to inf for
// large n at ratios far from the denominator MLE; log_v stays finite and
// is the value the equation of state consumes. r1/r2 are NaN for the
// non-nested classes, which have no correction term.
struct StateFunctions {
    double s;
    double v;
    double log_v;
    double b;
    double min_fi;
    double r1;
    double r2;
};

// S = log max LR = log L(theta_hat over the whole domain) - log L(theta_hat_i),
// theta_hat_i from the denominator-side constrained MLE. Always >= 0.
inline double entropy_S(const HypothesisContrast& hc, const Observation& obs) {
    double th_num = model_mle(hc, obs);
    double th_den = constrained_mle(hc, denominator_side(hc, obs), obs);
    double s = log_likelihood(th_num, obs) - log_likelihood(th_den, obs);
    return s < 0.0 ? 0.0 : s;  // rounding guard at th_num == th_den
}

// log of V = integral over the domain of L(theta) dtheta / L(theta_hat_i).
// The integrand is shifted by its mode so the quadrature works on [0, 1].
inline double log_volume(const HypothesisContrast& hc, const Observation& obs,
                         const QuadratureConfig& cfg) {
    Interval dom = hc.domain();
    double mode = dom.clamp(obs.ratio());
    double th_den = constrained_mle(hc, denominator_side(hc, obs), obs);
    auto logf = [&](double t) { return log_likelihood(t, obs); };
    double area = integrate_exp_shifted(logf, dom.lo, dom.hi, mode, cfg);
    return log_likelihood(mode, obs) - log_likelihood(th_den, obs) + std::log(area);
}

inline double volume_V(const HypothesisContrast& hc, const Observation& obs,
                       const QuadratureConfig& cfg) {
    return std::exp(log_volume(hc, obs, cfg));
}

// Minimum over theta of the binomial Fisher information n / (theta (1-theta)),
// attained at theta = 1/2.
inline double min_fisher_info(double n) {
    if (!(n > 0.0)) throw std::invalid_argument("min_fisher_info: n must be positive");
    return 4.0 * n;
}

// Rate constants of the correction term. r1 - r2/2 = (2+w)/4 in [1/2, 3/4].
inline std::pair<double, double> rate_constants(const HypothesisContrast& hc) {
    if (!hc.nested()) throw InvalidClass("rate_constants: defined for nested classes only");
    double w = hc.width();
    double r1 = 2.0 - w;
    double r2 = 2.0 * r1 - 0.5 * (2.0 + w);
    return {r1, r2};
}

namespace detail {

// Width scale of the in-region correction. 1/sqrt(2(n+2)) tracks the
// large-n shrinkage of the normalized LR peak while keeping V - b positive
// for every n, which is what places one evidence minimum on each side of
// the theta2 region.
inline double correction_width(double n) { return 1.0 / std::sqrt(2.0 * (n + 2.0)); }

// In-region value r1 V - r2 width, evaluated at head count x (possibly synthetic).
inline double correction_in_region(const HypothesisContrast& hc, double n, double x,
                                   const QuadratureConfig& cfg) {
    auto [r1, r2] = rate_constants(hc);
    double v = volume_V(hc, Observation(n, x), cfg);
    return r1 * v - r2 * correction_width(n);
}

}  // namespace detail

// Correction b. Zero for non-nested classes. For nested classes the
// in-region formula applies when x/n lies in theta2; outside, b falls off
// linearly in x/n from its boundary value to zero at the domain endpoints,
// so b is continuous and vanishes at x/n = 0 and 1.
inline double correction_b(const HypothesisContrast& hc, const Observation& obs,
                           const QuadratureConfig& cfg) {
    if (!hc.nested()) return 0.0;
    Interval t2 = hc.theta2();
    double r = obs.ratio();
    if (t2.contains(r)) return detail::correction_in_region(hc, obs.n, obs.x, cfg);
    if (r < t2.lo) {
        double anchor = detail::correction_in_region(hc, obs.n, obs.n * t2.lo, cfg);
        return (r / t2.lo) * anchor;
    }
    double anchor = detail::correction_in_region(hc, obs.n, obs.n * t2.hi, cfg);
    return ((1.0 - r) / (1.0 - t2.hi)) * anchor;
}

// All state variables for one (contrast, observation) pair. The volume
// computed for the in-region correction is the same integral as V itself,
// so that case reuses it instead of integrating twice.
inline StateFunctions compute_state(const HypothesisContrast& hc, const Observation& obs,
                                    const QuadratureConfig& cfg) {
    StateFunctions st{};
    st.s = entropy_S(hc, obs);
    st.log_v = log_volume(hc, obs, cfg);
    st.v = std::exp(st.log_v);
    st.min_fi = min_fisher_info(obs.n);
    if (hc.nested()) {
        auto [r1, r2] = rate_constants(hc);
        st.r1 = r1;
        st.r2 = r2;
        Interval t2 = hc.theta2();
        double r = obs.ratio();
        if (t2.contains(r)) {
            st.b = r1 * st.v - r2 * detail::correction_width(obs.n);
        } else {
            st.b = correction_b(hc, obs, cfg);
        }
    } else {
        st.r1 = std::numeric_limits<double>::quiet_NaN();
        st.r2 = std::numeric_limits<double>::quiet_NaN();
        st.b = 0.0;
    }
    return st;
}

}  // namespace evid
