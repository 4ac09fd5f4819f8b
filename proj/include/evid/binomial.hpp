#pragma once

// Binomial likelihood primitives: observations, hypothesis contrasts,
// constrained maximum likelihood and Kullback-Leibler divergence.
// Everything downstream builds on these.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace evid {

// Sample size n and head count x, both treated as continuous.
struct Observation {
    double n;
    double x;

    Observation(double n_, double x_) : n(n_), x(x_) {
        if (!(n > 0.0) || !std::isfinite(n))
            throw std::invalid_argument("Observation: n must be positive and finite");
        if (!(x >= 0.0) || !(x <= n))
            throw std::invalid_argument("Observation: x must lie in [0, n]");
    }

    double ratio() const { return x / n; }
};

// Closed interval [lo, hi] inside [0, 1].
struct Interval {
    double lo;
    double hi;

    double length() const { return hi - lo; }
    bool contains(double t) const { return t >= lo && t <= hi; }
    double clamp(double t) const { return t < lo ? lo : (t > hi ? hi : t); }
};

enum class HcClass { Ia, Ib, IIa, IIb };

// A hypothesis contrast: the pair (theta1, theta2) of parameter sets being
// compared, one of four supported shapes.
//
//   1a  non-nested  theta1 = [0, 1/2]   theta2 = {1/2}        domain [0, 1/2]
//   1b  non-nested  theta1 = [0, 1/2]   theta2 = [1/2, 1]     domain [0, 1]
//   2a  nested      theta1 = [0, 1]     theta2 = {1/2}        domain [0, 1]
//   2b  nested      theta1 = [0, 1]     theta2 = [l, r]       domain [0, 1]
//
// 2b requires 0 < l < 1/2 < r < 1 with l + r = 1 (symmetric about 1/2).
// The half-open theta2 = (1/2, 1] of class 1b is handled as closed; the
// distinction is measure-zero and never affects a computed value.
class HypothesisContrast {
  public:
    static HypothesisContrast class_1a() { return {HcClass::Ia, 0.5, 0.5}; }
    static HypothesisContrast class_1b() { return {HcClass::Ib, 0.5, 1.0}; }
    static HypothesisContrast class_2a() { return {HcClass::IIa, 0.5, 0.5}; }

    static HypothesisContrast class_2b(double theta2_left, double theta2_right) {
        if (!(theta2_left > 0.0 && theta2_left < 0.5 && theta2_right > 0.5 && theta2_right < 1.0))
            throw std::invalid_argument("class_2b: need 0 < left < 1/2 < right < 1");
        if (std::fabs(theta2_left + theta2_right - 1.0) > 1e-12)
            throw std::invalid_argument("class_2b: interval must be symmetric about 1/2");
        return {HcClass::IIb, theta2_left, theta2_right};
    }

    HcClass cls() const { return cls_; }

    Interval theta1() const {
        switch (cls_) {
        case HcClass::Ia:
        case HcClass::Ib: return {0.0, 0.5};
        default: return {0.0, 1.0};
        }
    }

    Interval theta2() const { return {t2l_, t2r_}; }

    // Integration domain: the union of theta1 and theta2.
    Interval domain() const {
        return cls_ == HcClass::Ia ? Interval{0.0, 0.5} : Interval{0.0, 1.0};
    }

    // Width of theta2; zero for the simple-hypothesis classes.
    double width() const {
        return (cls_ == HcClass::Ia || cls_ == HcClass::IIa) ? 0.0 : t2r_ - t2l_;
    }

    // Nested contrasts have theta2 inside theta1.
    bool nested() const { return cls_ == HcClass::IIa || cls_ == HcClass::IIb; }

    const char* tag() const {
        switch (cls_) {
        case HcClass::Ia: return "1a";
        case HcClass::Ib: return "1b";
        case HcClass::IIa: return "2a";
        default: return "2b";
        }
    }

  private:
    HypothesisContrast(HcClass c, double l, double r) : cls_(c), t2l_(l), t2r_(r) {}

    HcClass cls_;
    double t2l_, t2r_;
};

// log L(theta) = x log(theta) + (n - x) log(1 - theta), with 0 log 0 = 0.
// Returns -inf when theta puts zero mass on observed outcomes.
inline double log_likelihood(double theta, const Observation& obs) {
    double s = 0.0;
    if (obs.x > 0.0) s += obs.x * std::log(theta);
    if (obs.n - obs.x > 0.0) s += (obs.n - obs.x) * std::log1p(-theta);
    return s;
}

// Index (1 or 2) of the hypothesis whose constrained MLE normalizes the
// likelihood ratio. Always 2, except class 1b flips to 1 once x/n > 1/2.
inline int denominator_side(const HypothesisContrast& hc, const Observation& obs) {
    if (hc.cls() == HcClass::Ib && obs.ratio() > 0.5) return 1;
    return 2;
}

// Maximizer of L over the chosen hypothesis set: clamp of x/n onto it.
// For class 1b either side yields 1/2.
inline double constrained_mle(const HypothesisContrast& hc, int side, const Observation& obs) {
    if (side != 1 && side != 2)
        throw std::invalid_argument("constrained_mle: side must be 1 or 2");
    Interval t = (side == 1) ? hc.theta1() : hc.theta2();
    return t.clamp(obs.ratio());
}

// Maximizer of L over the whole domain theta1 union theta2.
inline double model_mle(const HypothesisContrast& hc, const Observation& obs) {
    return hc.domain().clamp(obs.ratio());
}

// n * [ t1 log(t1/t2) + (1-t1) log((1-t1)/(1-t2)) ].
// +inf when t2 is degenerate where t1 has mass; never negative.
inline double kld(double theta1, double theta2, double n) {
    auto term = [](double p, double q) {
        if (p == 0.0) return 0.0;
        if (q == 0.0) return std::numeric_limits<double>::infinity();
        return p * std::log(p / q);
    };
    double d = n * (term(theta1, theta2) + term(1.0 - theta1, 1.0 - theta2));
    return d < 0.0 ? 0.0 : d;  // rounding guard, the exact value is >= 0
}

// Observed divergence between the data ratio and a constrained MLE.
inline double kld_obs(const Observation& obs, double theta_hat_i) {
    return kld(obs.ratio(), theta_hat_i, obs.n);
}

}  // namespace evid
