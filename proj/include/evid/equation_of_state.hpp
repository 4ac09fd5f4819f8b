#pragma once

// The equation of state: E^c1 (V - b)^c2 = exp(S). Non-nested contrasts run
// with b = 0 (ideal form), nested ones subtract the correction b. Everything
// is evaluated in log space so V overflowing double never hurts E.

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "evid/binomial.hpp"
#include "evid/quadrature.hpp"
#include "evid/state_functions.hpp"

namespace evid {

struct NonPositiveDenominator : std::runtime_error {
    explicit NonPositiveDenominator(const char* what) : std::runtime_error(what) {}
};

// Degrees-of-freedom constant: baseline 1, plus the sum of the interval
// lengths for nested contrasts, minus-style difference for non-nested ones.
// Yields 1.5 (1a), 1.0 (1b), 2.0 (2a), 2 + w (2b); always > 1/2.
inline double dof_c1(const HypothesisContrast& hc) {
    double l1 = hc.theta1().length();
    double l2 = hc.theta2().length();
    return hc.nested() ? 1.0 + l1 + l2 : 1.0 + l1 - l2;
}

enum class Favored { h1, h2, boundary };

inline const char* favored_name(Favored f) {
    switch (f) {
    case Favored::h1: return "H1";
    case Favored::h2: return "H2";
    default: return "boundary";
    }
}

// A transition point: a ratio where E is locally minimal in x/n at fixed n,
// i.e. where the favored hypothesis switches. Produced by find_trp (analysis
// header); defined here because evidence results embed it.
struct TrpPoint {
    double ratio;
    double e_min;
};

struct TransitionPoints {
    std::vector<TrpPoint> points;  // 1 entry for class I, 2 for class II
};

// Test-harness overrides: force c1 away from its rule or drop the correction
// term. Exercised by the verification suite's forced-failure controls.
struct EqsOverrides {
    std::optional<double> c1;
    bool zero_b = false;
};

struct EvidenceResult {
    double e;
    double log_e;  // natural log of e; finite whenever the EqS is defined
    double s;
    double v;
    double log_v;
    double b;
    double c1;
    double c2;
    Favored favored;
    HypothesisContrast hc;
    Observation obs;
    TransitionPoints trp;  // empty unless the caller computed it
};

namespace detail {

// log(V - b) from log V and b without forming V, valid for either sign of b.
inline double log_v_minus_b(double log_v, double b) {
    double q = b * std::exp(-log_v);
    if (q >= 1.0) throw NonPositiveDenominator("equation of state: V - b <= 0");
    return log_v + std::log1p(-q);
}

}  // namespace detail

// E alone, without classification against transition points. This is the
// function the minimizers and solvers drive, so it stays lean.
inline double evidence_value(const HypothesisContrast& hc, const Observation& obs,
                             const QuadratureConfig& cfg, const EqsOverrides& ov = {},
                             double c2 = 1.0) {
    double s = entropy_S(hc, obs);
    double log_v = log_volume(hc, obs, cfg);
    double b = ov.zero_b ? 0.0 : correction_b(hc, obs, cfg);
    double c1 = ov.c1 ? *ov.c1 : dof_c1(hc);
    double log_e = (s - c2 * detail::log_v_minus_b(log_v, b)) / c1;
    return std::exp(log_e);
}

// Full result with all components. favored is classified by the analysis
// header's rule when transition points are supplied; without them the data
// side of the contrast cannot be named, so callers pass trp for that.
inline EvidenceResult evidence_components(const HypothesisContrast& hc, const Observation& obs,
                                          const QuadratureConfig& cfg, const EqsOverrides& ov = {},
                                          double c2 = 1.0) {
    StateFunctions st = compute_state(hc, obs, cfg);
    double b = ov.zero_b ? 0.0 : st.b;
    double c1 = ov.c1 ? *ov.c1 : dof_c1(hc);
    double log_e = (st.s - c2 * detail::log_v_minus_b(st.log_v, b)) / c1;
    return EvidenceResult{std::exp(log_e), log_e, st.s,    st.v, st.log_v, b,
                          c1,              c2,    Favored::boundary, hc,  obs,    {}};
}

}  // namespace evid
