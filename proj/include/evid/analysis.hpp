#pragma once

// Analysis on top of the equation of state: transition points (the minima
// of E in x/n at fixed n), favored-hypothesis classification, iso-E
// inversion for sample size, and grid sweeps.

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "evid/equation_of_state.hpp"

namespace evid {

struct DegenerateMinimum : std::runtime_error {
    explicit DegenerateMinimum(const std::string& what) : std::runtime_error(what) {}
};

struct NotBracketable : std::runtime_error {
    explicit NotBracketable(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline Observation obs_from_ratio(double n, double r) {
    double x = r * n;
    if (x > n) x = n;
    if (x < 0.0) x = 0.0;
    return Observation(n, x);
}

// Golden-section minimization on [a, b]; returns (argmin, min).
template <class F>
std::pair<double, double> golden_min(const F& f, double a, double b, double tol) {
    constexpr double invphi = 0.6180339887498949;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        }
    }
    return f1 < f2 ? std::make_pair(x1, f1) : std::make_pair(x2, f2);
}

// Scan [lo, hi] on a uniform grid and refine every strict interior local
// minimum. Duplicates from adjacent brackets collapse to the lower one.
template <class F>
std::vector<TrpPoint> find_minima(const F& f, double lo, double hi, int points, double tol) {
    std::vector<double> xs(points), fs(points);
    for (int i = 0; i < points; ++i) {
        xs[i] = lo + (hi - lo) * i / (points - 1);
        fs[i] = f(xs[i]);
    }
    std::vector<TrpPoint> out;
    double step = (hi - lo) / (points - 1);
    for (int i = 1; i + 1 < points; ++i) {
        if (fs[i] < fs[i - 1] && fs[i] < fs[i + 1]) {
            auto [x, fx] = golden_min(f, xs[i - 1], xs[i + 1], tol);
            if (!out.empty() && x - out.back().ratio < 2.0 * step) {
                if (fx < out.back().e_min) out.back() = {x, fx};
            } else {
                out.push_back({x, fx});
            }
        }
    }
    return out;
}

}  // namespace detail

// Locate the transition point(s) for fixed n: one interior minimum of
// r -> E(hc, n, r n) for class I, one per half-interval for class II.
// Scan resolution resolves the class II minima for n up to about 1e4.
inline TransitionPoints find_trp(const HypothesisContrast& hc, double n,
                                 const QuadratureConfig& cfg, const EqsOverrides& ov = {}) {
    auto f = [&](double r) { return evidence_value(hc, detail::obs_from_ratio(n, r), cfg, ov); };
    constexpr double tol = 1e-7;
    TransitionPoints trp;
    switch (hc.cls()) {
    case HcClass::Ia: {
        trp.points = detail::find_minima(f, 0.0, 0.5, 512, tol);
        break;
    }
    case HcClass::Ib: {
        // odd count puts 1/2 on the grid; the symmetric minimum sits there
        // and an even grid would straddle it with two equal values
        trp.points = detail::find_minima(f, 0.0, 1.0, 1025, tol);
        break;
    }
    default: {
        auto left = detail::find_minima(f, 0.0, 0.5, 512, tol);
        auto right = detail::find_minima(f, 0.5, 1.0, 512, tol);
        if (left.size() != 1 || right.size() != 1)
            throw DegenerateMinimum(std::string("find_trp: class ") + hc.tag() + " at n=" +
                                    std::to_string(n) + " lacks one minimum per half");
        trp.points = {left[0], right[0]};
        return trp;
    }
    }
    if (trp.points.size() != 1)
        throw DegenerateMinimum(std::string("find_trp: class ") + hc.tag() + " at n=" +
                                std::to_string(n) + " has no unique interior minimum");
    return trp;
}

// Which hypothesis the data favor. Class 1b switches at 1/2, class 1a at
// its transition point, class II favors H2 strictly between its two
// transition points. Within 1e-9 of a switch point: boundary.
inline Favored favored(const HypothesisContrast& hc, const Observation& obs,
                       const TransitionPoints& trp) {
    constexpr double tie = 1e-9;
    double r = obs.ratio();
    for (const TrpPoint& p : trp.points)
        if (std::fabs(r - p.ratio) < tie) return Favored::boundary;
    switch (hc.cls()) {
    case HcClass::Ia:
        return r < trp.points.at(0).ratio ? Favored::h1 : Favored::h2;
    case HcClass::Ib:
        if (std::fabs(r - 0.5) < tie) return Favored::boundary;
        return r < 0.5 ? Favored::h1 : Favored::h2;
    default:
        return (r > trp.points.at(0).ratio && r < trp.points.at(1).ratio) ? Favored::h2
                                                                          : Favored::h1;
    }
}

// Full evidence result: components, transition points, favored side.
inline EvidenceResult evidence_E(const HypothesisContrast& hc, const Observation& obs,
                                 const QuadratureConfig& cfg, const TransitionPoints& trp,
                                 const EqsOverrides& ov = {}, double c2 = 1.0) {
    EvidenceResult res = evidence_components(hc, obs, cfg, ov, c2);
    res.trp = trp;
    res.favored = favored(hc, obs, trp);
    return res;
}

inline EvidenceResult evidence_E(const HypothesisContrast& hc, const Observation& obs,
                                 const QuadratureConfig& cfg, const EqsOverrides& ov = {},
                                 double c2 = 1.0) {
    return evidence_E(hc, obs, cfg, find_trp(hc, obs.n, cfg, ov), ov, c2);
}

namespace detail {

// Solve E(n) = target at fixed ratio by doubling then bisection in log n.
// E is increasing in n at fixed x/n, so the bracket is one-sided.
inline double iso_solve(const HypothesisContrast& hc, double ratio, double target_e,
                        const QuadratureConfig& cfg, double n_min, double n_max, double rel_tol) {
    auto f = [&](double n) { return evidence_value(hc, obs_from_ratio(n, ratio), cfg); };
    if (!(target_e > 0.0)) throw std::invalid_argument("iso: target E must be positive");
    double lo = n_min;
    if (f(lo) >= target_e)
        throw NotBracketable("iso: target E not above the small-n evidence floor");
    double hi = std::max(1.0, 2.0 * lo);
    while (f(hi) < target_e) {
        lo = hi;
        hi *= 2.0;
        if (hi > n_max) throw NotBracketable("iso: target E unreachable below n_max");
    }
    while (hi - lo > rel_tol * lo) {
        double mid = std::sqrt(lo * hi);
        (f(mid) < target_e ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace detail

// Sample size at which the evidence reaches target_e for data locked to the
// given ratio. Relative accuracy 1e-8 in n.
inline double iso_sample_size(const HypothesisContrast& hc, double ratio, double target_e,
                              const QuadratureConfig& cfg) {
    return detail::iso_solve(hc, ratio, target_e, cfg, 1e-4, 1e12, 1e-8);
}

// Grid description for an iso-E contour.
struct ContourSpec {
    double target_e;
    std::vector<double> ratios;
    double n_min = 1e-4;
    double n_max = 1e12;
    double rel_tol = 1e-8;
};

struct ContourPoint {
    double ratio;
    double n;          // NaN when not solvable
    std::string error;  // empty on success
};

struct IsoContour {
    std::vector<ContourPoint> points;
    int apex_index;  // index of the largest solved n, -1 if none solved
};

// Solve the contour pointwise. Unsolvable ratios are recorded, not fatal.
// The apex (maximum n along the contour) sits at the transition point.
inline IsoContour iso_contour(const HypothesisContrast& hc, const ContourSpec& spec,
                              const QuadratureConfig& cfg) {
    IsoContour out;
    out.apex_index = -1;
    double best = -1.0;
    for (double r : spec.ratios) {
        ContourPoint p{r, std::numeric_limits<double>::quiet_NaN(), ""};
        try {
            p.n = detail::iso_solve(hc, r, spec.target_e, cfg, spec.n_min, spec.n_max,
                                    spec.rel_tol);
            if (p.n > best) {
                best = p.n;
                out.apex_index = static_cast<int>(out.points.size());
            }
        } catch (const std::exception& ex) {
            p.error = ex.what();
        }
        out.points.push_back(std::move(p));
    }
    return out;
}

struct SweepRow {
    double n;
    double x;
    std::optional<EvidenceResult> result;
    std::string error;  // empty on success
};

// Cross-product sweep over n and ratio grids, row order n-major. Transition
// points are computed once per distinct n. Rows that fail keep their error
// instead of aborting the sweep; rows whose E computed but whose transition
// points did not carry the note and an empty trp list.
inline std::vector<SweepRow> sweep_evidence(const HypothesisContrast& hc,
                                            const std::vector<double>& n_grid,
                                            const std::vector<double>& ratio_grid,
                                            const QuadratureConfig& cfg) {
    std::vector<SweepRow> rows;
    rows.reserve(n_grid.size() * ratio_grid.size());
    std::map<double, std::pair<TransitionPoints, std::string>> trp_cache;
    for (double n : n_grid) {
        auto it = trp_cache.find(n);
        if (it == trp_cache.end()) {
            std::pair<TransitionPoints, std::string> entry;
            try {
                entry.first = find_trp(hc, n, cfg);
            } catch (const std::exception& ex) {
                entry.second = ex.what();
            }
            it = trp_cache.emplace(n, std::move(entry)).first;
        }
        for (double r : ratio_grid) {
            SweepRow row{n, r * n, std::nullopt, ""};
            try {
                Observation obs = detail::obs_from_ratio(n, r);
                row.x = obs.x;
                if (it->second.second.empty()) {
                    row.result = evidence_E(hc, obs, cfg, it->second.first);
                } else {
                    row.result = evidence_components(hc, obs, cfg);
                    row.error = it->second.second;
                }
            } catch (const std::exception& ex) {
                row.error = ex.what();
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

}  // namespace evid
