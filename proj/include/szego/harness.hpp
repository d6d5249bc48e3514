#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "szego/curve.hpp"
#include "szego/erfc.hpp"
#include "szego/errors.hpp"
#include "szego/family.hpp"
#include "szego/predict.hpp"
#include "szego/rootfind.hpp"

namespace szego {

struct MatchPair {
    PredictionRecord prediction;
    Complex matched_root{0.0, 0.0};
    double abs_error = 0.0;         // scaled plane
    double normalized_error = 0.0;  // abs_error / expected_error_scale
};

struct MatchReport {
    int n = 0;
    std::string family;
    std::vector<MatchPair> pairs;
    int unmatched_predictions = 0;
    int unmatched_roots_near_region = 0;
};

// Greedy nearest-neighbor matching, injective by distance-sorted assignment,
// restricted to distance <= radius_factor * expected_error_scale * local scale.
inline MatchReport match(const std::vector<PredictionRecord>& predictions, const RootSet& roots,
                         double radius_factor = 10.0) {
    if (!roots.converged) throw ConvergenceError("match: root set is flagged unconverged");
    struct Cand {
        double dist;
        std::size_t pi, ri;
    };
    std::vector<Cand> cands;
    for (std::size_t p = 0; p < predictions.size(); ++p) {
        double scale = std::max(std::abs(predictions[p].z_scaled), 0.25);
        double radius = radius_factor * predictions[p].expected_error_scale * scale;
        for (std::size_t r = 0; r < roots.roots.size(); ++r) {
            double d = std::abs(predictions[p].z_scaled - roots.roots[r]);
            if (d <= radius) cands.push_back({d, p, r});
        }
    }
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) { return a.dist < b.dist; });
    std::vector<char> pused(predictions.size(), 0), rused(roots.roots.size(), 0);
    MatchReport rep;
    if (!predictions.empty()) rep.n = predictions.front().n;
    for (const Cand& c : cands) {
        if (pused[c.pi] || rused[c.ri]) continue;
        pused[c.pi] = rused[c.ri] = 1;
        MatchPair mp;
        mp.prediction = predictions[c.pi];
        mp.matched_root = roots.roots[c.ri];
        mp.abs_error = c.dist;
        mp.normalized_error = c.dist / predictions[c.pi].expected_error_scale;
        rep.pairs.push_back(mp);
    }
    for (char u : pused)
        if (!u) ++rep.unmatched_predictions;
    // unused roots lying inside some prediction's search radius
    for (std::size_t r = 0; r < roots.roots.size(); ++r) {
        if (rused[r]) continue;
        for (std::size_t p = 0; p < predictions.size(); ++p) {
            double scale = std::max(std::abs(predictions[p].z_scaled), 0.25);
            if (std::abs(predictions[p].z_scaled - roots.roots[r]) <=
                radius_factor * predictions[p].expected_error_scale * scale) {
                ++rep.unmatched_roots_near_region;
                break;
            }
        }
    }
    return rep;
}

struct BuckholtzResult {
    double max_distance = 0.0;
    double bound = 0.0;
    bool pass = false;
};

// Buckholtz: every zero of p_n[exp](nz) lies within 2e/sqrt(n) of the curve.
inline BuckholtzResult buckholtz_check(const FunctionFamily& fam, int n,
                                       const std::vector<CurveSample>* curve_full = nullptr) {
    if (fam.name() != "exp") throw ParameterError("buckholtz_check: the bound is exp-specific");
    std::vector<CurveSample> own;
    if (!curve_full) {
        own = mirror_conjugate(trace(1.0, 2049));
        curve_full = &own;
    }
    PartialSumPoly poly = truncation(fam, n, static_cast<double>(n));
    RootSet roots = all_roots(poly);
    if (!roots.converged) throw ConvergenceError("buckholtz_check: rootfinder did not converge");
    BuckholtzResult res;
    for (const Complex& z : roots.roots)
        res.max_distance = std::max(res.max_distance, curve_distance(z, *curve_full, 1.0));
    res.bound = 2.0 * std::exp(1.0) / std::sqrt(static_cast<double>(n));
    res.pass = res.max_distance <= res.bound;
    return res;
}

enum class RateModel { logn_over_n, inv_sqrt_n, inv_n, custom_power };

inline const char* rate_model_name(RateModel m) {
    switch (m) {
        case RateModel::logn_over_n: return "logn_over_n";
        case RateModel::inv_sqrt_n: return "inv_sqrt_n";
        case RateModel::inv_n: return "inv_n";
        case RateModel::custom_power: return "custom_power";
    }
    return "?";
}

struct RateFit {
    RateModel model = RateModel::custom_power;
    double fitted_constant = 0.0;
    double fitted_exponent = 0.0;
    double r_squared = 0.0;
};

// Least squares in log space against the chosen model.
inline RateFit rate_fit(const std::vector<std::pair<int, double>>& errors, RateModel model) {
    if (errors.size() < 3) throw ParameterError("rate_fit: need at least 3 points");
    std::vector<double> x, y;
    for (const auto& [n, e] : errors) {
        if (!(e > 0.0)) throw ParameterError("rate_fit: errors must be positive");
        x.push_back(std::log(static_cast<double>(n)));
        y.push_back(std::log(e));
    }
    const std::size_t m = x.size();
    RateFit fit;
    fit.model = model;
    auto model_log = [&](double logn, double logc, double expo) {
        switch (model) {
            case RateModel::logn_over_n: return logc + std::log(logn) - logn;
            case RateModel::inv_sqrt_n: return logc - 0.5 * logn;
            case RateModel::inv_n: return logc - logn;
            case RateModel::custom_power: return logc + expo * logn;
        }
        return 0.0;
    };
    if (model == RateModel::custom_power) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < m; ++i) {
            sx += x[i];
            sy += y[i];
            sxx += x[i] * x[i];
            sxy += x[i] * y[i];
        }
        double den = m * sxx - sx * sx;
        fit.fitted_exponent = (m * sxy - sx * sy) / den;
        fit.fitted_constant = std::exp((sy - fit.fitted_exponent * sx) / m);
    } else {
        double acc = 0.0;
        for (std::size_t i = 0; i < m; ++i) acc += y[i] - model_log(x[i], 0.0, 0.0);
        fit.fitted_constant = std::exp(acc / m);
        fit.fitted_exponent = (model == RateModel::inv_sqrt_n) ? -0.5 : -1.0;
    }
    double ssres = 0.0, sstot = 0.0, ymean = 0.0;
    for (double yi : y) ymean += yi;
    ymean /= m;
    double logc = std::log(fit.fitted_constant);
    for (std::size_t i = 0; i < m; ++i) {
        double fiti = model_log(x[i], logc, fit.fitted_exponent);
        ssres += (y[i] - fiti) * (y[i] - fiti);
        sstot += (y[i] - ymean) * (y[i] - ymean);
    }
    fit.r_squared = (sstot > 0.0) ? std::clamp(1.0 - ssres / sstot, 0.0, 1.0) : 1.0;
    return fit;
}

struct ExteriorApproachResult {
    RateFit fit;
    std::vector<std::pair<int, double>> medians;  // (n, median |...| - 1)
    bool all_exterior = true;
    std::vector<double> median_over_model;  // median / (coef log n / n) per n
};

// Median exterior excess |z^lambda exp(1-z^lambda)| - 1 over roots in an
// upper-half argument band, regressed against c log n / n.  The c target is
// lambda/2 for principal-dominant families, (Re a - Re b + lambda/2)/lambda
// scaled otherwise.
inline ExteriorApproachResult exterior_approach_fit(const FunctionFamily& fam,
                                                    const std::vector<int>& n_grid, double arg_lo,
                                                    double arg_hi) {
    ExteriorApproachResult out;
    const double lambda = fam.lambda();
    for (int n : n_grid) {
        PartialSumPoly poly = partial_sum(fam, n);
        RootSet roots = all_roots(poly);
        if (!roots.converged)
            throw ConvergenceError("exterior_approach_fit: rootfinder did not converge");
        std::vector<double> excess;
        for (const Complex& z : roots.roots) {
            double ar = std::arg(z);
            if (ar < arg_lo || ar > arg_hi) continue;
            double e = curve_modulus(z, lambda) - 1.0;
            excess.push_back(e);
            if (e <= 0.0) out.all_exterior = false;
        }
        if (excess.size() < 3)
            throw ParameterError("exterior_approach_fit: fewer than 3 roots in the band");
        std::sort(excess.begin(), excess.end());
        double med = excess[excess.size() / 2];
        if (excess.size() % 2 == 0) med = 0.5 * (med + excess[excess.size() / 2 - 1]);
        out.medians.emplace_back(n, med);
        out.median_over_model.push_back(med / (std::log(static_cast<double>(n)) / (2.0 * n)));
    }
    out.fit = rate_fit(out.medians, RateModel::logn_over_n);
    return out;
}

struct RatioSample {
    int n = 0;
    Complex w{0.0, 0.0};
    Complex measured{0.0, 0.0};
    Complex predicted{0.0, 0.0};
    double error = 0.0;
};

namespace detail {

inline Complex measured_ratio(const FunctionFamily& fam, const PartialSumPoly& poly, Complex z) {
    ScaledComplex p = evaluate_partial_sum(poly, z);
    ScaledComplex f;
    Complex native = fam.rotation() * (poly.r_n * z);
    bool use_surrogate = fam.prefer_surrogate() && std::abs(native) >= fam.surrogate_radius();
    if (use_surrogate || !fam.has_eval_exact())
        f = fam.eval_surrogate(poly.r_n * z);
    else
        f = fam.eval_exact(poly.r_n * z);
    return (p / f).to_complex();
}

}  // namespace detail

// Ratio p_{n-1}(r_n z_n(w)) / f against the predicted arc limit 1 - D e^{-w}
// over a (w, n) grid.
inline std::vector<RatioSample> ratio_limit_check_arc(const FunctionFamily& fam,
                                                      const CurveSample& xi,
                                                      const std::vector<Complex>& w_grid,
                                                      const std::vector<int>& n_grid) {
    std::vector<RatioSample> out;
    for (int n : n_grid) {
        PartialSumPoly poly = partial_sum(fam, n);
        ArcPoint pt = make_arc_point(fam, xi, n);
        detail::ArcCase ac = detail::arc_case(pt);
        for (Complex w : w_grid) {
            RatioSample s;
            s.n = n;
            s.w = w;
            Complex z = z_n_arc(pt, w, ac.variant, ac.j);
            s.measured = detail::measured_ratio(fam, poly, z);
            s.predicted = arc_limit_value(pt, w);
            s.error = std::abs(s.measured - s.predicted);
            out.push_back(s);
        }
    }
    return out;
}

// Ratio p_{n-1}(r_n (1 + w/sqrt(n))) / f against (1/2) erfc(w sqrt(lambda/2));
// w restricted to Re w < 0 per the corner theorems.
inline std::vector<RatioSample> ratio_limit_check_corner(const FunctionFamily& fam,
                                                         const std::vector<Complex>& w_grid,
                                                         const std::vector<int>& n_grid) {
    const double lambda = fam.lambda();
    std::vector<RatioSample> out;
    for (int n : n_grid) {
        PartialSumPoly poly = partial_sum(fam, n);
        for (Complex w : w_grid) {
            if (!(w.real() < 0.0))
                throw ParameterError("ratio_limit_check_corner: needs Re w < 0");
            RatioSample s;
            s.n = n;
            s.w = w;
            Complex z = 1.0 + w / std::sqrt(static_cast<double>(n));
            s.measured = detail::measured_ratio(fam, poly, z);
            s.predicted = 0.5 * erfc(w * std::sqrt(lambda / 2.0));
            s.error = std::abs(s.measured - s.predicted);
            out.push_back(s);
        }
    }
    return out;
}

}  // namespace szego
