#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "szego/constants.hpp"
#include "szego/errors.hpp"

namespace szego {

// phi(z) = (z^lambda - 1 - lambda Log z) / lambda, principal branches.
// Re phi = 0 cuts out the limit curve; phi(1) = phi'(1) = 0, phi''(1) = lambda.
inline std::complex<double> phi(std::complex<double> z, double lambda) {
    if (z == std::complex<double>(0.0, 0.0)) throw DomainError("phi: z = 0");
    std::complex<double> lz = std::log(z);
    return (std::exp(lambda * lz) - 1.0 - lambda * lz) / lambda;
}

// |z^lambda exp(1 - z^lambda)| computed through Re phi: equals exp(-lambda Re phi).
inline double curve_modulus(std::complex<double> z, double lambda) {
    return std::exp(-lambda * phi(z, lambda).real());
}

struct CurveSample {
    std::complex<double> xi;      // point on the curve, |xi| <= 1
    double arg = 0.0;             // arg xi
    double tau = 0.0;             // Im(xi^lambda - 1 - lambda log xi)
    double arclength_hint = 0.0;  // cumulative chord length from the corner
};

namespace detail {

// radius r solving Re phi(r e^{i theta}) = 0, bisection on [1e-6, 1]
inline double curve_radius(double theta, double lambda) {
    auto g = [theta, lambda](double r) {
        return phi(std::polar(r, theta), lambda).real();
    };
    double lo = 1e-6, hi = 1.0;
    double glo = g(lo), ghi = g(hi);
    if (!(glo > 0.0) || ghi > 1e-12)
        throw ConvergenceError("curve trace: radius solve lost its bracket");
    for (int it = 0; it < 80 && (hi - lo) > 1e-16 * hi; ++it) {
        double mid = 0.5 * (lo + hi);
        if (g(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace detail

// m samples of the curve from the corner xi = 1 sweeping upward in argument
// to the end of the principal-branch sector.
inline std::vector<CurveSample> trace(double lambda, int m) {
    if (m < 2) throw ParameterError("trace: need at least 2 samples");
    const double arg_max = std::min(detail::kPi, detail::kPi / lambda * (1.0 - 1e-9));
    std::vector<CurveSample> out;
    out.reserve(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) {
        double th = arg_max * j / (m - 1);
        CurveSample s;
        if (j == 0) {
            s.xi = {1.0, 0.0};
            s.arg = 0.0;
            s.tau = 0.0;
        } else {
            double r = detail::curve_radius(th, lambda);
            s.xi = std::polar(r, th);
            s.arg = th;
            s.tau = lambda * phi(s.xi, lambda).imag();
        }
        s.arclength_hint = out.empty() ? 0.0
                                       : out.back().arclength_hint + std::abs(s.xi - out.back().xi);
        out.push_back(s);
    }
    return out;
}

// Representative of tau*n/lambda in (-pi, pi].
inline double tau_n(double tau, int n, double lambda) {
    double x = std::remainder(tau * n / lambda, 2.0 * detail::kPi);
    if (x <= -detail::kPi) x += 2.0 * detail::kPi;
    return x;
}

// Representative of n*arg(zeta) in (-pi, pi].
inline double sigma_n(std::complex<double> zeta, int n) {
    double x = std::remainder(std::arg(zeta) * n, 2.0 * detail::kPi);
    if (x <= -detail::kPi) x += 2.0 * detail::kPi;
    return x;
}

enum class CurveSide { exterior, interior, on_curve, outside_unit_disk_branch };

// Sign classification of |z^lambda exp(1-z^lambda)| - 1, with the |z| <= 1
// branch of the level set distinguished from the unbounded one.
inline CurveSide classify(std::complex<double> z, double lambda, double tol = 1e-9) {
    double m = curve_modulus(z, lambda);
    if (std::abs(m - 1.0) <= tol)
        return (std::abs(z) <= 1.0 + tol) ? CurveSide::on_curve
                                          : CurveSide::outside_unit_disk_branch;
    return m > 1.0 ? CurveSide::exterior : CurveSide::interior;
}

// Distance from z to the sampled curve: nearest sample, then one parabolic
// refinement over the neighboring arguments (fresh radius solves).
inline double curve_distance(std::complex<double> z, const std::vector<CurveSample>& samples,
                             double lambda) {
    if (samples.empty()) throw ParameterError("curve_distance: empty sample set");
    std::size_t best = 0;
    double bd = std::abs(z - samples[0].xi);
    for (std::size_t i = 1; i < samples.size(); ++i) {
        double d = std::abs(z - samples[i].xi);
        if (d < bd) {
            bd = d;
            best = i;
        }
    }
    if (samples.size() < 3) return bd;
    std::size_t i1 = (best == 0) ? 0 : best - 1;
    std::size_t i2 = (best + 1 >= samples.size()) ? samples.size() - 1 : best + 1;
    if (i1 == best || i2 == best) {
        // clamp at the ends; no refinement past the corner or terminal point
        return bd;
    }
    // parabolic interpolation of d^2(theta) through the three nearest samples
    double t0 = samples[i1].arg, t1 = samples[best].arg, t2 = samples[i2].arg;
    double f0 = std::norm(z - samples[i1].xi), f1 = std::norm(z - samples[best].xi),
           f2 = std::norm(z - samples[i2].xi);
    double num = (t1 - t0) * (t1 - t0) * (f1 - f2) - (t1 - t2) * (t1 - t2) * (f1 - f0);
    double den = (t1 - t0) * (f1 - f2) - (t1 - t2) * (f1 - f0);
    if (den != 0.0) {
        double tstar = std::clamp(t1 - 0.5 * num / den, t0, t2);
        if (tstar > 0.0) {
            double r = detail::curve_radius(tstar, lambda);
            bd = std::min(bd, std::abs(z - std::polar(r, tstar)));
        } else {
            bd = std::min(bd, std::abs(z - std::complex<double>(1.0, 0.0)));
        }
    }
    return bd;
}

// The curve together with its conjugate reflection (the theorems are stated
// in the upper half-plane; zeros come in conjugate pairs).
inline std::vector<CurveSample> mirror_conjugate(const std::vector<CurveSample>& upper) {
    std::vector<CurveSample> out;
    out.reserve(2 * upper.size());
    for (auto it = upper.rbegin(); it != upper.rend(); ++it) {
        if (it->arg == 0.0) continue;
        CurveSample s = *it;
        s.xi = std::conj(s.xi);
        s.arg = -s.arg;
        s.tau = -s.tau;
        out.push_back(s);
    }
    out.insert(out.end(), upper.begin(), upper.end());
    return out;
}

}  // namespace szego
