#pragma once

#include <cmath>
#include <complex>

#include "szego/constants.hpp"
#include "szego/errors.hpp"
#include "szego/scaled_complex.hpp"

namespace szego {

namespace detail {

// sin(pi z) with exact integer-part reduction of Re z.  Plain sin(pi*z)
// loses the structural zeros at integers because pi is not representable.
inline std::complex<double> sin_pi(std::complex<double> z) {
    double n = std::nearbyint(z.real());
    std::complex<double> r(z.real() - n, z.imag());
    std::complex<double> s = std::sin(kPi * r);
    long long parity = static_cast<long long>(n) & 1;
    return parity ? -s : s;
}

// log(sin(pi z)) without overflow for large |Im z|.  Exact in the sense that
// exp of the result reproduces sin(pi z); the imaginary part is not branch-
// tracked across the plane.
inline std::complex<double> log_sin_pi(std::complex<double> z) {
    const std::complex<double> i(0.0, 1.0);
    if (z.imag() > 18.0) {
        // sin(pi z) = -exp(-i pi z)/(2i) * (1 - exp(2 i pi z))
        std::complex<double> small = std::exp(2.0 * i * kPi * z);
        return -i * kPi * z + std::log(-(1.0 - small) / (2.0 * i));
    }
    if (z.imag() < -18.0) {
        std::complex<double> small = std::exp(-2.0 * i * kPi * z);
        return i * kPi * z + std::log((1.0 - small) / (2.0 * i));
    }
    return std::log(sin_pi(z));
}

inline bool near_nonpositive_integer(std::complex<double> z, double tol) {
    if (z.real() > 0.5) return false;
    double n = std::nearbyint(z.real());
    if (n > 0.5) return false;
    return std::abs(z.real() - n) <= tol && std::abs(z.imag()) <= tol;
}

inline bool is_exact_nonpositive_integer(std::complex<double> z) {
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::nearbyint(z.real());
}

}  // namespace detail

// Principal-branch log Gamma via the Lanczos approximation (g = 7, n = 9),
// with the reflection formula for Re z < 1/2.  Relative error below 1e-13
// for moderate |z|; on the reflected half-plane exp(log_gamma(z)) reproduces
// Gamma(z) but the imaginary part is not continued across branch cuts.
inline std::complex<double> log_gamma(std::complex<double> z) {
    static const double g = 7.0;
    static const double c[9] = {
        0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
        771.32342877765313,       -176.61502916214059,   12.507343278686905,
        -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};

    if (detail::near_nonpositive_integer(z, 1e-14))
        throw DomainError("log_gamma: pole of Gamma at nonpositive integer");

    if (z.real() < 0.5) {
        // log Gamma(z) = log pi - log sin(pi z) - log Gamma(1 - z)
        return detail::kLogPi - detail::log_sin_pi(z) - log_gamma(1.0 - z);
    }

    std::complex<double> zz = z - 1.0;
    std::complex<double> x = c[0];
    for (int i = 1; i < 9; ++i) x += c[i] / (zz + static_cast<double>(i));
    std::complex<double> t = zz + g + 0.5;
    return detail::kHalfLog2Pi + (zz + 0.5) * std::log(t) - t + std::log(x);
}

inline std::complex<double> gamma(std::complex<double> z) {
    return std::exp(log_gamma(z));
}

// Entire reciprocal 1/Gamma(z); exactly zero at nonpositive integers.
inline std::complex<double> reciprocal_gamma(std::complex<double> z) {
    if (detail::is_exact_nonpositive_integer(z)) return {0.0, 0.0};
    if (z.real() >= 0.5) return std::exp(-log_gamma(z));
    // 1/Gamma(z) = sin(pi z) Gamma(1 - z) / pi
    return detail::sin_pi(z) * std::exp(log_gamma(1.0 - z)) / detail::kPi;
}

// Gamma as a scaled value from its logarithm; usable far outside double range.
inline ScaledComplex gamma_scaled(std::complex<double> z) {
    if (z.real() >= 0.5) {
        std::complex<double> lg = log_gamma(z);
        return ScaledComplex::from_log(lg.real(), lg.imag());
    }
    std::complex<double> lg1 = log_gamma(1.0 - z);
    std::complex<double> ls = detail::log_sin_pi(z);
    // Gamma(z) = pi / (sin(pi z) Gamma(1-z))
    std::complex<double> l = detail::kLogPi - ls - lg1;
    return ScaledComplex::from_log(l.real(), l.imag());
}

inline ScaledComplex reciprocal_gamma_scaled(std::complex<double> z) {
    if (detail::is_exact_nonpositive_integer(z)) return {};
    ScaledComplex g = gamma_scaled(z);
    return ScaledComplex(1.0) / g;
}

// k-th derivative of Gamma at real a > 0 by Cauchy-integral differentiation
// on a circle of radius 1/2 (trapezoid rule; spectrally accurate).
inline double gamma_derivative(double a, int k, int quad_points = 96) {
    if (a <= 0.5) throw DomainError("gamma_derivative: requires a > 1/2 circle clearance");
    if (k == 0) return gamma(std::complex<double>(a, 0.0)).real();
    const double r = 0.5;
    std::complex<double> acc(0.0, 0.0);
    for (int j = 0; j < quad_points; ++j) {
        double th = 2.0 * detail::kPi * j / quad_points;
        std::complex<double> w(std::cos(th), std::sin(th));
        std::complex<double> zj = a + r * w;
        // f(z)/w^k summed over the circle
        std::complex<double> term = gamma(zj);
        for (int p = 0; p < k; ++p) term /= w;
        acc += term;
    }
    double fact = 1.0;
    for (int p = 2; p <= k; ++p) fact *= p;
    acc *= fact / (quad_points * std::pow(r, k));
    return acc.real();
}

}  // namespace szego
