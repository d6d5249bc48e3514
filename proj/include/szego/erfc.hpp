#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "szego/errors.hpp"
#include "szego/gamma.hpp"

namespace szego {

namespace detail {

// Faddeeva function w(z) = exp(-z^2) erfc(-iz) for Im z >= 0, computed with
// Weideman's rational approximation.  Coefficients come from a cosine
// transform of exp(-t^2) sampled through the map t = L tan(theta/2).
template <int N = 64>
inline std::complex<double> faddeeva_upper(std::complex<double> z) {
    static const double L = std::sqrt(N / std::sqrt(2.0));
    static const std::vector<double> a = [] {
        const int M = 2 * N;
        std::vector<double> f(M);  // f(k), k = 0..M-1; f even in k, f(M) = 0
        for (int k = 0; k < M; ++k) {
            double theta = k * kPi / M;
            double t = L * std::tan(0.5 * theta);
            f[k] = std::exp(-t * t) * (L * L + t * t);
        }
        std::vector<double> coef(N);
        for (int n = 1; n <= N; ++n) {
            double s = f[0];
            for (int k = 1; k < M; ++k) s += 2.0 * f[k] * std::cos(kPi * n * k / M);
            coef[n - 1] = s / (2.0 * M);
        }
        return coef;
    }();

    const std::complex<double> iz(-z.imag(), z.real());
    const std::complex<double> den = L - iz;
    const std::complex<double> Z = (L + iz) / den;
    std::complex<double> p = a[N - 1];
    for (int j = N - 2; j >= 0; --j) p = p * Z + a[j];
    return 2.0 * p / (den * den) + (1.0 / kSqrtPi) / den;
}

}  // namespace detail

// Complementary error function for complex argument.  Strategy: exact
// reflection erfc(-z) = 2 - erfc(z) maps onto Re z >= 0; the real axis uses
// std::erfc; everything else goes through the Faddeeva function.
inline std::complex<double> erfc(std::complex<double> z) {
    if (z.imag() == 0.0) return {std::erfc(z.real()), 0.0};
    if (z.real() < 0.0) return 2.0 - erfc(-z);
    // erfc(z) = exp(-z^2) w(iz), and iz lies in the closed upper half-plane.
    std::complex<double> w = detail::faddeeva_upper(std::complex<double>(-z.imag(), z.real()));
    return std::exp(-z * z) * w;
}

// d/dz erfc(z) = -2 exp(-z^2)/sqrt(pi)
inline std::complex<double> erfc_derivative(std::complex<double> z) {
    return -detail::kTwoOverSqrtPi * std::exp(-z * z);
}

// Magnitude of the asymptotic envelope exp(-z^2)/(z sqrt(pi)); the natural
// scale against which an erfc residual should be judged.
inline double erfc_local_scale(std::complex<double> z) {
    double m = std::abs(std::exp(-z * z) / (z * detail::kSqrtPi));
    return m + 1.0;
}

// First `count` zeros of erfc in the upper half-plane, ordered by modulus.
// All lie in pi/2 < arg w < 3pi/4.  Seeds solve -z^2 = Log(-2 sqrt(pi) z)
// + 2 pi i m by fixed point, then Newton refines on erfc itself.
inline std::vector<std::complex<double>> erfc_zeros(int count) {
    if (count < 1) throw ParameterError("erfc_zeros: count must be >= 1");
    const std::complex<double> i(0.0, 1.0);
    std::vector<std::complex<double>> zeros;
    zeros.reserve(count);
    for (int m = 1; m <= count; ++m) {
        // Seed on the asymptotic ray arg z = 3pi/4.
        std::complex<double> z = std::sqrt(2.0 * detail::kPi * m) *
                                 std::complex<double>(-std::sqrt(0.5), std::sqrt(0.5));
        for (int it = 0; it < 8; ++it) {
            std::complex<double> rhs = std::log(-2.0 * detail::kSqrtPi * z) +
                                       2.0 * detail::kPi * static_cast<double>(m) * i;
            // pick the square root in the second quadrant
            std::complex<double> s = std::sqrt(-rhs);
            if (s.imag() < 0.0) s = -s;
            if (s.real() > 0.0) s = -std::conj(s);
            z = s;
        }
        bool ok = false;
        for (int it = 0; it < 60; ++it) {
            std::complex<double> f = erfc(z);
            std::complex<double> df = erfc_derivative(z);
            std::complex<double> step = f / df;
            z -= step;
            if (std::abs(step) <= 1e-14 * (1.0 + std::abs(z))) {
                ok = true;
                break;
            }
        }
        double residual = std::abs(erfc(z));
        if (!ok || residual > 1e-10 * erfc_local_scale(z))
            throw ConvergenceError("erfc_zeros: Newton refinement failed for zero index " +
                                   std::to_string(m));
        double ar = std::arg(z);
        if (!(ar > detail::kPi / 2.0 && ar < 3.0 * detail::kPi / 4.0))
            throw ConvergenceError("erfc_zeros: refined zero left the expected sector");
        zeros.push_back(z);
    }
    return zeros;
}

}  // namespace szego
